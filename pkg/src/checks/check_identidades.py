"""
Identidades de los términos de destilación: no negatividad, anulación con
logits iguales e invariancia ante un desplazamiento común.
"""
import numpy as np

from ldrld import ldrld_total
from tensor_core import Tensor, softmax_masked
from .base_check import BaseCheck, ResultadoCheck
from .muestreo import muestra_aleatoria

TOLERANCIA = 1e-10
TERMINOS = ("weighted_pairs", "llki", "rntk")


class CheckIdentidades(BaseCheck):

    def __init__(self, configuraciones: int = 500, seed: int = 0):
        super().__init__(seed)
        self.configuraciones = configuraciones

    @property
    def nombre(self) -> str:
        return "loss-identities"

    @property
    def descripcion(self) -> str:
        return f"≥ 0, cero en acuerdo, invariancia a desplazamiento ({self.configuraciones} configs)"

    def _verificar(self) -> ResultadoCheck:
        rng = np.random.default_rng([self.seed, 3])
        for k in range(self.configuraciones):
            z_t, z_s, label, cfg = muestra_aleatoria(rng)
            base = ldrld_total(z_t, z_s, label, cfg)
            for termino in TERMINOS:
                if getattr(base, termino) < -TOLERANCIA:
                    return self._resultado(False, f"Config {k}: {termino} negativo ({getattr(base, termino):.3e})")

            iguales = ldrld_total(z_s, z_s, label, cfg)
            for termino in TERMINOS:
                if abs(getattr(iguales, termino)) > TOLERANCIA:
                    return self._resultado(False, f"Config {k}: {termino} no se anula con logits iguales")

            c = float(rng.uniform(-3, 3))
            desplazado = ldrld_total(z_t + c, z_s + c, label, cfg)
            for termino in TERMINOS:
                if abs(getattr(desplazado, termino) - getattr(base, termino)) > TOLERANCIA:
                    return self._resultado(False, f"Config {k}: {termino} cambia con el desplazamiento {c:.3f}")

            mascara = rng.integers(0, 2, size=z_s.size).astype(bool)
            mascara[int(rng.integers(0, z_s.size))] = True
            p = softmax_masked(Tensor(z_s), mascara, cfg.tau).data
            if abs(p[mascara].sum() - 1.0) > 1e-12 or np.any(p[~mascara] != 0.0):
                return self._resultado(False, f"Config {k}: softmax_masked no normaliza sobre la máscara")

        return self._resultado(True, f"{self.configuraciones} configuraciones sin violaciones")
