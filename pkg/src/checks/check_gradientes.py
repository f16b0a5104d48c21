"""
Gradiente del objetivo respecto a los logits del estudiante contra
diferencias finitas centrales, con el orden de rango congelado.
"""
import numpy as np

from ldrld import ldrld_objective, rank_rows
from oracle import fd_gradient
from tensor_core import Tensor, no_grad
from .base_check import BaseCheck, ResultadoCheck
from .muestreo import muestra_aleatoria

TOLERANCIA_RELATIVA = 1e-4
PISO_ABSOLUTO = 1e-7


def error_gradiente(analitico: np.ndarray, numerico: np.ndarray) -> float:
    """
    Mayor error relativo; las componentes con error absoluto bajo el piso
    cuentan como 0.
    """
    diferencia = np.abs(analitico - numerico)
    escala = np.maximum(np.abs(analitico), np.abs(numerico))
    relativo = np.where(diferencia <= PISO_ABSOLUTO, 0.0, diferencia / np.maximum(escala, 1e-300))
    return float(np.max(relativo))


class CheckGradientes(BaseCheck):

    def __init__(self, muestras: int = 200, seed: int = 0):
        super().__init__(seed)
        self.muestras = muestras

    @property
    def nombre(self) -> str:
        return "gradient-fd"

    @property
    def descripcion(self) -> str:
        return f"dTotal/dz_s contra diferencias finitas ({self.muestras} muestras)"

    def _verificar(self) -> ResultadoCheck:
        rng = np.random.default_rng([self.seed, 2])
        peor = 0.0
        for k in range(self.muestras):
            z_t, z_s, label, cfg = muestra_aleatoria(rng)
            z_t, orden = z_t[None, :], rank_rows(z_s)[None, :]

            hoja = Tensor(z_s[None, :], requires_grad=True)
            total, _ = ldrld_objective(z_t, hoja, [label], cfg, order=orden)
            total.backward()

            def f(x):
                with no_grad():
                    return ldrld_objective(z_t, Tensor(x), [label], cfg, order=orden)[0].item()

            error = error_gradiente(hoja.grad, fd_gradient(f, z_s[None, :]))
            peor = max(peor, error)
            if error >= TOLERANCIA_RELATIVA:
                return self._resultado(False, f"Muestra {k}: error relativo {error:.3e}", max_rel_error=peor)
        return self._resultado(True, f"máx error relativo = {peor:.2e}", max_rel_error=peor)
