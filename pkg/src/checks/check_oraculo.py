"""
Equivalencia entre la evaluación por lotes y los oráculos por fuerza bruta.
"""
import numpy as np

from ldrld import ldrld_total, rank_by_student, split_top_d
from oracle import oracle_ldrld, oracle_topd_recursive
from .base_check import BaseCheck, ResultadoCheck
from .muestreo import muestra_aleatoria

TOLERANCIA = 1e-9


class CheckOraculo(BaseCheck):
    """ldrld_total == oracle_ldrld y split_top_d == extracción recursiva."""

    def __init__(self, muestras: int = 1000, seed: int = 0):
        super().__init__(seed)
        self.muestras = muestras

    @property
    def nombre(self) -> str:
        return "oracle-equivalence"

    @property
    def descripcion(self) -> str:
        return f"Objetivo y top-d contra oráculos ({self.muestras} muestras)"

    def _verificar(self) -> ResultadoCheck:
        rng = np.random.default_rng([self.seed, 1])
        peor = 0.0
        for k in range(self.muestras):
            z_t, z_s, label, cfg = muestra_aleatoria(rng)
            split = split_top_d(z_t, z_s, rank_by_student(z_s), cfg.d)
            ref = oracle_topd_recursive(z_t, z_s, cfg.d)
            for campo in ("top_t", "top_s", "rest_t", "rest_s"):
                if not np.array_equal(getattr(split, campo), getattr(ref, campo)):
                    return self._resultado(False, f"Muestra {k}: {campo} difiere del bucle recursivo")
            delta = abs(ldrld_total(z_t, z_s, label, cfg).total - oracle_ldrld(z_t, z_s, label, cfg))
            peor = max(peor, delta)
            if delta >= TOLERANCIA:
                return self._resultado(False, f"Muestra {k}: |Δ| = {delta:.3e}", max_abs_error=peor)
        return self._resultado(True, f"máx |Δ| = {peor:.2e}", max_abs_error=peor)
