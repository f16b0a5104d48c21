"""
Verificación de la estructura de los conjuntos de combinación.
"""
from ldrld import generate_pairs
from .base_check import BaseCheck, ResultadoCheck


class CheckPares(BaseCheck):
    """|pares(d)| = d(d-1)/2 para d = 2..30 y d = 7 igual al doble bucle."""

    @property
    def nombre(self) -> str:
        return "pair-count"

    @property
    def descripcion(self) -> str:
        return "Cantidad y contenido de los pares top-d"

    def _verificar(self) -> ResultadoCheck:
        for d in range(2, 31):
            pares = generate_pairs(d)
            if len(pares) != d * (d - 1) // 2 or len(set(pares)) != len(pares):
                return self._resultado(False, f"d={d}: {len(pares)} pares")
        fuerza_bruta = {(i, j) for i in range(1, 8) for j in range(1, 8) if i < j}
        pares_7 = generate_pairs(7)
        if set(pares_7) != fuerza_bruta:
            return self._resultado(False, "d=7 no coincide con el doble bucle")
        return self._resultado(True, "d=2..30 correctos; d=7 → 21 pares", pares_d7=float(len(pares_7)))
