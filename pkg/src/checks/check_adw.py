"""
Valores de referencia y monotonía del Adaptive Decay Weight.
"""
import math

from ldrld import AdwParams, adw, erd, irw
from .base_check import BaseCheck, ResultadoCheck

IRW_1_2 = 0.4
ERD_1_2 = 2.0 * math.exp(-0.15)
ADW_1_2 = IRW_1_2 * ERD_1_2  # 0.6885664
TOLERANCIA = 1e-6
RANGO_MAXIMO = 20


class CheckAdw(BaseCheck):
    """
    Compara IRW/ERD/Ω en (1,2) contra los valores obtenidos con ε=1.5, δ=2,
    λ=0.05 y verifica ambas monotonías para rangos <= 20.

    Con parámetros distintos a esos, la comparación de referencia falla.
    """

    def __init__(self, params: AdwParams = AdwParams(), seed: int = 0):
        super().__init__(seed)
        self.params = params

    @property
    def nombre(self) -> str:
        return "adw-golden"

    @property
    def descripcion(self) -> str:
        return "IRW(1,2), ERD(1,2), Ω(1,2) y monotonía del ADW"

    def _verificar(self) -> ResultadoCheck:
        p = self.params
        omega = adw(1, 2, p)
        valores = {"irw_1_2": irw(1, 2, p), "erd_1_2": erd(1, 2, p), "adw_1_2": omega}
        for clave, esperado in (("irw_1_2", IRW_1_2), ("erd_1_2", ERD_1_2), ("adw_1_2", ADW_1_2)):
            if abs(valores[clave] - esperado) > TOLERANCIA:
                return self._resultado(
                    False, f"{clave}={valores[clave]:.6f}, se esperaba {esperado:.6f}", **valores
                )

        # Suma fija: el peso baja al crecer la distancia
        for suma in range(3, 2 * RANGO_MAXIMO):
            pesos = [adw(r1, suma - r1, p) for r1 in range(max(1, suma - RANGO_MAXIMO), (suma + 1) // 2)]
            if any(b <= a for a, b in zip(pesos, pesos[1:])):
                return self._resultado(False, f"Monotonía por distancia rota con suma {suma}", **valores)

        # Distancia fija: el peso baja al crecer la suma
        if p.lambda_ > 0:
            for distancia in range(1, RANGO_MAXIMO):
                pesos = [adw(r1, r1 + distancia, p) for r1 in range(1, RANGO_MAXIMO - distancia + 1)]
                if any(b >= a for a, b in zip(pesos, pesos[1:])):
                    return self._resultado(False, f"Monotonía por suma rota con distancia {distancia}", **valores)

        return self._resultado(True, f"Ω(1,2) = {omega:.6f}", **valores)
