import os
import time

import pytest

from checks import (
    CheckAdw, CheckGradientes, CheckIdentidades, CheckOraculo, CheckPares, IntegradorChecks, ResultadoCheck,
)
from checks.base_check import BaseCheck
from ldrld import AdwParams


def _integrador(**kwargs):
    return IntegradorChecks(muestras_oraculo=60, muestras_gradiente=15, configuraciones=40, verbose=False, **kwargs)


class CheckQueExplota(BaseCheck):

    @property
    def nombre(self) -> str:
        return "explota"

    @property
    def descripcion(self) -> str:
        return "Lanza una excepción"

    def _verificar(self) -> ResultadoCheck:
        raise RuntimeError("boom")


@pytest.mark.parametrize("check", [
    CheckPares(),
    CheckAdw(),
    CheckIdentidades(configuraciones=40),
    CheckOraculo(muestras=60),
    CheckGradientes(muestras=15),
], ids=lambda c: c.nombre)
def test_cada_verificacion_pasa(check):
    resultado = check.ejecutar()
    assert resultado.ok, resultado.detalle


def test_valor_de_referencia_del_adw():
    resultado = CheckAdw().ejecutar()
    assert resultado.valores["adw_1_2"] == pytest.approx(0.6885664, abs=1e-6)


def test_epsilon_perturbado_falla():
    resultado = CheckAdw(AdwParams(epsilon=1.6)).ejecutar()
    assert not resultado.ok
    assert "irw_1_2" in resultado.detalle


def test_excepcion_cuenta_como_fallo():
    resultado = CheckQueExplota().ejecutar()
    assert not resultado.ok
    assert "RuntimeError" in resultado.detalle


@pytest.mark.parametrize("paralelo", [False, True])
def test_integrador_conserva_el_orden(paralelo):
    resultados = _integrador().procesar(paralelo=paralelo)
    assert [r.nombre for r in resultados] == [
        "pair-count", "adw-golden", "loss-identities", "oracle-equivalence", "gradient-fd",
    ]
    assert all(r.ok for r in resultados)


def test_tabla_marca_los_fallos():
    resultados = _integrador(adw_params=AdwParams(epsilon=1.6)).procesar()
    tabla = IntegradorChecks.tabla(resultados)
    assert "FAIL" in tabla
    assert "Fallaron: adw-golden" in tabla


@pytest.mark.slow
@pytest.mark.skipif(os.getenv("LDRLD_SLOW") != "1", reason="LDRLD_SLOW=1 no definido")
@pytest.mark.parametrize("check, limite", [
    (CheckOraculo(muestras=1000), 30.0),
    (CheckGradientes(muestras=200), 60.0),
    (CheckIdentidades(configuraciones=500), 60.0),
], ids=lambda v: v.nombre if isinstance(v, BaseCheck) else f"{v:.0f}s")
def test_escala_completa_dentro_del_tiempo(check, limite):
    inicio = time.perf_counter()
    resultado = check.ejecutar()
    segundos = time.perf_counter() - inicio
    assert resultado.ok, resultado.detalle
    assert segundos < limite, f"{check.nombre}: {segundos:.1f} s"
