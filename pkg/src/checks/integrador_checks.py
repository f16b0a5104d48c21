"""
Integrador de verificaciones.

Orquesta la ejecución de las verificaciones de propiedades del objetivo y
ensambla la tabla de resultados de `losscheck`.
"""
import asyncio
import logging
from typing import List, Optional

from config import NUM_WORKERS
from ldrld import AdwParams
from .base_check import BaseCheck, ResultadoCheck
from .check_adw import CheckAdw
from .check_gradientes import CheckGradientes
from .check_identidades import CheckIdentidades
from .check_oraculo import CheckOraculo
from .check_pares import CheckPares

logger = logging.getLogger(__name__)


class IntegradorChecks:
    """
    Ejecuta las verificaciones en paralelo o secuencialmente; los resultados
    conservan siempre el orden de registro.
    """

    def __init__(
        self,
        adw_params: AdwParams = AdwParams(),
        muestras_oraculo: int = 1000,
        muestras_gradiente: int = 200,
        configuraciones: int = 500,
        seed: int = 0,
        verbose: bool = True,
        checks: Optional[List[BaseCheck]] = None,
    ):
        self.verbose = verbose
        self.checks: List[BaseCheck] = checks if checks is not None else [
            CheckPares(seed=seed),
            CheckAdw(adw_params, seed=seed),
            CheckIdentidades(configuraciones, seed=seed),
            CheckOraculo(muestras_oraculo, seed=seed),
            CheckGradientes(muestras_gradiente, seed=seed),
        ]

    def _log(self, mensaje: str):
        """Registra el mensaje si verbose está activado."""
        if self.verbose:
            logger.info(mensaje)

    def procesar(self, paralelo: bool = False) -> List[ResultadoCheck]:
        if paralelo:
            return asyncio.run(self._procesar_paralelo())
        return self._procesar_secuencial()

    def _procesar_secuencial(self) -> List[ResultadoCheck]:
        resultados = []
        total = len(self.checks)
        for i, check in enumerate(self.checks, 1):
            self._log(f"  [{i}/{total}] Verificando: {check.descripcion}...")
            resultado = check.ejecutar()
            marca = "✓" if resultado.ok else "✗"
            self._log(f"  [{i}/{total}] {marca} {check.nombre}: {resultado.detalle}")
            resultados.append(resultado)
        return resultados

    async def _procesar_paralelo(self) -> List[ResultadoCheck]:
        self._log(f"  Ejecutando {len(self.checks)} verificaciones en paralelo...")
        semaforo = asyncio.Semaphore(max(1, NUM_WORKERS))

        async def limitado(check: BaseCheck) -> ResultadoCheck:
            async with semaforo:
                return await check.ejecutar_async()

        resultados = await asyncio.gather(*(limitado(c) for c in self.checks))
        self._log("  ✓ Todas las verificaciones completadas")
        return list(resultados)

    @staticmethod
    def tabla(resultados: List[ResultadoCheck]) -> str:
        """Tabla de texto con una fila por verificación."""
        ancho = max([len(r.nombre) for r in resultados] + [9])
        lineas = [f"{'propiedad'.ljust(ancho)}  estado  detalle", "-" * (ancho + 40)]
        for r in resultados:
            estado = "PASS" if r.ok else "FAIL"
            lineas.append(f"{r.nombre.ljust(ancho)}  {estado:<6}  {r.detalle}")
        fallidos = [r.nombre for r in resultados if not r.ok]
        lineas.append("-" * (ancho + 40))
        lineas.append("Todas las verificaciones pasaron" if not fallidos else f"Fallaron: {', '.join(fallidos)}")
        return "\n".join(lineas)
