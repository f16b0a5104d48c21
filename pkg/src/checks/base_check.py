"""
Clase base para todas las verificaciones de `losscheck`.
Cada verificación hereda de esta clase y define qué propiedad comprueba.
"""
import asyncio
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict


@dataclass
class ResultadoCheck:
    """Resultado de una verificación."""
    nombre: str
    ok: bool
    detalle: str
    valores: Dict[str, float] = field(default_factory=dict)


class BaseCheck(ABC):
    """
    Verificación base de una propiedad matemática del objetivo.
    Las subclases definen el nombre y la lógica en `_verificar`.
    """

    def __init__(self, seed: int = 0):
        self.seed = seed

    @property
    @abstractmethod
    def nombre(self) -> str:
        """Nombre corto de la propiedad (ej: 'adw-golden')."""
        pass

    @property
    @abstractmethod
    def descripcion(self) -> str:
        """Qué se comprueba, en una línea."""
        pass

    @abstractmethod
    def _verificar(self) -> ResultadoCheck:
        pass

    def ejecutar(self) -> ResultadoCheck:
        """
        Ejecuta la verificación; una excepción inesperada cuenta como fallo.
        """
        try:
            return self._verificar()
        except Exception as e:
            return ResultadoCheck(self.nombre, False, f"Error inesperado: {type(e).__name__}: {e}")

    async def ejecutar_async(self) -> ResultadoCheck:
        """Versión asíncrona de ejecutar (para procesamiento paralelo)."""
        return await asyncio.get_running_loop().run_in_executor(None, self.ejecutar)

    def _resultado(self, ok: bool, detalle: str, **valores: float) -> ResultadoCheck:
        return ResultadoCheck(self.nombre, ok, detalle, dict(valores))
