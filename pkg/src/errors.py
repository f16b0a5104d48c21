"""
Jerarquía de errores del sistema.
"""


class LdrldError(Exception):
    """Error base de todo el paquete."""


class ShapeError(LdrldError, ValueError):
    """Dimensiones incompatibles entre tensores o datos."""


class NonFiniteError(LdrldError, ArithmeticError):
    """Una operación produjo NaN o infinito."""


class ConfigError(LdrldError, ValueError):
    """Configuración de experimento inválida."""


class DatasetError(LdrldError, ValueError):
    """Datos de entrada inválidos o ilegibles."""


class CheckpointError(LdrldError, ValueError):
    """Checkpoint corrupto o incompatible."""
