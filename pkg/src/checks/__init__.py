"""
Verificaciones de propiedades del objetivo (`losscheck`).

Incluye:
- Una clase por propiedad (pares, ADW, identidades, oráculo, gradientes)
- Integrador que las orquesta y arma la tabla de resultados
- Clase base para verificaciones
"""
from .base_check import BaseCheck, ResultadoCheck
from .check_adw import CheckAdw
from .check_gradientes import CheckGradientes
from .check_identidades import CheckIdentidades
from .check_oraculo import CheckOraculo
from .check_pares import CheckPares
from .integrador_checks import IntegradorChecks

__all__ = [
    'BaseCheck',
    'ResultadoCheck',
    'CheckAdw',
    'CheckGradientes',
    'CheckIdentidades',
    'CheckOraculo',
    'CheckPares',
    'IntegradorChecks',
]
