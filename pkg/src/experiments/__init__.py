"""
Experimentos: configuración, ejecución por semilla y reportes.
"""
from .experiment_config import (
    CLAVES,
    ExperimentConfig,
    cargar_config,
    cargar_datasets,
    desde_dict,
    parsear_asignacion,
    parsear_barrido,
    resolver_clave,
)
from .runner import EjecutorExperimento
from . import report

__all__ = [
    'CLAVES',
    'ExperimentConfig',
    'cargar_config',
    'cargar_datasets',
    'desde_dict',
    'parsear_asignacion',
    'parsear_barrido',
    'resolver_clave',
    'EjecutorExperimento',
    'report',
]
