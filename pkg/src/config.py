"""
Configuración del motor de destilación LDRLD.

Los valores se leen del entorno (o de un archivo .env). Los hiperparámetros
por defecto del objetivo son d=7, τ=4, ε=1.5, δ=2 y λ=0.05.
"""
import logging
import os
from dotenv import load_dotenv

load_dotenv()

# Verbosidad (DEBUG, INFO, WARNING, ERROR)
LDRLD_LOG = os.getenv("LDRLD_LOG", "INFO")

# Hilos para semillas y verificaciones en paralelo
NUM_WORKERS = int(os.getenv("LDRLD_WORKERS", "3"))

# Hiperparámetros por defecto del objetivo
DEFAULT_DEPTH = 7
DEFAULT_TAU = 4.0
DEFAULT_EPSILON = 1.5
DEFAULT_DELTA = 2.0
DEFAULT_LAMBDA = 0.05

# Paths
BASE_DIR = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
CONFIGS_DIR = os.path.join(BASE_DIR, "configs")
OUTPUTS_DIR = os.getenv("LDRLD_OUTPUT_DIR", os.path.join(BASE_DIR, "outputs"))
SCHEMA_PATH = os.path.join(BASE_DIR, "schemas", "report.schema.json")


def configurar_logging(nivel: str = None) -> None:
    """
    Instala un único handler de consola con formato de mensaje plano.

    Args:
        nivel: Nivel explícito; si es None se usa LDRLD_LOG.
    """
    nivel = (nivel or LDRLD_LOG).upper()
    raiz = logging.getLogger()
    for handler in list(raiz.handlers):
        raiz.removeHandler(handler)
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter("%(message)s"))
    raiz.addHandler(handler)
    raiz.setLevel(getattr(logging, nivel, logging.INFO))
