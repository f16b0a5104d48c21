# Conjuntos de datos: sintéticos, texto delimitado e IDX
from .dataset import EVAL, TRAIN, Dataset, iterar_minibatches, permutacion_epoca
from .blobs import make_blobs
from .loaders import load_delimited, load_idx, save_delimited

__all__ = [
    'EVAL',
    'TRAIN',
    'Dataset',
    'iterar_minibatches',
    'permutacion_epoca',
    'make_blobs',
    'load_delimited',
    'load_idx',
    'save_delimited',
]
