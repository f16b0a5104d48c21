"""
Abstracción común de conjuntos de datos y su iteración por mini-lotes.
"""
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from errors import DatasetError

TRAIN = "train"
EVAL = "eval"


@dataclass(frozen=True)
class Dataset:
    """
    Matriz de características N×D con etiquetas en 0..C-1.

    Los arreglos se marcan como de solo lectura al construirse.
    """
    features: np.ndarray
    labels: np.ndarray
    num_classes: int
    split: str = TRAIN

    def __post_init__(self):
        features = np.array(self.features, dtype=np.float64)
        labels = np.array(self.labels, dtype=np.int64)
        if features.ndim != 2 or features.shape[0] < 1:
            raise DatasetError(f"Se requiere una matriz N×D con N >= 1, recibido {features.shape}")
        if labels.shape != (features.shape[0],):
            raise DatasetError(f"{labels.shape[0] if labels.ndim else 0} etiquetas para {features.shape[0]} muestras")
        if self.num_classes < 2:
            raise DatasetError(f"Se requieren al menos 2 clases, recibido {self.num_classes}")
        if labels.min() < 0 or labels.max() >= self.num_classes:
            raise DatasetError(f"Etiquetas fuera de 0..{self.num_classes - 1}")
        if not np.all(np.isfinite(features)):
            raise DatasetError("Las características contienen NaN o infinito")
        if self.split not in (TRAIN, EVAL):
            raise DatasetError(f"Split desconocido: {self.split}")
        features.setflags(write=False)
        labels.setflags(write=False)
        object.__setattr__(self, "features", features)
        object.__setattr__(self, "labels", labels)

    @property
    def n(self) -> int:
        return self.features.shape[0]

    @property
    def dim(self) -> int:
        return self.features.shape[1]


def permutacion_epoca(n: int, seed: int, epoch: int) -> np.ndarray:
    """Permutación de 0..n-1 determinista por (seed, epoch)."""
    return np.random.default_rng([seed, epoch]).permutation(n)


def iterar_minibatches(n: int, batch_size: int, seed: int, epoch: int) -> Iterator[np.ndarray]:
    """
    Recorre una permutación barajada en bloques de `batch_size`; el último
    bloque puede ser más corto.
    """
    if batch_size < 1:
        raise ValueError(f"batch_size debe ser >= 1, recibido {batch_size}")
    orden = permutacion_epoca(n, seed, epoch)
    for inicio in range(0, n, batch_size):
        yield orden[inicio:inicio + batch_size]
