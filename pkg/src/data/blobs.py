"""
Mezclas gaussianas sintéticas para clasificación.
"""
import numpy as np

from errors import DatasetError
from .dataset import EVAL, TRAIN, Dataset

_CODIGO_SPLIT = {TRAIN: 0, EVAL: 1}


def make_blobs(
    num_classes: int,
    per_class: int,
    dim: int,
    spread: float,
    seed: int,
    radius: float = 1.0,
    split: str = TRAIN,
    modes: int = 1,
) -> Dataset:
    """
    Genera `per_class` muestras por clase alrededor de medias sobre una esfera.

    Las medias dependen solo de `seed`, así que los splits train/eval
    comparten clases; el ruido isotrópico (desviación `spread`) usa una
    secuencia independiente por split. Con `modes > 1` cada clase es una
    mezcla de `modes` gaussianas y sus muestras se reparten entre ellas en
    orden cíclico; una frontera lineal ya no basta para separarlas.

    Args:
        num_classes: Número de clases C >= 2.
        per_class: Muestras por clase.
        dim: Dimensión de las características.
        spread: Desviación estándar del ruido (0 = muestras en la media).
        seed: Semilla.
        radius: Radio de la esfera de medias.
        split: 'train' o 'eval'.
        modes: Gaussianas por clase.

    Returns:
        Dataset con las muestras ordenadas por clase.
    """
    if num_classes < 2 or per_class < 1 or dim < 1 or modes < 1:
        raise DatasetError(
            f"Dimensiones inválidas: C={num_classes}, per_class={per_class}, dim={dim}, modes={modes}"
        )
    if spread < 0 or radius <= 0:
        raise DatasetError(f"spread debe ser >= 0 y radius > 0, recibido {spread}, {radius}")
    if split not in _CODIGO_SPLIT:
        raise DatasetError(f"Split desconocido: {split}")

    # Fila c * modes + m: modo m de la clase c
    medias = np.random.default_rng(seed).normal(size=(num_classes * modes, dim))
    medias *= radius / np.linalg.norm(medias, axis=1, keepdims=True)

    ruido_rng = np.random.default_rng([seed, _CODIGO_SPLIT[split]])
    ruido = ruido_rng.normal(size=(num_classes * per_class, dim)) * spread

    labels = np.repeat(np.arange(num_classes), per_class)
    componente = labels * modes + np.tile(np.arange(per_class) % modes, num_classes)
    return Dataset(features=medias[componente] + ruido, labels=labels, num_classes=num_classes, split=split)
