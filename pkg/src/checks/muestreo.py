"""
Generación de muestras aleatorias para las verificaciones.
"""
from typing import Tuple

import numpy as np

from ldrld import DistillConfig


def muestra_aleatoria(rng: np.random.Generator, c_min: int = 5, c_max: int = 30) -> Tuple[np.ndarray, np.ndarray, int, DistillConfig]:
    """
    Logits de profesor y estudiante en [-5, 5], etiqueta y configuración con
    C ∈ [c_min, c_max] y d ∈ [2, C].
    """
    num_classes = int(rng.integers(c_min, c_max + 1))
    cfg = DistillConfig(
        d=int(rng.integers(2, num_classes + 1)),
        tau=float(rng.choice([1.0, 2.0, 4.0, 8.0])),
        alpha=float(rng.uniform(0, 8)),
        beta=float(rng.uniform(0, 8)),
        adw_enabled=bool(rng.integers(0, 2)),
        tau_square_scaling=bool(rng.integers(0, 2)),
    )
    z_t = rng.uniform(-5, 5, size=num_classes)
    z_s = rng.uniform(-5, 5, size=num_classes)
    label = int(rng.integers(0, num_classes))
    return z_t, z_s, label, cfg
