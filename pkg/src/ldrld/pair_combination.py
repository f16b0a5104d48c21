"""
Conjuntos de combinación de pares sobre los rangos top-d y sus pesos ADW.
"""
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import List, Tuple

import numpy as np

from config import DEFAULT_DELTA, DEFAULT_EPSILON, DEFAULT_LAMBDA


@dataclass(frozen=True)
class AdwParams:
    """Parámetros del Adaptive Decay Weight."""
    epsilon: float = DEFAULT_EPSILON
    delta: float = DEFAULT_DELTA
    lambda_: float = DEFAULT_LAMBDA

    def __post_init__(self):
        if not self.epsilon > 0:
            raise ValueError(f"epsilon debe ser > 0, recibido {self.epsilon}")
        if not self.delta > 0:
            raise ValueError(f"delta debe ser > 0, recibido {self.delta}")
        if not self.lambda_ >= 0:
            raise ValueError(f"lambda debe ser >= 0, recibido {self.lambda_}")


@dataclass(frozen=True)
class PairSet:
    """Pares de rangos (i, j), i < j, con su peso por par."""
    pairs: Tuple[Tuple[int, int], ...]
    weights: np.ndarray = field(repr=False)

    @property
    def first(self) -> np.ndarray:
        """Posiciones 0-based del primer elemento de cada par."""
        return np.array([i - 1 for i, _ in self.pairs], dtype=np.int64)

    @property
    def second(self) -> np.ndarray:
        return np.array([j - 1 for _, j in self.pairs], dtype=np.int64)

    def __len__(self):
        return len(self.pairs)


def generate_pairs(d: int) -> List[Tuple[int, int]]:
    """
    Genera los pares en el orden de la construcción recursiva:
    (1,2); (1,3),(2,3); (1,4),(2,4),(3,4); ...

    Cada nivel j combina el nuevo logit extraído con todos los anteriores.
    """
    if d < 2:
        raise ValueError(f"Se requiere d >= 2, recibido {d}")
    return [(i, j) for j in range(2, d + 1) for i in range(1, j)]


def _validar_rangos(*rangos: int) -> None:
    for r in rangos:
        if r < 1:
            raise ValueError(f"Los rangos empiezan en 1, recibido {r}")


def irw(r1: int, r2: int, p: AdwParams = AdwParams()) -> float:
    """Inverse Rank Weighting: 1 / (|r2 - r1| + ε)."""
    _validar_rangos(r1, r2)
    if r1 == r2:
        raise ValueError(f"IRW no está definido para un par consigo mismo (rango {r1})")
    return 1.0 / (abs(r2 - r1) + p.epsilon)


def erd(r1: int, r2: int, p: AdwParams = AdwParams()) -> float:
    """Exponential Rank Decay: δ · exp(-λ (r1 + r2))."""
    _validar_rangos(r1, r2)
    return p.delta * math.exp(-p.lambda_ * (r1 + r2))


def adw(r1: int, r2: int, p: AdwParams = AdwParams()) -> float:
    return irw(r1, r2, p) * erd(r1, r2, p)


@lru_cache(maxsize=256)
def build_pair_set(d: int, params: AdwParams = AdwParams(), adw_enabled: bool = True) -> PairSet:
    """
    Pares de la profundidad `d` con pesos ADW, o peso 1.0 uniforme cuando el
    ADW está desactivado. Los pesos son constantes para la diferenciación.
    """
    pairs = tuple(generate_pairs(d))
    if adw_enabled:
        weights = np.array([adw(i, j, params) for i, j in pairs], dtype=np.float64)
    else:
        weights = np.ones(len(pairs), dtype=np.float64)
    weights.setflags(write=False)
    return PairSet(pairs=pairs, weights=weights)
