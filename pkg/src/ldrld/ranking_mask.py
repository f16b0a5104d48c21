"""
Orden de rango determinado por el estudiante y separación top-d / resto.

La extracción recursiva (extraer el máximo, excluirlo, repetir) equivale a un
único argsort descendente estable seguido de un corte; la versión recursiva
vive en el módulo `oracle` como referencia de pruebas.
"""
from dataclasses import dataclass

import numpy as np

STUDENT = "student"
TEACHER = "teacher"


@dataclass(frozen=True)
class RankOrder:
    """Permutación de clases en orden descendente de logits."""
    perm: np.ndarray
    source: str = STUDENT

    def __post_init__(self):
        perm = np.asarray(self.perm, dtype=np.int64)
        if perm.ndim != 1 or not np.array_equal(np.sort(perm), np.arange(perm.size)):
            raise ValueError(f"perm no es una permutación de 0..C-1: {perm}")
        object.__setattr__(self, "perm", perm)


@dataclass(frozen=True)
class TopSplit:
    """Logits del profesor y del estudiante en los rangos 1..d y d+1..C."""
    top_t: np.ndarray
    top_s: np.ndarray
    rest_t: np.ndarray
    rest_s: np.ndarray
    d: int


def rank_rows(z: np.ndarray) -> np.ndarray:
    """
    Argsort descendente por filas; en empates gana el índice de clase menor.

    Args:
        z: Logits de forma (C,) o (B, C).

    Returns:
        Permutaciones con la misma forma que `z`.
    """
    z = np.asarray(z, dtype=np.float64)
    if z.shape[-1] < 2:
        raise ValueError(f"Se requieren al menos 2 clases, recibido C={z.shape[-1]}")
    return np.argsort(-z, axis=-1, kind="stable")


def rank_by_student(z_s) -> RankOrder:
    return RankOrder(rank_rows(np.asarray(z_s, dtype=np.float64).reshape(-1)), STUDENT)


def rank_by_teacher(z_t) -> RankOrder:
    """Solo para diagnóstico: ordena según los logits del profesor."""
    return RankOrder(rank_rows(np.asarray(z_t, dtype=np.float64).reshape(-1)), TEACHER)


def validar_profundidad(d: int, num_classes: int) -> None:
    if not 2 <= d <= num_classes:
        raise ValueError(f"La profundidad d={d} debe cumplir 2 <= d <= C={num_classes}")


def split_top_d(z_t, z_s, order: RankOrder, d: int, diagnostico: bool = False) -> TopSplit:
    """
    Separa los logits de ambos roles con la MISMA secuencia de índices.

    Args:
        z_t: Logits del profesor (C,).
        z_s: Logits del estudiante (C,).
        order: Orden de rango obtenido de z_s.
        d: Profundidad, 2 <= d <= C.
        diagnostico: Acepta un orden del profesor (solo diagnóstico).

    Returns:
        TopSplit con los rangos 1..d en `top_*` y d+1..C en `rest_*`.
    """
    if order.source != STUDENT and not diagnostico:
        raise ValueError(f"El orden debe venir del estudiante, recibido '{order.source}'")
    z_t = np.asarray(z_t, dtype=np.float64).reshape(-1)
    z_s = np.asarray(z_s, dtype=np.float64).reshape(-1)
    if z_t.shape != z_s.shape or z_s.size != order.perm.size:
        raise ValueError(f"Formas desalineadas: z_t {z_t.shape}, z_s {z_s.shape}, perm {order.perm.shape}")
    validar_profundidad(d, z_s.size)
    top, rest = order.perm[:d], order.perm[d:]
    return TopSplit(
        top_t=z_t[top], top_s=z_s[top],
        rest_t=z_t[rest], rest_s=z_s[rest],
        d=d,
    )
