"""
Términos del objetivo de destilación.

Las funciones `*_terms` trabajan por lotes sobre tensores (B, n) y devuelven
un valor por muestra; el estudiante fluye por la cinta y el profesor entra
como constante. Las funciones escalares (`pair_loss`, `llki_loss`, ...)
evalúan una sola muestra y devuelven floats.
"""
import math
from dataclasses import asdict, dataclass, field
from typing import Iterable, Optional, Sequence, Tuple

import numpy as np

from config import DEFAULT_DEPTH, DEFAULT_TAU
from errors import ShapeError
from tensor_core import (
    Tensor, add, log_softmax_masked, logaddexp, mean, mul, no_grad, sub, take, tsum,
)
from .pair_combination import AdwParams, PairSet, build_pair_set
from .ranking_mask import STUDENT, TEACHER, rank_rows, validar_profundidad

MODO_LDRLD = "ldrld"
MODO_KD = "kd"


@dataclass(frozen=True)
class DistillConfig:
    """Escalares del objetivo y conmutadores de cada término."""
    d: int = DEFAULT_DEPTH
    tau: float = DEFAULT_TAU
    alpha: float = 1.0
    beta: float = 1.0
    gamma: float = 1.0
    adw: AdwParams = field(default_factory=AdwParams)
    adw_enabled: bool = True
    tau_square_scaling: bool = False
    use_pairs: bool = True
    use_llki: bool = True
    use_rntk: bool = True
    mode: str = MODO_LDRLD
    rank_source: str = STUDENT

    def __post_init__(self):
        if self.d < 2:
            raise ValueError(f"d debe ser >= 2, recibido {self.d}")
        if not self.tau > 0:
            raise ValueError(f"tau debe ser > 0, recibido {self.tau}")
        for nombre in ("alpha", "beta", "gamma"):
            if getattr(self, nombre) < 0:
                raise ValueError(f"{nombre} debe ser >= 0, recibido {getattr(self, nombre)}")
        if self.mode not in (MODO_LDRLD, MODO_KD):
            raise ValueError(f"Modo desconocido: {self.mode}")
        if self.rank_source not in (STUDENT, TEACHER):
            raise ValueError(f"Fuente de rango desconocida: {self.rank_source}")

    @property
    def escala(self) -> float:
        return self.tau ** 2 if self.tau_square_scaling else 1.0


@dataclass(frozen=True)
class LossBreakdown:
    """Valores medios por lote de cada término y del total."""
    task: float
    weighted_pairs: float = 0.0
    llki: float = 0.0
    rntk: float = 0.0
    kd: float = 0.0
    total: float = 0.0

    def as_dict(self) -> dict:
        return asdict(self)

    @staticmethod
    def promedio(desgloses: Sequence["LossBreakdown"], pesos: Sequence[float]) -> "LossBreakdown":
        """Promedio ponderado (por tamaño de lote) de varios desgloses."""
        pesos = np.asarray(pesos, dtype=np.float64)
        if len(desgloses) == 0 or pesos.sum() <= 0:
            raise ValueError("Se requiere al menos un desglose con peso positivo")
        campos = {}
        for nombre in LossBreakdown.__dataclass_fields__:
            valores = np.array([getattr(b, nombre) for b in desgloses], dtype=np.float64)
            campos[nombre] = float(np.dot(valores, pesos) / pesos.sum())
        return LossBreakdown(**campos)


# ---------------------------------------------------------------------------
# Términos por lote
# ---------------------------------------------------------------------------

def cross_entropy_terms(logits: Tensor, labels: np.ndarray) -> Tensor:
    """Entropía cruzada por muestra con logits crudos (temperatura 1)."""
    lp = log_softmax_masked(logits, None, 1.0)
    return mul(tsum(take(lp, np.asarray(labels, dtype=np.int64)[:, None]), axis=-1), -1.0)


def softmax_kl_terms(t: np.ndarray, s: Tensor, tau: float) -> Tensor:
    """KL(σ(t/τ) ‖ σ(s/τ)) por fila, normalizando solo sobre las columnas dadas."""
    with no_grad():
        lpt = log_softmax_masked(Tensor(t), None, tau).data
    lps = log_softmax_masked(s, None, tau)
    return tsum(mul(sub(lpt, lps), np.exp(lpt)), axis=-1)


def _pair_log_probs(top: Tensor, pares: PairSet, tau: float) -> Tuple[Tensor, Tensor]:
    a = mul(take(top, pares.first), 1.0 / tau)
    b = mul(take(top, pares.second), 1.0 / tau)
    lse = logaddexp(a, b)
    return sub(a, lse), sub(b, lse)


def pair_loss_terms(top_t: np.ndarray, top_s: Tensor, pares: PairSet, tau: float) -> Tensor:
    """Σ_(i,j) w_ij · KL sobre las distribuciones de dos puntos de cada par."""
    with no_grad():
        lti, ltj = _pair_log_probs(Tensor(top_t), pares, tau)
    lsi, lsj = _pair_log_probs(top_s, pares, tau)
    kl = add(mul(sub(lti.data, lsi), np.exp(lti.data)),
             mul(sub(ltj.data, lsj), np.exp(ltj.data)))
    return tsum(mul(kl, pares.weights), axis=-1)


def _validar_etiquetas(labels, filas: int, num_classes: int) -> np.ndarray:
    labels = np.asarray(labels, dtype=np.int64).reshape(-1)
    if labels.size != filas:
        raise ShapeError(f"{labels.size} etiquetas para {filas} muestras")
    if labels.size and (labels.min() < 0 or labels.max() >= num_classes):
        raise ValueError(f"Etiqueta fuera de rango para C={num_classes}: {labels}")
    return labels


def ldrld_objective(
    z_t,
    z_s: Tensor,
    labels,
    cfg: DistillConfig,
    order: Optional[np.ndarray] = None,
) -> Tuple[Tensor, LossBreakdown]:
    """
    Objetivo completo sobre un lote: media de L_Task + α(L^w + L_LLKI) + β L_RNTK
    (o L_Task + γ L_KD en modo kd).

    Args:
        z_t: Logits del profesor (B, C), constantes.
        z_s: Logits del estudiante (B, C) en la cinta.
        labels: Etiquetas (B,).
        cfg: Configuración del objetivo.
        order: Permutaciones (B, C) fijas; si es None se calculan de z_s.
            El orden nunca recibe gradiente.

    Returns:
        (total escalar diferenciable, LossBreakdown con los valores medios)
    """
    z_t = np.asarray(z_t, dtype=np.float64)
    if z_s.data.ndim != 2 or z_t.shape != z_s.shape:
        raise ShapeError(f"Logits desalineados: profesor {z_t.shape}, estudiante {z_s.shape}")
    filas, num_classes = z_s.shape
    labels = _validar_etiquetas(labels, filas, num_classes)
    validar_profundidad(cfg.d, num_classes)

    task = mean(cross_entropy_terms(z_s, labels))

    if cfg.mode == MODO_KD:
        kd = mul(mean(softmax_kl_terms(z_t, z_s, cfg.tau)), cfg.escala)
        total = task if cfg.gamma == 0 else add(task, mul(kd, cfg.gamma))
        return total, LossBreakdown(task=task.item(), kd=kd.item(), total=total.item())

    if order is None:
        order = rank_rows(z_s.data if cfg.rank_source == STUDENT else z_t)
    order = np.asarray(order, dtype=np.int64).reshape(filas, num_classes)
    top_idx, rest_idx = order[:, :cfg.d], order[:, cfg.d:]
    top_t = np.take_along_axis(z_t, top_idx, axis=1)
    top_s = take(z_s, top_idx)

    cero = Tensor(0.0)
    pares = cero
    if cfg.use_pairs:
        conjunto = build_pair_set(cfg.d, cfg.adw, cfg.adw_enabled)
        pares = mul(mean(pair_loss_terms(top_t, top_s, conjunto, cfg.tau)), cfg.escala)
    llki = cero
    if cfg.use_llki:
        llki = mul(mean(softmax_kl_terms(top_t, top_s, cfg.tau)), cfg.escala)
    rntk = cero
    if cfg.use_rntk and num_classes - cfg.d >= 2:
        rest_t = np.take_along_axis(z_t, rest_idx, axis=1)
        rntk = mul(mean(softmax_kl_terms(rest_t, take(z_s, rest_idx), cfg.tau)), cfg.escala)

    total = task
    if cfg.alpha != 0 and (cfg.use_pairs or cfg.use_llki):
        total = add(total, mul(add(pares, llki), cfg.alpha))
    if cfg.beta != 0 and rntk is not cero:
        total = add(total, mul(rntk, cfg.beta))

    return total, LossBreakdown(
        task=task.item(),
        weighted_pairs=pares.item(),
        llki=llki.item(),
        rntk=rntk.item(),
        total=total.item(),
    )


# ---------------------------------------------------------------------------
# Evaluación de una sola muestra
# ---------------------------------------------------------------------------

def _fila(x) -> np.ndarray:
    return np.asarray(x, dtype=np.float64).reshape(1, -1)


def kl_two_point(pt: Iterable[float], ps: Iterable[float]) -> float:
    """
    Σ pt log(pt/ps) para dos distribuciones de dos puntos, con 0·log(0/q) = 0.
    """
    pt, ps = tuple(float(v) for v in pt), tuple(float(v) for v in ps)
    for nombre, p in (("pt", pt), ("ps", ps)):
        if len(p) != 2 or min(p) < 0 or abs(sum(p) - 1.0) > 1e-9:
            raise ValueError(f"{nombre} no es una distribución de dos puntos: {p}")
    total = 0.0
    for a, b in zip(pt, ps):
        if a == 0.0:
            continue
        if b == 0.0:
            raise ValueError(f"Divergencia infinita: ps=0 donde pt={a}")
        total += a * math.log(a / b)
    return total


def pair_loss(top_t, top_s, cfg: DistillConfig) -> float:
    """Pérdida por pares (ponderada por ADW si cfg.adw_enabled) de una muestra."""
    top_t, top_s = _fila(top_t), _fila(top_s)
    d = top_s.shape[1]
    if d < 2 or top_t.shape != top_s.shape:
        raise ValueError(f"Se requieren arreglos alineados con d >= 2, recibido {top_t.shape} y {top_s.shape}")
    conjunto = build_pair_set(d, cfg.adw, cfg.adw_enabled)
    with no_grad():
        valor = pair_loss_terms(top_t, Tensor(top_s), conjunto, cfg.tau)
    return float(valor.data[0]) * cfg.escala


def llki_loss(top_t, top_s, tau: float) -> float:
    top_t, top_s = _fila(top_t), _fila(top_s)
    if top_s.shape[1] < 2:
        raise ValueError(f"LLKI requiere d >= 2, recibido d={top_s.shape[1]}")
    with no_grad():
        return float(softmax_kl_terms(top_t, Tensor(top_s), tau).data[0])


def rntk_loss(rest_t, rest_s, tau: float) -> float:
    """KL sobre las C-d clases restantes; vale 0 si quedan menos de dos."""
    rest_t, rest_s = _fila(rest_t), _fila(rest_s)
    if rest_s.shape[1] < 2:
        return 0.0
    with no_grad():
        return float(softmax_kl_terms(rest_t, Tensor(rest_s), tau).data[0])


def vanilla_kd_loss(z_t, z_s, tau: float) -> float:
    z_t, z_s = _fila(z_t), _fila(z_s)
    if z_s.shape[1] < 2:
        raise ValueError("KD requiere al menos 2 clases")
    with no_grad():
        return float(softmax_kl_terms(z_t, Tensor(z_s), tau).data[0])


def ldrld_total(z_t, z_s, label: int, cfg: DistillConfig) -> LossBreakdown:
    """Desglose completo del objetivo para una muestra."""
    with no_grad():
        _, desglose = ldrld_objective(_fila(z_t), Tensor(_fila(z_s)), [label], cfg)
    return desglose
