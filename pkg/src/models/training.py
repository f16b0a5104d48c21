"""
Entrenamiento supervisado y bucle de destilación.

El bucle de `distill` hace, por mini-lote: forward del profesor (sin
gradiente), forward del estudiante, objetivo por muestra, media, backward
y paso de SGD.
"""
import logging
import math
import time
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from data import Dataset, iterar_minibatches
from errors import DatasetError, ShapeError
from ldrld import DistillConfig, LossBreakdown, cross_entropy_terms, ldrld_objective
from ldrld.ranking_mask import validar_profundidad
from tensor_core import Tensor, mean
from .mlp import Mlp, MlpSpec
from .optim import SGD, StepWarmupSchedule

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class TrainSpec:
    epochs: int
    batch_size: int
    lr: float
    momentum: float = 0.9
    weight_decay: float = 5e-4
    warmup_epochs: int = 0
    lr_drop_epochs: Tuple[int, ...] = ()
    lr_drop_factor: float = 0.1
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "lr_drop_epochs", tuple(int(e) for e in self.lr_drop_epochs))
        if self.epochs < 0 or self.batch_size < 1:
            raise ValueError(f"epochs >= 0 y batch_size >= 1 requeridos: {self}")
        if self.lr < 0:
            raise ValueError(f"lr debe ser >= 0, recibido {self.lr}")
        if not 0 <= self.momentum < 1:
            raise ValueError(f"momentum debe estar en [0, 1), recibido {self.momentum}")
        drops = self.lr_drop_epochs
        if any(b <= a for a, b in zip(drops, drops[1:])):
            raise ValueError(f"lr_drop_epochs debe ser estrictamente creciente: {drops}")

    @classmethod
    def desk(cls, epochs: int, batch_size: int = 64, lr: float = 0.05, seed: int = 0, warmup_epochs: int = 2) -> "TrainSpec":
        """Receta por escalones escalada: caídas al 62%, 75% y 87% de las épocas."""
        drops = sorted({max(1, int(round(epochs * f))) for f in (0.62, 0.75, 0.87)})
        return cls(
            epochs=epochs, batch_size=batch_size, lr=lr, momentum=0.9, weight_decay=5e-4,
            warmup_epochs=min(warmup_epochs, epochs), lr_drop_epochs=tuple(drops),
            lr_drop_factor=0.1, seed=seed,
        )

    def schedule(self) -> StepWarmupSchedule:
        return StepWarmupSchedule(self.lr, self.warmup_epochs, self.lr_drop_epochs, self.lr_drop_factor)


@dataclass(frozen=True)
class EpochStats:
    epoch: int
    lr: float
    loss: LossBreakdown
    train_accuracy: float
    eval_accuracy: float
    seconds: float = field(default=0.0, compare=False)


@dataclass
class TrainRecord:
    """Historial por época, parámetros finales y semilla usada."""
    epochs: List[EpochStats]
    parameters: List[np.ndarray]
    seed: int

    @property
    def final_eval_accuracy(self) -> float:
        return self.epochs[-1].eval_accuracy if self.epochs else float("nan")

    @property
    def final_train_accuracy(self) -> float:
        return self.epochs[-1].train_accuracy if self.epochs else float("nan")


FuncionPerdida = Callable[[np.ndarray, np.ndarray, Tensor], Tuple[Tensor, LossBreakdown]]


def accuracy(model: Mlp, dataset: Dataset, k: int = 1) -> float:
    """Fracción de muestras cuya etiqueta está entre los k logits mayores."""
    logits = model.predict_logits(dataset.features)
    if k == 1:
        aciertos = np.argmax(logits, axis=1) == dataset.labels
    else:
        k = min(k, logits.shape[1])
        top = np.argsort(-logits, axis=1, kind="stable")[:, :k]
        aciertos = np.any(top == dataset.labels[:, None], axis=1)
    return float(np.mean(aciertos))


def _validar(spec: MlpSpec, train: Dataset, eval_data: Optional[Dataset]) -> None:
    for ds in filter(None, (train, eval_data)):
        if ds.n < 1:
            raise DatasetError("Conjunto de datos vacío")
        if ds.num_classes != spec.num_classes:
            raise ShapeError(f"El conjunto tiene C={ds.num_classes} pero el modelo C={spec.num_classes}")
        if ds.dim != spec.input_dim:
            raise ShapeError(f"El conjunto tiene D={ds.dim} pero el modelo espera {spec.input_dim}")


def _entrenar(
    modelo: Mlp,
    tspec: TrainSpec,
    train: Dataset,
    eval_data: Optional[Dataset],
    perdida: FuncionPerdida,
    etiqueta: str,
) -> TrainRecord:
    optimizador = SGD(modelo.parameters(), tspec.lr, tspec.momentum, tspec.weight_decay)
    programa = tspec.schedule()
    evaluacion = eval_data if eval_data is not None else train
    historial: List[EpochStats] = []

    for epoch in range(tspec.epochs):
        inicio = time.perf_counter()
        optimizador.lr = programa.lr_at(epoch)
        desgloses, pesos, aciertos = [], [], 0

        for idx in iterar_minibatches(train.n, tspec.batch_size, tspec.seed, epoch):
            xb, yb = train.features[idx], train.labels[idx]
            logits = modelo.forward(xb)
            total, desglose = perdida(xb, yb, logits)
            optimizador.zero_grad()
            total.backward()
            optimizador.step()
            aciertos += int(np.sum(np.argmax(logits.data, axis=1) == yb))
            desgloses.append(desglose)
            pesos.append(len(idx))

        stats = EpochStats(
            epoch=epoch,
            lr=optimizador.lr,
            loss=LossBreakdown.promedio(desgloses, pesos),
            train_accuracy=aciertos / train.n,
            eval_accuracy=accuracy(modelo, evaluacion),
            seconds=time.perf_counter() - inicio,
        )
        if not math.isfinite(stats.loss.total):
            raise ArithmeticError(f"{etiqueta}: pérdida no finita en la época {epoch}")
        historial.append(stats)
        logger.debug(
            "%s época %d: lr=%.4g loss=%.5f train=%.4f eval=%.4f",
            etiqueta, epoch, stats.lr, stats.loss.total, stats.train_accuracy, stats.eval_accuracy,
        )

    return TrainRecord(epochs=historial, parameters=modelo.state(), seed=tspec.seed)


def _perdida_supervisada(xb: np.ndarray, yb: np.ndarray, logits: Tensor) -> Tuple[Tensor, LossBreakdown]:
    task = mean(cross_entropy_terms(logits, yb))
    valor = task.item()
    return task, LossBreakdown(task=valor, total=valor)


def train_supervised(
    spec: MlpSpec,
    tspec: TrainSpec,
    train: Dataset,
    eval_data: Optional[Dataset] = None,
) -> Tuple[Mlp, TrainRecord]:
    """
    Entrena un modelo solo con entropía cruzada.

    Args:
        spec: Arquitectura (la semilla fija la inicialización).
        tspec: Hiperparámetros (la semilla fija el barajado).
        train: Conjunto de entrenamiento.
        eval_data: Conjunto de evaluación; si es None se evalúa sobre train.

    Returns:
        Tupla (modelo entrenado, registro de entrenamiento).
    """
    _validar(spec, train, eval_data)
    modelo = Mlp(spec)
    registro = _entrenar(modelo, tspec, train, eval_data, _perdida_supervisada, "supervisado")
    return modelo, registro


def distill(
    teacher: Mlp,
    spec: MlpSpec,
    tspec: TrainSpec,
    cfg: DistillConfig,
    train: Dataset,
    eval_data: Optional[Dataset] = None,
) -> Tuple[Mlp, TrainRecord]:
    """
    Destila un estudiante nuevo desde un profesor congelado.

    Con α = β = 0 (o γ = 0 en modo kd) la trayectoria es idéntica bit a bit
    a `train_supervised` con las mismas semillas.
    """
    if teacher.spec.num_classes != spec.num_classes:
        raise ShapeError(
            f"El profesor produce {teacher.spec.num_classes} clases y el estudiante {spec.num_classes}"
        )
    if teacher.spec.input_dim != spec.input_dim:
        raise ShapeError(f"El profesor espera D={teacher.spec.input_dim} y el estudiante D={spec.input_dim}")
    validar_profundidad(cfg.d, spec.num_classes)
    _validar(spec, train, eval_data)

    def perdida(xb: np.ndarray, yb: np.ndarray, logits: Tensor) -> Tuple[Tensor, LossBreakdown]:
        z_t = teacher.predict_logits(xb)
        return ldrld_objective(z_t, logits, yb, cfg)

    estudiante = Mlp(spec)
    registro = _entrenar(estudiante, tspec, train, eval_data, perdida, f"destilación d={cfg.d}")
    return estudiante, registro
