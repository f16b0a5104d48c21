"""
SGD con momento y programación de tasa de aprendizaje por escalones con
calentamiento lineal.
"""
from typing import List, Sequence

import numpy as np

from tensor_core import Tensor


class SGD:
    """
    v ← μ·v + (g + wd·p);  p ← p − lr·v

    Con μ = 0 y wd = 0 el paso es exactamente p − lr·g.
    """

    def __init__(self, params: Sequence[Tensor], lr: float, momentum: float = 0.0, weight_decay: float = 0.0):
        if lr < 0:
            raise ValueError(f"lr debe ser >= 0, recibido {lr}")
        if not 0 <= momentum < 1:
            raise ValueError(f"momentum debe estar en [0, 1), recibido {momentum}")
        self.params = list(params)
        self.lr = lr
        self.momentum = momentum
        self.weight_decay = weight_decay
        self._velocidad: List[np.ndarray] = [None] * len(self.params)

    def zero_grad(self) -> None:
        for p in self.params:
            p.grad = None

    def step(self) -> None:
        for k, p in enumerate(self.params):
            if p.grad is None:
                continue
            g = p.grad
            if self.weight_decay != 0:
                g = g + self.weight_decay * p.data
            if self.momentum != 0:
                v = self._velocidad[k]
                v = g if v is None else self.momentum * v + g
                self._velocidad[k] = v
                g = v
            p.data = p.data - self.lr * g


class StepWarmupSchedule:
    """
    lr(e) = base·(e+1)/warmup durante el calentamiento y después
    base·factor^(número de épocas de caída ya alcanzadas).
    """

    def __init__(self, base_lr: float, warmup_epochs: int = 0, drop_epochs: Sequence[int] = (), factor: float = 0.1):
        drops = list(drop_epochs)
        if any(b <= a for a, b in zip(drops, drops[1:])):
            raise ValueError(f"Las épocas de caída deben ser estrictamente crecientes: {drops}")
        self.base_lr = base_lr
        self.warmup_epochs = warmup_epochs
        self.drop_epochs = drops
        self.factor = factor

    def lr_at(self, epoch: int) -> float:
        if epoch < self.warmup_epochs:
            return self.base_lr * (epoch + 1) / self.warmup_epochs
        pasadas = sum(1 for e in self.drop_epochs if epoch >= e)
        return self.base_lr * self.factor ** pasadas
