"""
Perceptrón multicapa para profesor y estudiante.
"""
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from errors import ShapeError
from tensor_core import Tensor, add, matmul, no_grad, relu


@dataclass(frozen=True)
class MlpSpec:
    """Arquitectura: entrada, capas ocultas, clases y semilla de inicialización."""
    input_dim: int
    hidden_dims: Tuple[int, ...]
    num_classes: int
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "hidden_dims", tuple(int(h) for h in self.hidden_dims))
        if self.input_dim < 1 or any(h < 1 for h in self.hidden_dims):
            raise ValueError(f"Todas las dimensiones deben ser >= 1: {self}")
        if self.num_classes < 2:
            raise ValueError(f"Se requieren al menos 2 clases, recibido {self.num_classes}")

    @property
    def dims(self) -> List[int]:
        return [self.input_dim, *self.hidden_dims, self.num_classes]


class Mlp:
    """
    Capas lineales con ReLU entre ellas; la última capa produce logits.

    Inicialización uniforme escalada por fan-in: U(-1/√fan_in, 1/√fan_in).
    """

    def __init__(self, spec: MlpSpec, parametros: Optional[Sequence[np.ndarray]] = None):
        self.spec = spec
        self.capas: List[Tuple[Tensor, Tensor]] = []
        dims = spec.dims
        if parametros is None:
            rng = np.random.default_rng(spec.seed)
            parametros = []
            for fan_in, fan_out in zip(dims[:-1], dims[1:]):
                limite = 1.0 / np.sqrt(fan_in)
                parametros.append(rng.uniform(-limite, limite, size=(fan_in, fan_out)))
                parametros.append(rng.uniform(-limite, limite, size=fan_out))
        if len(parametros) != 2 * (len(dims) - 1):
            raise ShapeError(f"Se esperaban {2 * (len(dims) - 1)} arreglos de parámetros, recibido {len(parametros)}")
        for k, (fan_in, fan_out) in enumerate(zip(dims[:-1], dims[1:])):
            w, b = np.asarray(parametros[2 * k]), np.asarray(parametros[2 * k + 1])
            if w.shape != (fan_in, fan_out) or b.shape != (fan_out,):
                raise ShapeError(f"Capa {k}: formas {w.shape}, {b.shape} no coinciden con {fan_in}→{fan_out}")
            self.capas.append((Tensor(w, requires_grad=True), Tensor(b, requires_grad=True)))

    def parameters(self) -> List[Tensor]:
        return [p for capa in self.capas for p in capa]

    def state(self) -> List[np.ndarray]:
        """Copia de los parámetros en orden de capas (W, b, W, b, ...)."""
        return [p.data.copy() for p in self.parameters()]

    def forward(self, x) -> Tensor:
        """Logits (B, C) para un lote (B, D), registrados en la cinta."""
        h = x if isinstance(x, Tensor) else Tensor(x)
        if h.data.ndim != 2 or h.shape[1] != self.spec.input_dim:
            raise ShapeError(f"Entrada {h.shape}, se esperaba (B, {self.spec.input_dim})")
        ultima = len(self.capas) - 1
        for k, (w, b) in enumerate(self.capas):
            h = add(matmul(h, w), b)
            if k < ultima:
                h = relu(h)
        return h

    def predict_logits(self, x) -> np.ndarray:
        """Logits sin registrar operaciones (profesor congelado, evaluación)."""
        with no_grad():
            return self.forward(x).data
