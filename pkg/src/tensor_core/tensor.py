"""
Tensores densos de 1 y 2 dimensiones (float64) con diferenciación en modo reverso.

Cada operación registra sus padres y una función de retropropagación; la
cinta (ComputationTape) se construye desde la pérdida y se recorre en orden
topológico inverso.
"""
import threading
from contextlib import contextmanager
from typing import Callable, List, Optional, Sequence, Tuple, Union

import numpy as np

from errors import NonFiniteError, ShapeError

_estado = threading.local()

Retro = Callable[[np.ndarray], Sequence[Optional[np.ndarray]]]


def grabando() -> bool:
    """True si el hilo actual registra operaciones en la cinta."""
    return getattr(_estado, "grabando", True)


@contextmanager
def no_grad():
    """Desactiva el registro de operaciones en el hilo actual."""
    previo = grabando()
    _estado.grabando = False
    try:
        yield
    finally:
        _estado.grabando = previo


class Tensor:
    """
    Arreglo denso de float64 con gradiente opcional.

    Los datos no se modifican después de construirse; solo `grad` se acumula.
    """

    def __init__(
        self,
        data,
        requires_grad: bool = False,
        _padres: Tuple["Tensor", ...] = (),
        _retro: Optional[Retro] = None,
        _op: str = "hoja",
    ):
        arr = np.array(data, dtype=np.float64)
        if arr.ndim > 2:
            raise ShapeError(f"Solo se admiten tensores de hasta 2 dimensiones, recibido {arr.shape}")
        if not np.all(np.isfinite(arr)):
            raise NonFiniteError(f"Valores no finitos en el resultado de '{_op}'")
        self.data = arr
        self.requires_grad = requires_grad
        self.grad: Optional[np.ndarray] = None
        self._padres = _padres
        self._retro = _retro
        self.op = _op

    @property
    def shape(self) -> Tuple[int, ...]:
        return self.data.shape

    @property
    def es_hoja(self) -> bool:
        return self._retro is None

    def item(self) -> float:
        if self.data.size != 1:
            raise ShapeError(f"item() requiere un escalar, forma {self.shape}")
        return float(self.data.reshape(()))

    def numpy(self) -> np.ndarray:
        return self.data.copy()

    def __repr__(self):
        return f"Tensor(shape={self.shape}, op={self.op}, requires_grad={self.requires_grad})"

    def __add__(self, otro): return add(self, otro)
    def __radd__(self, otro): return add(otro, self)
    def __sub__(self, otro): return sub(self, otro)
    def __rsub__(self, otro): return sub(otro, self)
    def __mul__(self, otro): return mul(self, otro)
    def __rmul__(self, otro): return mul(otro, self)
    def __neg__(self): return mul(self, -1.0)
    def __matmul__(self, otro): return matmul(self, otro)

    def backward(self) -> None:
        """Propaga dLoss/dHoja a todas las hojas con requires_grad."""
        if self.data.ndim != 0 and self.data.size != 1:
            raise ShapeError(f"backward() requiere una pérdida escalar, forma {self.shape}")
        ComputationTape.desde(self).replay(self)


class ComputationTape:
    """
    Lista ordenada de nodos alcanzables desde una pérdida.

    El orden es topológico (padres antes que hijos); `replay` lo recorre al
    revés y visita cada nodo exactamente una vez.
    """

    def __init__(self, nodos: List[Tensor]):
        self.nodos = nodos

    def __len__(self):
        return len(self.nodos)

    @classmethod
    def desde(cls, raiz: Tensor) -> "ComputationTape":
        orden: List[Tensor] = []
        visitados = set()
        pila = [(raiz, False)]
        while pila:
            nodo, expandido = pila.pop()
            if expandido:
                orden.append(nodo)
                continue
            if id(nodo) in visitados:
                continue
            visitados.add(id(nodo))
            pila.append((nodo, True))
            for padre in reversed(nodo._padres):
                if id(padre) not in visitados:
                    pila.append((padre, False))
        return cls(orden)

    def replay(self, raiz: Tensor) -> None:
        grads = {id(raiz): np.ones_like(raiz.data)}
        for nodo in reversed(self.nodos):
            g = grads.pop(id(nodo), None)
            if g is None:
                continue
            if nodo.es_hoja:
                if nodo.requires_grad:
                    nodo.grad = g.copy() if nodo.grad is None else nodo.grad + g
                continue
            for padre, gp in zip(nodo._padres, nodo._retro(g)):
                if gp is None or not padre.requires_grad:
                    continue
                previo = grads.get(id(padre))
                grads[id(padre)] = gp if previo is None else previo + gp


Operando = Union[Tensor, float, int, np.ndarray]


def as_tensor(x: Operando) -> Tensor:
    return x if isinstance(x, Tensor) else Tensor(x)


def _resultado(data: np.ndarray, padres: Tuple[Tensor, ...], retro: Retro, op: str) -> Tensor:
    if grabando() and any(p.requires_grad for p in padres):
        return Tensor(data, requires_grad=True, _padres=padres, _retro=retro, _op=op)
    return Tensor(data, _op=op)


def _reducir_a(g: np.ndarray, forma: Tuple[int, ...]) -> np.ndarray:
    """Suma los ejes agregados por broadcasting hasta recuperar `forma`."""
    while g.ndim > len(forma):
        g = g.sum(axis=0)
    for eje, n in enumerate(forma):
        if n == 1 and g.shape[eje] != 1:
            g = g.sum(axis=eje, keepdims=True)
    return g


def _compatibles(a: Tensor, b: Tensor, op: str) -> None:
    try:
        np.broadcast_shapes(a.shape, b.shape)
    except ValueError:
        raise ShapeError(f"{op}: formas incompatibles {a.shape} y {b.shape}") from None


def add(a: Operando, b: Operando) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _compatibles(a, b, "add")
    return _resultado(
        a.data + b.data, (a, b),
        lambda g: (_reducir_a(g, a.shape), _reducir_a(g, b.shape)),
        "add",
    )


def sub(a: Operando, b: Operando) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _compatibles(a, b, "sub")
    return _resultado(
        a.data - b.data, (a, b),
        lambda g: (_reducir_a(g, a.shape), _reducir_a(-g, b.shape)),
        "sub",
    )


def mul(a: Operando, b: Operando) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _compatibles(a, b, "mul")
    return _resultado(
        a.data * b.data, (a, b),
        lambda g: (_reducir_a(g * b.data, a.shape), _reducir_a(g * a.data, b.shape)),
        "mul",
    )


def matmul(a: Tensor, b: Tensor) -> Tensor:
    """Producto matricial m×k por k×n."""
    a, b = as_tensor(a), as_tensor(b)
    if a.data.ndim != 2 or b.data.ndim != 2 or a.shape[1] != b.shape[0]:
        raise ShapeError(f"matmul: formas incompatibles {a.shape} y {b.shape}")
    return _resultado(
        a.data @ b.data, (a, b),
        lambda g: (g @ b.data.T, a.data.T @ g),
        "matmul",
    )


def relu(x: Tensor) -> Tensor:
    activo = x.data > 0
    return _resultado(np.maximum(x.data, 0.0), (x,), lambda g: (g * activo,), "relu")


def logaddexp(a: Tensor, b: Tensor) -> Tensor:
    a, b = as_tensor(a), as_tensor(b)
    _compatibles(a, b, "logaddexp")
    out = np.logaddexp(a.data, b.data)
    return _resultado(
        out, (a, b),
        lambda g: (_reducir_a(g * np.exp(a.data - out), a.shape),
                   _reducir_a(g * np.exp(b.data - out), b.shape)),
        "logaddexp",
    )


def tsum(x: Tensor, axis: Optional[int] = None) -> Tensor:
    """Suma total (axis=None) o a lo largo del último eje (axis=-1)."""
    if axis is None:
        return _resultado(np.sum(x.data), (x,), lambda g: (np.broadcast_to(g, x.shape).copy(),), "sum")
    if axis not in (-1, x.data.ndim - 1):
        raise ShapeError("tsum solo reduce el último eje")
    return _resultado(
        np.sum(x.data, axis=-1), (x,),
        lambda g: (np.broadcast_to(np.expand_dims(g, -1), x.shape).copy(),),
        "sum",
    )


def mean(x: Tensor) -> Tensor:
    n = x.data.size
    if n == 0:
        raise ShapeError("mean de un tensor vacío")
    return _resultado(
        np.sum(x.data) / n, (x,),
        lambda g: (np.full(x.shape, g / n),),
        "mean",
    )


def take(x: Tensor, indices: np.ndarray) -> Tensor:
    """
    Selecciona posiciones a lo largo del último eje.

    Para x de forma (B, C) los índices son (B, k) o (k,) (mismos índices en
    cada fila); para x de forma (C,) son (k,). Los índices repetidos
    acumulan gradiente.
    """
    idx = np.asarray(indices, dtype=np.int64)
    if x.data.ndim == 1:
        if idx.ndim != 1:
            raise ShapeError("take: índices 1-D requeridos para un tensor 1-D")
        data = x.data[idx]

        def retro(g):
            gx = np.zeros_like(x.data)
            np.add.at(gx, idx, g)
            return (gx,)
    else:
        filas = x.shape[0]
        if idx.ndim == 1:
            idx = np.broadcast_to(idx, (filas, idx.shape[0]))
        if idx.shape[0] != filas:
            raise ShapeError(f"take: {idx.shape[0]} filas de índices para {filas} filas")
        data = np.take_along_axis(x.data, idx, axis=1)
        rows = np.arange(filas)[:, None]

        def retro(g):
            gx = np.zeros_like(x.data)
            np.add.at(gx, (rows, idx), g)
            return (gx,)
    return _resultado(data, (x,), retro, "take")


def _preparar_mascara(z: Tensor, mask, temperature: float) -> np.ndarray:
    if temperature <= 0:
        raise ValueError(f"La temperatura debe ser positiva, recibido {temperature}")
    if mask is None:
        m = np.ones(z.shape, dtype=bool)
    else:
        m = np.broadcast_to(np.asarray(mask, dtype=bool), z.shape)
    if z.shape[-1] == 0 or not np.all(m.any(axis=-1)):
        raise ValueError("La máscara no selecciona ninguna entrada")
    return m


def _softmax_base(z: Tensor, m: np.ndarray, temperature: float):
    s = z.data / temperature
    maximo = np.max(np.where(m, s, -np.inf), axis=-1, keepdims=True)
    e = np.where(m, np.exp(np.where(m, s - maximo, 0.0)), 0.0)
    total = np.sum(e, axis=-1, keepdims=True)
    return s, maximo, e / total, np.log(total)


def softmax_masked(z: Tensor, mask=None, temperature: float = 1.0) -> Tensor:
    """
    exp(z_i/τ) / Σ_{mask} exp(z_j/τ) sobre las entradas de la máscara; las
    excluidas valen exactamente 0. Se normaliza por filas en tensores 2-D.
    """
    z = as_tensor(z)
    m = _preparar_mascara(z, mask, temperature)
    _, _, p, _ = _softmax_base(z, m, temperature)

    def retro(g):
        interno = np.sum(g * p, axis=-1, keepdims=True)
        return (p * (g - interno) / temperature,)

    return _resultado(p, (z,), retro, "softmax_masked")


def log_softmax_masked(z: Tensor, mask=None, temperature: float = 1.0) -> Tensor:
    """Logaritmo de softmax_masked; las entradas excluidas valen 0."""
    z = as_tensor(z)
    m = _preparar_mascara(z, mask, temperature)
    s, maximo, p, log_total = _softmax_base(z, m, temperature)
    out = np.where(m, s - maximo - log_total, 0.0)

    def retro(g):
        gm = np.where(m, g, 0.0)
        return (np.where(m, gm - p * np.sum(gm, axis=-1, keepdims=True), 0.0) / temperature,)

    return _resultado(out, (z,), retro, "log_softmax_masked")
