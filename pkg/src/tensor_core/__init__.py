# Núcleo numérico: tensores float64 y diferenciación en modo reverso
from .tensor import (
    Tensor,
    ComputationTape,
    as_tensor,
    no_grad,
    add,
    sub,
    mul,
    matmul,
    relu,
    logaddexp,
    tsum,
    mean,
    take,
    softmax_masked,
    log_softmax_masked,
)

__all__ = [
    'Tensor',
    'ComputationTape',
    'as_tensor',
    'no_grad',
    'add',
    'sub',
    'mul',
    'matmul',
    'relu',
    'logaddexp',
    'tsum',
    'mean',
    'take',
    'softmax_masked',
    'log_softmax_masked',
]
