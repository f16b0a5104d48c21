# Oráculos de referencia para pruebas diferenciales
from .oracles import (
    fd_gradient,
    oracle_kl,
    oracle_ldrld,
    oracle_ldrld_terms,
    oracle_matmul,
    oracle_pair_loss,
    oracle_rank_selection_sort,
    oracle_softmax,
    oracle_softmax_kl,
    oracle_topd_recursive,
)

__all__ = [
    'fd_gradient',
    'oracle_kl',
    'oracle_ldrld',
    'oracle_ldrld_terms',
    'oracle_matmul',
    'oracle_pair_loss',
    'oracle_rank_selection_sort',
    'oracle_softmax',
    'oracle_softmax_kl',
    'oracle_topd_recursive',
]
