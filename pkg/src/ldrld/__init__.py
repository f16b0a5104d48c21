# Objetivo LDRLD: orden de rango, pares ADW y términos de pérdida
from .ranking_mask import (
    RankOrder, TopSplit, rank_by_student, rank_by_teacher, rank_rows, split_top_d,
)
from .pair_combination import AdwParams, PairSet, adw, build_pair_set, erd, generate_pairs, irw
from .losses import (
    DistillConfig,
    LossBreakdown,
    cross_entropy_terms,
    kl_two_point,
    ldrld_objective,
    ldrld_total,
    llki_loss,
    pair_loss,
    rntk_loss,
    vanilla_kd_loss,
)

__all__ = [
    'RankOrder',
    'TopSplit',
    'rank_by_student',
    'rank_by_teacher',
    'rank_rows',
    'split_top_d',
    'AdwParams',
    'PairSet',
    'adw',
    'build_pair_set',
    'erd',
    'generate_pairs',
    'irw',
    'DistillConfig',
    'LossBreakdown',
    'cross_entropy_terms',
    'kl_two_point',
    'ldrld_objective',
    'ldrld_total',
    'llki_loss',
    'pair_loss',
    'rntk_loss',
    'vanilla_kd_loss',
]
