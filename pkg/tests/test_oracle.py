import math

import numpy as np
import pytest

from oracle import (
    fd_gradient, oracle_kl, oracle_ldrld, oracle_ldrld_terms, oracle_matmul, oracle_pair_loss,
    oracle_rank_selection_sort, oracle_softmax, oracle_topd_recursive,
)
from ldrld import DistillConfig


def test_matmul_a_mano():
    assert oracle_matmul([[1, 2], [3, 4]], [[5], [6]]) == [[17.0], [39.0]]


def test_seleccion_con_empates():
    assert oracle_rank_selection_sort([1.0, 3.0, 3.0, 0.0]) == [1, 2, 0, 3]


def test_extraccion_recursiva():
    split = oracle_topd_recursive([1.0, 2.0, 3.0, 4.0], [4.0, 3.0, 2.0, 1.0], 2)
    assert split.top_t.tolist() == [1.0, 2.0]
    assert split.rest_s.tolist() == [2.0, 1.0]


def test_softmax_y_kl():
    p = oracle_softmax([0.0, 0.0], 3.0)
    assert p == [0.5, 0.5]
    assert oracle_kl([1.0, 0.0], [0.5, 0.5]) == pytest.approx(math.log(2))


def test_pares_de_dos_posiciones_sin_adw():
    # Un solo par: el KL de dos puntos
    valor = oracle_pair_loss([2.0, 1.0], [1.0, 2.0], 1.0, adw_enabled=False)
    assert valor == pytest.approx(math.tanh(0.5), abs=1e-12)


def test_total_igual_a_la_suma_de_terminos(rng):
    cfg = DistillConfig(d=3, alpha=2.0, beta=3.0)
    z_t, z_s = rng.uniform(-5, 5, 7), rng.uniform(-5, 5, 7)
    t = oracle_ldrld_terms(z_t, z_s, 4, cfg)
    assert oracle_ldrld(z_t, z_s, 4, cfg) == t["task"] + 2.0 * (t["weighted_pairs"] + t["llki"]) + 3.0 * t["rntk"]


class TestDiferenciasFinitas:

    def test_suma_de_cuadrados(self):
        g = fd_gradient(lambda x: float(np.sum(x ** 2)), np.array([1.0, 2.0]))
        assert np.allclose(g, [2.0, 4.0], atol=1e-6)

    def test_constante(self):
        g = fd_gradient(lambda x: 3.0, np.array([[1.0, -2.0, 0.5]]))
        assert g.shape == (1, 3)
        assert np.all(g == 0.0)

    def test_no_finita(self):
        with pytest.raises(ArithmeticError):
            fd_gradient(lambda x: float("inf"), np.array([1.0]))
