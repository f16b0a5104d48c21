import numpy as np
import pytest

from ldrld import RankOrder, rank_by_student, rank_by_teacher, rank_rows, split_top_d
from ldrld.ranking_mask import STUDENT, TEACHER
from oracle import oracle_rank_selection_sort, oracle_topd_recursive


def test_orden_descendente():
    assert rank_by_student([0.1, 3.0, 2.0]).perm.tolist() == [1, 2, 0]


def test_empate_gana_indice_menor():
    assert rank_by_student([5.0, 5.0, 1.0]).perm.tolist() == [0, 1, 2]
    assert rank_by_student([1.0, 2.0, 2.0, 2.0]).perm.tolist() == [1, 2, 3, 0]


def test_contra_ordenamiento_por_seleccion(rng):
    for _ in range(50):
        z = rng.uniform(-5, 5, 20)
        # Empates frecuentes
        z = np.round(z)
        assert rank_by_student(z).perm.tolist() == oracle_rank_selection_sort(z)


def test_rank_rows_por_lotes(rng):
    z = rng.uniform(-5, 5, (6, 9))
    perms = rank_rows(z)
    for fila, perm in zip(z, perms):
        assert perm.tolist() == oracle_rank_selection_sort(fila)


def test_fuente_del_orden():
    assert rank_by_student([1.0, 2.0]).source == STUDENT
    orden = rank_by_teacher([1.0, 2.0, 0.0])
    assert orden.source == TEACHER
    assert orden.perm.tolist() == [1, 0, 2]


def test_una_sola_clase_es_error():
    with pytest.raises(ValueError):
        rank_by_student([1.0])


def test_rank_order_valida_permutacion():
    with pytest.raises(ValueError):
        RankOrder(np.array([0, 0, 1]))


class TestSplitTopD:

    def test_indexacion_directa(self):
        z_s, z_t = [4.0, 3.0, 2.0, 1.0], [1.0, 2.0, 3.0, 4.0]
        split = split_top_d(z_t, z_s, rank_by_student(z_s), 2)
        assert split.top_s.tolist() == [4.0, 3.0]
        assert split.top_t.tolist() == [1.0, 2.0]
        assert split.rest_s.tolist() == [2.0, 1.0]
        assert split.rest_t.tolist() == [3.0, 4.0]

    def test_d_igual_a_c_deja_resto_vacio(self):
        z = [0.3, 0.1, 0.2]
        split = split_top_d(z, z, rank_by_student(z), 3)
        assert split.rest_s.size == 0 and split.rest_t.size == 0

    def test_d_dos_con_dos_clases(self):
        split = split_top_d([1.0, 0.0], [0.0, 1.0], rank_by_student([0.0, 1.0]), 2)
        assert split.top_s.tolist() == [1.0, 0.0]
        assert split.top_t.tolist() == [0.0, 1.0]

    def test_entrada_preordenada_es_prefijo(self):
        z_s = [9.0, 7.0, 5.0, 3.0, 1.0]
        split = split_top_d(z_s, z_s, rank_by_student(z_s), 3)
        assert split.top_s.tolist() == z_s[:3]

    def test_contra_extraccion_recursiva(self, rng):
        for _ in range(30):
            z_t, z_s = rng.uniform(-5, 5, 15), rng.uniform(-5, 5, 15)
            split = split_top_d(z_t, z_s, rank_by_student(z_s), 7)
            ref = oracle_topd_recursive(z_t, z_s, 7)
            for campo in ("top_t", "top_s", "rest_t", "rest_s"):
                assert np.array_equal(getattr(split, campo), getattr(ref, campo))

    def test_el_profesor_sigue_los_indices_del_estudiante(self):
        # El profesor no se reordena con sus propios logits
        z_s = [0.0, 5.0, 1.0]
        z_t = [10.0, -10.0, 3.0]
        split = split_top_d(z_t, z_s, rank_by_student(z_s), 2)
        assert split.top_t.tolist() == [-10.0, 3.0]

    @pytest.mark.parametrize("d", [1, 5])
    def test_profundidad_fuera_de_rango(self, d):
        z = [1.0, 2.0, 3.0, 4.0]
        with pytest.raises(ValueError):
            split_top_d(z, z, rank_by_student(z), d)

    def test_formas_desalineadas(self):
        with pytest.raises(ValueError):
            split_top_d([1.0, 2.0], [1.0, 2.0, 3.0], rank_by_student([1.0, 2.0, 3.0]), 2)

    def test_orden_del_profesor_solo_en_diagnostico(self):
        z_s, z_t = [0.0, 5.0, 1.0], [10.0, -10.0, 3.0]
        with pytest.raises(ValueError, match="estudiante"):
            split_top_d(z_t, z_s, rank_by_teacher(z_t), 2)
        split = split_top_d(z_t, z_s, rank_by_teacher(z_t), 2, diagnostico=True)
        assert split.top_t.tolist() == [10.0, 3.0]


@pytest.mark.parametrize("c,d", [(5, 2), (12, 7), (30, 30)])
def test_equivariancia_a_permutaciones(rng, c, d):
    for _ in range(20):
        z_t, z_s = rng.uniform(-5, 5, c), rng.uniform(-5, 5, c)
        sigma = rng.permutation(c)
        orden = rank_by_student(z_s)
        orden_p = rank_by_student(z_s[sigma])
        # Las mismas clases, renombradas por sigma
        assert np.array_equal(sigma[orden_p.perm], orden.perm)
        split = split_top_d(z_t, z_s, orden, d)
        split_p = split_top_d(z_t[sigma], z_s[sigma], orden_p, d)
        for campo in ("top_t", "top_s", "rest_t", "rest_s"):
            assert np.array_equal(getattr(split, campo), getattr(split_p, campo))
