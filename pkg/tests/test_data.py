import os
import struct

import numpy as np
import pytest

from data import EVAL, TRAIN, Dataset, iterar_minibatches, load_delimited, load_idx, make_blobs, save_delimited
from errors import DatasetError


def _escribir(ruta, contenido: str) -> str:
    with open(ruta, "w", encoding="utf-8") as f:
        f.write(contenido)
    return str(ruta)


def _idx_imagenes(ruta, imagenes: np.ndarray, magic: int = 0x803) -> str:
    n, alto, ancho = imagenes.shape
    with open(ruta, "wb") as f:
        f.write(struct.pack(">IIII", magic, n, alto, ancho))
        f.write(imagenes.astype(np.uint8).tobytes())
    return str(ruta)


def _idx_etiquetas(ruta, etiquetas, magic: int = 0x801) -> str:
    with open(ruta, "wb") as f:
        f.write(struct.pack(">II", magic, len(etiquetas)))
        f.write(bytes(etiquetas))
    return str(ruta)


class TestBlobs:

    def test_misma_semilla_mismos_datos(self):
        a = make_blobs(4, 10, 3, spread=0.5, seed=9)
        b = make_blobs(4, 10, 3, spread=0.5, seed=9)
        assert np.array_equal(a.features, b.features)
        assert np.array_equal(a.labels, b.labels)

    def test_spread_cero_da_las_medias(self):
        ds = make_blobs(5, 4, 6, spread=0.0, seed=1)
        for c in range(5):
            filas = ds.features[ds.labels == c]
            assert np.all(filas == filas[0])
        # 1-NN contra las medias clasifica todo
        medias = np.array([ds.features[ds.labels == c][0] for c in range(5)])
        distancias = ((ds.features[:, None, :] - medias[None, :, :]) ** 2).sum(axis=2)
        assert np.array_equal(np.argmin(distancias, axis=1), ds.labels)

    def test_medias_en_la_esfera(self):
        ds = make_blobs(3, 2, 4, spread=0.0, seed=2, radius=2.5)
        assert np.allclose(np.linalg.norm(ds.features, axis=1), 2.5)

    def test_splits_comparten_medias_con_ruido_distinto(self):
        train = make_blobs(3, 5, 4, spread=0.0, seed=3)
        evaluacion = make_blobs(3, 5, 4, spread=0.0, seed=3, split=EVAL)
        assert np.array_equal(train.features, evaluacion.features)
        ruidoso_t = make_blobs(3, 5, 4, spread=0.2, seed=3)
        ruidoso_e = make_blobs(3, 5, 4, spread=0.2, seed=3, split=EVAL)
        assert not np.array_equal(ruidoso_t.features, ruidoso_e.features)
        assert evaluacion.split == EVAL

    def test_modos_por_clase(self):
        ds = make_blobs(3, 4, 5, spread=0.0, seed=4, modes=2)
        for c in range(3):
            filas = ds.features[ds.labels == c]
            assert len(np.unique(filas, axis=0)) == 2
            # Las muestras alternan entre los modos de la clase
            assert np.array_equal(filas[0], filas[2])
            assert np.array_equal(filas[1], filas[3])
            assert not np.array_equal(filas[0], filas[1])
        assert len(np.unique(ds.features, axis=0)) == 6

    def test_un_modo_es_el_comportamiento_por_defecto(self):
        a = make_blobs(4, 6, 3, spread=0.3, seed=5)
        b = make_blobs(4, 6, 3, spread=0.3, seed=5, modes=1)
        assert np.array_equal(a.features, b.features)

    def test_parametros_invalidos(self):
        with pytest.raises(DatasetError):
            make_blobs(1, 5, 2, spread=0.1, seed=0)
        with pytest.raises(DatasetError):
            make_blobs(3, 5, 2, spread=-0.1, seed=0)
        with pytest.raises(DatasetError):
            make_blobs(3, 5, 2, spread=0.1, seed=0, modes=0)


class TestDataset:

    def test_arreglos_de_solo_lectura(self):
        ds = make_blobs(2, 3, 2, spread=0.1, seed=0)
        with pytest.raises(ValueError):
            ds.features[0, 0] = 1.0

    def test_etiquetas_fuera_de_rango(self):
        with pytest.raises(DatasetError):
            Dataset(np.zeros((2, 2)), np.array([0, 3]), num_classes=3)

    def test_caracteristicas_no_finitas(self):
        with pytest.raises(DatasetError):
            Dataset(np.array([[1.0, np.nan]]), np.array([0]), num_classes=2)

    def test_minibatches_cubren_todo(self):
        lotes = list(iterar_minibatches(10, 4, seed=1, epoch=0))
        assert [len(l) for l in lotes] == [4, 4, 2]
        assert sorted(np.concatenate(lotes).tolist()) == list(range(10))

    def test_minibatches_dependen_de_la_epoca(self):
        a = np.concatenate(list(iterar_minibatches(50, 8, seed=1, epoch=0)))
        b = np.concatenate(list(iterar_minibatches(50, 8, seed=1, epoch=1)))
        c = np.concatenate(list(iterar_minibatches(50, 8, seed=1, epoch=0)))
        assert not np.array_equal(a, b)
        assert np.array_equal(a, c)


class TestDelimitado:

    def test_tres_lineas(self, tmp_path):
        ruta = _escribir(tmp_path / "d.csv", "1.0,2.0,0\n3.0,4.5,1\n-1,0,2\n")
        ds = load_delimited(ruta)
        assert (ds.n, ds.dim, ds.num_classes) == (3, 2, 3)
        assert ds.features[1].tolist() == [3.0, 4.5]
        assert ds.labels.tolist() == [0, 1, 2]

    def test_cabecera_columna_y_separador(self, tmp_path):
        ruta = _escribir(tmp_path / "d.tsv", "y\ta\tb\n1\t0.5\t0.25\n0\t1\t2\n")
        ds = load_delimited(ruta, delimiter="\t", label_column=0, header=True)
        assert ds.labels.tolist() == [1, 0]
        assert ds.features.tolist() == [[0.5, 0.25], [1.0, 2.0]]

    def test_letras_nombran_la_linea(self, tmp_path):
        ruta = _escribir(tmp_path / "d.csv", "1,2,0\n1,abc,1\n")
        with pytest.raises(DatasetError, match=r"d\.csv:2"):
            load_delimited(ruta)

    def test_fila_irregular(self, tmp_path):
        ruta = _escribir(tmp_path / "d.csv", "1,2,0\n1,2,3,1\n")
        with pytest.raises(DatasetError, match=r":2"):
            load_delimited(ruta)

    @pytest.mark.parametrize("etiqueta", ["1.5", "nan", "inf"])
    def test_etiqueta_no_entera(self, tmp_path, etiqueta):
        ruta = _escribir(tmp_path / "d.csv", f"1,2,0\n1,2,{etiqueta}\n")
        with pytest.raises(DatasetError, match=r":2"):
            load_delimited(ruta)

    @pytest.mark.parametrize("columna", [3, 5, -4])
    def test_columna_de_etiqueta_fuera_de_rango(self, tmp_path, columna):
        ruta = _escribir(tmp_path / "d.csv", "1,2,0\n3,4,1\n")
        with pytest.raises(DatasetError, match=r"d\.csv:1.*label_column"):
            load_delimited(ruta, label_column=columna)

    def test_columna_de_etiqueta_negativa_valida(self, tmp_path):
        ruta = _escribir(tmp_path / "d.csv", "0,1.5,2.5\n1,3.5,4.5\n")
        ds = load_delimited(ruta, label_column=-3)
        assert ds.labels.tolist() == [0, 1]

    def test_archivo_inexistente(self, tmp_path):
        with pytest.raises(DatasetError, match="no_existe.csv"):
            load_delimited(str(tmp_path / "no_existe.csv"))

    def test_ida_y_vuelta_exacta(self, tmp_path):
        original = make_blobs(4, 6, 3, spread=0.37, seed=8)
        ruta = str(tmp_path / "blobs.csv")
        save_delimited(original, ruta)
        cargado = load_delimited(ruta, num_classes=4)
        assert np.array_equal(cargado.features, original.features)
        assert np.array_equal(cargado.labels, original.labels)


class TestIdx:

    def test_par_de_dos_imagenes(self, tmp_path):
        imagenes = np.array([[[0, 255], [51, 102]], [[255, 0], [0, 255]]])
        ds = load_idx(
            _idx_imagenes(tmp_path / "img", imagenes),
            _idx_etiquetas(tmp_path / "lab", [3, 1]),
            split=EVAL,
        )
        assert (ds.n, ds.dim) == (2, 4)
        assert ds.features[0].tolist() == [0.0, 1.0, 0.2, 0.4]
        assert ds.labels.tolist() == [3, 1]
        assert ds.num_classes == 4
        assert ds.split == EVAL

    def test_cantidades_distintas(self, tmp_path):
        with pytest.raises(DatasetError):
            load_idx(
                _idx_imagenes(tmp_path / "img", np.zeros((2, 2, 2))),
                _idx_etiquetas(tmp_path / "lab", [0, 1, 1]),
            )

    def test_magic_invalido(self, tmp_path):
        with pytest.raises(DatasetError, match="magic"):
            load_idx(
                _idx_imagenes(tmp_path / "img", np.zeros((1, 2, 2)), magic=0x801),
                _idx_etiquetas(tmp_path / "lab", [0]),
            )

    def test_archivo_truncado(self, tmp_path):
        ruta = _idx_imagenes(tmp_path / "img", np.zeros((2, 3, 3)))
        with open(ruta, "rb") as f:
            datos = f.read()
        with open(ruta, "wb") as f:
            f.write(datos[:-4])
        with pytest.raises(DatasetError, match="truncado"):
            load_idx(ruta, _idx_etiquetas(tmp_path / "lab", [0, 1]))

    @pytest.mark.skipif(not os.getenv("LDRLD_IDX_DIR"), reason="LDRLD_IDX_DIR no definido")
    def test_archivo_estandar_de_10k(self):
        directorio = os.environ["LDRLD_IDX_DIR"]
        imagenes = os.path.join(directorio, "t10k-images-idx3-ubyte")
        etiquetas = os.path.join(directorio, "t10k-labels-idx1-ubyte")
        ds = load_idx(imagenes, etiquetas)
        assert (ds.n, ds.dim) == (10000, 784)

        # Lector independiente mínimo
        with open(imagenes, "rb") as f:
            crudo = f.read()
        n, alto, ancho = struct.unpack(">III", crudo[4:16])
        primera = np.frombuffer(crudo[16:16 + alto * ancho], dtype=np.uint8) / 255.0
        assert n == 10000
        assert np.array_equal(ds.features[0], primera)
        assert ds.split == TRAIN
