"""
Carga de conjuntos desde texto delimitado y desde archivos IDX.
"""
import csv
import io
import os
import struct
from typing import Optional

import numpy as np

from errors import DatasetError
from utils.file_loader import cargar_bytes, cargar_texto, guardar_texto
from .dataset import TRAIN, Dataset

IDX_IMAGES_MAGIC = 0x00000803
IDX_LABELS_MAGIC = 0x00000801


def _verificar_existe(ruta: str) -> None:
    if not os.path.isfile(ruta):
        raise DatasetError(f"No se encontró el archivo '{ruta}'")


def _num_clases(labels: np.ndarray, num_classes: Optional[int]) -> int:
    if num_classes is not None:
        return num_classes
    return max(2, int(labels.max()) + 1) if labels.size else 2


def load_delimited(
    path: str,
    delimiter: str = ",",
    label_column: int = -1,
    header: bool = False,
    num_classes: Optional[int] = None,
    split: str = TRAIN,
) -> Dataset:
    """
    Lee características numéricas y una columna de etiquetas enteras.

    Args:
        path: Ruta al archivo.
        delimiter: Separador de columnas.
        label_column: Índice de la columna de etiqueta (admite negativos).
        header: Si True, la primera línea se omite.
        num_classes: C explícito; por defecto max(etiqueta) + 1.
        split: Etiqueta del split.

    Raises:
        DatasetError: Archivo inexistente, filas irregulares o celdas no
            numéricas; el mensaje indica el número de línea.
    """
    _verificar_existe(path)
    lector = csv.reader(io.StringIO(cargar_texto(path)), delimiter=delimiter)

    filas, etiquetas = [], []
    columnas = None
    for num_linea, celdas in enumerate(lector, start=1):
        if header and num_linea == 1:
            continue
        if not celdas or all(not c.strip() for c in celdas):
            continue
        if columnas is None:
            columnas = len(celdas)
            if columnas < 2:
                raise DatasetError(f"{path}:{num_linea}: se requieren al menos 2 columnas")
            if not -columnas <= label_column < columnas:
                raise DatasetError(
                    f"{path}:{num_linea}: label_column={label_column} fuera de las {columnas} columnas"
                )
        elif len(celdas) != columnas:
            raise DatasetError(
                f"{path}:{num_linea}: {len(celdas)} columnas, se esperaban {columnas}"
            )
        try:
            valores = [float(c) for c in celdas]
        except ValueError:
            raise DatasetError(f"{path}:{num_linea}: celda no numérica en {celdas}") from None
        etiqueta = valores.pop(label_column)
        if not np.isfinite(etiqueta) or etiqueta != int(etiqueta):
            raise DatasetError(f"{path}:{num_linea}: etiqueta no entera {etiqueta}")
        filas.append(valores)
        etiquetas.append(int(etiqueta))

    if not filas:
        raise DatasetError(f"{path}: el archivo no contiene muestras")
    labels = np.array(etiquetas, dtype=np.int64)
    return Dataset(
        features=np.array(filas, dtype=np.float64),
        labels=labels,
        num_classes=_num_clases(labels, num_classes),
        split=split,
    )


def save_delimited(dataset: Dataset, path: str, delimiter: str = ",") -> None:
    """Escribe características y etiqueta (última columna) con precisión completa."""
    lineas = []
    for fila, etiqueta in zip(dataset.features, dataset.labels):
        lineas.append(delimiter.join([repr(float(v)) for v in fila] + [str(int(etiqueta))]))
    guardar_texto("\n".join(lineas) + "\n", path)


def _leer_cabecera(datos: bytes, ruta: str, magic: int, ndims: int) -> tuple:
    tam = 4 * (1 + ndims)
    if len(datos) < tam:
        raise DatasetError(f"{ruta}: archivo truncado en la cabecera")
    valores = struct.unpack(">" + "I" * (1 + ndims), datos[:tam])
    if valores[0] != magic:
        raise DatasetError(f"{ruta}: magic 0x{valores[0]:08x}, se esperaba 0x{magic:08x}")
    return valores[1:], tam


def load_idx(
    images_path: str,
    labels_path: str,
    num_classes: Optional[int] = None,
    split: str = TRAIN,
) -> Dataset:
    """
    Lee un par de archivos IDX (imágenes uint8 N×H×W y etiquetas uint8 N).

    Las imágenes se aplanan a H·W características y se escalan a [0, 1].
    """
    _verificar_existe(images_path)
    _verificar_existe(labels_path)
    datos_img = cargar_bytes(images_path)
    datos_lab = cargar_bytes(labels_path)

    (n, alto, ancho), off_img = _leer_cabecera(datos_img, images_path, IDX_IMAGES_MAGIC, 3)
    (n_lab,), off_lab = _leer_cabecera(datos_lab, labels_path, IDX_LABELS_MAGIC, 1)
    if n != n_lab:
        raise DatasetError(f"{n} imágenes en {images_path} pero {n_lab} etiquetas en {labels_path}")
    if len(datos_img) - off_img < n * alto * ancho:
        raise DatasetError(f"{images_path}: archivo truncado ({n}×{alto}×{ancho} esperados)")
    if len(datos_lab) - off_lab < n:
        raise DatasetError(f"{labels_path}: archivo truncado ({n} etiquetas esperadas)")

    imagenes = np.frombuffer(datos_img, dtype=np.uint8, count=n * alto * ancho, offset=off_img)
    labels = np.frombuffer(datos_lab, dtype=np.uint8, count=n, offset=off_lab).astype(np.int64)
    return Dataset(
        features=imagenes.reshape(n, alto * ancho).astype(np.float64) / 255.0,
        labels=labels,
        num_classes=_num_clases(labels, num_classes),
        split=split,
    )
