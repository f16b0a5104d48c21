"""
Formato binario versionado de checkpoints de modelos.

Estructura (little-endian):
    b"LDRLDCKPT" | u16 versión | u32 input_dim | u32 n_ocultas | u32 × n_ocultas
    | u32 num_classes | i64 seed | float64 × parámetros (W, b por capa)
"""
import struct

import numpy as np

from errors import CheckpointError
from utils.file_loader import cargar_bytes, guardar_bytes
from .mlp import Mlp, MlpSpec

MAGIC = b"LDRLDCKPT"
FORMAT_VERSION = 1


def serializar(model: Mlp) -> bytes:
    spec = model.spec
    partes = [
        MAGIC,
        struct.pack("<HII", FORMAT_VERSION, spec.input_dim, len(spec.hidden_dims)),
        struct.pack(f"<{len(spec.hidden_dims)}I", *spec.hidden_dims),
        struct.pack("<Iq", spec.num_classes, spec.seed),
    ]
    partes.extend(p.astype("<f8").tobytes() for p in model.state())
    return b"".join(partes)


def deserializar(datos: bytes, origen: str = "<bytes>") -> Mlp:
    if not datos.startswith(MAGIC):
        raise CheckpointError(f"{origen}: no es un checkpoint (magic inválido)")
    try:
        pos = len(MAGIC)
        version, input_dim, n_ocultas = struct.unpack_from("<HII", datos, pos)
        pos += struct.calcsize("<HII")
        if version != FORMAT_VERSION:
            raise CheckpointError(f"{origen}: versión {version} no soportada")
        ocultas = struct.unpack_from(f"<{n_ocultas}I", datos, pos)
        pos += 4 * n_ocultas
        num_classes, seed = struct.unpack_from("<Iq", datos, pos)
        pos += struct.calcsize("<Iq")
    except struct.error as e:
        raise CheckpointError(f"{origen}: cabecera truncada ({e})") from None

    try:
        spec = MlpSpec(input_dim=input_dim, hidden_dims=ocultas, num_classes=num_classes, seed=seed)
    except ValueError as e:
        raise CheckpointError(f"{origen}: especificación inválida ({e})") from None
    parametros = []
    dims = spec.dims
    for fan_in, fan_out in zip(dims[:-1], dims[1:]):
        for forma in ((fan_in, fan_out), (fan_out,)):
            cantidad = int(np.prod(forma))
            if len(datos) < pos + 8 * cantidad:
                raise CheckpointError(f"{origen}: parámetros truncados")
            arr = np.frombuffer(datos, dtype="<f8", count=cantidad, offset=pos)
            parametros.append(arr.astype(np.float64).reshape(forma))
            pos += 8 * cantidad
    if pos != len(datos):
        raise CheckpointError(f"{origen}: {len(datos) - pos} bytes sobrantes")
    return Mlp(spec, parametros)


def save_checkpoint(model: Mlp, path: str) -> None:
    guardar_bytes(serializar(model), path)


def load_checkpoint(path: str) -> Mlp:
    try:
        datos = cargar_bytes(path)
    except OSError as e:
        raise CheckpointError(f"No se pudo leer el checkpoint '{path}': {e}") from None
    return deserializar(datos, path)
