"""
Utilidades para lectura y escritura de archivos de datos y reportes.
"""
import os


def cargar_texto(ruta_archivo: str) -> str:
    """
    Carga un archivo de texto detectando la codificación.

    Args:
        ruta_archivo: Ruta al archivo.

    Returns:
        Contenido del archivo como string.

    Raises:
        FileNotFoundError: Si el archivo no existe.
    """
    codificaciones = ['utf-8', 'utf-16', 'latin-1']

    for encoding in codificaciones:
        try:
            with open(ruta_archivo, 'r', encoding=encoding, newline='') as f:
                return f.read()
        except (UnicodeDecodeError, UnicodeError):
            continue

    # latin-1 decodifica cualquier byte; aquí solo se llega con BOM inválido
    with open(ruta_archivo, 'rb') as f:
        return f.read().decode('latin-1')


def cargar_bytes(ruta_archivo: str) -> bytes:
    with open(ruta_archivo, 'rb') as f:
        return f.read()


def guardar_texto(contenido: str, ruta_salida: str) -> None:
    """
    Guarda texto en UTF-8 con saltos de línea '\\n', creando el directorio.

    Args:
        contenido: Texto a guardar.
        ruta_salida: Ruta del archivo.
    """
    os.makedirs(os.path.dirname(os.path.abspath(ruta_salida)), exist_ok=True)

    with open(ruta_salida, 'w', encoding='utf-8', newline='\n') as f:
        f.write(contenido)


def guardar_bytes(contenido: bytes, ruta_salida: str) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(ruta_salida)), exist_ok=True)

    with open(ruta_salida, 'wb') as f:
        f.write(contenido)
