"""
Reportes JSON de experimentos, curvas CSV y tiempos.

Los reportes son deterministas: el tiempo de reloj se escribe aparte en
`timing.json`.
"""
import csv
import io
import json
from typing import Dict, List, Optional, Sequence, Tuple

import jsonschema
import numpy as np

from config import SCHEMA_PATH
from models import TrainRecord
from utils.file_loader import cargar_texto, guardar_texto

SCHEMA_VERSION = 1
TEACHER = "teacher"
DISTILL = "distill"
SWEEP = "sweep"

# Claves del eco que no afectan los resultados
CLAVES_FUERA_DEL_ECO = ("output.dir",)

_esquema_cache: Optional[dict] = None


def cargar_esquema() -> dict:
    global _esquema_cache
    if _esquema_cache is None:
        _esquema_cache = json.loads(cargar_texto(SCHEMA_PATH))
    return _esquema_cache


def eco_reporte(echo: Dict[str, str]) -> Dict[str, str]:
    return {k: v for k, v in echo.items() if k not in CLAVES_FUERA_DEL_ECO}


def resumen_corrida(registro: TrainRecord) -> dict:
    """Una corrida: semilla, precisiones finales y curva por época."""
    return {
        "seed": registro.seed,
        "final_eval_accuracy": registro.final_eval_accuracy,
        "final_train_accuracy": registro.final_train_accuracy,
        "epochs": [
            {
                "epoch": e.epoch,
                "lr": e.lr,
                "train_accuracy": e.train_accuracy,
                "eval_accuracy": e.eval_accuracy,
                "loss": e.loss.as_dict(),
            }
            for e in registro.epochs
        ],
    }


def resumen_precisiones(registros: Sequence[TrainRecord]) -> dict:
    """Media y desviación estándar poblacional (ddof=0) entre semillas."""
    evaluacion = np.array([r.final_eval_accuracy for r in registros], dtype=np.float64)
    entrenamiento = np.array([r.final_train_accuracy for r in registros], dtype=np.float64)
    return {
        "mean_eval_accuracy": float(np.mean(evaluacion)),
        "std_eval_accuracy": float(np.std(evaluacion)),
        "mean_train_accuracy": float(np.mean(entrenamiento)),
    }


def construir_reporte(
    kind: str,
    echo: Dict[str, str],
    registros: Sequence[TrainRecord],
    teacher_accuracy: Optional[float] = None,
    baseline: Optional[Sequence[TrainRecord]] = None,
) -> dict:
    """
    Ensambla el reporte de un entrenamiento del profesor o de una destilación.

    Args:
        kind: 'teacher' o 'distill'.
        echo: Configuración resuelta (ExperimentConfig.echo()).
        registros: Un TrainRecord por semilla, en orden de semilla.
        teacher_accuracy: Precisión de evaluación del profesor.
        baseline: Registros de estudiantes entrenados desde cero.
    """
    resumen = resumen_precisiones(registros)
    reporte = {
        "schema_version": SCHEMA_VERSION,
        "kind": kind,
        "config": eco_reporte(echo),
        "seeds": [r.seed for r in registros],
        "teacher_accuracy": teacher_accuracy,
        "runs": [resumen_corrida(r) for r in registros],
        "summary": resumen,
        "baseline": None,
        "delta_vs_baseline": None,
    }
    if baseline:
        resumen_base = resumen_precisiones(baseline)
        reporte["baseline"] = {
            "runs": [resumen_corrida(r) for r in baseline],
            "summary": resumen_base,
        }
        reporte["delta_vs_baseline"] = resumen["mean_eval_accuracy"] - resumen_base["mean_eval_accuracy"]
    return reporte


def construir_reporte_barrido(
    echo: Dict[str, str],
    clave: str,
    puntos: List[Tuple[str, dict, str]],
    teacher_accuracy: Optional[float] = None,
) -> dict:
    """
    Reporte de un barrido.

    Args:
        puntos: (valor, reporte de destilación, ruta relativa del reporte).
    """
    filas = []
    for valor, reporte, ruta in puntos:
        filas.append({
            "value": valor,
            "mean_eval_accuracy": reporte["summary"]["mean_eval_accuracy"],
            "std_eval_accuracy": reporte["summary"]["std_eval_accuracy"],
            "delta_vs_baseline": reporte["delta_vs_baseline"],
            "report": ruta,
        })
    # El primer máximo gana en caso de empate
    mejor = max(range(len(filas)), key=lambda i: (filas[i]["mean_eval_accuracy"], -i))
    mejor_reporte = puntos[mejor][1]
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": SWEEP,
        "config": eco_reporte(echo),
        "seeds": mejor_reporte["seeds"],
        "teacher_accuracy": teacher_accuracy,
        "runs": [],
        "summary": mejor_reporte["summary"],
        "baseline": mejor_reporte["baseline"],
        "delta_vs_baseline": mejor_reporte["delta_vs_baseline"],
        "sweep": {"key": clave, "best_value": filas[mejor]["value"], "points": filas},
    }


def validar_reporte(reporte: dict) -> None:
    """
    Raises:
        jsonschema.ValidationError: Si el reporte no cumple el esquema.
    """
    jsonschema.validate(instance=reporte, schema=cargar_esquema())


def guardar_reporte(reporte: dict, ruta_salida: str) -> None:
    """Valida y escribe el reporte con claves ordenadas."""
    validar_reporte(reporte)
    guardar_texto(json.dumps(reporte, indent=2, sort_keys=True) + "\n", ruta_salida)


def _csv(filas: List[List[object]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(filas)
    return buffer.getvalue()


def exportar_curvas_csv(registros: Sequence[TrainRecord], ruta_salida: str, grupo: str = "distill") -> None:
    """Una fila por (semilla, época) con las precisiones y la pérdida total."""
    filas = [["group", "seed", "epoch", "lr", "loss_total", "train_accuracy", "eval_accuracy"]]
    for registro in registros:
        for e in registro.epochs:
            filas.append([grupo, registro.seed, e.epoch, repr(e.lr), repr(e.loss.total),
                          repr(e.train_accuracy), repr(e.eval_accuracy)])
    guardar_texto(_csv(filas), ruta_salida)


def exportar_barrido_csv(reporte_barrido: dict, ruta_salida: str) -> None:
    filas = [["key", "value", "mean_eval_accuracy", "std_eval_accuracy", "delta_vs_baseline"]]
    clave = reporte_barrido["sweep"]["key"]
    for punto in reporte_barrido["sweep"]["points"]:
        delta = punto["delta_vs_baseline"]
        filas.append([clave, punto["value"], repr(punto["mean_eval_accuracy"]),
                      repr(punto["std_eval_accuracy"]), "" if delta is None else repr(delta)])
    guardar_texto(_csv(filas), ruta_salida)


def guardar_tiempos(grupos: Dict[str, Sequence[TrainRecord]], ruta_salida: str) -> None:
    """Segundos por época de cada corrida; no forma parte del reporte."""
    tiempos = {
        grupo: {str(r.seed): [e.seconds for e in r.epochs] for r in registros}
        for grupo, registros in grupos.items()
    }
    guardar_texto(json.dumps(tiempos, indent=2, sort_keys=True) + "\n", ruta_salida)


def guardar_texto_json(datos: dict, ruta_salida: str) -> None:
    guardar_texto(json.dumps(datos, indent=2, sort_keys=True) + "\n", ruta_salida)
