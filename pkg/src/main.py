#!/usr/bin/env python3
"""
Motor de destilación de conocimiento LDRLD

Entrena un profesor, destila estudiantes con el objetivo de rangos
(pares ponderados, LLKI y RNTK), evalúa checkpoints, barre hiperparámetros
y verifica las propiedades numéricas del objetivo.

Uso:
    python main.py train-teacher --config configs/blobs_desk.env
    python main.py distill --config configs/blobs_desk.env --teacher outputs/teacher.ckpt --baseline
    python main.py eval --config configs/blobs_desk.env outputs/student_seed0.ckpt
    python main.py sweep --config configs/blobs_desk.env --teacher outputs/teacher.ckpt --sweep d=2..10
    python main.py losscheck
    python main.py --help

Códigos de salida: 0 éxito, 1 verificación fallida, 2 error de uso,
configuración, datos, checkpoint o escritura de archivos.
"""
import os
import sys
import argparse
import json
from typing import List, Optional

# Agregar el directorio src al path
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

from config import configurar_logging
from checks import IntegradorChecks
from errors import CheckpointError, ConfigError, DatasetError
from experiments import EjecutorExperimento, cargar_config, desde_dict, parsear_asignacion, parsear_barrido
from models import load_checkpoint

EXIT_OK = 0
EXIT_CHECK_FALLIDO = 1
EXIT_ERROR = 2


def _construir_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ldrld",
        description="Motor de destilación de conocimiento LDRLD",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Ejemplos:
  python main.py train-teacher --config configs/blobs_desk.env
  python main.py distill --config configs/blobs_desk.env --teacher outputs/teacher.ckpt
  python main.py distill --config c.env --teacher t.ckpt --set alpha=0 --set beta=0   # equivale a la base
  python main.py distill --config c.env --teacher t.ckpt --sweep alpha=1,4,7
  python main.py sweep --config c.env --teacher t.ckpt --sweep d=2..10 --baseline
  python main.py eval --config c.env outputs/student_seed0.ckpt
  python main.py losscheck --set distill.epsilon=1.6                                # debe fallar
        """
    )

    comunes = argparse.ArgumentParser(add_help=False)
    comunes.add_argument(
        "--set",
        action="append",
        default=[],
        metavar="CLAVE=VALOR",
        help="Anula una clave de la configuración (repetible); sin sección se asume 'distill.'"
    )
    comunes.add_argument(
        "--secuencial", "-seq",
        action="store_true",
        help="Ejecutar semillas/verificaciones secuencialmente (por defecto es paralelo)"
    )
    comunes.add_argument(
        "--silencioso", "-s",
        action="store_true",
        help="Modo silencioso (sin mensajes de progreso)"
    )

    experimento = argparse.ArgumentParser(add_help=False, parents=[comunes])
    experimento.add_argument("--config", "-c", required=True, help="Archivo de configuración clave=valor")
    experimento.add_argument("--out", "-o", help="Directorio de salida (anula output.dir)")
    experimento.add_argument("--seeds", help="Semillas separadas por coma (anula seeds)")

    destilacion = argparse.ArgumentParser(add_help=False, parents=[experimento])
    destilacion.add_argument("--teacher", "-t", required=True, help="Checkpoint del profesor")
    destilacion.add_argument(
        "--baseline",
        action="store_true",
        help="Entrenar también estudiantes desde cero con las mismas semillas"
    )

    sub = parser.add_subparsers(dest="comando", required=True)
    sub.add_parser("train-teacher", parents=[experimento], help="Entrena el profesor")
    p_distill = sub.add_parser("distill", parents=[destilacion], help="Destila estudiantes por semilla")
    p_distill.add_argument("--sweep", help="Barrido opcional: clave=a..b o clave=v1,v2,...")
    p_sweep = sub.add_parser("sweep", parents=[destilacion], help="Barre una clave de destilación")
    p_sweep.add_argument("--sweep", required=True, help="clave=a..b (enteros inclusive) o clave=v1,v2,...")
    p_eval = sub.add_parser("eval", parents=[experimento], help="Precisión top-1/top-5 de un checkpoint")
    p_eval.add_argument("checkpoint", help="Checkpoint a evaluar")
    p_check = sub.add_parser("losscheck", parents=[comunes], help="Verifica propiedades del objetivo")
    p_check.add_argument("--muestras", type=int, default=1000, help="Muestras del oráculo (default: 1000)")
    p_check.add_argument("--seed", type=int, default=0, help="Semilla del muestreo (default: 0)")
    return parser


def _cargar_experimento(args) -> EjecutorExperimento:
    overrides = list(args.set)
    if args.seeds:
        overrides.append(f"seeds={args.seeds}")
    if args.out:
        overrides.append(f"output.dir={args.out}")
    config = cargar_config(args.config, overrides)
    return EjecutorExperimento(config, paralelo=not args.secuencial, verbose=not args.silencioso)


def _comando_losscheck(args) -> int:
    # Solo las claves distill.* tienen efecto; se validan igual que en un archivo
    crudo = dict(parsear_asignacion(texto) for texto in args.set)
    config = desde_dict(crudo, "--set")
    adw = config.distill_config().adw
    integrador = IntegradorChecks(
        adw_params=adw,
        muestras_oraculo=args.muestras,
        seed=args.seed,
        verbose=not args.silencioso,
    )
    resultados = integrador.procesar(paralelo=not args.secuencial)
    print(IntegradorChecks.tabla(resultados))
    adw_golden = next((r for r in resultados if r.nombre == "adw-golden"), None)
    if adw_golden is not None and "adw_1_2" in adw_golden.valores:
        print(f"Ω(1,2) = {adw_golden.valores['adw_1_2']:.6f}  (ε={adw.epsilon}, δ={adw.delta}, λ={adw.lambda_})")
    return EXIT_OK if all(r.ok for r in resultados) else EXIT_CHECK_FALLIDO


def _ejecutar(args) -> int:
    if args.comando == "losscheck":
        return _comando_losscheck(args)

    ejecutor = _cargar_experimento(args)
    verbose = not args.silencioso
    if verbose:
        print("\n" + "=" * 60)
        print(f"  LDRLD · {args.comando}")
        print("=" * 60)

    if args.comando == "train-teacher":
        ejecutor.entrenar_profesor()
    elif args.comando == "eval":
        resultado = ejecutor.evaluar(load_checkpoint(args.checkpoint), origen=args.checkpoint)
        print(json.dumps(resultado, indent=2, sort_keys=True))
    else:
        teacher = load_checkpoint(args.teacher)
        if args.sweep:
            clave, valores = parsear_barrido(args.sweep)
            ejecutor.barrido(teacher, clave, valores, baseline=args.baseline)
        else:
            ejecutor.destilar(teacher, baseline=args.baseline)

    if verbose:
        print(f"\n  Resultados en: {ejecutor.salida}\n")
    return EXIT_OK


def main(argv: Optional[List[str]] = None) -> int:
    """Función principal; devuelve el código de salida."""
    parser = _construir_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_ERROR

    configurar_logging("WARNING" if args.silencioso else None)
    try:
        return _ejecutar(args)
    except (ConfigError, DatasetError, CheckpointError, OSError) as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
