"""
Ejecutor de experimentos.

Orquesta el entrenamiento del profesor, la destilación por semilla (en
paralelo o secuencial), la línea base desde cero y los barridos de
hiperparámetros, y escribe reportes, curvas y checkpoints.
"""
import asyncio
import logging
import os
from typing import Callable, List, Optional, Sequence, Tuple, TypeVar

from config import NUM_WORKERS
from data import Dataset
from errors import CheckpointError, ConfigError
from models import Mlp, TrainRecord, accuracy, distill, save_checkpoint, train_supervised
from .experiment_config import ExperimentConfig, cargar_datasets
from . import report

logger = logging.getLogger(__name__)

T = TypeVar("T")

TEACHER_CKPT = "teacher.ckpt"
TEACHER_REPORT = "teacher_report.json"
REPORT = "report.json"
SWEEP_REPORT = "sweep_report.json"
SWEEP_SUMMARY = "sweep_summary.csv"
CURVES = "curves.csv"
TIMING = "timing.json"
EVAL_REPORT = "eval.json"


class EjecutorExperimento:
    """
    Corre los comandos de experimento sobre una configuración ya validada.

    Los resultados por semilla se devuelven siempre en el orden de
    `config.seeds`, sin importar el orden en que terminen los hilos.
    """

    def __init__(
        self,
        config: ExperimentConfig,
        salida: Optional[str] = None,
        paralelo: bool = True,
        verbose: bool = True,
    ):
        self.config = config
        self.salida = salida or config.output_dir
        self.paralelo = paralelo
        self.verbose = verbose
        self._datos: Optional[Tuple[Dataset, Optional[Dataset]]] = None

    def _log(self, mensaje: str):
        """Registra el mensaje si verbose está activado."""
        if self.verbose:
            logger.info(mensaje)

    def datos(self) -> Tuple[Dataset, Optional[Dataset]]:
        if self._datos is None:
            self._datos = cargar_datasets(self.config)
            train, evaluacion = self._datos
            self._log(
                f"  Datos: {train.n} muestras de entrenamiento, "
                f"{evaluacion.n if evaluacion is not None else 0} de evaluación, "
                f"C={train.num_classes}, D={train.dim}"
            )
        return self._datos

    # --- ejecución por semilla -----------------------------------------

    def _por_semilla(self, tareas: List[Callable[[], T]], etiqueta: str) -> List[T]:
        if self.paralelo and len(tareas) > 1:
            return asyncio.run(self._por_semilla_paralelo(tareas, etiqueta))
        resultados = []
        for i, tarea in enumerate(tareas, 1):
            resultados.append(tarea())
            self._log(f"  [{i}/{len(tareas)}] ✓ {etiqueta}")
        return resultados

    async def _por_semilla_paralelo(self, tareas: List[Callable[[], T]], etiqueta: str) -> List[T]:
        self._log(f"  Ejecutando {len(tareas)} corridas de {etiqueta} en paralelo...")
        loop = asyncio.get_running_loop()
        semaforo = asyncio.Semaphore(max(1, NUM_WORKERS))

        async def limitado(tarea: Callable[[], T]) -> T:
            async with semaforo:
                return await loop.run_in_executor(None, tarea)

        resultados = await asyncio.gather(*(limitado(t) for t in tareas))
        self._log(f"  ✓ {etiqueta}: {len(tareas)} corridas completadas")
        return list(resultados)

    # --- comandos ------------------------------------------------------

    def entrenar_profesor(self) -> dict:
        """
        Entrena el profesor y escribe checkpoint, reporte, curvas y tiempos.

        Returns:
            El reporte de tipo 'teacher'.
        """
        train, evaluacion = self.datos()
        spec = self.config.teacher_spec(train.dim, train.num_classes)
        self._log(f"  Entrenando profesor {spec.dims} ({self.config['teacher.epochs']} épocas)...")
        modelo, registro = train_supervised(spec, self.config.teacher_train(), train, evaluacion)

        os.makedirs(self.salida, exist_ok=True)
        save_checkpoint(modelo, os.path.join(self.salida, TEACHER_CKPT))
        reporte = report.construir_reporte(
            report.TEACHER, self.config.echo(), [registro], teacher_accuracy=registro.final_eval_accuracy,
        )
        report.guardar_reporte(reporte, os.path.join(self.salida, TEACHER_REPORT))
        report.exportar_curvas_csv([registro], os.path.join(self.salida, CURVES), grupo="teacher")
        report.guardar_tiempos({"teacher": [registro]}, os.path.join(self.salida, TIMING))
        self._log(f"  ✓ Profesor: precisión de evaluación {registro.final_eval_accuracy:.4f}")
        return reporte

    def _verificar_profesor(self, teacher: Mlp, config: ExperimentConfig) -> None:
        train, _ = self.datos()
        if teacher.spec.input_dim != train.dim or teacher.spec.num_classes != train.num_classes:
            raise CheckpointError(
                f"El profesor espera D={teacher.spec.input_dim}, C={teacher.spec.num_classes} "
                f"pero el conjunto tiene D={train.dim}, C={train.num_classes}"
            )
        cfg = config.distill_config()
        if cfg.d > train.num_classes:
            raise ConfigError(f"distill.d={cfg.d} supera el número de clases C={train.num_classes}")

    def linea_base(self, seeds: Sequence[int]) -> List[TrainRecord]:
        """Estudiantes entrenados solo con entropía cruzada, una corrida por semilla."""
        train, evaluacion = self.datos()

        def tarea(seed: int) -> Callable[[], TrainRecord]:
            def correr() -> TrainRecord:
                spec = self.config.student_spec(train.dim, train.num_classes, seed)
                return train_supervised(spec, self.config.student_train(seed), train, evaluacion)[1]
            return correr

        return self._por_semilla([tarea(s) for s in seeds], "línea base")

    def destilar(
        self,
        teacher: Mlp,
        baseline: bool = False,
        config: Optional[ExperimentConfig] = None,
        salida: Optional[str] = None,
        registros_base: Optional[List[TrainRecord]] = None,
    ) -> dict:
        """
        Destila un estudiante por semilla y escribe el reporte.

        Args:
            teacher: Profesor congelado.
            baseline: Si True, entrena también estudiantes desde cero.
            config: Configuración del punto (por defecto la del ejecutor).
            salida: Directorio de salida (por defecto el del ejecutor).
            registros_base: Línea base ya calculada para reutilizar.

        Returns:
            El reporte de tipo 'distill'.
        """
        config = config or self.config
        salida = salida or self.salida
        self._verificar_profesor(teacher, config)
        train, evaluacion = self.datos()
        cfg = config.distill_config()
        teacher_accuracy = accuracy(teacher, evaluacion if evaluacion is not None else train)

        def tarea(seed: int) -> Callable[[], Tuple[Mlp, TrainRecord]]:
            def correr() -> Tuple[Mlp, TrainRecord]:
                spec = config.student_spec(train.dim, train.num_classes, seed)
                return distill(teacher, spec, config.student_train(seed), cfg, train, evaluacion)
            return correr

        self._log(f"  Destilando (modo {cfg.mode}, d={cfg.d}, τ={cfg.tau}, α={cfg.alpha}, β={cfg.beta})...")
        corridas = self._por_semilla([tarea(s) for s in config.seeds], "destilación")
        registros = [registro for _, registro in corridas]

        if baseline and registros_base is None:
            registros_base = self.linea_base(config.seeds)

        os.makedirs(salida, exist_ok=True)
        for (modelo, registro) in corridas:
            save_checkpoint(modelo, os.path.join(salida, f"student_seed{registro.seed}.ckpt"))
        reporte = report.construir_reporte(
            report.DISTILL, config.echo(), registros,
            teacher_accuracy=teacher_accuracy, baseline=registros_base if baseline else None,
        )
        report.guardar_reporte(reporte, os.path.join(salida, REPORT))
        report.exportar_curvas_csv(registros, os.path.join(salida, CURVES))
        grupos = {"distill": registros}
        if baseline:
            grupos["baseline"] = registros_base
        report.guardar_tiempos(grupos, os.path.join(salida, TIMING))

        resumen = reporte["summary"]
        self._log(
            f"  ✓ Estudiante: {resumen['mean_eval_accuracy']:.4f} ± {resumen['std_eval_accuracy']:.4f}"
            + (f" (Δ vs. base {reporte['delta_vs_baseline']:+.4f})" if baseline else "")
        )
        return reporte

    def barrido(self, teacher: Mlp, clave: str, valores: Sequence[str], baseline: bool = False) -> dict:
        """
        Una destilación completa por valor de `clave`, en subdirectorios
        `<clave>=<valor>`; la línea base se entrena una sola vez.

        Returns:
            El reporte de tipo 'sweep'.
        """
        puntos = []
        registros_base = self.linea_base(self.config.seeds) if baseline else None
        total = len(valores)
        for i, valor in enumerate(valores, 1):
            config_punto = self.config.con_overrides([f"{clave}={valor}"])
            nombre = f"{clave}={valor}"
            self._log(f"\n  [{i}/{total}] Barrido {nombre}")
            reporte = self.destilar(
                teacher, baseline=baseline, config=config_punto,
                salida=os.path.join(self.salida, nombre), registros_base=registros_base,
            )
            puntos.append((valor, reporte, f"{nombre}/{REPORT}"))

        train, evaluacion = self.datos()
        teacher_accuracy = accuracy(teacher, evaluacion if evaluacion is not None else train)
        reporte = report.construir_reporte_barrido(self.config.echo(), clave, puntos, teacher_accuracy)
        report.guardar_reporte(reporte, os.path.join(self.salida, SWEEP_REPORT))
        report.exportar_barrido_csv(reporte, os.path.join(self.salida, SWEEP_SUMMARY))
        self._log(f"\n  ✓ Mejor valor de {clave}: {reporte['sweep']['best_value']}")
        return reporte

    def evaluar(self, modelo: Mlp, origen: str = "") -> dict:
        """Precisión top-1 y top-5 sobre el split de evaluación (o train si no hay)."""
        train, evaluacion = self.datos()
        conjunto = evaluacion if evaluacion is not None else train
        if modelo.spec.input_dim != conjunto.dim or modelo.spec.num_classes != conjunto.num_classes:
            raise CheckpointError(
                f"El modelo espera D={modelo.spec.input_dim}, C={modelo.spec.num_classes} "
                f"pero el conjunto tiene D={conjunto.dim}, C={conjunto.num_classes}"
            )
        resultado = {
            "checkpoint": origen,
            "split": conjunto.split,
            "n": conjunto.n,
            "top1": accuracy(modelo, conjunto, k=1),
            "top5": accuracy(modelo, conjunto, k=5),
        }
        os.makedirs(self.salida, exist_ok=True)
        report.guardar_texto_json(resultado, os.path.join(self.salida, EVAL_REPORT))
        return resultado
