"""
Configuración de experimentos en archivos `clave=valor` con claves punteadas.

Ejemplo:
    dataset.kind=blobs
    teacher.hidden=256,256
    distill.alpha=4
    seeds=0,1,2

Los archivos se leen con `dotenv_values`; las anulaciones `--set clave=valor`
se aplican encima. Las claves desconocidas se rechazan.
"""
import os
from dataclasses import dataclass
from typing import Callable, Dict, Iterable, List, Optional, Tuple

from dotenv import dotenv_values

from config import DEFAULT_DELTA, DEFAULT_DEPTH, DEFAULT_EPSILON, DEFAULT_LAMBDA, DEFAULT_TAU, OUTPUTS_DIR
from data import EVAL, TRAIN, Dataset, load_delimited, load_idx, make_blobs
from errors import ConfigError
from ldrld import AdwParams, DistillConfig
from models import MlpSpec, TrainSpec

AUTO = "auto"


def _entero(texto: str) -> int:
    return int(texto)


def _real(texto: str) -> float:
    return float(texto)


def _booleano(texto: str) -> bool:
    valor = texto.lower()
    if valor in ("true", "1", "yes", "si", "sí"):
        return True
    if valor in ("false", "0", "no"):
        return False
    raise ValueError(f"se esperaba true/false, recibido {texto!r}")


def _texto(texto: str) -> str:
    return texto


def _enteros(texto: str) -> Tuple[int, ...]:
    if texto.lower() in ("", "none"):
        return ()
    return tuple(int(v) for v in texto.split(","))


def _caidas(texto: str):
    return AUTO if texto.lower() == AUTO else _enteros(texto)


def _formatear(valor) -> str:
    if isinstance(valor, bool):
        return "true" if valor else "false"
    if isinstance(valor, tuple):
        return ",".join(str(v) for v in valor)
    if isinstance(valor, float):
        return repr(valor)
    return str(valor)


def _seccion_modelo(prefijo: str, ocultas: str, epochs: str) -> Dict[str, Tuple[Callable, str]]:
    return {
        f"{prefijo}.hidden": (_enteros, ocultas),
        f"{prefijo}.epochs": (_entero, epochs),
        f"{prefijo}.batch_size": (_entero, "64"),
        f"{prefijo}.lr": (_real, "0.05"),
        f"{prefijo}.momentum": (_real, "0.9"),
        f"{prefijo}.weight_decay": (_real, "0.0005"),
        f"{prefijo}.warmup_epochs": (_entero, "2"),
        f"{prefijo}.lr_drop_epochs": (_caidas, AUTO),
        f"{prefijo}.lr_drop_factor": (_real, "0.1"),
    }


# clave -> (parser, valor por defecto en texto)
CLAVES: Dict[str, Tuple[Callable, str]] = {
    "dataset.kind": (_texto, "blobs"),
    "dataset.classes": (_entero, "20"),
    "dataset.per_class": (_entero, "100"),
    "dataset.eval_per_class": (_entero, "50"),
    "dataset.dim": (_entero, "32"),
    "dataset.spread": (_real, "0.35"),
    "dataset.radius": (_real, "1.0"),
    "dataset.modes": (_entero, "1"),
    "dataset.seed": (_entero, "0"),
    "dataset.path": (_texto, ""),
    "dataset.eval_path": (_texto, ""),
    "dataset.delimiter": (_texto, ","),
    "dataset.label_column": (_entero, "-1"),
    "dataset.header": (_booleano, "false"),
    "dataset.images": (_texto, ""),
    "dataset.labels": (_texto, ""),
    "dataset.eval_images": (_texto, ""),
    "dataset.eval_labels": (_texto, ""),
    **_seccion_modelo("teacher", "256,256", "30"),
    "teacher.seed": (_entero, "1"),
    **_seccion_modelo("student", "32", "30"),
    "distill.d": (_entero, str(DEFAULT_DEPTH)),
    "distill.tau": (_real, repr(DEFAULT_TAU)),
    "distill.alpha": (_real, "1.0"),
    "distill.beta": (_real, "1.0"),
    "distill.gamma": (_real, "1.0"),
    "distill.epsilon": (_real, repr(DEFAULT_EPSILON)),
    "distill.delta": (_real, repr(DEFAULT_DELTA)),
    "distill.lambda": (_real, repr(DEFAULT_LAMBDA)),
    "distill.adw_enabled": (_booleano, "true"),
    "distill.tau_square_scaling": (_booleano, "false"),
    "distill.use_pairs": (_booleano, "true"),
    "distill.use_llki": (_booleano, "true"),
    "distill.use_rntk": (_booleano, "true"),
    "distill.mode": (_texto, "ldrld"),
    "output.dir": (_texto, OUTPUTS_DIR),
    "seeds": (_enteros, "0,1,2"),
}


def resolver_clave(clave: str) -> str:
    """Las claves sin sección ('d', 'alpha') pertenecen a `distill.`."""
    clave = clave.strip()
    if clave in CLAVES:
        return clave
    if "." not in clave and f"distill.{clave}" in CLAVES:
        return f"distill.{clave}"
    raise ConfigError(f"Clave desconocida: '{clave}'")


def parsear_asignacion(texto: str) -> Tuple[str, str]:
    if "=" not in texto:
        raise ConfigError(f"Se esperaba clave=valor, recibido '{texto}'")
    clave, valor = texto.split("=", 1)
    return resolver_clave(clave), valor.strip()


def parsear_barrido(texto: str) -> Tuple[str, List[str]]:
    """
    'd=2..10' → ('distill.d', ['2', ..., '10']); 'alpha=1,4,7' → lista literal.
    """
    clave, valores = parsear_asignacion(texto)
    if ".." in valores:
        inicio, fin = valores.split("..", 1)
        try:
            a, b = int(inicio), int(fin)
        except ValueError:
            raise ConfigError(f"Rango inválido en --sweep: '{valores}'") from None
        if b < a:
            raise ConfigError(f"Rango vacío en --sweep: '{valores}'")
        return clave, [str(v) for v in range(a, b + 1)]
    lista = [v.strip() for v in valores.split(",") if v.strip()]
    if not lista:
        raise ConfigError(f"--sweep sin valores: '{texto}'")
    return clave, lista


@dataclass(frozen=True)
class ExperimentConfig:
    """Valores tipados de todas las claves, ya validados."""
    valores: Dict[str, object]
    origen: str = "<config>"

    def __getitem__(self, clave: str):
        return self.valores[clave]

    # --- secciones -----------------------------------------------------

    def _train_spec(self, prefijo: str, seed: int) -> TrainSpec:
        epochs = self[f"{prefijo}.epochs"]
        caidas = self[f"{prefijo}.lr_drop_epochs"]
        if caidas == AUTO:
            caidas = TrainSpec.desk(epochs).lr_drop_epochs
        return TrainSpec(
            epochs=epochs,
            batch_size=self[f"{prefijo}.batch_size"],
            lr=self[f"{prefijo}.lr"],
            momentum=self[f"{prefijo}.momentum"],
            weight_decay=self[f"{prefijo}.weight_decay"],
            warmup_epochs=self[f"{prefijo}.warmup_epochs"],
            lr_drop_epochs=caidas,
            lr_drop_factor=self[f"{prefijo}.lr_drop_factor"],
            seed=seed,
        )

    def teacher_spec(self, input_dim: int, num_classes: int) -> MlpSpec:
        return MlpSpec(input_dim, self["teacher.hidden"], num_classes, self["teacher.seed"])

    def teacher_train(self) -> TrainSpec:
        return self._train_spec("teacher", self["teacher.seed"])

    def student_spec(self, input_dim: int, num_classes: int, seed: int) -> MlpSpec:
        return MlpSpec(input_dim, self["student.hidden"], num_classes, seed)

    def student_train(self, seed: int) -> TrainSpec:
        return self._train_spec("student", seed)

    def distill_config(self) -> DistillConfig:
        return DistillConfig(
            d=self["distill.d"],
            tau=self["distill.tau"],
            alpha=self["distill.alpha"],
            beta=self["distill.beta"],
            gamma=self["distill.gamma"],
            adw=AdwParams(self["distill.epsilon"], self["distill.delta"], self["distill.lambda"]),
            adw_enabled=self["distill.adw_enabled"],
            tau_square_scaling=self["distill.tau_square_scaling"],
            use_pairs=self["distill.use_pairs"],
            use_llki=self["distill.use_llki"],
            use_rntk=self["distill.use_rntk"],
            mode=self["distill.mode"],
        )

    @property
    def output_dir(self) -> str:
        return self["output.dir"]

    @property
    def seeds(self) -> Tuple[int, ...]:
        return self["seeds"]

    # --- serialización -------------------------------------------------

    def echo(self) -> Dict[str, str]:
        """Todas las claves resueltas en texto, en orden alfabético."""
        return {clave: _formatear(self.valores[clave]) for clave in sorted(self.valores)}

    def con_overrides(self, overrides: Iterable[str]) -> "ExperimentConfig":
        crudo = self.echo()
        for texto in overrides:
            clave, valor = parsear_asignacion(texto)
            crudo[clave] = valor
        return desde_dict(crudo, self.origen)

    def _validar(self) -> None:
        if self["dataset.kind"] not in ("blobs", "delimited", "idx"):
            raise ConfigError(f"dataset.kind desconocido: {self['dataset.kind']}")
        if not self.seeds:
            raise ConfigError("seeds no puede estar vacío")
        if len(set(self.seeds)) != len(self.seeds):
            raise ConfigError(f"seeds repetidas: {self.seeds}")
        if self["dataset.modes"] < 1:
            raise ConfigError(f"dataset.modes debe ser >= 1, recibido {self['dataset.modes']}")
        for prefijo in ("teacher", "student"):
            if self[f"{prefijo}.epochs"] < 1:
                raise ConfigError(f"{prefijo}.epochs debe ser >= 1")
            self._train_spec(prefijo, 0)
        self.distill_config()


def desde_dict(crudo: Dict[str, Optional[str]], origen: str = "<config>") -> ExperimentConfig:
    """
    Valida un diccionario clave→texto y construye la configuración.

    Raises:
        ConfigError: Claves desconocidas o valores inválidos.
    """
    desconocidas = sorted(set(crudo) - set(CLAVES))
    if desconocidas:
        raise ConfigError(f"{origen}: claves desconocidas: {', '.join(desconocidas)}")
    valores = {}
    for clave, (parser, defecto) in CLAVES.items():
        texto = crudo.get(clave, defecto)
        if texto is None:
            raise ConfigError(f"{origen}: la clave '{clave}' no tiene valor")
        try:
            valores[clave] = parser(texto.strip())
        except ValueError as e:
            raise ConfigError(f"{origen}: {clave}={texto!r}: {e}") from None
    config = ExperimentConfig(valores, origen)
    try:
        config._validar()
    except ValueError as e:
        raise ConfigError(f"{origen}: {e}") from None
    return config


def cargar_config(path: str, overrides: Iterable[str] = ()) -> ExperimentConfig:
    """
    Lee un archivo de configuración y aplica las anulaciones.

    Args:
        path: Ruta al archivo clave=valor.
        overrides: Cadenas 'clave=valor' (--set).
    """
    if not os.path.isfile(path):
        raise ConfigError(f"No se encontró el archivo de configuración '{path}'")
    crudo = dict(dotenv_values(path, interpolate=False))
    for texto in overrides:
        clave, valor = parsear_asignacion(texto)
        crudo[clave] = valor
    return desde_dict(crudo, path)


def cargar_datasets(config: ExperimentConfig) -> Tuple[Dataset, Optional[Dataset]]:
    """
    Construye los splits de entrenamiento y evaluación según `dataset.kind`.

    Returns:
        (train, eval); eval es None si no se configuró un archivo de evaluación.
    """
    tipo = config["dataset.kind"]
    if tipo == "blobs":
        comunes = dict(
            num_classes=config["dataset.classes"], dim=config["dataset.dim"],
            spread=config["dataset.spread"], seed=config["dataset.seed"], radius=config["dataset.radius"],
            modes=config["dataset.modes"],
        )
        return (
            make_blobs(per_class=config["dataset.per_class"], split=TRAIN, **comunes),
            make_blobs(per_class=config["dataset.eval_per_class"], split=EVAL, **comunes),
        )

    if tipo == "delimited":
        if not config["dataset.path"]:
            raise ConfigError("dataset.path es obligatorio para dataset.kind=delimited")
        opciones = dict(
            delimiter=config["dataset.delimiter"], label_column=config["dataset.label_column"],
            header=config["dataset.header"],
        )
        train = load_delimited(config["dataset.path"], **opciones)
        if not config["dataset.eval_path"]:
            return train, None
        evaluacion = load_delimited(config["dataset.eval_path"], split=EVAL, **opciones)
        num_classes = max(train.num_classes, evaluacion.num_classes)
        return (
            Dataset(train.features, train.labels, num_classes, TRAIN),
            Dataset(evaluacion.features, evaluacion.labels, num_classes, EVAL),
        )

    if not (config["dataset.images"] and config["dataset.labels"]):
        raise ConfigError("dataset.images y dataset.labels son obligatorios para dataset.kind=idx")
    train = load_idx(config["dataset.images"], config["dataset.labels"])
    if not (config["dataset.eval_images"] and config["dataset.eval_labels"]):
        return train, None
    evaluacion = load_idx(config["dataset.eval_images"], config["dataset.eval_labels"], split=EVAL)
    num_classes = max(train.num_classes, evaluacion.num_classes)
    return (
        Dataset(train.features, train.labels, num_classes, TRAIN),
        Dataset(evaluacion.features, evaluacion.labels, num_classes, EVAL),
    )
