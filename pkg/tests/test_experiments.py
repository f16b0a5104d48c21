import json
import os

import jsonschema
import numpy as np
import pytest

from data import EVAL, TRAIN, make_blobs, save_delimited
from errors import ConfigError
from experiments import (
    cargar_config, cargar_datasets, desde_dict, parsear_asignacion, parsear_barrido, report,
)
from ldrld import LossBreakdown
from models import TrainSpec
from models.training import EpochStats, TrainRecord


def _registro(seed: int, precisiones):
    epocas = [
        EpochStats(epoch=k, lr=0.1, loss=LossBreakdown(task=1.0, llki=0.5, total=1.5),
                   train_accuracy=p, eval_accuracy=p, seconds=0.01)
        for k, p in enumerate(precisiones)
    ]
    return TrainRecord(epochs=epocas, parameters=[np.zeros(2)], seed=seed)


class TestConfiguracion:

    def test_archivo_de_prueba(self, tiny_config_path):
        config = cargar_config(tiny_config_path)
        assert config["dataset.kind"] == "blobs"
        assert config["teacher.hidden"] == (16,)
        assert config.seeds == (0, 1)
        assert config.distill_config().d == 3
        assert config.teacher_train().lr_drop_epochs == ()

    def test_valores_por_defecto(self):
        config = desde_dict({})
        cfg = config.distill_config()
        assert (cfg.d, cfg.tau, cfg.alpha, cfg.beta) == (7, 4.0, 1.0, 1.0)
        assert (cfg.adw.epsilon, cfg.adw.delta, cfg.adw.lambda_) == (1.5, 2.0, 0.05)
        assert config.seeds == (0, 1, 2)
        assert config.teacher_train().lr_drop_epochs == TrainSpec.desk(30).lr_drop_epochs

    def test_anulaciones(self, tiny_config_path):
        config = cargar_config(tiny_config_path, ["alpha=4", "distill.beta=7", "seeds=3,4,5"])
        assert config.distill_config().alpha == 4.0
        assert config.distill_config().beta == 7.0
        assert config.seeds == (3, 4, 5)

    def test_clave_desconocida(self, tmp_path):
        ruta = tmp_path / "c.env"
        ruta.write_text("dataset.kind=blobs\nteacher.colour=red\n", encoding="utf-8")
        with pytest.raises(ConfigError, match="teacher.colour"):
            cargar_config(str(ruta))

    def test_anulacion_desconocida(self, tiny_config_path):
        with pytest.raises(ConfigError):
            cargar_config(tiny_config_path, ["nope=1"])

    @pytest.mark.parametrize("asignacion", [
        "distill.d=uno", "distill.tau=0", "distill.mode=magic", "dataset.kind=parquet",
        "seeds=", "teacher.epochs=0", "distill.adw_enabled=tal_vez", "seeds=1,1",
        "dataset.modes=0",
    ])
    def test_valores_invalidos(self, tiny_config_path, asignacion):
        with pytest.raises(ConfigError):
            cargar_config(tiny_config_path, [asignacion])

    def test_rango_del_profesor_no_es_configurable(self, tiny_config_path):
        with pytest.raises(ConfigError, match="rank_source"):
            cargar_config(tiny_config_path, ["distill.rank_source=teacher"])
        assert cargar_config(tiny_config_path).distill_config().rank_source == "student"

    def test_archivo_inexistente(self, tmp_path):
        with pytest.raises(ConfigError):
            cargar_config(str(tmp_path / "no.env"))

    def test_eco_reconstruye_la_configuracion(self, tiny_config_path):
        config = cargar_config(tiny_config_path, ["distill.adw_enabled=false", "teacher.lr_drop_epochs=2,3"])
        reconstruida = desde_dict(config.echo())
        assert reconstruida.valores == config.valores
        assert config.echo()["distill.adw_enabled"] == "false"
        assert config.echo()["teacher.lr_drop_epochs"] == "2,3"

    def test_con_anulaciones_no_modifica_la_original(self, tiny_config_path):
        config = cargar_config(tiny_config_path)
        otra = config.con_overrides(["d=5"])
        assert otra["distill.d"] == 5
        assert config["distill.d"] == 3

    def test_asignacion_sin_igual(self):
        with pytest.raises(ConfigError):
            parsear_asignacion("alpha")


class TestBarrido:

    def test_rango_inclusivo(self):
        assert parsear_barrido("d=2..4") == ("distill.d", ["2", "3", "4"])

    def test_lista_literal(self):
        assert parsear_barrido("alpha=1,4,7") == ("distill.alpha", ["1", "4", "7"])

    def test_clave_calificada(self):
        assert parsear_barrido("student.lr=0.1,0.05") == ("student.lr", ["0.1", "0.05"])

    @pytest.mark.parametrize("texto", ["d=5..2", "d=a..b", "alpha=", "zeta=1,2"])
    def test_invalidos(self, texto):
        with pytest.raises(ConfigError):
            parsear_barrido(texto)


class TestDatasetsDeConfiguracion:

    def test_blobs(self, tiny_config_path):
        train, evaluacion = cargar_datasets(cargar_config(tiny_config_path))
        assert (train.n, train.dim, train.num_classes) == (72, 5, 6)
        assert (evaluacion.n, evaluacion.split) == (36, EVAL)

    def test_delimitado_con_evaluacion(self, tmp_path):
        train_path, eval_path = str(tmp_path / "train.csv"), str(tmp_path / "eval.csv")
        save_delimited(make_blobs(3, 4, 2, spread=0.1, seed=0), train_path)
        save_delimited(make_blobs(4, 2, 2, spread=0.1, seed=0, split=EVAL), eval_path)
        config = desde_dict({"dataset.kind": "delimited", "dataset.path": train_path, "dataset.eval_path": eval_path})
        train, evaluacion = cargar_datasets(config)
        assert train.num_classes == evaluacion.num_classes == 4
        assert (train.split, evaluacion.split) == (TRAIN, EVAL)

    def test_delimitado_sin_ruta(self):
        with pytest.raises(ConfigError):
            cargar_datasets(desde_dict({"dataset.kind": "delimited"}))

    def test_idx_sin_rutas(self):
        with pytest.raises(ConfigError):
            cargar_datasets(desde_dict({"dataset.kind": "idx"}))


class TestReportes:

    def test_resumen_con_desviacion_poblacional(self):
        registros = [_registro(0, [0.5, 0.6]), _registro(1, [0.5, 0.8]), _registro(2, [0.5, 0.7])]
        reporte = report.construir_reporte(report.DISTILL, {"distill.d": "7"}, registros, teacher_accuracy=0.9)
        report.validar_reporte(reporte)
        finales = [0.6, 0.8, 0.7]
        assert reporte["seeds"] == [0, 1, 2]
        assert len(reporte["runs"]) == 3
        assert reporte["summary"]["mean_eval_accuracy"] == pytest.approx(np.mean(finales))
        assert reporte["summary"]["std_eval_accuracy"] == pytest.approx(np.std(finales, ddof=0))
        assert reporte["baseline"] is None and reporte["delta_vs_baseline"] is None

    def test_linea_base_y_delta(self):
        registros = [_registro(0, [0.7]), _registro(1, [0.9])]
        base = [_registro(0, [0.6]), _registro(1, [0.6])]
        reporte = report.construir_reporte(report.DISTILL, {}, registros, baseline=base)
        report.validar_reporte(reporte)
        assert reporte["delta_vs_baseline"] == pytest.approx(0.2)
        assert reporte["baseline"]["summary"]["mean_eval_accuracy"] == pytest.approx(0.6)

    def test_eco_excluye_el_directorio_de_salida(self):
        reporte = report.construir_reporte(report.TEACHER, {"output.dir": "/tmp/x", "seeds": "0"}, [_registro(0, [0.5])])
        assert reporte["config"] == {"seeds": "0"}

    def test_esquema_rechaza_reporte_incompleto(self):
        reporte = report.construir_reporte(report.TEACHER, {}, [_registro(0, [0.5])])
        del reporte["summary"]
        with pytest.raises(jsonschema.ValidationError):
            report.validar_reporte(reporte)

    def test_barrido_elige_el_primer_maximo(self):
        puntos = []
        for valor, precision in (("2", 0.5), ("3", 0.7), ("4", 0.7)):
            r = report.construir_reporte(report.DISTILL, {}, [_registro(0, [precision])])
            puntos.append((valor, r, f"distill.d={valor}/report.json"))
        barrido = report.construir_reporte_barrido({}, "distill.d", puntos, teacher_accuracy=0.8)
        report.validar_reporte(barrido)
        assert barrido["sweep"]["best_value"] == "3"
        assert [p["value"] for p in barrido["sweep"]["points"]] == ["2", "3", "4"]

    def test_guardar_y_csv(self, tmp_path):
        registros = [_registro(0, [0.5, 0.6])]
        reporte = report.construir_reporte(report.DISTILL, {}, registros)
        ruta = str(tmp_path / "r" / "report.json")
        report.guardar_reporte(reporte, ruta)
        with open(ruta, encoding="utf-8") as f:
            assert json.load(f) == reporte
        curvas = str(tmp_path / "curves.csv")
        report.exportar_curvas_csv(registros, curvas)
        with open(curvas, encoding="utf-8") as f:
            lineas = f.read().splitlines()
        assert lineas[0].startswith("group,seed,epoch")
        assert len(lineas) == 3

    def test_tiempos_separados(self, tmp_path):
        ruta = str(tmp_path / "timing.json")
        report.guardar_tiempos({"distill": [_registro(4, [0.5, 0.6])]}, ruta)
        with open(ruta, encoding="utf-8") as f:
            assert json.load(f) == {"distill": {"4": [0.01, 0.01]}}
        assert os.path.isfile(ruta)
