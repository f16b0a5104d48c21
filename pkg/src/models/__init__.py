# Modelos, optimizador y bucles de entrenamiento
from .mlp import Mlp, MlpSpec
from .optim import SGD, StepWarmupSchedule
from .training import EpochStats, TrainRecord, TrainSpec, accuracy, distill, train_supervised
from .checkpoint import load_checkpoint, save_checkpoint

__all__ = [
    'Mlp',
    'MlpSpec',
    'SGD',
    'StepWarmupSchedule',
    'EpochStats',
    'TrainRecord',
    'TrainSpec',
    'accuracy',
    'distill',
    'train_supervised',
    'load_checkpoint',
    'save_checkpoint',
]
