from .configuration_comparator import ConfigurationComparator
from .importance_store import load_importance, save_importance
from .importance_trainer import ImportanceTrainer, TrainerSettings, TrainingResult, train_importance
from .pipeline import (
    ClassificationSupervision,
    ImportancePipeline,
    RegressionSupervision,
    Supervision,
    TrainingScenario,
    build_training_scenario,
)
from .training_cache import ImportanceCache
from .training_manager import ImportanceTrainingManager

__all__ = [
    'ConfigurationComparator',
    'save_importance',
    'load_importance',
    'ImportanceTrainer',
    'TrainerSettings',
    'TrainingResult',
    'train_importance',
    'ImportancePipeline',
    'Supervision',
    'RegressionSupervision',
    'ClassificationSupervision',
    'TrainingScenario',
    'build_training_scenario',
    'ImportanceCache',
    'ImportanceTrainingManager',
]
