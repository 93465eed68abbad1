"""Calculateur de l'accuracy moyenne des agents"""
from typing import Dict, Any, Sequence

import numpy as np

from core.data.task_dataset import TaskDataset
from core.errors import DimensionError
from .base import MetricCalculator


def mean_accuracy(task: Any, thetas: np.ndarray, datasets: Sequence[TaskDataset]) -> float:
    """Moyenne des accuracies locales ; UnsupportedMetricError pour une régression"""
    thetas = np.asarray(thetas, dtype=np.float64)
    if thetas.shape[0] != len(datasets):
        raise DimensionError(f"{thetas.shape[0]} agents pour {len(datasets)} jeux d'évaluation")
    return float(np.mean([task.accuracy(theta, data) for theta, data in zip(thetas, datasets)]))


class AccuracyCalculator(MetricCalculator):
    """Calcule ACC sur les données d'évaluation de chaque agent"""

    def calculate(
        self,
        estimates: Dict[str, Any],
        reference: Dict[str, Any],
        context: Dict[str, Any]
    ) -> Dict[str, float]:
        return {'acc': mean_accuracy(context['task'], estimates['theta'], context['datasets'])}
