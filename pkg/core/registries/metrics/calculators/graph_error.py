"""Calculateur de l'erreur de graphe GMSE"""
from typing import Dict, Any

import numpy as np

from core.errors import DimensionError
from .base import MetricCalculator


def gmse(estimated: np.ndarray, truth: np.ndarray) -> float:
    """Moyenne sur les agents de ||w_i_hat - w_i||^2 (norme euclidienne par ligne)"""
    estimated = np.asarray(estimated, dtype=np.float64)
    truth = np.asarray(truth, dtype=np.float64)
    if estimated.shape != truth.shape or estimated.ndim != 2:
        raise DimensionError(
            f"CollabMatrix estimée de forme {estimated.shape}, référence de forme {truth.shape}"
        )
    return float(np.sum((estimated - truth) ** 2) / estimated.shape[0])


class GraphErrorCalculator(MetricCalculator):
    """Calcule la GMSE du dernier graphe appris ; rien sans collaboration"""

    def calculate(
        self,
        estimates: Dict[str, Any],
        reference: Dict[str, Any],
        context: Dict[str, Any]
    ) -> Dict[str, float]:
        weights = estimates.get('weights')
        if weights is None:
            return {}
        return {'gmse': gmse(weights, reference['ground_truth'])}
