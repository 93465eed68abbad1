"""Calculateur de l'erreur de régression L_reg"""
from typing import Dict, Any

import numpy as np

from core.errors import DimensionError
from .base import MetricCalculator


def l_reg(estimates: np.ndarray, truths: np.ndarray) -> float:
    """
    Erreur quadratique moyenne sur les paramètres (k, b) des droites

    L_reg = (1/N) * sum_i [(k_i_hat - k_i)^2 + (b_i_hat - b_i)^2]
    """
    estimates = np.asarray(estimates, dtype=np.float64)
    truths = np.asarray(truths, dtype=np.float64)
    if estimates.shape != truths.shape or estimates.ndim != 2:
        raise DimensionError(
            f"Estimations de forme {estimates.shape}, vérité terrain de forme {truths.shape}"
        )
    return float(np.sum((estimates - truths) ** 2) / estimates.shape[0])


class RegressionErrorCalculator(MetricCalculator):
    """Calcule L_reg à partir des paramètres finaux des agents"""

    def calculate(
        self,
        estimates: Dict[str, Any],
        reference: Dict[str, Any],
        context: Dict[str, Any]
    ) -> Dict[str, float]:
        return {'l_reg': l_reg(estimates['theta'], reference['truths'])}
