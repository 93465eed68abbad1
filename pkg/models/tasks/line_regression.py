"""
Régression linéaire y = kx + b, theta = (k, b)
"""
import logging

from typing import Any, Dict, Optional

import numpy as np

from core.data.task_dataset import TaskDataset
from core.errors import DimensionError
from models.surrogate import FitSettings, LocalSurrogate, minimize
from models.task_interface import LocalTask

logger = logging.getLogger(__name__)


class LineRegressionTask(LocalTask):
    """Erreur quadratique de la droite kx + b"""

    def __init__(self, params: Optional[Dict[str, Any]] = None):
        super().__init__(params)

    @property
    def task_type(self) -> str:
        return 'regression'

    @property
    def n_params(self) -> int:
        return 2

    def _design(self, data: TaskDataset) -> np.ndarray:
        if data.n_features != 1:
            raise DimensionError(f"Régression sur une seule variable ({data.n_features} reçues)")
        x = data.inputs[:, 0]
        return np.column_stack([x, np.ones_like(x)])

    def residuals(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        theta = self.check_theta(theta)
        return self._design(data) @ theta - data.targets.astype(np.float64)

    def loss(self, theta: np.ndarray, data: TaskDataset) -> float:
        r = self.residuals(theta, data)
        return float(self.scale(data) * (r @ r))

    def gradient(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        r = self.residuals(theta, data)
        return 2.0 * self.scale(data) * (self._design(data).T @ r)

    def hessian_at(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        """(2/n) sum [[x^2, x], [x, 1]], indépendante de theta"""
        self.check_theta(theta)
        A = self._design(data)
        return 2.0 * self.scale(data) * (A.T @ A)

    def predict(self, theta: np.ndarray, x: np.ndarray) -> np.ndarray:
        theta = self.check_theta(theta)
        return theta[0] * np.asarray(x, dtype=np.float64) + theta[1]

    def fit_local(self, data: TaskDataset, settings: Optional[FitSettings] = None) -> LocalSurrogate:
        """
        Moindres carrés fermés, ou descente de gradient si demandée

        Un design de rang < 2 (x tous identiques) bascule sur la
        pseudo-inverse et le surrogate est marqué dégénéré.
        """
        settings = settings or FitSettings()
        A = self._design(data)
        degenerate = False

        if settings.method == 'gradient_descent':
            alpha, iterations = minimize(
                lambda t: self.loss(t, data),
                lambda t: self.gradient(t, data),
                np.zeros(self.n_params),
                settings
            )
        else:
            alpha, _, rank, _ = np.linalg.lstsq(A, data.targets.astype(np.float64), rcond=None)
            iterations = 0
            if rank < self.n_params:
                degenerate = True
                alpha = np.linalg.pinv(A) @ data.targets.astype(np.float64)
                logger.warning(
                    f"Design de rang {rank} : solution pseudo-inverse (alpha={alpha})"
                )

        return LocalSurrogate(
            alpha=alpha,
            hessian=self.hessian_at(alpha, data),
            base_loss=self.loss(alpha, data),
            degenerate=degenerate,
            iterations=iterations
        )
