"""
Classifieur softmax linéaire sur C classes locales

Disposition des paramètres par classe : theta.reshape(C, F + 1), ligne c =
(poids de la classe c, biais de la classe c). Le biais est traité comme une
feature constante égale à 1.
"""
import logging

from typing import Any, Dict, Optional

import numpy as np
from scipy.special import log_softmax, softmax

from core.data.task_dataset import TaskDataset
from core.errors import ConfigurationError, DimensionError
from models.surrogate import FitSettings, LocalSurrogate, minimize
from models.task_interface import LocalTask

logger = logging.getLogger(__name__)


class SoftmaxClassifierTask(LocalTask):
    """Entropie croisée softmax, ridge optionnel l2_reg / 2 * ||theta||^2"""

    def __init__(self, params: Optional[Dict[str, Any]] = None):
        super().__init__(params)
        self.n_features = int(self.params.get('n_features', 20))
        self.n_classes = int(self.params.get('n_classes', 5))
        self.l2_reg = float(self.params.get('l2_reg', 1e-3))
        if self.n_features < 1 or self.n_classes < 2:
            raise ConfigurationError(
                f"Classifieur invalide : F={self.n_features}, C={self.n_classes}"
            )
        if self.l2_reg < 0:
            raise ConfigurationError(f"l2_reg doit être >= 0 (reçu {self.l2_reg})")

    @property
    def task_type(self) -> str:
        return 'classification'

    @property
    def n_params(self) -> int:
        return self.n_classes * (self.n_features + 1)

    # ====================================
    # Quantités de base
    # ====================================

    def _augmented(self, data: TaskDataset) -> np.ndarray:
        if data.n_features != self.n_features:
            raise DimensionError(
                f"{data.n_features} features reçues, {self.n_features} attendues"
            )
        return np.hstack([data.inputs, np.ones((len(data), 1))])

    def _labels(self, data: TaskDataset) -> np.ndarray:
        labels = data.targets.astype(np.int64)
        if labels.min() < 0 or labels.max() >= self.n_classes:
            raise DimensionError(
                f"Labels hors de [0, {self.n_classes}) : [{labels.min()}, {labels.max()}]"
            )
        return labels

    def logits(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        theta = self.check_theta(theta).reshape(self.n_classes, self.n_features + 1)
        return self._augmented(data) @ theta.T

    def probabilities(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        return softmax(self.logits(theta, data), axis=1)

    # ====================================
    # Perte, gradient, hessienne
    # ====================================

    def loss(self, theta: np.ndarray, data: TaskDataset) -> float:
        labels = self._labels(data)
        log_p = log_softmax(self.logits(theta, data), axis=1)
        nll = -log_p[np.arange(len(data)), labels].sum()
        theta = np.asarray(theta, dtype=np.float64).reshape(-1)
        return float(self.scale(data) * nll + 0.5 * self.l2_reg * (theta @ theta))

    def gradient(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        labels = self._labels(data)
        p = self.probabilities(theta, data)
        p[np.arange(len(data)), labels] -= 1.0
        grad = self.scale(data) * (p.T @ self._augmented(data))
        return grad.reshape(-1) + self.l2_reg * np.asarray(theta, dtype=np.float64).reshape(-1)

    def hessian_at(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        """Somme des blocs (diag(p) - p p^T) x (x x^T), mise à l'échelle"""
        p = self.probabilities(theta, data)
        X = self._augmented(data)
        S = np.einsum('nc,cd->ncd', p, np.eye(self.n_classes)) - np.einsum('nc,nd->ncd', p, p)
        H = np.einsum('ncd,nf,ng->cfdg', S, X, X)
        H = self.scale(data) * H.reshape(self.n_params, self.n_params)
        return 0.5 * (H + H.T) + self.l2_reg * np.eye(self.n_params)

    # ====================================
    # Prédiction
    # ====================================

    def predict(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        """argmax des logits, égalités vers la plus petite classe"""
        return np.argmax(self.logits(theta, data), axis=1)

    def accuracy(self, theta: np.ndarray, data: TaskDataset) -> float:
        labels = self._labels(data)
        return float(np.mean(self.predict(theta, data) == labels))

    def fit_local(self, data: TaskDataset, settings: Optional[FitSettings] = None) -> LocalSurrogate:
        """Newton amorti (ou descente de gradient) depuis theta = 0"""
        settings = settings or FitSettings()
        use_newton = settings.method in ('auto', 'newton', 'closed_form')
        alpha, iterations = minimize(
            lambda t: self.loss(t, data),
            lambda t: self.gradient(t, data),
            np.zeros(self.n_params),
            settings,
            hessian=(lambda t: self.hessian_at(t, data)) if use_newton else None
        )
        logger.debug(f"Ajustement softmax en {iterations} itérations")
        return LocalSurrogate(
            alpha=alpha,
            hessian=self.hessian_at(alpha, data),
            base_loss=self.loss(alpha, data),
            iterations=iterations
        )
