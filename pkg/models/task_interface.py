"""
Interface commune pour toutes les tâches locales
"""
import numpy as np

from abc import ABC, abstractmethod
from typing import Any, Dict, Optional

from core.data.task_dataset import TaskDataset
from core.errors import ConfigurationError, DimensionError, UnsupportedMetricError


class LocalTask(ABC):
    """
    Tâche locale d'un agent : perte, gradient, hessienne, ajustement

    Les pertes sont moyennées sur les échantillons par défaut
    (params['loss_reduction'] = 'mean'), 'sum' reste disponible.
    """

    def __init__(self, params: Optional[Dict[str, Any]] = None):
        self.params = params or {}
        reduction = self.params.get('loss_reduction', 'mean')
        if reduction not in ('mean', 'sum'):
            raise ConfigurationError(f"loss_reduction invalide : '{reduction}' (mean|sum)")
        self.loss_reduction = reduction

    @property
    @abstractmethod
    def task_type(self) -> str:
        """Type de la tâche ('regression', 'classification')"""
        pass

    @property
    @abstractmethod
    def n_params(self) -> int:
        """Dimension M des paramètres"""
        pass

    @abstractmethod
    def loss(self, theta: np.ndarray, data: TaskDataset) -> float:
        pass

    @abstractmethod
    def gradient(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        pass

    @abstractmethod
    def hessian_at(self, theta: np.ndarray, data: TaskDataset) -> np.ndarray:
        pass

    @abstractmethod
    def fit_local(self, data: TaskDataset, settings: Optional[Any] = None):
        """Minimiseur local alpha_i et sa hessienne (LocalSurrogate)"""
        pass

    def accuracy(self, theta: np.ndarray, data: TaskDataset) -> float:
        raise UnsupportedMetricError(
            f"Accuracy non définie pour une tâche de type '{self.task_type}'"
        )

    def scale(self, data: TaskDataset) -> float:
        """Facteur de réduction de la perte (1/n ou 1)"""
        return 1.0 / len(data) if self.loss_reduction == 'mean' else 1.0

    def check_theta(self, theta: np.ndarray) -> np.ndarray:
        theta = np.asarray(theta, dtype=np.float64).reshape(-1)
        if theta.shape[0] != self.n_params:
            raise DimensionError(
                f"theta de taille {theta.shape[0]}, {self.n_params} attendue ({self.task_type})"
            )
        return theta
