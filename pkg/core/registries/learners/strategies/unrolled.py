"""Stratégie de graph learning déroulée"""
import numpy as np

from core.data.collab_types import CollabWeights
from core.data.distances import distance_matrix
from core.errors import DimensionError
from core.solver.unrolled_solver import UnrolledModel, unrolled_forward
from .base import GraphLearner


class UnrolledLearner(GraphLearner):
    """K pas de descente proximale avec la diagonale P entraînée"""

    def __init__(self, model: UnrolledModel):
        self.model = model

    @property
    def method_name(self) -> str:
        return "unrolled-gl"

    def learn(self, theta: np.ndarray, agent_id: int) -> CollabWeights:
        if theta.shape[1] != self.model.n_params:
            raise DimensionError(
                f"P de taille {self.model.n_params} pour des paramètres de taille {theta.shape[1]}"
            )
        return unrolled_forward(distance_matrix(theta, agent_id), agent_id, self.model)
