"""Stratégie à graphe fixe (vérité terrain)"""
import numpy as np

from core.data.collab_types import CollabMatrix, CollabWeights
from core.errors import DimensionError
from .base import GraphLearner


class FixedCollaborationLearner(GraphLearner):
    """Court-circuite l'apprentissage : renvoie la ligne du graphe de référence"""

    def __init__(self, ground_truth: CollabMatrix):
        self.ground_truth = np.asarray(ground_truth, dtype=np.float64)

    @property
    def method_name(self) -> str:
        return "fixed-colla"

    def learn(self, theta: np.ndarray, agent_id: int) -> CollabWeights:
        if theta.shape[0] != self.ground_truth.shape[0]:
            raise DimensionError(
                f"{theta.shape[0]} agents pour un graphe de référence de taille {self.ground_truth.shape[0]}"
            )
        return CollabWeights(agent_id=agent_id, weights=self.ground_truth[agent_id])
