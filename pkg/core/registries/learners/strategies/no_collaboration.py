"""Stratégie sans collaboration"""
import numpy as np

from core.data.collab_types import CollabWeights
from .base import GraphLearner


class NoCollaborationLearner(GraphLearner):
    """Chaque agent garde son minimiseur local : poids nuls, aucun échange"""

    @property
    def method_name(self) -> str:
        return "no-colla"

    @property
    def communicates(self) -> bool:
        return False

    def learn(self, theta: np.ndarray, agent_id: int) -> CollabWeights:
        return CollabWeights.zeros(agent_id, theta.shape[0])
