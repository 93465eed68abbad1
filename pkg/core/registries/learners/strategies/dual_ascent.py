"""Stratégie de graph learning par montée duale"""
from typing import Optional

import numpy as np

from core.data.collab_types import CollabWeights
from core.data.distances import pairwise_sq_dists
from core.solver.dual_ascent_solver import DualAscentSettings, dual_ascent_solve
from .base import GraphLearner


class DualAscentLearner(GraphLearner):
    """Résout le sous-problème convexe de chaque agent par montée duale"""

    def __init__(self, lambda1: float, lambda2: float, settings: Optional[DualAscentSettings] = None):
        self.lambda1 = lambda1
        self.lambda2 = lambda2
        self.settings = settings or DualAscentSettings()

    @property
    def method_name(self) -> str:
        return "original-gl"

    def learn(self, theta: np.ndarray, agent_id: int) -> CollabWeights:
        d = pairwise_sq_dists(theta, agent_id)
        return dual_ascent_solve(d, agent_id, self.lambda1, self.lambda2, self.settings)
