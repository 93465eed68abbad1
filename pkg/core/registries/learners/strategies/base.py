"""Classe de base abstraite pour les stratégies de graph learning"""
from abc import ABC, abstractmethod

import numpy as np

from core.data.collab_types import CollabWeights


class GraphLearner(ABC):
    """Interface pour les méthodes d'apprentissage des poids de collaboration"""

    @property
    @abstractmethod
    def method_name(self) -> str:
        """Nom de la méthode (ex: 'original-gl')"""
        pass

    @property
    def communicates(self) -> bool:
        """False si les agents n'échangent jamais de paramètres"""
        return True

    @abstractmethod
    def learn(self, theta: np.ndarray, agent_id: int) -> CollabWeights:
        """
        Poids sortants de l'agent à partir de Theta (N x M) ordonné par agent
        """
        pass
