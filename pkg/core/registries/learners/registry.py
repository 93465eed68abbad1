"""Registre centralisé des méthodes de graph learning"""
import logging
from typing import Any, Dict, Type

from core.errors import ConfigurationError, MissingDependencyError
from .strategies import (
    GraphLearner,
    NoCollaborationLearner,
    DualAscentLearner,
    UnrolledLearner,
    FixedCollaborationLearner,
)

logger = logging.getLogger(__name__)

METHODS = ('no-colla', 'original-gl', 'unrolled-gl', 'fixed-colla')

_ALL_LEARNERS: Dict[str, Type[GraphLearner]] = {
    'no-colla': NoCollaborationLearner,
    'original-gl': DualAscentLearner,
    'unrolled-gl': UnrolledLearner,
    'fixed-colla': FixedCollaborationLearner,
}


class LearnerRegistry:
    """Registre des stratégies de graph learning"""

    _instance = None

    def __init__(self):
        self._learners: Dict[str, Type[GraphLearner]] = {}
        for method, learner_class in _ALL_LEARNERS.items():
            self.register(method, learner_class)

    @classmethod
    def get_instance(cls) -> 'LearnerRegistry':
        if cls._instance is None:
            cls._instance = cls()
        return cls._instance

    def register(self, method: str, learner_class: Type[GraphLearner]) -> None:
        """Enregistre une classe de learner"""
        if method in self._learners:
            raise ConfigurationError(f"Method '{method}' is already registered")
        self._learners[method] = learner_class
        logger.debug(f"Méthode de graph learning enregistrée : {method}")

    def is_registered(self, method: str) -> bool:
        return method in self._learners

    def list_methods(self) -> list[str]:
        return list(self._learners.keys())

    def create(self, method: str, **kwargs: Any) -> GraphLearner:
        """
        Instancie le learner d'une méthode

        Args:
            method (str): 'no-colla', 'original-gl', 'unrolled-gl' ou 'fixed-colla'
            **kwargs: lambda1/lambda2/settings, model, ou ground_truth selon la méthode

        Returns:
            GraphLearner
        """
        if method not in self._learners:
            raise ConfigurationError(
                f"Method '{method}' is not registered. "
                f"Available methods: {self.list_methods()}"
            )
        learner_class = self._learners[method]

        if learner_class is NoCollaborationLearner:
            return NoCollaborationLearner()
        if learner_class is DualAscentLearner:
            return DualAscentLearner(kwargs['lambda1'], kwargs['lambda2'], kwargs.get('settings'))
        if learner_class is UnrolledLearner:
            if kwargs.get('model') is None:
                raise MissingDependencyError(
                    "La méthode 'unrolled-gl' requiert un modèle P entraîné (--p-file)"
                )
            return UnrolledLearner(kwargs['model'])
        if learner_class is FixedCollaborationLearner:
            return FixedCollaborationLearner(kwargs['ground_truth'])
        return learner_class(**kwargs)
