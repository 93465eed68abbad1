"""
Etat d'un agent et plan d'un tour de collaboration
"""
from dataclasses import dataclass, field, replace
from types import MappingProxyType
from typing import Mapping, Tuple

import numpy as np

from core.data.collab_types import CollabWeights, as_param_vector
from core.errors import ConfigurationError, DimensionError
from models.surrogate import LocalSurrogate

GRAPH_REFRESH = 'graph-refresh'
NEIGHBOR_EXCHANGE = 'neighbor-exchange'


@dataclass(frozen=True)
class RoundPlan:
    """Tour t et sa phase : rafraîchissement du graphe ssi t mod T2 = 0"""
    t: int
    phase: str

    def __post_init__(self):
        if self.t < 0:
            raise ConfigurationError(f"Indice de tour négatif : {self.t}")
        if self.phase not in (GRAPH_REFRESH, NEIGHBOR_EXCHANGE):
            raise ConfigurationError(f"Phase inconnue : '{self.phase}'")

    @classmethod
    def for_round(cls, t: int, T2: int) -> 'RoundPlan':
        return cls(t=t, phase=GRAPH_REFRESH if t % T2 == 0 else NEIGHBOR_EXCHANGE)

    @property
    def is_refresh(self) -> bool:
        return self.phase == GRAPH_REFRESH


@dataclass(frozen=True)
class AgentState:
    """
    Etat immuable d'un agent au tour t

    partners est dérivé des poids (w_ij > 0 strict). subscribers liste les
    agents qui ont cet agent pour partenaire ; ils reçoivent ses paramètres
    pendant les tours d'échange. known_params garde le dernier theta_j reçu
    de chaque agent, stale les expéditeurs absents au dernier tour.
    """
    agent_id: int
    surrogate: LocalSurrogate
    theta: np.ndarray
    weights: CollabWeights
    round: int = 0
    subscribers: Tuple[int, ...] = ()
    known_params: Mapping[int, np.ndarray] = field(default_factory=dict)
    stale: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'theta', as_param_vector(self.theta, self.surrogate.n_params))
        if self.weights.agent_id != self.agent_id:
            raise DimensionError(
                f"Poids de l'agent {self.weights.agent_id} attachés à l'agent {self.agent_id}"
            )
        object.__setattr__(self, 'subscribers', tuple(sorted(int(j) for j in self.subscribers)))
        object.__setattr__(self, 'known_params', MappingProxyType(dict(self.known_params)))

    @property
    def partners(self) -> Tuple[int, ...]:
        return self.weights.partners

    @property
    def n_agents(self) -> int:
        return self.weights.n_agents

    @property
    def alpha(self) -> np.ndarray:
        return self.surrogate.alpha

    def evolve(self, **changes) -> 'AgentState':
        """Nouvel état avec les champs modifiés"""
        return replace(self, **changes)
