"""
Scénario de régression : échantillons bruités de segments de droites

Les agents sont répartis en groupes par blocs d'indices, un groupe par
droite. L'intervalle [x_lo, x_hi] est découpé en N segments attribués aux
agents par une permutation tirée de la graine.
"""
import logging

from dataclasses import dataclass
from typing import Any, Mapping, Optional, Tuple

import numpy as np

from core.data.collab_types import GroupAssignment
from core.data.random_streams import agent_stream
from core.data.task_dataset import TaskDataset
from core.errors import ConfigurationError
from core.scenarios.base import GeneratedScenario
from core.solver.ground_truth import ground_truth_graph

logger = logging.getLogger(__name__)

DEFAULT_LINES = ((2.0, 1.0), (-1.0, 3.0))


@dataclass(frozen=True)
class RegressionScenario:
    """Paramètres du scénario de régression"""
    n_agents: int = 20
    lines: Tuple[Tuple[float, float], ...] = DEFAULT_LINES
    x_range: Tuple[float, float] = (-5.0, 5.0)
    noise: float = 1.0
    samples_per_agent: int = 100
    groups: Optional[GroupAssignment] = None

    def __post_init__(self):
        object.__setattr__(self, 'lines', tuple((float(k), float(b)) for k, b in self.lines))
        object.__setattr__(self, 'x_range', (float(self.x_range[0]), float(self.x_range[1])))
        if self.groups is None:
            object.__setattr__(self, 'groups', GroupAssignment.balanced(self.n_agents, len(self.lines)))
        self.validate()

    def validate(self) -> None:
        if self.n_agents < 2:
            raise ConfigurationError(f"Au moins 2 agents requis (n_agents={self.n_agents})")
        if not self.lines:
            raise ConfigurationError("Au moins une droite est requise")
        if self.noise < 0:
            raise ConfigurationError(f"Bruit négatif : sigma={self.noise}")
        if self.samples_per_agent < 2:
            raise ConfigurationError(f"Au moins 2 échantillons par agent (reçu {self.samples_per_agent})")
        lo, hi = self.x_range
        if not hi > lo:
            raise ConfigurationError(f"Intervalle de x vide : [{lo}, {hi}]")
        if self.groups.n_agents != self.n_agents:
            raise ConfigurationError(
                f"Affectation de {self.groups.n_agents} agents pour n_agents={self.n_agents}"
            )
        if max(self.groups.groups) >= len(self.lines):
            raise ConfigurationError(f"Groupe sans droite : {len(self.lines)} droites définies")
        self.groups.validate()

    @property
    def segment_width(self) -> float:
        lo, hi = self.x_range
        return (hi - lo) / self.n_agents

    @classmethod
    def from_config(cls, scenario: Mapping[str, Any], n_agents: int) -> 'RegressionScenario':
        groups = scenario.get('groups')
        return cls(
            n_agents=n_agents,
            lines=tuple(tuple(line) for line in scenario.get('lines', DEFAULT_LINES)),
            x_range=tuple(scenario.get('x_range', (-5.0, 5.0))),
            noise=float(scenario.get('noise', 1.0)),
            samples_per_agent=int(scenario.get('samples_per_agent', 100)),
            groups=GroupAssignment(tuple(groups)) if groups else None,
        )


def gen_regression(scenario: RegressionScenario, seed: int) -> GeneratedScenario:
    """
    Génère les données de chaque agent pour une graine

    Args:
        scenario (RegressionScenario): Paramètres du scénario
        seed (int): Graine

    Returns:
        GeneratedScenario: Données, droites vraies (k_i, b_i) et graphe de référence
    """
    scenario.validate()
    n_agents = scenario.n_agents
    lo = scenario.x_range[0]
    width = scenario.segment_width
    assignment = agent_stream(seed, 'segments').permutation(n_agents)

    datasets = []
    segments = []
    truths = np.empty((n_agents, 2))
    for i in range(n_agents):
        k, b = scenario.lines[scenario.groups.group_of[i]]
        x_lo = lo + assignment[i] * width
        x_hi = x_lo + width
        rng = agent_stream(seed, 'samples', i)
        x = rng.uniform(x_lo, x_hi, scenario.samples_per_agent)
        y = k * x + b + rng.normal(0.0, scenario.noise, scenario.samples_per_agent)
        datasets.append(TaskDataset(inputs=x[:, None], targets=y))
        segments.append([float(x_lo), float(x_hi)])
        truths[i] = (k, b)

    logger.debug(f"Scénario de régression généré (graine {seed}, N={n_agents})")
    return GeneratedScenario(
        task_type='regression',
        seed=seed,
        datasets=datasets,
        groups=scenario.groups,
        ground_truth=ground_truth_graph(scenario.groups),
        truths=truths,
        settings={
            'lines': [list(line) for line in scenario.lines],
            'x_range': list(scenario.x_range),
            'noise': scenario.noise,
            'samples_per_agent': scenario.samples_per_agent,
            'segments': segments,
        },
    )
