"""
Scénario de classification : clusters gaussiens par classe, mélanges non-IID

Une moyenne par classe, tirée une fois par graine sur la sphère de rayon
mean_radius, covariance identité. Le groupe g couvre les classes
g*C_g .. (g+1)*C_g - 1, réindexées 0..C_g-1 localement. Chaque agent tire ses
étiquettes selon un mélange de Dirichlet propre ; l'évaluation utilise un jeu
équilibré sur les classes du groupe.
"""
import logging

from dataclasses import dataclass
from typing import Any, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from core.data.collab_types import GroupAssignment
from core.data.random_streams import agent_stream
from core.data.task_dataset import TaskDataset
from core.errors import ConfigurationError
from core.scenarios.base import GeneratedScenario
from core.solver.ground_truth import ground_truth_graph

logger = logging.getLogger(__name__)

MAX_MIXTURE_DRAWS = 100


@dataclass(frozen=True)
class ClassificationScenario:
    """Paramètres du scénario de classification"""
    n_agents: int = 20
    n_features: int = 20
    n_classes: int = 10
    n_groups: int = 2
    mean_radius: float = 4.0
    dirichlet_alpha: float = 0.5
    samples_per_agent: int = 250
    samples_jitter: int = 25
    eval_samples_per_agent: int = 200
    min_classes: int = 2
    mixtures: Optional[Tuple[Tuple[float, ...], ...]] = None
    groups: Optional[GroupAssignment] = None

    def __post_init__(self):
        if self.mixtures is not None:
            object.__setattr__(self, 'mixtures', tuple(tuple(float(p) for p in row) for row in self.mixtures))
        if self.groups is None:
            object.__setattr__(self, 'groups', GroupAssignment.balanced(self.n_agents, self.n_groups))
        self.validate()

    @property
    def classes_per_group(self) -> int:
        return self.n_classes // self.n_groups

    def group_classes(self, group: int) -> List[int]:
        start = group * self.classes_per_group
        return list(range(start, start + self.classes_per_group))

    def validate(self) -> None:
        if self.n_agents < 2:
            raise ConfigurationError(f"Au moins 2 agents requis (n_agents={self.n_agents})")
        if self.n_features < 1:
            raise ConfigurationError(f"n_features doit être >= 1 (reçu {self.n_features})")
        if self.n_groups < 1 or self.n_classes % self.n_groups != 0:
            raise ConfigurationError(
                f"{self.n_classes} classes non divisibles en {self.n_groups} groupes"
            )
        if self.classes_per_group < max(2, self.min_classes):
            raise ConfigurationError(f"Au moins {max(2, self.min_classes)} classes par groupe requises")
        if not self.mean_radius > 0 or not self.dirichlet_alpha > 0:
            raise ConfigurationError("mean_radius et dirichlet_alpha doivent être > 0")
        if self.samples_jitter < 0 or self.samples_per_agent - self.samples_jitter < self.min_classes:
            raise ConfigurationError(
                f"Taille d'échantillon invalide : {self.samples_per_agent} +/- {self.samples_jitter}"
            )
        if self.eval_samples_per_agent < 0:
            raise ConfigurationError(f"eval_samples_per_agent négatif : {self.eval_samples_per_agent}")
        if self.groups.n_agents != self.n_agents:
            raise ConfigurationError(
                f"Affectation de {self.groups.n_agents} agents pour n_agents={self.n_agents}"
            )
        if max(self.groups.groups) >= self.n_groups:
            raise ConfigurationError(f"Groupe hors de [0, {self.n_groups})")
        self.groups.validate()
        if self.mixtures is not None:
            self._validate_mixtures()

    def _validate_mixtures(self) -> None:
        if len(self.mixtures) != self.n_agents:
            raise ConfigurationError(f"{len(self.mixtures)} mélanges pour {self.n_agents} agents")
        for i, row in enumerate(self.mixtures):
            p = np.asarray(row)
            if p.shape[0] != self.classes_per_group or np.any(p < 0) or not np.isclose(p.sum(), 1.0):
                raise ConfigurationError(f"Mélange invalide pour l'agent {i} : {list(row)}")
            if np.count_nonzero(p > 0) < self.min_classes:
                raise ConfigurationError(
                    f"Mélange dégénéré pour l'agent {i} : moins de {self.min_classes} classes"
                )

    @classmethod
    def from_config(cls, scenario: Mapping[str, Any], n_agents: int) -> 'ClassificationScenario':
        groups = scenario.get('groups')
        mixtures = scenario.get('mixtures')
        return cls(
            n_agents=n_agents,
            n_features=int(scenario.get('n_features', 20)),
            n_classes=int(scenario.get('n_classes', 10)),
            n_groups=int(scenario.get('n_groups', 2)),
            mean_radius=float(scenario.get('mean_radius', 4.0)),
            dirichlet_alpha=float(scenario.get('dirichlet_alpha', 0.5)),
            samples_per_agent=int(scenario.get('samples_per_agent', 250)),
            samples_jitter=int(scenario.get('samples_jitter', 25)),
            eval_samples_per_agent=int(scenario.get('eval_samples_per_agent', 200)),
            min_classes=int(scenario.get('min_classes', 2)),
            mixtures=tuple(tuple(row) for row in mixtures) if mixtures else None,
            groups=GroupAssignment(tuple(groups)) if groups else None,
        )


def class_means(scenario: ClassificationScenario, seed: int) -> np.ndarray:
    """Moyennes des classes (C x F) sur la sphère de rayon mean_radius"""
    directions = agent_stream(seed, 'means').normal(size=(scenario.n_classes, scenario.n_features))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    return scenario.mean_radius * directions


def _draw_counts(scenario: ClassificationScenario, seed: int, agent_id: int, n_samples: int) -> np.ndarray:
    rng = agent_stream(seed, 'mixture', agent_id)
    for _ in range(MAX_MIXTURE_DRAWS):
        if scenario.mixtures is not None:
            mixture = np.asarray(scenario.mixtures[agent_id])
        else:
            mixture = rng.dirichlet(np.full(scenario.classes_per_group, scenario.dirichlet_alpha))
        counts = rng.multinomial(n_samples, mixture)
        if np.count_nonzero(counts) >= scenario.min_classes:
            return counts
    raise ConfigurationError(
        f"Agent {agent_id} : impossible d'obtenir {scenario.min_classes} classes distinctes "
        f"en {MAX_MIXTURE_DRAWS} tirages"
    )


def _sample(means: np.ndarray, classes: Sequence[int], counts: np.ndarray, rng: np.random.Generator):
    local = np.repeat(np.arange(len(classes)), counts)
    rng.shuffle(local)
    global_labels = np.asarray(classes)[local]
    features = means[global_labels] + rng.standard_normal((local.shape[0], means.shape[1]))
    return TaskDataset(inputs=features, targets=local.astype(np.int64))


def gen_classification(scenario: ClassificationScenario, seed: int) -> GeneratedScenario:
    """
    Génère les données non-IID de chaque agent pour une graine

    Args:
        scenario (ClassificationScenario): Paramètres du scénario
        seed (int): Graine

    Returns:
        GeneratedScenario: Données locales, jeu d'évaluation équilibré, graphe de référence
    """
    scenario.validate()
    means = class_means(scenario, seed)
    per_class_eval = scenario.eval_samples_per_agent // scenario.classes_per_group

    datasets, eval_datasets, sizes = [], [], []
    for i in range(scenario.n_agents):
        classes = scenario.group_classes(scenario.groups.group_of[i])
        jitter = scenario.samples_jitter
        n_samples = scenario.samples_per_agent + int(agent_stream(seed, 'count', i).integers(-jitter, jitter + 1))
        counts = _draw_counts(scenario, seed, i, n_samples)
        datasets.append(_sample(means, classes, counts, agent_stream(seed, 'samples', i)))
        sizes.append(n_samples)
        if per_class_eval > 0:
            eval_counts = np.full(len(classes), per_class_eval)
            eval_datasets.append(_sample(means, classes, eval_counts, agent_stream(seed, 'eval', i)))

    logger.debug(f"Scénario de classification généré (graine {seed}, N={scenario.n_agents})")
    return GeneratedScenario(
        task_type='classification',
        seed=seed,
        datasets=datasets,
        groups=scenario.groups,
        ground_truth=ground_truth_graph(scenario.groups),
        eval_datasets=eval_datasets or None,
        settings={
            'n_features': scenario.n_features,
            'n_classes': scenario.n_classes,
            'n_groups': scenario.n_groups,
            'mean_radius': scenario.mean_radius,
            'dirichlet_alpha': scenario.dirichlet_alpha,
            'samples_per_agent': scenario.samples_per_agent,
            'samples_jitter': scenario.samples_jitter,
            'eval_samples_per_agent': scenario.eval_samples_per_agent,
            'sample_counts': sizes,
        },
    )
