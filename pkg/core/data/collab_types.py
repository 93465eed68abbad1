"""
Types de domaine partagés par tous les modules

ParamVector et CollabMatrix restent des np.ndarray (float64) ; les types
composés sont des dataclasses figées dont les tableaux sont en lecture seule.
"""
import logging

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from core.errors import ConfigurationError, DimensionError

logger = logging.getLogger(__name__)

ParamVector = np.ndarray
CollabMatrix = np.ndarray


def as_param_vector(values, expected_size: Optional[int] = None) -> ParamVector:
    """
    Convertit une séquence en ParamVector float64 fini

    Args:
        values: Valeurs des paramètres
        expected_size (Optional[int]): Taille M attendue

    Returns:
        ParamVector: Copie en lecture seule
    """
    vector = np.array(values, dtype=np.float64).reshape(-1)
    if expected_size is not None and vector.shape[0] != expected_size:
        raise DimensionError(
            f"ParamVector de taille {vector.shape[0]}, {expected_size} attendue"
        )
    if not np.all(np.isfinite(vector)):
        raise DimensionError("ParamVector contient des valeurs non finies")
    vector.setflags(write=False)
    return vector


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, dtype=np.float64)
    array.setflags(write=False)
    return array


@dataclass(frozen=True)
class CollabWeights:
    """Poids sortants d'un agent (une ligne de W)"""
    agent_id: int
    weights: np.ndarray
    degenerate: bool = False

    def __post_init__(self):
        object.__setattr__(self, 'weights', _frozen(np.asarray(self.weights).reshape(-1)))
        if not 0 <= self.agent_id < self.weights.shape[0]:
            raise DimensionError(
                f"agent_id {self.agent_id} hors de [0, {self.weights.shape[0]})"
            )

    @property
    def n_agents(self) -> int:
        return int(self.weights.shape[0])

    @property
    def partners(self) -> Tuple[int, ...]:
        """Indices j tels que w_ij > 0"""
        return tuple(int(j) for j in np.flatnonzero(self.weights > 0.0))

    @classmethod
    def uniform(cls, agent_id: int, n_agents: int, degenerate: bool = False) -> 'CollabWeights':
        """Poids uniformes 1/(N-1) sur j != i"""
        if n_agents < 2:
            raise ConfigurationError(f"Au moins 2 agents requis (N={n_agents})")
        weights = np.full(n_agents, 1.0 / (n_agents - 1))
        weights[agent_id] = 0.0
        return cls(agent_id=agent_id, weights=weights, degenerate=degenerate)

    @classmethod
    def zeros(cls, agent_id: int, n_agents: int) -> 'CollabWeights':
        """Aucun partenaire"""
        return cls(agent_id=agent_id, weights=np.zeros(n_agents))


def validate_collab_weights(
        w: CollabWeights,
        tol: float = 1e-6,
        n_agents: Optional[int] = None
) -> bool:
    """
    Vérifie les contraintes du simplexe : w_ii = 0, w >= 0, somme à 1

    Args:
        w (CollabWeights): Poids à vérifier
        tol (float): Tolérance sur la somme
        n_agents (Optional[int]): N configuré pour l'expérience

    Returns:
        bool: True si les trois invariants sont respectés
    """
    if w.n_agents < 2:
        raise DimensionError(f"Vecteur de poids de longueur {w.n_agents} (N >= 2 requis)")
    if n_agents is not None and w.n_agents != n_agents:
        raise DimensionError(
            f"Vecteur de poids de longueur {w.n_agents}, N={n_agents} configuré"
        )
    values = w.weights
    if not np.all(np.isfinite(values)):
        return False
    if values[w.agent_id] != 0.0:
        return False
    if np.any(values < 0.0):
        return False
    return bool(abs(values.sum() - 1.0) <= tol)


def stack_weights(rows: Sequence[CollabWeights]) -> CollabMatrix:
    """Empile les lignes de chaque agent en une CollabMatrix N x N"""
    n_agents = len(rows)
    ordered = sorted(rows, key=lambda r: r.agent_id)
    if [r.agent_id for r in ordered] != list(range(n_agents)):
        raise DimensionError("Lignes de W incomplètes ou dupliquées")
    matrix = np.vstack([r.weights for r in ordered])
    if matrix.shape != (n_agents, n_agents):
        raise DimensionError(f"CollabMatrix de forme {matrix.shape}, ({n_agents}, {n_agents}) attendue")
    return matrix


def validate_collab_matrix(matrix: CollabMatrix, tol: float = 1e-6) -> bool:
    """Chaque ligne respecte les invariants de CollabWeights"""
    matrix = np.asarray(matrix, dtype=np.float64)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise DimensionError(f"CollabMatrix non carrée : {matrix.shape}")
    return all(
        validate_collab_weights(CollabWeights(agent_id=i, weights=matrix[i]), tol)
        for i in range(matrix.shape[0])
    )


@dataclass(frozen=True)
class ImportanceDiag:
    """Diagonale P du modèle déroulé, bornée inférieurement par gamma"""
    diag: np.ndarray
    gamma: float = 1e-6

    def __post_init__(self):
        if not self.gamma > 0:
            raise ConfigurationError(f"gamma doit être > 0 (reçu {self.gamma})")
        diag = _frozen(np.asarray(self.diag).reshape(-1))
        if not np.all(np.isfinite(diag)):
            raise DimensionError("P contient des valeurs non finies")
        if np.any(diag < self.gamma):
            raise ConfigurationError(
                f"Entrées de P sous le plancher gamma={self.gamma} : {diag.min()}"
            )
        object.__setattr__(self, 'diag', diag)

    @property
    def size(self) -> int:
        return int(self.diag.shape[0])

    @classmethod
    def projected(cls, values: np.ndarray, gamma: float) -> 'ImportanceDiag':
        """Projette sur {P >= gamma}"""
        return cls(diag=np.maximum(np.asarray(values, dtype=np.float64), gamma), gamma=gamma)

    @classmethod
    def constant(cls, size: int, value: float, gamma: float = 1e-6) -> 'ImportanceDiag':
        return cls(diag=np.full(size, float(value)), gamma=gamma)


@dataclass(frozen=True)
class GroupAssignment:
    """Groupe de tâche de chaque agent"""
    group_of: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'group_of', tuple(int(g) for g in self.group_of))

    @property
    def n_agents(self) -> int:
        return len(self.group_of)

    @property
    def groups(self) -> List[int]:
        return sorted(set(self.group_of))

    def members(self, group: int) -> List[int]:
        return [i for i, g in enumerate(self.group_of) if g == group]

    def sizes(self) -> Dict[int, int]:
        return {g: len(self.members(g)) for g in self.groups}

    def validate(self) -> None:
        """Chaque groupe doit compter au moins 2 agents"""
        singletons = [g for g, size in self.sizes().items() if size < 2]
        if singletons:
            raise ConfigurationError(f"Groupes à un seul agent : {singletons}")

    @classmethod
    def from_blocks(cls, group_sizes: Sequence[int]) -> 'GroupAssignment':
        """Groupes contigus par blocs d'indices"""
        group_of: List[int] = []
        for group, size in enumerate(group_sizes):
            group_of.extend([group] * int(size))
        return cls(group_of=tuple(group_of))

    @classmethod
    def balanced(cls, n_agents: int, n_groups: int) -> 'GroupAssignment':
        """Répartit N agents en n_groups blocs de tailles quasi égales"""
        if n_groups < 1:
            raise ConfigurationError(f"n_groups doit être >= 1 (reçu {n_groups})")
        base, extra = divmod(n_agents, n_groups)
        sizes = [base + (1 if g < extra else 0) for g in range(n_groups)]
        return cls.from_blocks(sizes)


@dataclass(frozen=True)
class Hyperparams:
    """Hyperparamètres du graph learning et de la boucle collaborative"""
    lambda1: float
    lambda2: float = 0.1
    K: int = 10
    T1: int = 20
    T2: int = 10
    gamma: float = 1e-6
    stepsize: Optional[float] = None
    tol: float = 1e-8
    max_iters: int = 50_000

    def __post_init__(self):
        if self.lambda1 < 0 or self.lambda2 < 0:
            raise ConfigurationError(
                f"lambda1 et lambda2 doivent être >= 0 (reçus {self.lambda1}, {self.lambda2})"
            )
        for name in ('K', 'T1', 'T2', 'max_iters'):
            if getattr(self, name) < 1:
                raise ConfigurationError(f"{name} doit être >= 1 (reçu {getattr(self, name)})")
        if self.stepsize is not None and not self.stepsize > 0:
            raise ConfigurationError(f"stepsize doit être > 0 (reçu {self.stepsize})")
        if not self.tol > 0 or not self.gamma > 0:
            raise ConfigurationError("tol et gamma doivent être > 0")

    @property
    def effective_stepsize(self) -> float:
        """Pas nominal de la montée duale (0.5 * lambda1 par défaut)"""
        return self.stepsize if self.stepsize is not None else 0.5 * self.lambda1

    def is_refresh(self, t: int) -> bool:
        return t % self.T2 == 0

    @property
    def n_refreshes(self) -> int:
        return len(range(0, self.T1, self.T2))
