"""
Evaluateur de bout en bout de la perte de supervision L_P

Pour une diagonale P donnée, chaque scénario d'entraînement est déroulé :
graph learning déroulé pour tous les agents depuis Theta = alpha, puis T2
mises à jour analytiques (horizon tronqué) ou la boucle complète de T1 tours
avec un rafraîchissement tous les T2 tours (horizon complet). La perte est
évaluée sur Theta final ; le gradient par rapport à P est obtenu en mode
inverse à travers les mises à jour et les pas déroulés.
"""
import logging

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np
import scipy.linalg

from core.data.distances import distance_matrix
from core.data.task_dataset import TaskDataset
from core.errors import ConfigurationError, DimensionError
from core.solver.unrolled_solver import (
    UnrolledTrace,
    distance_grad_to_params,
    unrolled_backward,
    unrolled_trace,
)
from models.surrogate import LocalSurrogate
from models.task_interface import LocalTask

logger = logging.getLogger(__name__)

HORIZONS = ('truncated', 'full')


# ====================================
# Pertes de supervision
# ====================================

class Supervision(ABC):
    """Perte L_P sur les paramètres finaux Theta (N x M)"""

    @abstractmethod
    def loss(self, theta: np.ndarray) -> float:
        pass

    @abstractmethod
    def gradient(self, theta: np.ndarray) -> np.ndarray:
        pass


class RegressionSupervision(Supervision):
    """Erreur de régression L_reg vis-à-vis des droites vraies"""

    def __init__(self, truths: np.ndarray):
        self.truths = np.asarray(truths, dtype=np.float64)

    def loss(self, theta: np.ndarray) -> float:
        return float(np.sum((theta - self.truths) ** 2) / theta.shape[0])

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        return 2.0 * (theta - self.truths) / theta.shape[0]


class ClassificationSupervision(Supervision):
    """Somme des pertes locales sur les données d'évaluation de chaque agent"""

    def __init__(self, task: LocalTask, datasets: Sequence[TaskDataset]):
        self.task = task
        self.datasets = list(datasets)

    def loss(self, theta: np.ndarray) -> float:
        return float(sum(self.task.loss(theta[i], data) for i, data in enumerate(self.datasets)))

    def gradient(self, theta: np.ndarray) -> np.ndarray:
        return np.vstack([self.task.gradient(theta[i], data) for i, data in enumerate(self.datasets)])


@dataclass
class TrainingScenario:
    """Surrogates des agents d'un scénario d'entraînement et sa supervision"""
    surrogates: List[LocalSurrogate]
    supervision: Supervision
    seed: Optional[int] = None

    def __post_init__(self):
        if len(self.surrogates) < 2:
            raise ConfigurationError(f"Au moins 2 agents requis (N={len(self.surrogates)})")
        sizes = {s.n_params for s in self.surrogates}
        if len(sizes) != 1:
            raise DimensionError(f"Tailles de paramètres hétérogènes : {sorted(sizes)}")

    @property
    def n_agents(self) -> int:
        return len(self.surrogates)

    @property
    def n_params(self) -> int:
        return self.surrogates[0].n_params

    @property
    def alphas(self) -> np.ndarray:
        return np.vstack([s.alpha for s in self.surrogates])


def build_training_scenario(
        task: LocalTask,
        datasets: Sequence[TaskDataset],
        supervision: Supervision,
        fit_settings=None,
        seed: Optional[int] = None
) -> TrainingScenario:
    """Ajuste chaque agent localement et assemble le scénario"""
    surrogates = [task.fit_local(data, fit_settings) for data in datasets]
    return TrainingScenario(surrogates=surrogates, supervision=supervision, seed=seed)


# ====================================
# Déroulement et rétropropagation
# ====================================

@dataclass
class _Segment:
    """Un rafraîchissement du graphe suivi de ses mises à jour"""
    theta_start: np.ndarray
    traces: List[UnrolledTrace]
    weights: np.ndarray
    factors: list
    thetas: List[np.ndarray] = field(default_factory=list)


class ImportancePipeline:
    """
    Perte L_P(P) moyennée sur les scénarios et son gradient

    Args:
        lambda2 (float): Poids du terme de lissage
        T2 (int): Tours entre deux rafraîchissements
        T1 (int): Nombre total de tours (horizon complet)
        K (int): Pas déroulés
        horizon (str): 'truncated' (un rafraîchissement + T2 mises à jour) ou 'full'
    """

    def __init__(self, lambda2: float, T2: int, T1: int, K: int, horizon: str = 'truncated'):
        if horizon not in HORIZONS:
            raise ConfigurationError(f"Horizon inconnu : '{horizon}'. Attendu : {list(HORIZONS)}")
        if lambda2 < 0:
            raise ConfigurationError(f"lambda2 doit être >= 0 (reçu {lambda2})")
        self.lambda2 = lambda2
        self.T2 = T2
        self.T1 = T1
        self.K = K
        self.horizon = horizon

    @property
    def n_rounds(self) -> int:
        return self.T2 if self.horizon == 'truncated' else self.T1

    def _refresh(self, scenario: TrainingScenario, theta: np.ndarray, diag: np.ndarray) -> _Segment:
        traces = [
            unrolled_trace(distance_matrix(theta, i), i, diag, self.K)
            for i in range(scenario.n_agents)
        ]
        weights = np.vstack([trace.output for trace in traces])
        factors = []
        for i, surrogate in enumerate(scenario.surrogates):
            system = surrogate.hessian + 2.0 * self.lambda2 * weights[i].sum() * np.eye(surrogate.n_params)
            factors.append(scipy.linalg.cho_factor(system))
        return _Segment(theta_start=theta, traces=traces, weights=weights, factors=factors)

    def _update(self, scenario: TrainingScenario, segment: _Segment, theta: np.ndarray) -> np.ndarray:
        pull = 2.0 * self.lambda2 * (segment.weights @ theta)
        return np.vstack([
            scipy.linalg.cho_solve(segment.factors[i], s.hessian @ s.alpha + pull[i])
            for i, s in enumerate(scenario.surrogates)
        ])

    def forward(self, scenario: TrainingScenario, diag: np.ndarray) -> Tuple[np.ndarray, List[_Segment]]:
        """Theta final et segments conservés pour la rétropropagation"""
        theta = scenario.alphas
        if self.lambda2 == 0.0:
            return theta, []
        segments: List[_Segment] = []
        for t in range(self.n_rounds):
            if t % self.T2 == 0:
                segments.append(self._refresh(scenario, theta, diag))
            segment = segments[-1]
            segment.thetas.append(theta)
            theta = self._update(scenario, segment, theta)
        return theta, segments

    def backward(self, scenario: TrainingScenario, segments: List[_Segment], theta_final: np.ndarray,
                 grad_theta: np.ndarray, n_params: int) -> np.ndarray:
        """Gradient de L_P par rapport à la diagonale P"""
        grad_P = np.zeros(n_params)
        G = np.array(grad_theta, dtype=np.float64)
        two_l2 = 2.0 * self.lambda2

        for index in range(len(segments) - 1, -1, -1):
            segment = segments[index]
            grad_W = np.zeros_like(segment.weights)
            next_theta = theta_final if index == len(segments) - 1 else segments[index + 1].theta_start
            for step in range(len(segment.thetas) - 1, -1, -1):
                theta_t = segment.thetas[step]
                theta_next = segment.thetas[step + 1] if step + 1 < len(segment.thetas) else next_theta
                U = np.vstack([scipy.linalg.cho_solve(segment.factors[i], G[i]) for i in range(G.shape[0])])
                grad_W += two_l2 * (U @ theta_t.T)
                grad_W -= two_l2 * np.sum(U * theta_next, axis=1)[:, None]
                G = two_l2 * (segment.weights.T @ U)

            for i, trace in enumerate(segment.traces):
                g_P, g_D = unrolled_backward(trace, grad_W[i])
                grad_P += g_P
                if index > 0:
                    G += distance_grad_to_params(segment.theta_start, i, g_D)
        return grad_P

    def scenario_loss(self, scenario: TrainingScenario, diag: np.ndarray, with_grad: bool = True):
        diag = np.asarray(diag, dtype=np.float64).reshape(-1)
        if diag.shape[0] != scenario.n_params:
            raise DimensionError(f"P de taille {diag.shape[0]} pour M={scenario.n_params}")
        theta, segments = self.forward(scenario, diag)
        loss = scenario.supervision.loss(theta)
        if not with_grad:
            return loss, None
        if not segments:
            return loss, np.zeros_like(diag)
        if not np.isfinite(loss):
            return loss, np.full_like(diag, np.nan)
        try:
            grad = self.backward(scenario, segments, theta, scenario.supervision.gradient(theta), diag.shape[0])
        except (ValueError, np.linalg.LinAlgError) as e:
            # le gradient NaN est converti en TrainingError par l'entraîneur
            logger.warning(f"Rétropropagation impossible : {e}")
            return loss, np.full_like(diag, np.nan)
        return loss, grad

    def evaluate(self, scenarios: Sequence[TrainingScenario], diag: np.ndarray) -> Tuple[float, np.ndarray]:
        """
        Perte moyenne et gradient analytique

        Args:
            scenarios (Sequence[TrainingScenario]): Scénarios d'entraînement
            diag (np.ndarray): Diagonale P brute

        Returns:
            Tuple[float, np.ndarray]: (L_P, dL_P/dP)
        """
        total = 0.0
        grad = np.zeros(np.asarray(diag).reshape(-1).shape[0])
        for scenario in scenarios:
            loss, g = self.scenario_loss(scenario, diag, with_grad=True)
            total += loss
            grad += g
        return total / len(scenarios), grad / len(scenarios)

    def loss(self, scenarios: Sequence[TrainingScenario], diag: np.ndarray) -> float:
        """Perte moyenne seule (sondes de différences finies)"""
        return sum(self.scenario_loss(s, diag, with_grad=False)[0] for s in scenarios) / len(scenarios)
