"""
Graph learning déroulé : K pas de descente proximale à diagonale P apprise

Un pas :
    v  = w - D^T (P * (D w))
    v' = v - (sum_{j != i} v_j - 1) / (N - 1)   sur j != i, v'_i = 0
    w  = ReLU(v')
puis normalisation w / ||w||_1 après le K-ième pas.

unrolled_backward propage un gradient sur la sortie vers P et D (mode inverse).
"""
import logging

from dataclasses import dataclass, field
from typing import List, Tuple

import numpy as np

from core.data.collab_types import CollabWeights, ImportanceDiag
from core.errors import ConfigurationError, DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class UnrolledModel:
    """Modèle déroulé : diagonale P et nombre de pas K"""
    P: ImportanceDiag
    K: int = 10

    def __post_init__(self):
        if self.K < 1:
            raise ConfigurationError(f"K doit être >= 1 (reçu {self.K})")

    @property
    def n_params(self) -> int:
        return self.P.size

    def with_diag(self, diag: np.ndarray) -> 'UnrolledModel':
        return UnrolledModel(P=ImportanceDiag.projected(diag, self.P.gamma), K=self.K)


@dataclass
class UnrolledTrace:
    """Intermédiaires conservés pour la rétropropagation"""
    D: np.ndarray
    i: int
    diag: np.ndarray
    iterates: List[np.ndarray] = field(default_factory=list)
    projected: List[np.ndarray] = field(default_factory=list)
    total: float = 0.0
    degenerate: bool = False
    output: np.ndarray = field(default_factory=lambda: np.zeros(0))


def _check_inputs(D: np.ndarray, i: int, diag: np.ndarray) -> np.ndarray:
    D = np.asarray(D, dtype=np.float64)
    if D.ndim != 2:
        raise DimensionError(f"D doit être une matrice M x N (forme {D.shape})")
    n_params, n_agents = D.shape
    if n_agents < 2:
        raise DimensionError(f"Au moins 2 agents requis (N={n_agents})")
    if not 0 <= i < n_agents:
        raise DimensionError(f"Agent {i} hors de [0, {n_agents})")
    if diag.shape[0] != n_params:
        raise DimensionError(f"P de taille {diag.shape[0]}, D a {n_params} lignes")
    return D


def unrolled_trace(D: np.ndarray, i: int, diag: np.ndarray, K: int) -> UnrolledTrace:
    """Passe avant complète, P brute (sans contrôle du plancher)"""
    diag = np.asarray(diag, dtype=np.float64).reshape(-1)
    D = _check_inputs(D, i, diag)
    n_agents = D.shape[1]
    others = np.ones(n_agents, dtype=bool)
    others[i] = False

    w = np.where(others, 1.0 / (n_agents - 1), 0.0)
    trace = UnrolledTrace(D=D, i=i, diag=diag)
    trace.iterates.append(w)

    for _ in range(K):
        v = w - D.T @ (diag * (D @ w))
        shift = (v[others].sum() - 1.0) / (n_agents - 1)
        v = np.where(others, v - shift, 0.0)
        trace.projected.append(v)
        w = np.maximum(v, 0.0)
        trace.iterates.append(w)

    trace.total = float(w.sum())
    if trace.total > 0.0:
        trace.output = w / trace.total
    else:
        trace.degenerate = True
        trace.output = np.where(others, 1.0 / (n_agents - 1), 0.0)
    return trace


def unrolled_forward(D: np.ndarray, i: int, model: UnrolledModel) -> CollabWeights:
    """
    Poids de l'agent i par K pas déroulés depuis l'initialisation uniforme

    Args:
        D (np.ndarray): Matrice des distances D_i (M x N), colonne i nulle
        i (int): Agent propriétaire
        model (UnrolledModel): P et K

    Returns:
        CollabWeights: Poids normalisés ; degenerate=True si ||w||_1 = 0 (poids uniformes)
    """
    trace = unrolled_trace(D, i, model.P.diag, model.K)
    if trace.degenerate:
        logger.warning(f"Sortie dégénérée du graph learning déroulé (agent {i}) : poids uniformes")
    return CollabWeights(agent_id=i, weights=trace.output, degenerate=trace.degenerate)


def unrolled_backward(trace: UnrolledTrace, grad_output: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """
    Gradients de <grad_output, w_out> par rapport à P et à D

    La sous-dérivée de ReLU vaut 0 en 0. Une sortie dégénérée (uniforme)
    ne dépend ni de P ni de D.

    Returns:
        Tuple[np.ndarray, np.ndarray]: (dL/dP de taille M, dL/dD de forme M x N)
    """
    D, diag, i = trace.D, trace.diag, trace.i
    n_agents = D.shape[1]
    grad_P = np.zeros_like(diag)
    grad_D = np.zeros_like(D)
    if trace.degenerate:
        return grad_P, grad_D

    g = np.asarray(grad_output, dtype=np.float64).reshape(-1)
    others = np.ones(n_agents, dtype=bool)
    others[i] = False

    # normalisation w / s
    g_w = (g - g @ trace.output) / trace.total

    for k in range(len(trace.projected) - 1, -1, -1):
        w_prev = trace.iterates[k]
        g_proj = np.where(trace.projected[k] > 0.0, g_w, 0.0)
        g_v = np.where(others, g_proj - g_proj[others].sum() / (n_agents - 1), 0.0)

        y = D @ w_prev
        Dg = D @ g_v
        grad_P -= Dg * y
        grad_D -= np.outer(diag * y, g_v) + np.outer(diag * Dg, w_prev)
        g_w = g_v - D.T @ (diag * Dg)

    return grad_P, grad_D


def distance_grad_to_params(theta: np.ndarray, i: int, grad_D: np.ndarray) -> np.ndarray:
    """
    Chaîne D_i[m, j] = (theta_im - theta_jm)^2 vers Theta (N x M)
    """
    diff = (theta[i][None, :] - theta).T
    contrib = 2.0 * diff * grad_D
    grad_theta = -contrib.T
    grad_theta[i] += contrib.sum(axis=1)
    return grad_theta
