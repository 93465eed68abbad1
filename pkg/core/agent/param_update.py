"""
Mise à jour analytique des paramètres d'un agent

theta = (H + 2 lambda2 ||w||_1 I)^-1 (H alpha + 2 lambda2 sum_j w_j theta_j)
"""
import logging

from typing import Mapping, Tuple

import numpy as np
import scipy.linalg

from core.data.collab_types import as_param_vector
from core.errors import IncompleteBroadcastError

logger = logging.getLogger(__name__)

RIDGE = 1e-10


def solve_param_update(
        hessian: np.ndarray,
        alpha: np.ndarray,
        weights: np.ndarray,
        neighbor_params: Mapping[int, np.ndarray],
        lambda2: float
) -> Tuple[np.ndarray, bool]:
    """
    Minimiseur exact du surrogate quadratique régularisé par le graphe

    Args:
        hessian (np.ndarray): H_i (M x M)
        alpha (np.ndarray): Minimiseur local alpha_i
        weights (np.ndarray): Ligne w_i (longueur N)
        neighbor_params (Mapping[int, np.ndarray]): theta_j pour chaque j tel que w_ij > 0
        lambda2 (float): Poids du terme de lissage

    Returns:
        Tuple[np.ndarray, bool]: theta et indicateur de repli par ridge
    """
    alpha = np.asarray(alpha, dtype=np.float64)
    weights = np.asarray(weights, dtype=np.float64)
    partners = np.flatnonzero(weights > 0.0)
    total = float(weights[partners].sum())

    if lambda2 == 0.0 or total == 0.0:
        return alpha.copy(), False

    missing = [int(j) for j in partners if int(j) not in neighbor_params]
    if missing:
        raise IncompleteBroadcastError(missing)

    pull = np.zeros_like(alpha)
    for j in partners:
        pull += weights[j] * np.asarray(neighbor_params[int(j)], dtype=np.float64)

    system = hessian + 2.0 * lambda2 * total * np.eye(alpha.shape[0])
    rhs = hessian @ alpha + 2.0 * lambda2 * pull
    try:
        return scipy.linalg.solve(system, rhs, assume_a='pos'), False
    except (scipy.linalg.LinAlgError, ValueError):
        system = system + RIDGE * np.eye(alpha.shape[0])
        return scipy.linalg.solve(system, rhs), True


def update_params(state, neighbor_params: Mapping[int, np.ndarray], lambda2: float) -> np.ndarray:
    """
    Nouveau theta de l'agent à partir des paramètres de ses partenaires

    Args:
        state (AgentState): Etat courant (surrogate et poids)
        neighbor_params (Mapping[int, np.ndarray]): theta_j^(t) des partenaires
        lambda2 (float): Poids du terme de lissage (>= 0)

    Returns:
        np.ndarray: theta^(t+1)
    """
    theta, fallback = solve_param_update(
        state.surrogate.hessian,
        state.surrogate.alpha,
        state.weights.weights,
        neighbor_params,
        lambda2
    )
    if fallback:
        logger.warning(
            f"Agent {state.agent_id}, tour {state.round} : système singulier, "
            f"repli par ridge {RIDGE}"
        )
    return as_param_vector(theta, state.surrogate.n_params)
