"""
Distances entre paramètres d'agents (D_i et d_i)
"""
import logging

from typing import Mapping, Optional, Sequence, Union

import numpy as np

from core.errors import DimensionError, IncompleteBroadcastError

logger = logging.getLogger(__name__)

ParamsInput = Union[np.ndarray, Sequence[Optional[np.ndarray]], Mapping[int, np.ndarray]]


def stack_params(all_params: ParamsInput, n_agents: Optional[int] = None) -> np.ndarray:
    """
    Empile les paramètres de tous les agents en une matrice Theta (N x M)

    Args:
        all_params: Matrice N x M, séquence indexée par agent ou dict {agent_id: theta}
        n_agents (Optional[int]): N attendu

    Returns:
        np.ndarray: Theta, ligne j = theta_j

    Raises:
        IncompleteBroadcastError: Si un agent n'a pas de paramètres
    """
    if isinstance(all_params, np.ndarray) and all_params.ndim == 2:
        theta = np.asarray(all_params, dtype=np.float64)
        if n_agents is not None and theta.shape[0] != n_agents:
            missing = list(range(theta.shape[0], n_agents))
            if missing:
                raise IncompleteBroadcastError(missing)
            raise DimensionError(f"Theta a {theta.shape[0]} lignes, N={n_agents} attendu")
        return theta

    if isinstance(all_params, Mapping):
        size = n_agents if n_agents is not None else (max(all_params) + 1 if all_params else 0)
        rows = [all_params.get(j) for j in range(size)]
    else:
        rows = list(all_params)
        if n_agents is not None and len(rows) < n_agents:
            rows.extend([None] * (n_agents - len(rows)))

    missing = [j for j, row in enumerate(rows) if row is None]
    if missing:
        raise IncompleteBroadcastError(missing)
    if not rows:
        raise DimensionError("Aucun paramètre fourni")

    sizes = {np.asarray(row).reshape(-1).shape[0] for row in rows}
    if len(sizes) != 1:
        raise DimensionError(f"Tailles de paramètres hétérogènes : {sorted(sizes)}")
    return np.vstack([np.asarray(row, dtype=np.float64).reshape(-1) for row in rows])


def distance_matrix(all_params: ParamsInput, i: int, n_agents: Optional[int] = None) -> np.ndarray:
    """
    Matrice D_i (M x N) des écarts quadratiques par coordonnée

    (D_i)_{mj} = (theta_im - theta_jm)^2 ; la colonne i est nulle.
    """
    theta = stack_params(all_params, n_agents)
    _check_owner(i, theta.shape[0])
    return ((theta[i][None, :] - theta) ** 2).T


def pairwise_sq_dists(all_params: ParamsInput, i: int, n_agents: Optional[int] = None) -> np.ndarray:
    """Vecteur d_i de longueur N : d_ij = ||theta_i - theta_j||^2"""
    return distance_matrix(all_params, i, n_agents).sum(axis=0)


def _check_owner(i: int, n_agents: int) -> None:
    if not 0 <= i < n_agents:
        raise DimensionError(f"Agent {i} hors de [0, {n_agents})")
