"""
Montée duale pour le sous-problème de graph learning d'un agent

    min_w  lambda1 ||w||^2 + lambda2 d^T w   s.c.  w >= 0, w_ii = 0, 1^T w = 1

Pas primal : w = ReLU(-(lambda2 d + z) / (2 lambda1)) ; pas dual :
z <- z + p (1^T w - 1).
"""
import logging

from dataclasses import dataclass
from typing import Optional

import numpy as np

from core.data.collab_types import CollabWeights
from core.errors import ConfigurationError, ConvergenceError, DegenerateObjectiveError, DimensionError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DualAscentSettings:
    """Réglages de la montée duale (stepsize None = 0.5 * lambda1)"""
    stepsize: Optional[float] = None
    tol: float = 1e-8
    max_iters: int = 50_000

    def __post_init__(self):
        if self.stepsize is not None and not self.stepsize > 0:
            raise ConfigurationError(f"stepsize doit être > 0 (reçu {self.stepsize})")
        if not self.tol > 0:
            raise ConfigurationError(f"tol doit être > 0 (reçu {self.tol})")
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters doit être >= 1 (reçu {self.max_iters})")


def safe_stepsize(nominal: float, lambda1: float, n_agents: int) -> float:
    """Pas effectif min(p, 2 lambda1 / (N - 1)) : l'itération duale reste monotone"""
    return min(nominal, 2.0 * lambda1 / (n_agents - 1))


def dual_ascent_solve(
        d: np.ndarray,
        i: int,
        lambda1: float,
        lambda2: float,
        settings: Optional[DualAscentSettings] = None
) -> CollabWeights:
    """
    Poids optimaux de l'agent i pour un vecteur de distances d

    Args:
        d (np.ndarray): Distances d_ij = ||theta_i - theta_j||^2, d[i] = 0
        i (int): Agent propriétaire
        lambda1 (float): Poids de la régularisation ||w||^2
        lambda2 (float): Poids de la régularité du graphe
        settings (Optional[DualAscentSettings]): Pas, tolérance, budget

    Returns:
        CollabWeights: Poids renormalisés sur le simplexe

    Raises:
        DegenerateObjectiveError: lambda1 = 0
        ConvergenceError: |1^T w - 1| > tol après max_iters
    """
    settings = settings or DualAscentSettings()
    d = np.asarray(d, dtype=np.float64).reshape(-1)
    n_agents = d.shape[0]

    if n_agents < 2:
        raise DimensionError(f"Au moins 2 agents requis (N={n_agents})")
    if not 0 <= i < n_agents:
        raise DimensionError(f"Agent {i} hors de [0, {n_agents})")
    if lambda1 == 0:
        raise DegenerateObjectiveError("lambda1 = 0 : objectif linéaire sur le simplexe")
    if lambda1 < 0 or lambda2 < 0:
        raise ConfigurationError(f"lambda1, lambda2 doivent être >= 0 ({lambda1}, {lambda2})")

    others = np.ones(n_agents, dtype=bool)
    others[i] = False

    nominal = settings.stepsize if settings.stepsize is not None else 0.5 * lambda1
    p = safe_stepsize(nominal, lambda1, n_agents)
    z = -lambda2 * float(d[others].min())

    w = np.zeros(n_agents)
    residual = np.inf
    for iteration in range(settings.max_iters):
        w = np.maximum(-(lambda2 * d + z) / (2.0 * lambda1), 0.0)
        w[i] = 0.0
        residual = float(w.sum() - 1.0)
        if abs(residual) <= settings.tol:
            break
        z += p * residual
    else:
        raise ConvergenceError(
            f"Montée duale non convergée pour l'agent {i} : |1^T w - 1| = {abs(residual):.3e}",
            residual=abs(residual),
            iterations=settings.max_iters
        )

    logger.debug(f"Montée duale agent {i} : {iteration + 1} itérations, p={p:.3e}")
    w = w / w.sum()
    w[i] = 0.0
    return CollabWeights(agent_id=i, weights=w)
