"""
Surrogate quadratique local et ajustement itératif des tâches

fit_local produit (alpha_i, H_i, L_i(alpha_i)). Les minimiseurs utilisent une
recherche linéaire par rebroussement (Armijo) avec un budget de pas commun.
"""
import logging

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
import scipy.linalg

from core.errors import ConfigurationError, FitError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FitSettings:
    """Réglages de l'ajustement local"""
    max_iters: int = 10_000
    tol: float = 1e-6
    method: str = 'auto'
    armijo: float = 1e-4
    shrink: float = 0.5

    def __post_init__(self):
        if self.max_iters < 1:
            raise ConfigurationError(f"max_iters doit être >= 1 (reçu {self.max_iters})")
        if not self.tol > 0:
            raise ConfigurationError(f"tol doit être > 0 (reçu {self.tol})")
        if self.method not in ('auto', 'closed_form', 'newton', 'gradient_descent'):
            raise ConfigurationError(f"Méthode d'ajustement inconnue : '{self.method}'")


@dataclass(frozen=True)
class LocalSurrogate:
    """Développement de Taylor d'ordre 2 de L_i autour de alpha_i"""
    alpha: np.ndarray
    hessian: np.ndarray
    base_loss: float
    degenerate: bool = False
    iterations: int = 0

    def __post_init__(self):
        alpha = np.array(self.alpha, dtype=np.float64).reshape(-1)
        hessian = np.array(self.hessian, dtype=np.float64)
        if hessian.shape != (alpha.shape[0], alpha.shape[0]):
            raise ConfigurationError(
                f"Hessienne de forme {hessian.shape} pour M={alpha.shape[0]}"
            )
        alpha.setflags(write=False)
        hessian.setflags(write=False)
        object.__setattr__(self, 'alpha', alpha)
        object.__setattr__(self, 'hessian', hessian)

    @property
    def n_params(self) -> int:
        return int(self.alpha.shape[0])

    def evaluate(self, theta: np.ndarray) -> float:
        """Valeur du modèle quadratique en theta"""
        delta = np.asarray(theta, dtype=np.float64) - self.alpha
        return float(0.5 * delta @ self.hessian @ delta + self.base_loss)

    def is_psd(self, slack: float = 1e-8) -> bool:
        if not np.allclose(self.hessian, self.hessian.T, atol=1e-8):
            return False
        return bool(np.linalg.eigvalsh(self.hessian).min() >= -slack)


def minimize(
        objective: Callable[[np.ndarray], float],
        gradient: Callable[[np.ndarray], np.ndarray],
        theta0: np.ndarray,
        settings: FitSettings,
        hessian: Optional[Callable[[np.ndarray], np.ndarray]] = None
) -> tuple:
    """
    Descente avec rebroussement ; direction de Newton si une hessienne est fournie

    Returns:
        tuple: (theta, iterations)

    Raises:
        FitError: Gradient final au-dessus de la tolérance, ou plateau atteint
            avec ||grad||_inf > sqrt(tol)
    """
    theta = np.array(theta0, dtype=np.float64)
    value = objective(theta)
    grad = gradient(theta)
    step = 1.0

    for iteration in range(settings.max_iters):
        grad_norm = float(np.max(np.abs(grad)))
        if grad_norm <= settings.tol:
            return theta, iteration

        direction = -grad
        if hessian is not None:
            direction = _newton_direction(hessian(theta), grad)
            step = 1.0
        slope = float(grad @ direction)
        if slope >= 0:
            direction, slope = -grad, -float(grad @ grad)

        # Armijo
        while True:
            candidate = theta + step * direction
            candidate_value = objective(candidate)
            if candidate_value <= value + settings.armijo * step * slope or step < 1e-20:
                break
            step *= settings.shrink

        if candidate_value >= value - 1e-15 * max(1.0, abs(value)):
            # plus aucune décroissance représentable en flottant
            if grad_norm <= np.sqrt(settings.tol):
                logger.debug(f"Minimiseur stationnaire à la précision machine : ||grad||_inf = {grad_norm:.3e}")
                return theta, iteration
            break
        theta, value = candidate, candidate_value
        grad = gradient(theta)
        if hessian is None:
            step = min(step * 2.0, 1e6)

    grad_norm = float(np.max(np.abs(grad)))
    if grad_norm <= settings.tol:
        return theta, settings.max_iters
    raise FitError(
        f"Ajustement local non convergé : ||grad||_inf = {grad_norm:.3e} > {settings.tol:.1e}",
        gradient_norm=grad_norm,
        iterations=settings.max_iters
    )


def _newton_direction(hess: np.ndarray, grad: np.ndarray) -> np.ndarray:
    try:
        return -scipy.linalg.solve(hess, grad, assume_a='pos')
    except (np.linalg.LinAlgError, scipy.linalg.LinAlgError):
        return -scipy.linalg.lstsq(hess, grad)[0]
