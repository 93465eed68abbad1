"""
Entraînement de la diagonale P du graph learning déroulé

A chaque époque : évaluation de L_P et de son gradient (analytique ou par
différences finies centrées), pas d'Adam ou de SGD, projection sur P >= gamma.
La meilleure P rencontrée est conservée ; la décroissance de la perte n'est
pas garantie.
"""
import logging

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence

import numpy as np

from joblib import Parallel, delayed

from core.errors import ConfigurationError, TrainingError
from core.solver.unrolled_solver import UnrolledModel
from core.training.pipeline import ImportancePipeline, TrainingScenario

logger = logging.getLogger(__name__)

GRADIENT_MODES = ('analytic', 'finite_difference')
OPTIMIZERS = ('adam', 'sgd')


@dataclass(frozen=True)
class TrainerSettings:
    """Réglages de l'entraîneur de P"""
    learning_rate: float = 1e-4
    epochs: int = 50
    gradient_mode: str = 'finite_difference'
    fd_relative_step: float = 1e-4
    gamma: float = 1e-6
    optimizer: str = 'adam'
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-12
    workers: int = 1

    def __post_init__(self):
        if self.learning_rate < 0:
            raise ConfigurationError(f"learning_rate doit être >= 0 (reçu {self.learning_rate})")
        if self.epochs < 0:
            raise ConfigurationError(f"epochs doit être >= 0 (reçu {self.epochs})")
        if self.gradient_mode not in GRADIENT_MODES:
            raise ConfigurationError(
                f"gradient_mode invalide : '{self.gradient_mode}'. Attendu : {list(GRADIENT_MODES)}"
            )
        if self.optimizer not in OPTIMIZERS:
            raise ConfigurationError(f"optimizer invalide : '{self.optimizer}'. Attendu : {list(OPTIMIZERS)}")
        if not 0 < self.fd_relative_step <= 1e-3:
            raise ConfigurationError(
                f"fd_relative_step doit être dans ]0, 1e-3] (reçu {self.fd_relative_step})"
            )
        if not self.gamma > 0:
            raise ConfigurationError(f"gamma doit être > 0 (reçu {self.gamma})")

    @classmethod
    def from_dict(cls, training: Mapping[str, Any], gamma: float, workers: int = 1) -> 'TrainerSettings':
        return cls(
            learning_rate=float(training.get('learning_rate', 1e-4)),
            epochs=int(training.get('epochs', 50)),
            gradient_mode=training.get('gradient_mode', 'finite_difference'),
            fd_relative_step=float(training.get('fd_relative_step', 1e-4)),
            gamma=gamma,
            optimizer=training.get('optimizer', 'adam'),
            workers=workers,
        )


@dataclass
class TrainingResult:
    """P retenue et historique de l'entraînement"""
    model: UnrolledModel
    initial_model: UnrolledModel
    loss_trajectory: List[float] = field(default_factory=list)
    gradient_norms: List[float] = field(default_factory=list)
    best_epoch: int = 0

    @property
    def best_loss(self) -> float:
        return self.loss_trajectory[self.best_epoch]

    def to_dict(self) -> Dict[str, Any]:
        return {
            'loss_trajectory': list(self.loss_trajectory),
            'gradient_norms': list(self.gradient_norms),
            'best_epoch': self.best_epoch,
        }


class ImportanceTrainer:
    """Descente projetée sur la diagonale P"""

    def __init__(self, settings: TrainerSettings, pipeline: ImportancePipeline):
        self.settings = settings
        self.pipeline = pipeline
        self.logger = logging.getLogger(f"{__name__}.{self.__class__.__name__}")

    # ====================================
    # Gradients
    # ====================================

    def finite_difference_gradient(
            self,
            scenarios: Sequence[TrainingScenario],
            diag: np.ndarray
    ) -> np.ndarray:
        """Différences centrées, pas h = fd_relative_step * p_m ; sondes en parallèle"""
        steps = self.settings.fd_relative_step * diag
        probes = []
        for m in range(diag.shape[0]):
            for sign in (1.0, -1.0):
                probe = diag.copy()
                probe[m] += sign * steps[m]
                probes.append(probe)
        values = Parallel(n_jobs=self.settings.workers, backend='threading')(
            delayed(self.pipeline.loss)(scenarios, probe) for probe in probes
        )
        values = np.asarray(values).reshape(diag.shape[0], 2)
        return (values[:, 0] - values[:, 1]) / (2.0 * steps)

    def loss_and_gradient(self, scenarios: Sequence[TrainingScenario], diag: np.ndarray):
        if self.settings.gradient_mode == 'analytic':
            return self.pipeline.evaluate(scenarios, diag)
        return self.pipeline.loss(scenarios, diag), self.finite_difference_gradient(scenarios, diag)

    # ====================================
    # Boucle d'entraînement
    # ====================================

    def train(self, scenarios: Sequence[TrainingScenario], model: UnrolledModel) -> TrainingResult:
        """
        Entraîne P sur les scénarios

        Args:
            scenarios (Sequence[TrainingScenario]): Scénarios d'entraînement
            model (UnrolledModel): Modèle initial

        Returns:
            TrainingResult: Meilleure P rencontrée et trajectoire de la perte

        Raises:
            TrainingError: Perte non finie (porte l'indice d'époque)
        """
        if not scenarios:
            raise ConfigurationError("Aucun scénario d'entraînement")
        settings = self.settings
        gamma = settings.gamma
        diag = np.maximum(np.array(model.P.diag, dtype=np.float64), gamma)
        result = TrainingResult(model=model.with_diag(diag), initial_model=model)
        first_moment = np.zeros_like(diag)
        second_moment = np.zeros_like(diag)

        self.logger.info(
            f"Entraînement de P : {settings.epochs} époques, {len(scenarios)} scénarios, "
            f"gradient {settings.gradient_mode}, optimiseur {settings.optimizer}"
        )

        for epoch in range(settings.epochs + 1):
            loss, grad = self.loss_and_gradient(scenarios, diag)
            if not np.isfinite(loss) or not np.all(np.isfinite(grad)):
                raise TrainingError(f"Perte de supervision non finie à l'époque {epoch}", epoch)

            result.loss_trajectory.append(float(loss))
            result.gradient_norms.append(float(np.linalg.norm(grad)))
            if loss < result.loss_trajectory[result.best_epoch]:
                result.best_epoch = epoch
                result.model = model.with_diag(diag)
            self.logger.info(f"Epoque {epoch} : L_P = {loss:.6g}, |grad| = {result.gradient_norms[-1]:.3g}")

            if epoch == settings.epochs:
                break

            if settings.optimizer == 'adam':
                step_index = epoch + 1
                first_moment = settings.beta1 * first_moment + (1 - settings.beta1) * grad
                second_moment = settings.beta2 * second_moment + (1 - settings.beta2) * grad ** 2
                m_hat = first_moment / (1 - settings.beta1 ** step_index)
                v_hat = second_moment / (1 - settings.beta2 ** step_index)
                step = settings.learning_rate * m_hat / (np.sqrt(v_hat) + settings.epsilon)
            else:
                step = settings.learning_rate * grad
            diag = np.maximum(diag - step, gamma)

        self.logger.info(
            f"Meilleure P à l'époque {result.best_epoch} (L_P = {result.best_loss:.6g})"
        )
        return result


def train_importance(
        scenarios: Sequence[TrainingScenario],
        model: UnrolledModel,
        settings: TrainerSettings,
        pipeline: ImportancePipeline
) -> TrainingResult:
    """Entraîne la diagonale P ; TrainingResult.model porte la meilleure P"""
    return ImportanceTrainer(settings, pipeline).train(scenarios, model)
