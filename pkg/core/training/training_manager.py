import logging

from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from joblib import Parallel, delayed

from core.data.collab_types import ImportanceDiag
from core.data.experiment_config import ExperimentConfig
from core.errors import ConfigurationError
from core.model.task_registry import TaskRegistry
from core.scenarios import generate_scenario
from core.solver.unrolled_solver import UnrolledModel
from core.training.configuration_comparator import ConfigurationComparator
from core.training.importance_store import save_importance
from core.training.importance_trainer import TrainerSettings, TrainingResult, train_importance
from core.training.pipeline import (
    ClassificationSupervision,
    ImportancePipeline,
    RegressionSupervision,
    TrainingScenario,
    build_training_scenario,
)
from core.training.training_cache import ImportanceCache

DEFAULT_TRAINING_SEEDS = (101, 102, 103, 104, 105)
DEFAULT_INITIAL_VALUE = 1e-3


class ImportanceTrainingManager:
    """
    Orchestre l'entraînement de P pour une configuration d'expérience

    Les scénarios d'entraînement sont générés sur des graines disjointes des
    graines de test.
    """

    def __init__(self, config: ExperimentConfig):
        self.config = config
        self.training = config.training
        self.logger = logging.getLogger(f"{__name__}.{config.name}")
        self.task = TaskRegistry.get_instance().create_task(config.task, dict(config.task_params))

        self.training_seeds: Tuple[int, ...] = tuple(
            int(s) for s in self.training.get('seeds', DEFAULT_TRAINING_SEEDS)
        )
        if not self.training_seeds:
            raise ConfigurationError("Au moins une graine d'entraînement est requise")
        overlap = sorted(set(self.training_seeds) & set(config.seeds))
        if overlap:
            raise ConfigurationError(f"Graines d'entraînement et de test communes : {overlap}")

    @property
    def config_hash(self) -> str:
        return ConfigurationComparator.compute_hash(self.config.raw)

    def settings(self) -> TrainerSettings:
        return TrainerSettings.from_dict(self.training, self.config.hyperparams.gamma, self.config.workers)

    def pipeline(self) -> ImportancePipeline:
        h = self.config.hyperparams
        return ImportancePipeline(
            lambda2=h.lambda2, T2=h.T2, T1=h.T1, K=h.K,
            horizon=self.training.get('horizon', 'truncated'),
        )

    def initial_model(self) -> UnrolledModel:
        """P constante à training.initial_value"""
        h = self.config.hyperparams
        value = float(self.training.get('initial_value', DEFAULT_INITIAL_VALUE))
        return UnrolledModel(P=ImportanceDiag.constant(self.task.n_params, value, h.gamma), K=h.K)

    def _build_scenario(self, seed: int) -> TrainingScenario:
        generated = generate_scenario(self.config, seed)
        if self.config.task == 'regression':
            supervision = RegressionSupervision(generated.truths)
        else:
            supervision = ClassificationSupervision(self.task, generated.evaluation)
        return build_training_scenario(self.task, generated.datasets, supervision, self.config.fit, seed)

    def build_scenarios(self) -> List[TrainingScenario]:
        """Un scénario par graine d'entraînement, ajustements locaux inclus"""
        return Parallel(n_jobs=self.config.workers, backend='threading')(
            delayed(self._build_scenario)(seed) for seed in self.training_seeds
        )

    def train(self) -> TrainingResult:
        """Entraîne P depuis l'initialisation"""
        scenarios = self.build_scenarios()
        settings = self.settings()
        self.logger.info(
            f"Entraînement de P : {len(scenarios)} scénarios (graines {list(self.training_seeds)}), "
            f"{settings.epochs} époques, gradient {settings.gradient_mode}"
        )
        return train_importance(scenarios, self.initial_model(), settings, self.pipeline())

    def train_or_load(
            self,
            cache_dir: Optional[Path] = None,
            skip_if_exists: bool = True
    ) -> Tuple[UnrolledModel, Optional[TrainingResult], Path]:
        """
        Réutilise une P en cache pour cette configuration, sinon l'entraîne

        Returns:
            Tuple: (modèle, résultat d'entraînement ou None si relu, chemin du fichier P)
        """
        cache = ImportanceCache(cache_dir or Path(self.config.output_dir) / 'importance')
        config_hash = self.config_hash
        if skip_if_exists:
            cached = cache.load(self.config.task, config_hash, self.task.n_params)
            if cached is not None:
                self.logger.info(f"P réutilisée depuis le cache ({config_hash[:8]})")
                return cached[0], None, cache.get_cache_path(self.config.task, config_hash)

        result = self.train()
        path = cache.save(self.config.task, config_hash, result, metadata=self.provenance())
        return result.model, result, path

    def provenance(self) -> Dict[str, Any]:
        """Graines et champs de configuration enregistrés avec P"""
        return {
            'training_seeds': list(self.training_seeds),
            'training_config': ConfigurationComparator.relevant(self.config.raw),
        }

    def train_to(self, path: Path) -> Tuple[TrainingResult, Path]:
        """Entraîne P et l'écrit à un emplacement choisi (hors cache)"""
        result = self.train()
        written = save_importance(
            result.model, path,
            training=result.to_dict(),
            config_digest=self.config_hash,
            metadata=self.provenance(),
        )
        return result, written
