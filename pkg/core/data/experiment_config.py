"""
Vue typée et figée de la configuration d'une expérience

La configuration brute (dict chargé par ConfigLoader, valeurs par défaut
appliquées) est convertie une fois ; le code du noyau ne lit que cette vue.
"""
import copy
import hashlib
import json
import math

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Any, Dict, Mapping, Tuple

from core.data.collab_types import Hyperparams
from core.errors import ConfigurationError
from core.solver.dual_ascent_solver import DualAscentSettings
from models.surrogate import FitSettings

TASK_TYPES = ('regression', 'classification')
DIGEST_SIGNIFICANT_DIGITS = 12


def _round_floats(value: Any) -> Any:
    if isinstance(value, bool) or value is None:
        return value
    if isinstance(value, float):
        if not math.isfinite(value) or value == 0.0:
            return value
        return float(f"{value:.{DIGEST_SIGNIFICANT_DIGITS}g}")
    if isinstance(value, Mapping):
        return {str(k): _round_floats(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_round_floats(v) for v in value]
    return value


def normalize_config(config: Mapping[str, Any]) -> Dict[str, Any]:
    """
    Forme canonique d'une configuration pour le hachage

    Les chemins de sortie, le nombre de workers et le nom n'influencent pas les
    résultats et sont exclus ; les flottants sont arrondis à 12 chiffres
    significatifs.
    """
    normalized = copy.deepcopy(dict(config))
    experiment = dict(normalized.get('experiment', {}))
    for key in ('output_dir', 'workers', 'name'):
        experiment.pop(key, None)
    normalized['experiment'] = experiment
    return _round_floats(normalized)


def config_digest(config: Mapping[str, Any]) -> str:
    """SHA-256 du JSON canonique de la configuration normalisée"""
    payload = json.dumps(normalize_config(config), sort_keys=True, separators=(',', ':'), default=str)
    return hashlib.sha256(payload.encode('utf-8')).hexdigest()


@dataclass(frozen=True)
class ExperimentConfig:
    """Contrat de reproduction d'une expérience"""
    task: str
    method: str
    n_agents: int
    hyperparams: Hyperparams
    seeds: Tuple[int, ...] = (1, 2, 3, 4, 5)
    name: str = 'experiment'
    transport: str = 'memory'
    output_dir: str = 'output'
    workers: int = 1
    dual_ascent: DualAscentSettings = field(default_factory=DualAscentSettings)
    fit: FitSettings = field(default_factory=FitSettings)
    task_params: Mapping[str, Any] = field(default_factory=dict)
    scenario: Mapping[str, Any] = field(default_factory=dict)
    training: Mapping[str, Any] = field(default_factory=dict)
    grid: Mapping[str, Any] = field(default_factory=dict)
    raw: Mapping[str, Any] = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        if self.task not in TASK_TYPES:
            raise ConfigurationError(f"Tâche inconnue : '{self.task}'. Attendu : {list(TASK_TYPES)}")
        if self.n_agents < 2:
            raise ConfigurationError(f"Au moins 2 agents requis (n_agents={self.n_agents})")
        if self.workers < 1:
            raise ConfigurationError(f"workers doit être >= 1 (reçu {self.workers})")
        if not self.seeds:
            raise ConfigurationError("Au moins une graine est requise")
        object.__setattr__(self, 'seeds', tuple(int(s) for s in self.seeds))
        for name in ('task_params', 'scenario', 'training', 'grid', 'raw'):
            object.__setattr__(self, name, MappingProxyType(dict(getattr(self, name))))

    @property
    def digest(self) -> str:
        return config_digest(self.raw)

    @property
    def lambda2(self) -> float:
        return self.hyperparams.lambda2

    def to_dict(self) -> Dict[str, Any]:
        """Configuration brute complète (copie)"""
        return copy.deepcopy(_thaw(self.raw))

    def with_overrides(self, **experiment: Any) -> 'ExperimentConfig':
        """Copie avec des valeurs de la section experiment remplacées"""
        raw = self.to_dict()
        raw.setdefault('experiment', {}).update(experiment)
        return ExperimentConfig.from_dict(raw)

    @classmethod
    def from_dict(cls, config: Mapping[str, Any]) -> 'ExperimentConfig':
        """
        Construit la vue typée depuis une configuration complétée

        Args:
            config (Mapping[str, Any]): Configuration avec valeurs par défaut appliquées

        Returns:
            ExperimentConfig
        """
        experiment = dict(config.get('experiment', {}))
        hyper = dict(config.get('hyperparams', {}))
        dual = dict(hyper.pop('dual_ascent', {}) or {})
        local_fit = dict(config.get('local_fit', {}))
        if 'task' not in experiment:
            raise ConfigurationError("Champ manquant dans 'experiment': 'task'")

        try:
            hyperparams = Hyperparams(
                lambda1=float(hyper['lambda1']),
                lambda2=float(hyper.get('lambda2', 0.1)),
                K=int(hyper.get('K', 10)),
                T1=int(hyper['T1']),
                T2=int(hyper['T2']),
                gamma=float(hyper.get('gamma', 1e-6)),
                stepsize=dual.get('stepsize'),
                tol=float(dual.get('tol', 1e-8)),
                max_iters=int(dual.get('max_iters', 50_000)),
            )
        except KeyError as e:
            raise ConfigurationError(f"Champ manquant dans 'hyperparams': {e}")

        task_params = {'loss_reduction': local_fit.get('loss_reduction', 'mean')}
        if experiment['task'] == 'classification':
            scenario = config.get('scenario', {})
            task_params.update({
                'n_features': int(scenario.get('n_features', 20)),
                'n_classes': int(scenario.get('n_classes', 10)) // int(scenario.get('n_groups', 2)),
                'l2_reg': float(local_fit.get('l2_reg', 1e-3)),
            })

        return cls(
            task=experiment['task'],
            method=experiment.get('method', 'original-gl'),
            n_agents=int(experiment.get('n_agents', 20)),
            hyperparams=hyperparams,
            seeds=tuple(experiment.get('seeds', (1, 2, 3, 4, 5))),
            name=experiment.get('name', 'experiment'),
            transport=experiment.get('transport', 'memory'),
            output_dir=str(experiment.get('output_dir', 'output')),
            workers=int(experiment.get('workers', 1)),
            dual_ascent=DualAscentSettings(
                stepsize=hyperparams.stepsize,
                tol=hyperparams.tol,
                max_iters=hyperparams.max_iters,
            ),
            fit=FitSettings(
                max_iters=int(local_fit.get('max_iters', 10_000)),
                tol=float(local_fit.get('tol', 1e-6)),
                method=local_fit.get('method', 'auto'),
            ),
            task_params=task_params,
            scenario=config.get('scenario', {}),
            training=config.get('training', {}),
            grid=config.get('grid', {}) or {},
            raw=config,
        )

    def reproduction_contract(self) -> Dict[str, Any]:
        """Hyperparamètres effectifs affichés au démarrage"""
        h = self.hyperparams
        return {
            'task': self.task,
            'method': self.method,
            'n_agents': self.n_agents,
            'seeds': list(self.seeds),
            'lambda1': h.lambda1,
            'lambda2': h.lambda2,
            'K': h.K,
            'T1': h.T1,
            'T2': h.T2,
            'gamma': h.gamma,
            'dual_ascent_stepsize': h.effective_stepsize,
            'dual_ascent_tol': h.tol,
            'dual_ascent_max_iters': h.max_iters,
            'transport': self.transport,
            'workers': self.workers,
            'config_digest': self.digest,
        }


def _thaw(value: Any) -> Any:
    if isinstance(value, Mapping):
        return {k: _thaw(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_thaw(v) for v in value]
    return value

