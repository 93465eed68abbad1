"""
Validateur de configurations

Ce module contient toute la logique de validation des configurations
"""
from typing import Dict, Any, Callable, List, Sequence
import logging

from core.errors import ConfigurationError
from .schema.config_schema import ConfigSchema

logger = logging.getLogger(__name__)


class ConfigValidator:
    """
    Valide la structure et les valeurs d'une configuration (valeurs par défaut appliquées)
    """

    # ===================================
    # Point d'entrée principal
    # ==================================

    @staticmethod
    def validate(config: Dict[str, Any]) -> None:
        """Valide la structure complète de la configuration"""
        logger.info("Validation de la configuration ...")

        if not isinstance(config, dict):
            raise ConfigurationError("La configuration doit être un dictionnaire")

        sections: Dict[str, Callable] = {
            'experiment': ConfigValidator._validate_experiment,
            'hyperparams': ConfigValidator._validate_hyperparams,
            'local_fit': ConfigValidator._validate_local_fit,
            'training': ConfigValidator._validate_training,
        }

        missing = [s for s in sections if s not in config]
        if missing:
            raise ConfigurationError(f"Sections manquantes : {missing}")

        for name, validator in sections.items():
            logger.debug(f"- Validation de la section '{name}'")
            validator(config[name])

        ConfigValidator._validate_scenario(config.get('scenario') or {}, config['experiment'])
        ConfigValidator._validate_seed_overlap(config)

        logger.info("Configuration validée avec succès")

    # ===================================
    # Validation des sections
    # ===================================

    @staticmethod
    def _validate_experiment(experiment: Dict[str, Any]) -> None:
        """Valide la section 'experiment'"""
        ConfigValidator._validate_required_fields(experiment, 'experiment')
        ConfigValidator._check_enum(experiment['task'], ConfigSchema.get_supported_task_types(), 'task')
        ConfigValidator._check_enum(experiment['method'], ConfigSchema.get_supported_methods(), 'method')
        if 'transport' in experiment:
            ConfigValidator._check_enum(
                experiment['transport'], ConfigSchema.get_supported_transports(), 'transport'
            )

        rules = {
            'n_agents': lambda v: ConfigValidator._check_range(v, 'n_agents', integer=True),
            'workers': lambda v: ConfigValidator._check_range(v, 'workers', integer=True),
            'seeds': lambda v: ConfigValidator._check_seeds(v, 'experiment.seeds'),
        }
        ConfigValidator._apply_rules(experiment, rules)

    @staticmethod
    def _validate_hyperparams(hyper: Dict[str, Any]) -> None:
        """Valide la section 'hyperparams'"""
        ConfigValidator._validate_required_fields(hyper, 'hyperparams')

        rules = {
            'lambda1': lambda v: ConfigValidator._check_range(v, 'lambda1'),
            'lambda2': lambda v: ConfigValidator._check_range(v, 'lambda2'),
            'K': lambda v: ConfigValidator._check_range(v, 'K', integer=True),
            'T1': lambda v: ConfigValidator._check_range(v, 'T1', integer=True),
            'T2': lambda v: ConfigValidator._check_range(v, 'T2', integer=True),
            'gamma': lambda v: ConfigValidator._check_range(v, 'gamma'),
        }
        ConfigValidator._apply_rules(hyper, rules)

        dual = hyper.get('dual_ascent') or {}
        ConfigValidator._apply_rules(dual, {
            'stepsize': lambda v: v is None or ConfigValidator._check_range(v, 'stepsize', prefix='dual_ascent.'),
            'tol': lambda v: ConfigValidator._check_range(v, 'tol', prefix='dual_ascent.'),
            'max_iters': lambda v: ConfigValidator._check_range(v, 'max_iters', prefix='dual_ascent.', integer=True),
        })

    @staticmethod
    def _validate_local_fit(local_fit: Dict[str, Any]) -> None:
        """Valide la section 'local_fit'"""
        ConfigValidator._apply_rules(local_fit, {
            'max_iters': lambda v: ConfigValidator._check_range(v, 'max_iters', prefix='local_fit.', integer=True),
            'tol': lambda v: ConfigValidator._check_range(v, 'tol', prefix='local_fit.'),
            'l2_reg': lambda v: ConfigValidator._check_range(v, 'l2_reg', prefix='local_fit.'),
            'loss_reduction': lambda v: ConfigValidator._check_enum(
                v, ConfigSchema.ENUMS['loss_reduction'], 'local_fit.loss_reduction'),
            'method': lambda v: ConfigValidator._check_enum(
                v, ConfigSchema.ENUMS['fit_method'], 'local_fit.method'),
        })

    @staticmethod
    def _validate_training(training: Dict[str, Any]) -> None:
        """Valide la section 'training'"""
        ConfigValidator._apply_rules(training, {
            'epochs': lambda v: ConfigValidator._check_range(v, 'epochs', prefix='training.', integer=True),
            'learning_rate': lambda v: ConfigValidator._check_range(v, 'learning_rate', prefix='training.'),
            'fd_relative_step': lambda v: ConfigValidator._check_range(v, 'fd_relative_step', prefix='training.'),
            'initial_value': lambda v: ConfigValidator._check_range(v, 'initial_value', prefix='training.'),
            'optimizer': lambda v: ConfigValidator._check_enum(
                v, ConfigSchema.ENUMS['optimizer'], 'training.optimizer'),
            'gradient_mode': lambda v: ConfigValidator._check_enum(
                v, ConfigSchema.ENUMS['gradient_mode'], 'training.gradient_mode'),
            'horizon': lambda v: ConfigValidator._check_enum(
                v, ConfigSchema.ENUMS['horizon'], 'training.horizon'),
            'seeds': lambda v: ConfigValidator._check_seeds(v, 'training.seeds'),
        })

    @staticmethod
    def _validate_scenario(scenario: Dict[str, Any], experiment: Dict[str, Any]) -> None:
        """Valide la section 'scenario' (les contraintes fines sont vérifiées à la génération)"""
        ConfigValidator._apply_rules(scenario, {
            'noise': lambda v: ConfigValidator._check_range(v, 'noise', prefix='scenario.'),
            'samples_per_agent': lambda v: ConfigValidator._check_range(
                v, 'samples_per_agent', prefix='scenario.', integer=True),
            'n_features': lambda v: ConfigValidator._check_range(v, 'n_features', prefix='scenario.', integer=True),
        })
        groups = scenario.get('groups')
        if groups is not None and len(groups) != experiment['n_agents']:
            raise ConfigurationError(
                f"scenario.groups : {len(groups)} entrées pour {experiment['n_agents']} agents"
            )

    @staticmethod
    def _validate_seed_overlap(config: Dict[str, Any]) -> None:
        """Les graines d'entraînement de P et de test doivent être disjointes"""
        overlap = set(config['training'].get('seeds', [])) & set(config['experiment']['seeds'])
        if overlap:
            raise ConfigurationError(f"Graines communes à l'entraînement et au test : {sorted(overlap)}")

    # ====================================
    # Outils de validation génériques
    # ====================================

    @staticmethod
    def _validate_required_fields(section: Dict[str, Any], name: str) -> None:
        """Vérifie les champs requis d'une section"""
        if not isinstance(section, dict):
            raise ConfigurationError(f"La section '{name}' doit être un dictionnaire")
        for field in ConfigSchema.get_required_fields_for_section(name):
            if field not in section:
                raise ConfigurationError(f"Champ manquant dans '{name}': '{field}'")

    @staticmethod
    def _apply_rules(data: Dict[str, Any], rules: Dict[str, Callable]) -> None:
        """Applique un ensemble de règles à un dictionnaire"""
        for field, check_fn in rules.items():
            if field in data:
                check_fn(data[field])

    @staticmethod
    def _check_range(value: Any, field: str, prefix: str = "", integer: bool = False) -> None:
        """Vérifie qu'une valeur numérique est dans la plage autorisée (bornes incluses)"""
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise ConfigurationError(f"{prefix}{field} doit être numérique (reçu {value!r})")
        if integer and not float(value).is_integer():
            raise ConfigurationError(f"{prefix}{field} doit être entier (reçu {value})")

        rng = ConfigSchema.get_value_range(field)
        if rng is None:
            logger.debug(f"{prefix}{field}: pas de contrainte de plage définie")
            return

        min_val, max_val = rng
        if not (min_val <= value <= max_val):
            raise ConfigurationError(
                f"{prefix}{field} invalide : {value} doit être compris entre {min_val} et {max_val}"
            )

    @staticmethod
    def _check_enum(value: str, valid_values: Sequence[str], field: str) -> None:
        """Vérifie qu'une valeur appartient à un ensemble"""
        if value not in valid_values:
            raise ConfigurationError(f"{field} invalide : '{value}'. Attendu : {list(valid_values)}")

    @staticmethod
    def _check_seeds(seeds: Any, field: str) -> None:
        if not isinstance(seeds, (list, tuple)) or not seeds:
            raise ConfigurationError(f"{field} doit être une liste non vide de graines")
        if any(isinstance(s, bool) or not isinstance(s, int) or s < 0 for s in seeds):
            raise ConfigurationError(f"{field} : graines entières positives attendues (reçu {list(seeds)})")
        if len(set(seeds)) != len(seeds):
            raise ConfigurationError(f"{field} : graines dupliquées {list(seeds)}")
