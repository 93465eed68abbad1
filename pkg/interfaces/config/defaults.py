"""
Valeurs par défaut des configurations d'expérience
"""
import copy
from typing import Dict, Any


class ConfigDefaults:
    """
    Valeurs par défaut pour les configurations

    Les hyperparamètres suivent les réglages de référence : lambda2 = 0.1 pour
    toutes les méthodes collaboratives, K = 10, deux rafraîchissements du graphe
    (T1 = 2 * T2).
    """

    EXPERIMENT_DEFAULTS = {
        'method': 'original-gl',
        'n_agents': 20,
        'seeds': [1, 2, 3, 4, 5],
        'transport': 'memory',
        'output_dir': 'output',
        'workers': 1,
    }

    HYPERPARAMS_DEFAULTS = {
        'lambda2': 0.1,
        'K': 10,
        'gamma': 1e-6,
    }

    DUAL_ASCENT_DEFAULTS = {
        'tol': 1e-8,
        'max_iters': 50_000,
    }

    LOCAL_FIT_DEFAULTS = {
        'max_iters': 10_000,
        'tol': 1e-6,
        'method': 'auto',
        'loss_reduction': 'mean',
    }

    TRAINING_DEFAULTS = {
        'epochs': 50,
        'learning_rate': 1e-4,
        'optimizer': 'adam',
        'gradient_mode': 'finite_difference',
        'fd_relative_step': 1e-4,
        'initial_value': 1e-3,
        'horizon': 'truncated',
        'seeds': [101, 102, 103, 104, 105],
    }

    TASK_DEFAULTS: Dict[str, Dict[str, Dict[str, Any]]] = {
        'regression': {
            'hyperparams': {'lambda1': 3.0, 'T2': 10},
            'scenario': {
                'lines': [[2.0, 1.0], [-1.0, 3.0]],
                'x_range': [-5.0, 5.0],
                'noise': 1.0,
                'samples_per_agent': 100,
            },
            'local_fit': {},
            'training': {},
        },
        'classification': {
            'hyperparams': {'lambda1': 0.05, 'T2': 200},
            'scenario': {
                'n_features': 20,
                'n_classes': 10,
                'n_groups': 2,
                'mean_radius': 4.0,
                'dirichlet_alpha': 0.5,
                'samples_per_agent': 250,
                'samples_jitter': 25,
                'eval_samples_per_agent': 200,
            },
            'local_fit': {'l2_reg': 1e-3},
            # M = 105 : 210 sondes par époque en différences finies
            'training': {'gradient_mode': 'analytic'},
        },
    }

    @staticmethod
    def apply_defaults(config: Dict[str, Any]) -> Dict[str, Any]:
        """
        Applique les valeurs par défaut pour les champs optionnels

        Args:
            config (Dict[str, Any]): Configuration

        Returns:
            Dict[str, Any]: Configuration avec valeurs par défaut appliquées
        """
        experiment = config.setdefault('experiment', {})
        for key, value in ConfigDefaults.EXPERIMENT_DEFAULTS.items():
            experiment.setdefault(key, copy.deepcopy(value))

        task_defaults = ConfigDefaults.TASK_DEFAULTS.get(experiment.get('task'), {})
        if 'name' not in experiment:
            experiment['name'] = f"{experiment.get('task', 'experiment')}_{experiment['method']}"

        ConfigDefaults._apply_hyperparams_defaults(
            config.setdefault('hyperparams', {}), task_defaults.get('hyperparams', {})
        )
        for section in ('scenario', 'local_fit', 'training'):
            values = config.get(section) or {}
            config[section] = values
            ConfigDefaults._merge(values, task_defaults.get(section, {}))
        ConfigDefaults._merge(config['local_fit'], ConfigDefaults.LOCAL_FIT_DEFAULTS)
        ConfigDefaults._merge(config['training'], ConfigDefaults.TRAINING_DEFAULTS)
        config.setdefault('grid', {})

        return config

    @staticmethod
    def _apply_hyperparams_defaults(hyper: Dict[str, Any], task_hyper: Dict[str, Any]) -> None:
        """lambda1 et T2 selon la tâche, T1 = 2 * T2 si absent"""
        ConfigDefaults._merge(hyper, task_hyper)
        ConfigDefaults._merge(hyper, ConfigDefaults.HYPERPARAMS_DEFAULTS)
        if 'T2' in hyper:
            hyper.setdefault('T1', 2 * int(hyper['T2']))
        dual = hyper.get('dual_ascent') or {}
        hyper['dual_ascent'] = dual
        ConfigDefaults._merge(dual, ConfigDefaults.DUAL_ASCENT_DEFAULTS)

    @staticmethod
    def _merge(section: Dict[str, Any], defaults: Dict[str, Any]) -> None:
        for key, value in defaults.items():
            section.setdefault(key, copy.deepcopy(value))
