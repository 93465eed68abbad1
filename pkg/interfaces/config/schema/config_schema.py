"""
Schémas de validation pour les configurations

Ce module définit les structures attendues pour les fichiers de configuration
"""
from typing import Dict, List, Optional, Tuple

from core.data.experiment_config import TASK_TYPES
from core.model.task_registry import TaskRegistry
from core.registries.learners import LearnerRegistry
from core.transport import TRANSPORTS


class ConfigSchema:
    """
    Définit les schémas de validation pour les configurations
    """

    REQUIRED_FIELDS: Dict[str, List[str]] = {
        'experiment': ['task', 'method', 'n_agents', 'seeds'],
        'hyperparams': ['lambda1', 'lambda2', 'K', 'T1', 'T2', 'gamma'],
        'scenario': [],
        'local_fit': [],
        'training': [],
    }

    OPTIONAL_FIELDS: Dict[str, List[str]] = {
        'experiment': ['name', 'transport', 'output_dir', 'workers'],
        'hyperparams': ['dual_ascent'],
        'local_fit': ['max_iters', 'tol', 'method', 'loss_reduction', 'l2_reg'],
        'training': ['epochs', 'learning_rate', 'optimizer', 'gradient_mode',
                     'fd_relative_step', 'initial_value', 'horizon', 'seeds'],
    }

    ENUMS: Dict[str, Tuple[str, ...]] = {
        'loss_reduction': ('mean', 'sum'),
        'optimizer': ('adam', 'sgd'),
        'gradient_mode': ('analytic', 'finite_difference'),
        'horizon': ('truncated', 'full'),
        'fit_method': ('auto', 'closed_form', 'newton', 'gradient_descent'),
    }

    # Bornes incluses
    VALUE_RANGES: Dict[str, tuple] = {
        'n_agents': (2, 100),
        'workers': (1, 256),
        'lambda1': (0.0, 1e6),
        'lambda2': (0.0, 1e6),
        'K': (1, 1000),
        'T1': (1, 1_000_000),
        'T2': (1, 1_000_000),
        'gamma': (1e-15, 1.0),
        'stepsize': (1e-15, 1e6),
        'tol': (1e-15, 1.0),
        'max_iters': (1, 100_000_000),
        'noise': (0.0, 1e3),
        'samples_per_agent': (2, 1_000_000),
        'n_features': (1, 10_000),
        'learning_rate': (0.0, 10.0),
        'epochs': (0, 1_000_000),
        'fd_relative_step': (1e-15, 1e-3),
        'initial_value': (1e-15, 1e6),
        'l2_reg': (0.0, 1e3),
    }

    @staticmethod
    def get_required_fields_for_section(section: str) -> List[str]:
        """
        Retourne les champs requis pour une section

        Args:
            section (str): Nom de la section ('experiment', 'hyperparams', etc)

        Returns:
            List[str]: Liste des champs requis
        """
        return ConfigSchema.REQUIRED_FIELDS.get(section, [])

    @staticmethod
    def get_value_range(field: str) -> Optional[tuple]:
        """
        Retourne la plage de valeurs acceptables pour un champ

        Returns:
            tuple: Tuple(min, max) ou None si pas de contrainte
        """
        return ConfigSchema.VALUE_RANGES.get(field)

    @staticmethod
    def get_supported_task_types() -> List[str]:
        """Types de tâches présents dans le catalogue"""
        available = TaskRegistry.get_instance().get_task_types()
        return [t for t in TASK_TYPES if t in available]

    @staticmethod
    def get_supported_methods() -> List[str]:
        return LearnerRegistry.get_instance().list_methods()

    @staticmethod
    def get_supported_transports() -> List[str]:
        return sorted(TRANSPORTS)
