"""
Fixtures pytest partagées entre tous les tests
"""
import copy

import pytest
import numpy as np

from pathlib import Path
from typing import Any, Dict

from core.data.experiment_config import ExperimentConfig
from core.data.task_dataset import TaskDataset
from core.model.task_registry import TaskRegistry
from core.scenarios import generate_scenario
from core.transport import MemoryBus
from interfaces.config import ConfigLoader

# ====================================
# Configurations de référence réduites
# ====================================

SMALL_REGRESSION: Dict[str, Any] = {
    'experiment': {
        'task': 'regression',
        'method': 'original-gl',
        'n_agents': 6,
        'seeds': [1, 2],
    },
    'hyperparams': {'lambda1': 3.0, 'T1': 6, 'T2': 3},
    'scenario': {'samples_per_agent': 30},
    'training': {'epochs': 2, 'seeds': [101, 102]},
}

SMALL_CLASSIFICATION: Dict[str, Any] = {
    'experiment': {
        'task': 'classification',
        'method': 'original-gl',
        'n_agents': 4,
        'seeds': [1],
    },
    'hyperparams': {'lambda1': 0.05, 'T1': 4, 'T2': 2},
    'scenario': {
        'n_features': 3,
        'n_classes': 4,
        'n_groups': 2,
        'samples_per_agent': 40,
        'samples_jitter': 5,
        'eval_samples_per_agent': 20,
    },
    'training': {'epochs': 1, 'seeds': [101], 'gradient_mode': 'analytic'},
}


def build_config(base: Dict[str, Any], output_dir: Path, **experiment: Any) -> ExperimentConfig:
    """Configuration validée avec valeurs par défaut, sorties dans output_dir"""
    raw = copy.deepcopy(base)
    raw['experiment']['output_dir'] = str(output_dir)
    raw['experiment'].update(experiment)
    return ExperimentConfig.from_dict(ConfigLoader.prepare(raw))


# ====================================
# Fixtures de base
# ====================================

@pytest.fixture
def temp_dir(tmp_path):
    """Crée un répertoire temporaire pour les tests"""
    test_dir = tmp_path / "test_output"
    test_dir.mkdir()
    return test_dir


@pytest.fixture
def rng():
    """Générateur déterministe pour les tests"""
    return np.random.default_rng(42)


# ====================================
# Fixtures configuration
# ====================================

@pytest.fixture
def regression_raw():
    """Configuration brute minimale de régression"""
    return copy.deepcopy(SMALL_REGRESSION)


@pytest.fixture
def regression_config(temp_dir):
    """ExperimentConfig de régression réduite (6 agents, 6 tours)"""
    return build_config(SMALL_REGRESSION, temp_dir)


@pytest.fixture
def classification_config(temp_dir):
    """ExperimentConfig de classification réduite (4 agents, M = 8)"""
    return build_config(SMALL_CLASSIFICATION, temp_dir)


# ====================================
# Fixtures tâches et données
# ====================================

@pytest.fixture
def regression_task():
    return TaskRegistry.get_instance().create_task('regression')


@pytest.fixture
def classification_task():
    """Classifieur à 3 features et 2 classes locales"""
    return TaskRegistry.get_instance().create_task(
        'classification', {'n_features': 3, 'n_classes': 2, 'l2_reg': 1e-3}
    )


@pytest.fixture
def line_dataset(rng):
    """Points bruités de y = 2x + 1"""
    x = rng.uniform(-1.0, 1.0, 50)
    y = 2.0 * x + 1.0 + rng.normal(0.0, 0.1, 50)
    return TaskDataset(inputs=x[:, None], targets=y)


@pytest.fixture
def blob_dataset(rng):
    """Deux clusters gaussiens en dimension 3, étiquettes 0/1"""
    centers = np.array([[2.0, 0.0, 0.0], [-2.0, 0.0, 0.0]])
    labels = np.repeat([0, 1], 30)
    features = centers[labels] + rng.standard_normal((60, 3))
    return TaskDataset(inputs=features, targets=labels)


@pytest.fixture
def regression_scenario(regression_config):
    return generate_scenario(regression_config, 1)


@pytest.fixture
def classification_scenario(classification_config):
    return generate_scenario(classification_config, 1)


# ====================================
# Fixtures transport
# ====================================

@pytest.fixture
def memory_bus():
    """Bus mémoire avec un délai de collecte court"""
    bus = MemoryBus(gather_timeout=1.0)
    yield bus
    bus.close()


# ====================================
# Helpers pour assertions
# ====================================

@pytest.fixture
def assert_on_simplex():
    """Helper pour vérifier les invariants d'une ligne de W"""
    def _assert(weights: np.ndarray, agent_id: int, tol: float = 1e-6):
        weights = np.asarray(weights)
        assert weights[agent_id] == 0.0, "w_ii doit être nul"
        assert np.all(weights >= 0.0), "Poids négatifs détectés"
        assert abs(weights.sum() - 1.0) <= tol, f"Somme des poids {weights.sum()} != 1"
    return _assert
