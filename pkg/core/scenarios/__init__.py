"""
Génération des scénarios synthétiques et ingestion de features externes
"""
import logging

from core.data.collab_types import GroupAssignment
from core.data.experiment_config import ExperimentConfig
from core.solver.ground_truth import ground_truth_graph

from .base import GeneratedScenario
from .classification import ClassificationScenario, class_means, gen_classification
from .feature_loader import export_features, load_features
from .regression import DEFAULT_LINES, RegressionScenario, gen_regression

logger = logging.getLogger(__name__)


def _from_feature_files(config: ExperimentConfig, seed: int) -> GeneratedScenario:
    scenario = config.scenario
    n_features = int(scenario.get('n_features', 20))
    datasets = load_features(scenario['features_path'], n_features, config.n_agents)
    eval_datasets = None
    if scenario.get('eval_features_path'):
        eval_datasets = load_features(scenario['eval_features_path'], n_features, config.n_agents)

    groups = scenario.get('groups')
    groups = (GroupAssignment(tuple(groups)) if groups
              else GroupAssignment.balanced(config.n_agents, int(scenario.get('n_groups', 2))))
    groups.validate()
    return GeneratedScenario(
        task_type='classification',
        seed=seed,
        datasets=datasets,
        groups=groups,
        ground_truth=ground_truth_graph(groups),
        eval_datasets=eval_datasets,
        settings={'features_path': str(scenario['features_path']), 'n_features': n_features},
    )


def generate_scenario(config: ExperimentConfig, seed: int) -> GeneratedScenario:
    """
    Produit les données de tous les agents pour une graine

    Args:
        config (ExperimentConfig): Configuration de l'expérience
        seed (int): Graine (partitions et tirages)

    Returns:
        GeneratedScenario
    """
    if config.task == 'regression':
        return gen_regression(RegressionScenario.from_config(config.scenario, config.n_agents), seed)
    if config.scenario.get('features_path'):
        return _from_feature_files(config, seed)
    return gen_classification(ClassificationScenario.from_config(config.scenario, config.n_agents), seed)


__all__ = [
    'GeneratedScenario',
    'RegressionScenario',
    'ClassificationScenario',
    'DEFAULT_LINES',
    'gen_regression',
    'gen_classification',
    'class_means',
    'load_features',
    'export_features',
    'generate_scenario',
]
