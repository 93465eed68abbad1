"""
Commandes du simulateur : génération de scénarios, entraînement de P,
exécution d'une méthode, comparaison des quatre méthodes
"""
import logging

from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Tuple

from core.comparison import ComparisonReport, compare_methods, run_method
from core.data.experiment_config import ExperimentConfig
from core.errors import MissingDependencyError
from core.model.task_registry import TaskRegistry
from core.registries.export.registry import ExportRegistry
from core.registries.learners import METHODS
from core.scenarios import export_features, generate_scenario
from core.solver.unrolled_solver import UnrolledModel
from core.training import (
    ConfigurationComparator,
    ImportanceCache,
    ImportanceTrainingManager,
    TrainingResult,
    load_importance,
)
from interfaces.config import ConfigLoader
from interfaces.metrics_exporter import MetricsExporter
from interfaces.result_exporter import ResultsExporter, RunArtifacts
from utils.decorators import timed

logger = logging.getLogger(__name__)

UNROLLED = 'unrolled-gl'


def banner(title: str) -> None:
    print("\n" + "=" * 70)
    print(title)
    print("=" * 70)


def load_config(config_path: Optional[Path], **overrides: Any) -> ExperimentConfig:
    """
    Charge une configuration et applique les options de ligne de commande

    Args:
        config_path (Optional[Path]): Fichier de configuration (None : valeurs par défaut seules)
        **overrides: Valeurs de la section experiment (task, method, seeds, ...)

    Returns:
        ExperimentConfig: Vue typée validée
    """
    if config_path is not None:
        print(f"Chargement de la configuration : {config_path}")
    return ConfigLoader.load_experiment(config_path, **overrides)


def print_contract(config: ExperimentConfig) -> None:
    """Affiche tous les hyperparamètres effectifs"""
    banner("Contrat de reproduction")
    for key, value in config.reproduction_contract().items():
        print(f"\t{key:<24}: {value}")
    print(f"\t{'scenario':<24}: {dict(config.scenario)}")
    if config.grid:
        print(f"\t{'grid':<24}: {dict(config.grid)}")


def _seeds(config: ExperimentConfig, seeds: Optional[Sequence[int]]) -> List[int]:
    return list(seeds) if seeds else list(config.seeds)


# ====================================
# Génération
# ====================================

@timed
def cmd_generate(config: ExperimentConfig, seeds: Optional[Sequence[int]] = None) -> Dict[int, Dict[str, Path]]:
    """
    Ecrit les données de chaque graine et le graphe de référence

    Returns:
        Dict[int, Dict[str, Path]]: {graine: {nom: chemin}}
    """
    banner("Génération des scénarios")
    registry = ExportRegistry.get_instance()
    written: Dict[int, Dict[str, Path]] = {}

    for seed in _seeds(config, seeds):
        scenario = generate_scenario(config, seed)
        directory = Path(config.output_dir) / config.name / 'scenarios' / f"seed_{seed}"
        files = {'features': export_features(scenario.datasets, directory / 'features.csv')}
        if scenario.eval_datasets is not None:
            files['eval_features'] = export_features(scenario.eval_datasets, directory / 'eval_features.csv')

        reference = {
            'config_digest': config.digest,
            'task': config.task,
            'seed': seed,
            'dataset_digest': scenario.digest(),
            'groups': list(scenario.groups.group_of),
            'ground_truth': scenario.ground_truth.tolist(),
            'truths': None if scenario.truths is None else scenario.truths.tolist(),
            'settings': scenario.settings,
        }
        files['ground_truth'] = registry.export('json', reference, directory, 'ground_truth')
        written[seed] = files

        sizes = [len(d) for d in scenario.datasets]
        print(f"\t- Graine {seed} : {scenario.n_agents} agents, {min(sizes)}-{max(sizes)} échantillons -> {directory}")
    return written


# ====================================
# Entraînement de P
# ====================================

@timed
def cmd_train(config: ExperimentConfig, p_file: Optional[Path] = None) -> Tuple[TrainingResult, Path]:
    """
    Entraîne P sur les graines d'entraînement et la persiste

    Args:
        config (ExperimentConfig): Configuration
        p_file (Optional[Path]): Destination ; le cache de output_dir sinon

    Returns:
        Tuple[TrainingResult, Path]: Résultat et fichier écrit
    """
    banner("Entraînement de P")
    manager = ImportanceTrainingManager(config)
    if p_file is not None:
        result, path = manager.train_to(Path(p_file))
    else:
        _, result, path = manager.train_or_load(skip_if_exists=False)

    print(f"\t- Epoque retenue : {result.best_epoch} (perte {result.best_loss:.6g})")
    print(f"\t- Perte initiale : {result.loss_trajectory[0]:.6g}")
    print(f"\t- Fichier P : {path}")
    return result, path


def _resolve_importance(
        config: ExperimentConfig,
        p_file: Optional[Path],
        train_if_missing: bool
) -> Tuple[UnrolledModel, Path]:
    """P explicite, sinon en cache, sinon entraînée (si autorisé)"""
    task = TaskRegistry.get_instance().create_task(config.task, dict(config.task_params))
    manager = ImportanceTrainingManager(config)

    if p_file is None:
        cache = ImportanceCache(Path(config.output_dir) / 'importance')
        candidate = cache.get_cache_path(config.task, manager.config_hash)
        if candidate.exists():
            p_file = candidate
        elif train_if_missing:
            logger.info("Aucune P disponible, entraînement préalable")
            model, _, path = manager.train_or_load()
            return model, path
        else:
            raise MissingDependencyError(
                f"{UNROLLED} requiert un fichier P : utilisez --p-file ou lancez d'abord 'train'"
            )

    model, document = load_importance(Path(p_file), expected_M=task.n_params)
    training_config = document.get('metadata', {}).get('training_config')
    if training_config is not None:
        differences = ConfigurationComparator.compare_configs(config.raw, training_config)
        changed = sorted({**differences['added'], **differences['removed'], **differences['modified']})
        if changed:
            logger.warning(f"P entraînée avec une configuration différente : {changed}")
    return model, Path(p_file)


# ====================================
# Exécution
# ====================================

@timed
def cmd_run(
        config: ExperimentConfig,
        p_file: Optional[Path] = None,
        seeds: Optional[Sequence[int]] = None
) -> List[RunArtifacts]:
    """
    Exécute la méthode de la configuration sur chaque graine et écrit les artefacts

    Raises:
        MissingDependencyError: unrolled-gl sans fichier P
    """
    banner(f"Exécution : {config.method}")
    model, used_p_file = None, None
    if config.method == UNROLLED:
        model, used_p_file = _resolve_importance(config, p_file, train_if_missing=False)

    task = TaskRegistry.get_instance().create_task(config.task, dict(config.task_params))
    artifacts = []
    for seed in _seeds(config, seeds):
        scenario = generate_scenario(config, seed)
        run = run_method(config, task, scenario, config.method, model=model)
        exported = ResultsExporter.export_run(run, config, p_file=used_p_file)
        artifacts.append(exported)

        metrics = ", ".join(f"{k}={v:.6g}" for k, v in sorted(run.metrics.items()))
        print(f"\t- Graine {seed} : {metrics}")
        print(f"\t  Messages : {run.traffic.total_messages}, artefacts : {exported.directory}")
    return artifacts


# ====================================
# Comparaison
# ====================================

@timed
def cmd_compare(
        config: ExperimentConfig,
        p_file: Optional[Path] = None,
        seeds: Optional[Sequence[int]] = None,
        methods: Sequence[str] = METHODS
) -> Tuple[ComparisonReport, Dict[str, Path]]:
    """
    Compare les méthodes sur les mêmes données et écrit tableaux et données de tracé

    Returns:
        Tuple[ComparisonReport, Dict[str, Path]]: Rapport et fichiers écrits
    """
    banner("Comparaison des méthodes")
    seeds = _seeds(config, seeds)
    model = None
    if UNROLLED in methods:
        model, _ = _resolve_importance(config, p_file, train_if_missing=True)

    report, runs = compare_methods(config, seeds=seeds, model=model, methods=methods, keep_runs_for=seeds[0])

    output_dir = Path(config.output_dir) / config.name / f"compare_{config.digest[:8]}"
    exported = MetricsExporter.export_comparison(report, str(output_dir))
    if runs:
        ground_truth = generate_scenario(config, seeds[0]).ground_truth
        exported.update(MetricsExporter.export_plot_data(runs, str(output_dir), ground_truth))

    print(report.to_text())
    print(f"Résultats disponibles dans : {output_dir}")
    return report, exported
