"""
Comparaison des quatre méthodes sur des données identiques par graine
"""
import logging

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed

from core.comparison.method_runner import MethodRun, initialize_agents, run_method
from core.comparison.metrics_report import ComparisonReport, MetricsReport
from core.data.experiment_config import ExperimentConfig
from core.errors import CollabError
from core.model.task_registry import TaskRegistry
from core.registries.learners import METHODS
from core.scenarios import generate_scenario
from core.solver.unrolled_solver import UnrolledModel

logger = logging.getLogger(__name__)


@dataclass
class SeedOutcome:
    """Lignes du tableau et exécutions conservées pour une graine"""
    seed: int
    rows: List[MetricsReport] = field(default_factory=list)
    runs: Dict[str, MethodRun] = field(default_factory=dict)


def _describe(error: Exception) -> str:
    return f"{type(error).__name__}: {error}"


def _run_seed(
        config: ExperimentConfig,
        seed: int,
        methods: Sequence[str],
        model: Optional[UnrolledModel],
        keep_runs: bool
) -> SeedOutcome:
    """Génère les données une fois, puis exécute chaque méthode dessus"""
    outcome = SeedOutcome(seed=seed)
    digest = config.digest
    task = TaskRegistry.get_instance().create_task(config.task, dict(config.task_params))

    try:
        scenario = generate_scenario(config, seed)
        agents = initialize_agents(task, scenario, config)
    except CollabError as e:
        logger.error(f"Graine {seed} : préparation impossible ({e})")
        outcome.rows = [MetricsReport.failure(m, config.task, seed, digest, _describe(e)) for m in methods]
        return outcome

    for method in methods:
        try:
            run = run_method(config, task, scenario, method, agents=agents, model=model)
        except CollabError as e:
            logger.error(f"{method} (graine {seed}) en échec : {e}")
            outcome.rows.append(
                MetricsReport.failure(method, config.task, seed, digest, _describe(e), scenario.digest())
            )
            continue
        outcome.rows.append(MetricsReport.from_metrics(
            method, config.task, seed, digest, run.dataset_digest, run.metrics
        ))
        if keep_runs:
            outcome.runs[method] = run
    return outcome


def compare_methods(
        config: ExperimentConfig,
        seeds: Optional[Sequence[int]] = None,
        model: Optional[UnrolledModel] = None,
        methods: Sequence[str] = METHODS,
        keep_runs_for: Optional[int] = None
) -> Tuple[ComparisonReport, Dict[str, MethodRun]]:
    """
    Exécute les méthodes sur les mêmes données pour chaque graine et agrège

    Args:
        config (ExperimentConfig): Configuration (même lambda2 pour toutes les méthodes)
        seeds (Optional[Sequence[int]]): Graines de test, celles de la configuration par défaut
        model (Optional[UnrolledModel]): P entraînée pour unrolled-gl
        methods (Sequence[str]): Méthodes à comparer
        keep_runs_for (Optional[int]): Graine dont les exécutions sont renvoyées (données de tracé)

    Returns:
        Tuple[ComparisonReport, Dict[str, MethodRun]]: Rapport et exécutions conservées
    """
    seeds = list(seeds if seeds is not None else config.seeds)
    logger.info(f"Comparaison de {list(methods)} sur {len(seeds)} graine(s) : {seeds}")

    outcomes = Parallel(n_jobs=min(config.workers, len(seeds)), backend='threading')(
        delayed(_run_seed)(config, seed, methods, model, seed == keep_runs_for)
        for seed in seeds
    )

    report = ComparisonReport(task=config.task, config_digest=config.digest, seeds=seeds)
    kept: Dict[str, MethodRun] = {}
    for outcome in sorted(outcomes, key=lambda o: o.seed):
        report.rows.extend(outcome.rows)
        kept.update(outcome.runs)

    report.metadata = {
        'methods': list(methods),
        'lambda2': config.lambda2,
        'scenario': dict(config.scenario),
    }
    if config.grid:
        report.metadata['grid'] = dict(config.grid)

    if not report.digests_consistent():
        logger.error("Données différentes entre méthodes d'une même graine")
    failures = sum(row.failed for row in report.rows)
    if failures:
        logger.warning(f"{failures} exécution(s) en échec, marquées dans le rapport")
    return report, kept
