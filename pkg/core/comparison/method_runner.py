"""
Exécution d'une méthode sur un scénario généré

Les agents initialisés (ajustement local) sont partagés entre méthodes d'une
même graine : les quatre méthodes partent des mêmes alpha_i.
"""
import logging

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence

from joblib import Parallel, delayed

from core.agent.agent_state import AgentState
from core.agent.collab_agent import initialize_agent
from core.data.experiment_config import ExperimentConfig
from core.orchestrator.collaboration_orchestrator import run_experiment
from core.orchestrator.trajectory import Trajectory
from core.registries.learners import LearnerRegistry
from core.registries.metrics import MetricsRegistry
from core.scenarios.base import GeneratedScenario
from core.solver.unrolled_solver import UnrolledModel
from core.transport import create_transport
from core.transport.base import Transport
from core.transport.traffic_report import TrafficReport
from models.task_interface import LocalTask

logger = logging.getLogger(__name__)


@dataclass
class MethodRun:
    """Résultat d'une exécution : trajectoire, trafic, métriques"""
    method: str
    seed: int
    trajectory: Trajectory
    traffic: TrafficReport
    metrics: Dict[str, float] = field(default_factory=dict)

    @property
    def dataset_digest(self) -> str:
        return self.trajectory.metadata.get('dataset_digest', '')


def initialize_agents(task: LocalTask, scenario: GeneratedScenario, config: ExperimentConfig) -> List[AgentState]:
    """Ajuste chaque agent sur ses données locales"""
    return Parallel(n_jobs=config.workers, backend='threading')(
        delayed(initialize_agent)(task, data, i, scenario.n_agents, config.fit)
        for i, data in enumerate(scenario.datasets)
    )


def run_metadata(config: ExperimentConfig, scenario: GeneratedScenario, method: str) -> Dict[str, Any]:
    """Provenance écrite dans chaque trajectoire"""
    metadata = {
        'method': method,
        'seed': scenario.seed,
        'task': config.task,
        'config_digest': config.digest,
        'dataset_digest': scenario.digest(),
        'scenario': scenario.settings,
        'hyperparams': {k: v for k, v in config.reproduction_contract().items() if k != 'workers'},
    }
    if config.grid:
        metadata['grid'] = dict(config.grid)
    return metadata


def evaluate_run(
        config: ExperimentConfig,
        task: LocalTask,
        scenario: GeneratedScenario,
        trajectory: Trajectory,
        communicates: bool
) -> Dict[str, float]:
    """Métriques de la tâche sur les paramètres finaux et le dernier graphe appris"""
    estimates = {
        'theta': trajectory.final_theta,
        'weights': trajectory.latest_weights() if communicates else None,
    }
    reference = {'truths': scenario.truths, 'ground_truth': scenario.ground_truth}
    context = {'task': task, 'datasets': scenario.evaluation}
    return MetricsRegistry.get_instance().calculate_all_for_task(config.task, estimates, reference, context)


def run_method(
        config: ExperimentConfig,
        task: LocalTask,
        scenario: GeneratedScenario,
        method: str,
        agents: Optional[Sequence[AgentState]] = None,
        model: Optional[UnrolledModel] = None,
        transport: Optional[Transport] = None
) -> MethodRun:
    """
    Exécute run_experiment pour une méthode et évalue le résultat

    Args:
        config (ExperimentConfig): Configuration de l'expérience
        task (LocalTask): Tâche locale
        scenario (GeneratedScenario): Données de la graine
        method (str): Méthode de graph learning
        agents (Optional[Sequence[AgentState]]): Agents déjà initialisés
        model (Optional[UnrolledModel]): P entraînée (unrolled-gl)
        transport (Optional[Transport]): Transport neuf, sinon celui de la configuration

    Returns:
        MethodRun
    """
    h = config.hyperparams
    learner = LearnerRegistry.get_instance().create(
        method,
        lambda1=h.lambda1,
        lambda2=h.lambda2,
        settings=config.dual_ascent,
        model=model,
        ground_truth=scenario.ground_truth,
    )
    if agents is None:
        agents = initialize_agents(task, scenario, config)
    transport = transport or create_transport(config.transport)

    with transport:
        trajectory = run_experiment(config, agents, transport, learner, run_metadata(config, scenario, method))

    metrics = evaluate_run(config, task, scenario, trajectory, learner.communicates)
    logger.info(
        f"{method} (graine {scenario.seed}) : "
        + ", ".join(f"{k}={v:.6g}" for k, v in sorted(metrics.items()))
    )
    return MethodRun(method=method, seed=scenario.seed, trajectory=trajectory,
                     traffic=transport.traffic, metrics=metrics)
