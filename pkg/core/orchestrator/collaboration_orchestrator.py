import logging

from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from joblib import Parallel, delayed

from core.agent.agent_state import AgentState, RoundPlan
from core.agent.collab_agent import complete_round, publish_round
from core.data.collab_types import stack_weights
from core.data.experiment_config import ExperimentConfig
from core.errors import CollabError, ConfigurationError, ExperimentAbortedError
from core.orchestrator.orchestrator_state import OrchestratorState
from core.orchestrator.result_manager import ResultManager
from core.orchestrator.trajectory import Trajectory
from core.registries.learners.strategies.base import GraphLearner
from core.transport.base import Transport


class CollaborationOrchestrator:
    """Cerveau du simulateur : tours synchrones avec barrière entre agents"""

    def __init__(
            self,
            config: ExperimentConfig,
            transport: Transport,
            learner: GraphLearner,
            gather_timeout: Optional[float] = None
    ):
        self.config = config
        self.hyperparams = config.hyperparams
        self.transport = transport
        self.learner = learner
        self.gather_timeout = gather_timeout
        self.logger = logging.getLogger(f"{__name__}.{config.name}")

        self.state = OrchestratorState(self.hyperparams)
        self.result_manager = ResultManager(learner.method_name, transport.traffic)
        self.agents: List[AgentState] = []
        self.is_running = False

    def add_agents(self, agents: Sequence[AgentState]) -> None:
        """
        Ajoute les agents initialisés et enregistre leurs endpoints

        Args:
            agents (Sequence[AgentState]): Etats au tour 0, un par indice 0..N-1
        """
        ordered = sorted(agents, key=lambda a: a.agent_id)
        if [a.agent_id for a in ordered] != list(range(len(ordered))):
            raise ConfigurationError("Les agents doivent porter les indices 0..N-1 sans doublon")
        if len(ordered) != self.config.n_agents:
            raise ConfigurationError(
                f"{len(ordered)} agents fournis, n_agents={self.config.n_agents} configuré"
            )
        for agent in ordered:
            if agent.round != 0:
                raise ConfigurationError(f"Agent {agent.agent_id} non initialisé (tour {agent.round})")
            self.transport.register(agent.agent_id)
        self.agents = list(ordered)
        self.logger.info(f"{len(self.agents)} agents ajoutés ({self.learner.method_name})")

    def run(self, metadata: Optional[Dict[str, Any]] = None) -> Trajectory:
        """
        Exécute les T1 tours

        Returns:
            Trajectory: theta à chaque tour, W à chaque rafraîchissement
        """
        if not self.agents:
            raise ConfigurationError("Aucun agent à faire collaborer")
        self.is_running = True
        h = self.hyperparams
        self.logger.info(
            f"Collaboration : {h.T1} tours, rafraîchissement tous les {h.T2} tours "
            f"({h.n_refreshes} rafraîchissements)"
        )
        self.result_manager.start(self.agents, dict(metadata or {}))

        with Parallel(n_jobs=self.config.workers, backend='threading') as parallel:
            while not self.state.finished:
                plan = RoundPlan.for_round(self.state.current_round, h.T2)
                try:
                    self._run_round(plan, parallel)
                except CollabError as e:
                    self.is_running = False
                    self.logger.error(f"Expérience interrompue au tour {plan.t} : {e}")
                    raise ExperimentAbortedError(str(e), plan.t, cause=e) from e
                except Exception as e:
                    self.is_running = False
                    self.logger.error(f"Expérience interrompue au tour {plan.t} : {e}", exc_info=True)
                    raise ExperimentAbortedError(f"{type(e).__name__}: {e}", plan.t) from e
                self.state.advance(plan.is_refresh and self.learner.communicates)
                if self.state.current_round % max(1, h.T1 // 10) == 0:
                    self.logger.debug(f"{self.state.progress_percent():.1f}% complété")

        self.is_running = False
        self.logger.info(f"Collaboration terminée : {self.state.refreshes_done} rafraîchissement(s) du graphe")
        return self.result_manager.collect(graph_refreshes=self.state.refreshes_done)

    def _run_round(self, plan: RoundPlan, parallel: Parallel) -> None:
        """Un tour : toutes les émissions, barrière, puis toutes les mises à jour"""
        parallel(
            delayed(publish_round)(agent, self.transport, self.learner, plan)
            for agent in self.agents
        )
        updated = parallel(
            delayed(complete_round)(
                agent, self.transport, self.hyperparams.lambda2, self.learner, plan, self.gather_timeout
            )
            for agent in self.agents
        )
        self.agents = sorted(updated, key=lambda a: a.agent_id)

        weights = None
        if plan.is_refresh and self.learner.communicates:
            weights = stack_weights([a.weights for a in self.agents])
            self.agents = [
                agent.evolve(subscribers=tuple(int(i) for i in np.flatnonzero(weights[:, agent.agent_id] > 0.0)))
                for agent in self.agents
            ]
            self.logger.info(
                f"Tour {plan.t} : graphe rafraîchi, "
                f"{int((weights > 0.0).sum())} arêtes, "
                f"{self.transport.traffic.round(plan.t).messages_sent} messages"
            )

        stale = [j for agent in self.agents for j in agent.stale]
        self.result_manager.record(plan, self.agents, weights, stale)


def run_experiment(
        config: ExperimentConfig,
        agents: Sequence[AgentState],
        transport: Transport,
        learner: GraphLearner,
        metadata: Optional[Dict[str, Any]] = None
) -> Trajectory:
    """
    Exécute la boucle collaborative complète

    Args:
        config (ExperimentConfig): Configuration (T1, T2, lambda2, workers)
        agents (Sequence[AgentState]): Agents initialisés
        transport (Transport): Transport sans endpoint enregistré
        learner (GraphLearner): Méthode de graph learning
        metadata (Optional[Dict[str, Any]]): Métadonnées de provenance

    Returns:
        Trajectory
    """
    orchestrator = CollaborationOrchestrator(config, transport, learner)
    orchestrator.add_agents(agents)
    return orchestrator.run(metadata)
