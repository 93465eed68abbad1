"""
Boucle collaborative d'un agent

Un tour se fait en deux temps : publish_round émet theta_i (diffusion au
rafraîchissement, envoi aux abonnés sinon), complete_round collecte les
paramètres du tour, réapprend les poids au rafraîchissement puis met à jour
theta_i. agent_round enchaîne les deux pour un agent piloté seul.
"""
import logging

from typing import Dict, Optional

import numpy as np

from core.agent.agent_state import AgentState, RoundPlan
from core.agent.param_update import update_params
from core.data.collab_types import CollabWeights
from core.data.distances import stack_params
from core.data.task_dataset import TaskDataset
from core.errors import ConfigurationError, IncompleteBroadcastError
from core.registries.learners.strategies.base import GraphLearner
from core.transport.base import Transport
from core.transport.param_frame import ParamFrame
from models.task_interface import LocalTask

logger = logging.getLogger(__name__)


def initialize_agent(
        task: LocalTask,
        data: TaskDataset,
        agent_id: int,
        n_agents: int,
        settings=None
) -> AgentState:
    """
    Initialise un agent sur son minimiseur local

    Args:
        task (LocalTask): Tâche locale
        data (TaskDataset): Données de l'agent
        agent_id (int): Indice i
        n_agents (int): N
        settings (Optional[FitSettings]): Réglages de fit_local

    Returns:
        AgentState: theta = alpha_i, poids uniformes, tour 0
    """
    surrogate = task.fit_local(data, settings)
    if surrogate.degenerate:
        logger.warning(f"Agent {agent_id} : ajustement local dégénéré (pseudo-inverse)")
    weights = CollabWeights.uniform(agent_id, n_agents)
    return AgentState(
        agent_id=agent_id,
        surrogate=surrogate,
        theta=surrogate.alpha,
        weights=weights,
        round=0,
        subscribers=weights.partners,
    )


def _check_plan(state: AgentState, plan: RoundPlan) -> None:
    if plan.t != state.round:
        raise ConfigurationError(
            f"Plan du tour {plan.t} appliqué à l'agent {state.agent_id} au tour {state.round}"
        )


def publish_round(
        state: AgentState,
        transport: Transport,
        learner: GraphLearner,
        plan: RoundPlan
) -> int:
    """
    Emet theta_i pour le tour

    Returns:
        int: Nombre de messages émis
    """
    _check_plan(state, plan)
    if not learner.communicates:
        return 0
    frame = ParamFrame(sender=state.agent_id, round=plan.t, payload=state.theta)
    if plan.is_refresh:
        return len(transport.broadcast(frame).recipients)
    for recipient in state.subscribers:
        transport.send_to(frame, recipient)
    return len(state.subscribers)


def _merge_known(state: AgentState, gathered: Dict[int, np.ndarray]) -> Dict[int, np.ndarray]:
    known = dict(state.known_params)
    known.update(gathered)
    return known


def complete_round(
        state: AgentState,
        transport: Transport,
        lambda2: float,
        learner: GraphLearner,
        plan: RoundPlan,
        timeout: Optional[float] = None
) -> AgentState:
    """
    Collecte, rafraîchit les poids si besoin, met à jour theta_i

    Un partenaire absent à l'expiration est remplacé par son dernier theta
    connu (trace de staleness dans le journal).
    """
    _check_plan(state, plan)
    agent_id = state.agent_id

    if not learner.communicates:
        weights = CollabWeights.zeros(agent_id, state.n_agents)
        next_state = state.evolve(weights=weights)
        theta = update_params(next_state, {}, lambda2)
        return next_state.evolve(theta=theta, round=state.round + 1, subscribers=())

    if plan.is_refresh:
        expected = [j for j in range(state.n_agents) if j != agent_id]
    else:
        expected = list(state.partners)

    result = transport.gather_round(agent_id, expected, plan.t, timeout)
    known = _merge_known(state, {j: frame.payload for j, frame in result.frames.items()})
    for j in result.stale:
        if j in known:
            logger.warning(f"Agent {agent_id}, tour {plan.t} : theta_{j} périmé réutilisé")

    weights = state.weights
    if plan.is_refresh:
        known[agent_id] = state.theta
        theta_all = stack_params(known, state.n_agents)
        weights = learner.learn(theta_all, agent_id)
        if weights.degenerate:
            logger.warning(f"Agent {agent_id}, tour {plan.t} : poids dégénérés, repli uniforme")
        logger.debug(f"Agent {agent_id}, tour {plan.t} : partenaires {list(weights.partners)}")

    next_state = state.evolve(weights=weights, known_params=known, stale=result.stale)
    missing = [j for j in next_state.partners if j not in known]
    if missing:
        raise IncompleteBroadcastError(missing)
    neighbor_params = {j: known[j] for j in next_state.partners}
    theta = update_params(next_state, neighbor_params, lambda2)
    return next_state.evolve(theta=theta, round=state.round + 1)


def agent_round(
        state: AgentState,
        transport: Transport,
        lambda2: float,
        learner: GraphLearner,
        plan: RoundPlan,
        timeout: Optional[float] = None
) -> AgentState:
    """
    Un tour complet pour un agent dont les pairs tournent en parallèle

    Returns:
        AgentState: Etat au tour t + 1
    """
    publish_round(state, transport, learner, plan)
    return complete_round(state, transport, lambda2, learner, plan, timeout)
