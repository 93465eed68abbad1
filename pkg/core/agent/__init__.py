from .agent_state import GRAPH_REFRESH, NEIGHBOR_EXCHANGE, AgentState, RoundPlan
from .collab_agent import agent_round, complete_round, initialize_agent, publish_round
from .param_update import solve_param_update, update_params

__all__ = [
    'AgentState', 'RoundPlan', 'GRAPH_REFRESH', 'NEIGHBOR_EXCHANGE',
    'initialize_agent', 'publish_round', 'complete_round', 'agent_round',
    'solve_param_update', 'update_params',
]
