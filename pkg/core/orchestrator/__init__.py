from .collaboration_orchestrator import CollaborationOrchestrator, run_experiment
from .orchestrator_state import OrchestratorState
from .result_manager import ResultManager
from .trajectory import RoundRecord, Trajectory, load_trajectory, replay_trajectory

__all__ = [
    'CollaborationOrchestrator',
    'run_experiment',
    'OrchestratorState',
    'ResultManager',
    'RoundRecord',
    'Trajectory',
    'load_trajectory',
    'replay_trajectory',
]
