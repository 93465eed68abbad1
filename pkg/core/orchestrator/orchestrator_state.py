from core.data.collab_types import Hyperparams


class OrchestratorState:
    """Avancement de la boucle de collaboration"""

    def __init__(self, hyperparams: Hyperparams) -> None:
        self.total_rounds = hyperparams.T1
        self.refresh_period = hyperparams.T2
        self.current_round = 0
        self.refreshes_done = 0

    def advance(self, refreshed: bool) -> None:
        """Passe au tour suivant"""
        self.current_round += 1
        if refreshed:
            self.refreshes_done += 1

    @property
    def finished(self) -> bool:
        return self.current_round >= self.total_rounds

    def progress_percent(self) -> float:
        return (self.current_round / self.total_rounds) * 100
