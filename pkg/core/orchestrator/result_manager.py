from typing import Any, Dict, List, Optional, Sequence

import numpy as np

from core.agent.agent_state import AgentState, RoundPlan
from core.orchestrator.trajectory import RoundRecord, Trajectory
from core.transport.traffic_report import TrafficReport


class ResultManager:
    """Collecte les tours d'une expérience et résume la trajectoire"""

    def __init__(self, method: str, traffic: TrafficReport) -> None:
        self.method = method
        self.traffic = traffic
        self.trajectory: Optional[Trajectory] = None

    def start(self, states: Sequence[AgentState], metadata: Dict[str, Any]) -> None:
        """Enregistre theta initial (= alpha) de chaque agent"""
        self.trajectory = Trajectory(
            method=self.method,
            initial_theta=np.vstack([s.theta for s in states]),
            metadata=dict(metadata),
        )

    def record(
            self,
            plan: RoundPlan,
            states: Sequence[AgentState],
            weights: Optional[np.ndarray],
            stale: Sequence[int] = ()
    ) -> RoundRecord:
        """Ajoute le tour t (theta après mise à jour, W si rafraîchi)"""
        entry = self.traffic.round(plan.t)
        record = RoundRecord(
            t=plan.t,
            phase=plan.phase,
            theta=np.vstack([s.theta for s in states]),
            weights=None if weights is None else np.array(weights, dtype=np.float64),
            messages={
                'sent': entry.messages_sent,
                'received': entry.messages_received,
                'broadcasts': entry.broadcasts,
                'unicasts': entry.unicasts,
            },
            stale=tuple(sorted(set(stale))),
        )
        self.trajectory.records.append(record)
        return record

    def collect(self, graph_refreshes: Optional[int] = None) -> Trajectory:
        """Finalise la trajectoire"""
        summary = self._compute_summary()
        if graph_refreshes is not None:
            summary['graph_refreshes'] = graph_refreshes
        self.trajectory.metadata['summary'] = summary
        return self.trajectory

    def _compute_summary(self) -> Dict[str, Any]:
        """Résumé : rafraîchissements, messages, déplacement des paramètres"""
        trajectory = self.trajectory
        displacement = np.linalg.norm(trajectory.final_theta - trajectory.initial_theta, axis=1)
        partners: List[int] = []
        latest = trajectory.latest_weights()
        if latest is not None:
            partners = [int(n) for n in (latest > 0.0).sum(axis=1)]
        return {
            'rounds': len(trajectory),
            'refresh_rounds': trajectory.refresh_rounds(),
            'total_messages': self.traffic.total_messages,
            'total_bytes_sent': self.traffic.total_bytes_sent,
            'total_bytes_received': self.traffic.total_bytes_received,
            'stale_events': sum(len(r.stale) for r in trajectory),
            'mean_displacement': float(displacement.mean()),
            'partners_per_agent': partners,
        }
