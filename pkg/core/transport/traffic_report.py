"""
Comptabilité des échanges entre agents
"""
import threading

from collections import defaultdict
from dataclasses import asdict, dataclass
from typing import Any, Dict, List


@dataclass
class AgentTraffic:
    """Compteurs d'un agent"""
    messages_sent: int = 0
    messages_received: int = 0
    bytes_sent: int = 0
    bytes_received: int = 0
    broadcasts: int = 0
    unicasts: int = 0


@dataclass
class RoundTraffic:
    """Compteurs globaux d'un tour"""
    messages_sent: int = 0
    messages_received: int = 0
    bytes_sent: int = 0
    bytes_received: int = 0
    broadcasts: int = 0
    unicasts: int = 0


class TrafficReport:
    """
    Compteurs par agent et par tour, sûrs pour des producteurs concurrents

    Les totaux par agent sont égaux à la somme des entrées par tour.
    """

    def __init__(self):
        self._lock = threading.Lock()
        self._agents: Dict[int, AgentTraffic] = defaultdict(AgentTraffic)
        self._rounds: Dict[int, RoundTraffic] = defaultdict(RoundTraffic)

    def record_send(self, sender: int, round_index: int, n_messages: int, n_bytes: int, broadcast: bool) -> None:
        with self._lock:
            agent = self._agents[sender]
            entry = self._rounds[round_index]
            agent.messages_sent += n_messages
            agent.bytes_sent += n_bytes
            entry.messages_sent += n_messages
            entry.bytes_sent += n_bytes
            if broadcast:
                agent.broadcasts += 1
                entry.broadcasts += 1
            else:
                agent.unicasts += n_messages
                entry.unicasts += n_messages

    def record_receive(self, recipient: int, round_index: int, n_bytes: int) -> None:
        with self._lock:
            agent = self._agents[recipient]
            entry = self._rounds[round_index]
            agent.messages_received += 1
            agent.bytes_received += n_bytes
            entry.messages_received += 1
            entry.bytes_received += n_bytes

    # ====================================
    # Lecture
    # ====================================

    def agent(self, agent_id: int) -> AgentTraffic:
        with self._lock:
            return AgentTraffic(**asdict(self._agents.get(agent_id, AgentTraffic())))

    def round(self, round_index: int) -> RoundTraffic:
        with self._lock:
            return RoundTraffic(**asdict(self._rounds.get(round_index, RoundTraffic())))

    @property
    def total_messages(self) -> int:
        with self._lock:
            return sum(a.messages_sent for a in self._agents.values())

    @property
    def total_bytes_sent(self) -> int:
        with self._lock:
            return sum(a.bytes_sent for a in self._agents.values())

    @property
    def total_bytes_received(self) -> int:
        with self._lock:
            return sum(a.bytes_received for a in self._agents.values())

    def broadcast_rounds(self) -> List[int]:
        """Tours ayant donné lieu à au moins une diffusion"""
        with self._lock:
            return sorted(t for t, entry in self._rounds.items() if entry.broadcasts > 0)

    def unicast_rounds(self) -> List[int]:
        with self._lock:
            return sorted(t for t, entry in self._rounds.items() if entry.unicasts > 0)

    def is_consistent(self) -> bool:
        """Totaux par agent = somme des entrées par tour"""
        with self._lock:
            fields = ('messages_sent', 'messages_received', 'bytes_sent', 'bytes_received', 'broadcasts', 'unicasts')
            return all(
                sum(getattr(a, name) for a in self._agents.values())
                == sum(getattr(r, name) for r in self._rounds.values())
                for name in fields
            )

    def to_dict(self) -> Dict[str, Any]:
        with self._lock:
            agents = {str(k): asdict(v) for k, v in sorted(self._agents.items())}
            rounds = {str(k): asdict(v) for k, v in sorted(self._rounds.items())}
        return {
            'agents': agents,
            'rounds': rounds,
            'totals': {
                'messages': sum(a['messages_sent'] for a in agents.values()),
                'bytes_sent': sum(a['bytes_sent'] for a in agents.values()),
                'bytes_received': sum(a['bytes_received'] for a in agents.values()),
            },
            'broadcast_rounds': self.broadcast_rounds(),
            'unicast_rounds': self.unicast_rounds(),
        }
