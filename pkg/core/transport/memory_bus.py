"""
Bus en mémoire pour l'échange des paramètres entre agents
"""
from typing import Optional

from core.transport.base import Transport
from core.transport.param_frame import ParamFrame


class MemoryBus(Transport):
    """
    Bus déterministe en mémoire : chaque trame est déposée immédiatement
    dans la boîte du destinataire, sous forme encodée
    """

    name = 'memory'

    def __init__(self, gather_timeout: Optional[float] = 60.0):
        super().__init__(gather_timeout=gather_timeout)

    def _open_endpoint(self, agent_id: int) -> None:
        pass

    def _deliver(self, recipient: int, frame: ParamFrame, data: bytes) -> None:
        self.traffic.record_receive(recipient, frame.round, len(data))
        self.inbox.deposit(recipient, frame.round, frame.sender, data)
        self.logger.debug(f"Trame {frame.sender} -> {recipient} (tour {frame.round})")
