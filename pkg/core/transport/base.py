"""
Interface commune des transports et boîtes de réception par tour
"""
import logging
import threading

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple

from core.errors import RoutingError
from core.transport.param_frame import ParamFrame, decode_frame, encode_frame
from core.transport.traffic_report import TrafficReport


@dataclass(frozen=True)
class DeliveryReceipt:
    """Accusé d'émission d'une trame"""
    sender: int
    round: int
    recipients: Tuple[int, ...]
    n_bytes: int


@dataclass
class GatherResult:
    """Trames reçues pour un tour, itérées par expéditeur croissant"""
    frames: Dict[int, ParamFrame] = field(default_factory=dict)
    stale: Tuple[int, ...] = ()

    @property
    def complete(self) -> bool:
        return not self.stale

    def params(self) -> Dict[int, object]:
        return {sender: frame.payload for sender, frame in self.frames.items()}


class RoundInbox:
    """
    Tampon endpoint -> tour -> expéditeur -> octets

    Un consommateur par endpoint ; les trames d'un autre tour restent en
    attente jusqu'au gather de ce tour.
    """

    def __init__(self):
        self._condition = threading.Condition()
        self._boxes: Dict[int, Dict[int, Dict[int, bytes]]] = {}

    def open(self, endpoint: int) -> None:
        with self._condition:
            self._boxes.setdefault(endpoint, {})

    def deposit(self, endpoint: int, round_index: int, sender: int, data: bytes) -> None:
        with self._condition:
            self._boxes[endpoint].setdefault(round_index, {})[sender] = data
            self._condition.notify_all()

    def wait_for(
            self,
            endpoint: int,
            round_index: int,
            expected: Iterable[int],
            timeout: Optional[float]
    ) -> Dict[int, bytes]:
        """Bloque jusqu'à réception de tous les expéditeurs attendus ou expiration"""
        expected = set(expected)
        with self._condition:
            self._condition.wait_for(
                lambda: expected.issubset(self._boxes[endpoint].get(round_index, {})),
                timeout=timeout
            )
            return dict(self._boxes[endpoint].pop(round_index, {}))


class Transport(ABC):
    """
    Plan de messages entre agents : diffusion, envoi ciblé, collecte par tour
    """

    name = 'transport'

    def __init__(self, gather_timeout: Optional[float] = None):
        self.gather_timeout = gather_timeout
        self.traffic = TrafficReport()
        self.inbox = RoundInbox()
        self.endpoints: List[int] = []
        self.logger = logging.getLogger(f"{__name__}.{self.name}")

    # ====================================
    # Enregistrement
    # ====================================

    def register(self, agent_id: int) -> None:
        """Enregistre l'endpoint d'un agent"""
        if agent_id in self.endpoints:
            raise RoutingError(f"Endpoint {agent_id} déjà enregistré")
        self.inbox.open(agent_id)
        self._open_endpoint(agent_id)
        self.endpoints.append(agent_id)
        self.endpoints.sort()
        self.logger.debug(f"Endpoint enregistré : agent {agent_id}")

    def _check_registered(self, agent_id: int, role: str) -> None:
        if agent_id not in self.endpoints:
            raise RoutingError(f"{role} {agent_id} non enregistré")

    # ====================================
    # Emission
    # ====================================

    def broadcast(self, frame: ParamFrame) -> DeliveryReceipt:
        """Diffuse la trame aux N - 1 autres endpoints"""
        self._check_registered(frame.sender, 'Expéditeur')
        data = encode_frame(frame)
        recipients = tuple(j for j in self.endpoints if j != frame.sender)
        self.traffic.record_send(frame.sender, frame.round, len(recipients), len(data) * len(recipients), broadcast=True)
        for recipient in recipients:
            self._deliver(recipient, frame, data)
        return DeliveryReceipt(frame.sender, frame.round, recipients, len(data) * len(recipients))

    def send_to(self, frame: ParamFrame, recipient: int) -> DeliveryReceipt:
        """Envoie la trame à un seul partenaire"""
        self._check_registered(frame.sender, 'Expéditeur')
        self._check_registered(recipient, 'Destinataire')
        data = encode_frame(frame)
        self.traffic.record_send(frame.sender, frame.round, 1, len(data), broadcast=False)
        self._deliver(recipient, frame, data)
        return DeliveryReceipt(frame.sender, frame.round, (recipient,), len(data))

    # ====================================
    # Collecte
    # ====================================

    def gather_round(
            self,
            endpoint: int,
            expected_senders: Iterable[int],
            round_index: int,
            timeout: Optional[float] = None
    ) -> GatherResult:
        """
        Collecte les trames d'un tour, ordonnées par expéditeur

        Les expéditeurs absents à l'expiration sont renvoyés dans stale.
        """
        self._check_registered(endpoint, 'Endpoint')
        expected = sorted(set(expected_senders))
        received = self.inbox.wait_for(
            endpoint, round_index, expected,
            timeout if timeout is not None else self.gather_timeout
        )
        frames = {sender: decode_frame(received[sender]) for sender in sorted(received)}
        stale = tuple(sender for sender in expected if sender not in frames)
        if stale:
            self.logger.warning(f"Agent {endpoint}, tour {round_index} : trames manquantes de {list(stale)}")
        return GatherResult(frames=frames, stale=stale)

    @abstractmethod
    def _open_endpoint(self, agent_id: int) -> None:
        pass

    @abstractmethod
    def _deliver(self, recipient: int, frame: ParamFrame, data: bytes) -> None:
        pass

    def close(self) -> None:
        """Libère les ressources du transport"""
        pass

    def __enter__(self) -> 'Transport':
        return self

    def __exit__(self, *exc) -> None:
        self.close()
