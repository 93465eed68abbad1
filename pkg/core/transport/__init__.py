"""Plan de messages : codec des trames, bus mémoire, transport socket"""
from core.errors import ConfigurationError
from .base import DeliveryReceipt, GatherResult, RoundInbox, Transport
from .memory_bus import MemoryBus
from .param_frame import ParamFrame, decode_frame, encode_frame
from .socket_transport import SocketTransport
from .traffic_report import TrafficReport

TRANSPORTS = {
    MemoryBus.name: MemoryBus,
    SocketTransport.name: SocketTransport,
}


def create_transport(name: str, **kwargs) -> Transport:
    """Instancie un transport par son nom ('memory' ou 'socket')"""
    if name not in TRANSPORTS:
        raise ConfigurationError(f"Transport inconnu : '{name}'. Disponibles : {sorted(TRANSPORTS)}")
    return TRANSPORTS[name](**kwargs)


__all__ = [
    'DeliveryReceipt', 'GatherResult', 'RoundInbox', 'Transport',
    'MemoryBus', 'SocketTransport', 'TrafficReport',
    'ParamFrame', 'encode_frame', 'decode_frame',
    'TRANSPORTS', 'create_transport',
]
