"""
Transport TCP : un serveur d'écoute par endpoint, trames préfixées par leur longueur

L'adresse d'écoute vient de COLLAB_BIND (host:port). Un port 0 attribue un
port éphémère à chaque endpoint ; sinon l'agent i écoute sur port + i.
"""
import os
import socket
import socketserver
import threading

from typing import Dict, Optional, Tuple

from core.errors import ConfigurationError, FrameDecodeError, RoutingError
from core.transport.base import Transport
from core.transport.param_frame import (
    LENGTH_PREFIX_SIZE,
    ParamFrame,
    decode_frame,
    length_prefixed,
    read_length,
)

DEFAULT_BIND = '127.0.0.1:0'


def parse_bind(value: Optional[str] = None) -> Tuple[str, int]:
    """Lit host:port depuis la valeur fournie ou COLLAB_BIND"""
    value = value or os.environ.get('COLLAB_BIND', DEFAULT_BIND)
    host, sep, port = value.rpartition(':')
    if not sep or not host:
        raise ConfigurationError(f"COLLAB_BIND invalide : '{value}' (attendu host:port)")
    try:
        port_number = int(port)
    except ValueError:
        raise ConfigurationError(f"Port invalide dans COLLAB_BIND : '{port}'")
    if not 0 <= port_number <= 65535:
        raise ConfigurationError(f"Port hors limites dans COLLAB_BIND : {port_number}")
    return host, port_number


def _recv_exactly(conn: socket.socket, size: int) -> Optional[bytes]:
    chunks = bytearray()
    while len(chunks) < size:
        chunk = conn.recv(size - len(chunks))
        if not chunk:
            return None
        chunks.extend(chunk)
    return bytes(chunks)


class _FrameHandler(socketserver.BaseRequestHandler):
    """Lit des trames préfixées jusqu'à fermeture de la connexion"""

    def handle(self) -> None:
        transport: 'SocketTransport' = self.server.transport  # type: ignore[attr-defined]
        endpoint: int = self.server.endpoint  # type: ignore[attr-defined]
        while True:
            prefix = _recv_exactly(self.request, LENGTH_PREFIX_SIZE)
            if prefix is None:
                return
            data = _recv_exactly(self.request, read_length(prefix))
            if data is None:
                return
            try:
                frame = decode_frame(data)
            except FrameDecodeError as e:
                transport.logger.warning(f"Trame rejetée par l'agent {endpoint} : {e}")
                continue
            transport.traffic.record_receive(endpoint, frame.round, len(data))
            transport.inbox.deposit(endpoint, frame.round, frame.sender, data)


class _EndpointServer(socketserver.ThreadingTCPServer):
    daemon_threads = True
    allow_reuse_address = True


class SocketTransport(Transport):
    """Transport TCP local entre endpoints d'un même processus ou de processus distincts"""

    name = 'socket'

    def __init__(self, bind: Optional[str] = None, gather_timeout: Optional[float] = 5.0):
        super().__init__(gather_timeout=gather_timeout)
        self.host, self.base_port = parse_bind(bind)
        self._servers: Dict[int, _EndpointServer] = {}
        self._addresses: Dict[int, Tuple[str, int]] = {}
        self._connections: Dict[Tuple[int, int], socket.socket] = {}
        self._lock = threading.Lock()

    def _open_endpoint(self, agent_id: int) -> None:
        port = 0 if self.base_port == 0 else self.base_port + agent_id
        server = _EndpointServer((self.host, port), _FrameHandler)
        server.transport = self  # type: ignore[attr-defined]
        server.endpoint = agent_id  # type: ignore[attr-defined]
        thread = threading.Thread(target=server.serve_forever, name=f"collab-endpoint-{agent_id}", daemon=True)
        thread.start()
        self._servers[agent_id] = server
        self._addresses[agent_id] = server.server_address[:2]
        self.logger.info(f"Agent {agent_id} à l'écoute sur {self._addresses[agent_id][0]}:{self._addresses[agent_id][1]}")

    def address_of(self, agent_id: int) -> Tuple[str, int]:
        if agent_id not in self._addresses:
            raise RoutingError(f"Endpoint {agent_id} non enregistré")
        return self._addresses[agent_id]

    def _connection(self, sender: int, recipient: int) -> socket.socket:
        key = (sender, recipient)
        conn = self._connections.get(key)
        if conn is None:
            conn = socket.create_connection(self.address_of(recipient))
            conn.setsockopt(socket.IPPROTO_TCP, socket.TCP_NODELAY, 1)
            self._connections[key] = conn
        return conn

    def _deliver(self, recipient: int, frame: ParamFrame, data: bytes) -> None:
        with self._lock:
            try:
                self._connection(frame.sender, recipient).sendall(length_prefixed(data))
            except OSError as e:
                self._connections.pop((frame.sender, recipient), None)
                self.logger.warning(f"Envoi {frame.sender} -> {recipient} échoué (tour {frame.round}) : {e}")

    def close(self) -> None:
        with self._lock:
            for conn in self._connections.values():
                try:
                    conn.close()
                except OSError:
                    pass
            self._connections.clear()
        for server in self._servers.values():
            server.shutdown()
            server.server_close()
        self._servers.clear()
        self.logger.debug("Transport socket fermé")
