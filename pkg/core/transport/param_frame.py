"""
Codec binaire des trames de paramètres

Disposition (little-endian) :
    magic 'CLAB' | version u8 | sender u32 | round u32 | M u32 | M x f64 | CRC-32 u32
Le CRC-32 (polynôme IEEE, zlib.crc32) couvre tous les octets qui le précèdent.
"""
import struct
import zlib

from dataclasses import dataclass

import numpy as np

from core.errors import BadChecksumError, BadLengthError, BadMagicError, BadVersionError, DimensionError

MAGIC = b'\x43\x4C\x41\x42'
VERSION = 0x01

_HEADER = struct.Struct('<4sBIII')
_CRC = struct.Struct('<I')
_LENGTH_PREFIX = struct.Struct('<I')

HEADER_SIZE = _HEADER.size
MIN_FRAME_SIZE = HEADER_SIZE + _CRC.size


@dataclass(frozen=True, eq=False)
class ParamFrame:
    """Paramètres theta_i d'un agent à un tour donné"""
    sender: int
    round: int
    payload: np.ndarray

    def __post_init__(self):
        for name in ('sender', 'round'):
            value = getattr(self, name)
            if not 0 <= value <= 0xFFFFFFFF:
                raise DimensionError(f"{name} hors de l'intervalle u32 : {value}")
        payload = np.array(self.payload, dtype='<f8').reshape(-1)
        payload.setflags(write=False)
        object.__setattr__(self, 'payload', payload)

    @property
    def size(self) -> int:
        return int(self.payload.shape[0])

    @property
    def wire_size(self) -> int:
        return MIN_FRAME_SIZE + 8 * self.size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ParamFrame):
            return NotImplemented
        return (
            self.sender == other.sender
            and self.round == other.round
            and self.payload.tobytes() == other.payload.tobytes()
        )

    def __hash__(self) -> int:
        return hash((self.sender, self.round, self.payload.tobytes()))


def encode_frame(frame: ParamFrame) -> bytes:
    """Sérialise une trame (taille 21 + 8M octets)"""
    body = _HEADER.pack(MAGIC, VERSION, frame.sender, frame.round, frame.size) + frame.payload.tobytes()
    return body + _CRC.pack(zlib.crc32(body) & 0xFFFFFFFF)


def decode_frame(data: bytes) -> ParamFrame:
    """
    Désérialise une trame

    Raises:
        BadLengthError: Taille incohérente avec l'en-tête
        BadMagicError: Signature incorrecte
        BadVersionError: Version inconnue
        BadChecksumError: CRC-32 invalide
    """
    data = bytes(data)
    if len(data) < MIN_FRAME_SIZE:
        raise BadLengthError(f"Trame de {len(data)} octets (minimum {MIN_FRAME_SIZE})")

    magic, version, sender, round_index, size = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise BadMagicError(f"Signature invalide : {magic!r}")
    if version != VERSION:
        raise BadVersionError(f"Version {version} non supportée (attendue {VERSION})")

    expected = MIN_FRAME_SIZE + 8 * size
    if len(data) != expected:
        raise BadLengthError(f"Trame de {len(data)} octets, {expected} attendus pour M={size}")

    (checksum,) = _CRC.unpack_from(data, expected - _CRC.size)
    if zlib.crc32(data[:expected - _CRC.size]) & 0xFFFFFFFF != checksum:
        raise BadChecksumError(f"CRC-32 invalide pour la trame de l'agent {sender} (tour {round_index})")

    payload = np.frombuffer(data, dtype='<f8', count=size, offset=HEADER_SIZE)
    return ParamFrame(sender=sender, round=round_index, payload=payload)


def length_prefixed(data: bytes) -> bytes:
    """Préfixe u32 de longueur pour le transport en flux"""
    return _LENGTH_PREFIX.pack(len(data)) + data


def read_length(prefix: bytes) -> int:
    return _LENGTH_PREFIX.unpack(prefix)[0]


LENGTH_PREFIX_SIZE = _LENGTH_PREFIX.size
