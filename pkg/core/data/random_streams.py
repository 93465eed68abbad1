"""
Flux pseudo-aléatoires déterministes, séparables par (graine, usage, agent)
"""
import zlib

from typing import Optional

import numpy as np


def _purpose_key(purpose: str) -> int:
    return zlib.crc32(purpose.encode('utf-8')) & 0xFFFFFFFF


def agent_stream(seed: int, purpose: str, agent_id: Optional[int] = None) -> np.random.Generator:
    """
    Générateur indépendant pour un usage et un agent donnés

    Le flux ne dépend que de (seed, purpose, agent_id), jamais de l'ordre
    d'exécution des agents.

    Args:
        seed (int): Graine de l'expérience
        purpose (str): Usage ('samples', 'segments', 'mixture', ...)
        agent_id (Optional[int]): Agent propriétaire du flux, None pour un flux global

    Returns:
        np.random.Generator
    """
    spawn_key = (_purpose_key(purpose),) if agent_id is None else (_purpose_key(purpose), int(agent_id))
    sequence = np.random.SeedSequence(entropy=int(seed), spawn_key=spawn_key)
    return np.random.default_rng(sequence)
