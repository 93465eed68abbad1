"""
Trajectoire d'une expérience : theta de tous les agents à chaque tour, W à
chaque rafraîchissement

Format JSONL : une ligne d'en-tête puis une ligne par tour. Les flottants
sont écrits avec leur représentation la plus courte exacte, la relecture
redonne les mêmes bits.
"""
import json
import logging

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Tuple

import numpy as np

from core.agent.param_update import solve_param_update
from core.errors import ArtifactIOError, ConfigurationError
from core.registries.export import ExportRegistry

logger = logging.getLogger(__name__)

TRAJECTORY_FORMAT_VERSION = 1


@dataclass
class RoundRecord:
    """Enregistrement d'un tour t (theta après mise à jour)"""
    t: int
    phase: str
    theta: np.ndarray
    weights: Optional[np.ndarray] = None
    messages: Dict[str, int] = field(default_factory=dict)
    stale: Tuple[int, ...] = ()

    @property
    def refreshed(self) -> bool:
        return self.weights is not None

    def to_dict(self) -> Dict[str, Any]:
        return {
            'type': 'round',
            't': self.t,
            'phase': self.phase,
            'theta': self.theta.tolist(),
            'weights': None if self.weights is None else self.weights.tolist(),
            'messages': dict(self.messages),
            'stale': list(self.stale),
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'RoundRecord':
        weights = data.get('weights')
        return cls(
            t=int(data['t']),
            phase=data['phase'],
            theta=np.array(data['theta'], dtype=np.float64),
            weights=None if weights is None else np.array(weights, dtype=np.float64),
            messages={k: int(v) for k, v in data.get('messages', {}).items()},
            stale=tuple(data.get('stale', ())),
        )


@dataclass
class Trajectory:
    """Suite des tours d'une expérience"""
    method: str
    initial_theta: np.ndarray
    records: List[RoundRecord] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_agents(self) -> int:
        return int(self.initial_theta.shape[0])

    @property
    def n_params(self) -> int:
        return int(self.initial_theta.shape[1])

    @property
    def final_theta(self) -> np.ndarray:
        return self.records[-1].theta if self.records else self.initial_theta

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self) -> Iterator[RoundRecord]:
        return iter(self.records)

    def weight_matrices(self) -> List[Tuple[int, np.ndarray]]:
        """(t, W) pour chaque rafraîchissement"""
        return [(r.t, r.weights) for r in self.records if r.weights is not None]

    def latest_weights(self) -> Optional[np.ndarray]:
        matrices = self.weight_matrices()
        return matrices[-1][1] if matrices else None

    def refresh_rounds(self) -> List[int]:
        return [r.t for r in self.records if r.refreshed]

    def theta_history(self) -> np.ndarray:
        """Tableau (T1 + 1) x N x M, état initial compris"""
        return np.stack([self.initial_theta] + [r.theta for r in self.records])

    def total_messages(self) -> int:
        return sum(r.messages.get('sent', 0) for r in self.records)

    def header(self) -> Dict[str, Any]:
        return {
            'type': 'header',
            'format_version': TRAJECTORY_FORMAT_VERSION,
            'method': self.method,
            'n_agents': self.n_agents,
            'n_params': self.n_params,
            'initial_theta': self.initial_theta.tolist(),
            'metadata': self.metadata,
        }

    def to_records(self) -> List[Dict[str, Any]]:
        """En-tête puis un enregistrement par tour"""
        return [self.header()] + [record.to_dict() for record in self.records]

    def save(self, path: Path) -> Path:
        """Ecrit la trajectoire en JSONL"""
        path = Path(path)
        if path.suffix != '.jsonl':
            raise ConfigurationError(f"Une trajectoire s'écrit en .jsonl (reçu {path.name})")
        written = ExportRegistry.get_instance().export('jsonl', self.to_records(), path.parent, path.stem)
        logger.info(f"Trajectoire sauvegardée : {written} ({len(self.records)} tours)")
        return written


def load_trajectory(path: Path) -> Trajectory:
    """
    Relit une trajectoire JSONL

    Raises:
        ArtifactIOError: Fichier illisible
        ConfigurationError: En-tête absent ou version inconnue
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            lines = [json.loads(line) for line in f if line.strip()]
    except OSError as e:
        raise ArtifactIOError(f"Lecture de la trajectoire impossible ({path}) : {e}")
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Trajectoire mal formée ({path}) : {e}")

    if not lines or lines[0].get('type') != 'header':
        raise ConfigurationError(f"En-tête de trajectoire manquant : {path}")
    header = lines[0]
    if header.get('format_version') != TRAJECTORY_FORMAT_VERSION:
        raise ConfigurationError(f"Version de trajectoire non supportée : {header.get('format_version')}")

    return Trajectory(
        method=header['method'],
        initial_theta=np.array(header['initial_theta'], dtype=np.float64),
        records=[RoundRecord.from_dict(line) for line in lines[1:]],
        metadata=header.get('metadata', {}),
    )


def replay_trajectory(trajectory: Trajectory, surrogates, lambda2: float) -> Trajectory:
    """
    Rejoue les mises à jour de theta à partir des W enregistrés

    Args:
        trajectory (Trajectory): Trajectoire de référence
        surrogates (Sequence[LocalSurrogate]): Surrogate de chaque agent, par indice
        lambda2 (float): Poids du terme de lissage

    Returns:
        Trajectory: Trajectoire recalculée (mêmes bits si l'exécution était sans perte)
    """
    if len(surrogates) != trajectory.n_agents:
        raise ConfigurationError(
            f"{len(surrogates)} surrogates pour {trajectory.n_agents} agents"
        )
    theta = trajectory.initial_theta.copy()
    weights = np.zeros((trajectory.n_agents, trajectory.n_agents))
    replayed = Trajectory(method=trajectory.method, initial_theta=theta.copy(), metadata=dict(trajectory.metadata))

    for record in trajectory.records:
        if record.weights is not None:
            weights = record.weights
        next_theta = np.empty_like(theta)
        for i, surrogate in enumerate(surrogates):
            neighbors = {int(j): theta[j] for j in np.flatnonzero(weights[i] > 0.0)}
            next_theta[i], _ = solve_param_update(
                surrogate.hessian, surrogate.alpha, weights[i], neighbors, lambda2
            )
        theta = next_theta
        replayed.records.append(RoundRecord(
            t=record.t,
            phase=record.phase,
            theta=theta.copy(),
            weights=None if record.weights is None else record.weights.copy(),
            messages=dict(record.messages),
        ))
    return replayed
