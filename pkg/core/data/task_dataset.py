import hashlib

from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from core.errors import DimensionError, EmptyDatasetError


@dataclass(frozen=True)
class TaskDataset:
    """Observations X_i et supervisions Y_i d'un agent"""
    inputs: np.ndarray
    targets: np.ndarray

    def __post_init__(self):
        inputs = np.array(self.inputs, dtype=np.float64)
        if inputs.ndim == 1:
            inputs = inputs[:, None]
        targets = np.array(self.targets).reshape(-1)
        if inputs.shape[0] == 0:
            raise EmptyDatasetError("Jeu de données vide")
        if inputs.shape[0] != targets.shape[0]:
            raise DimensionError(
                f"{inputs.shape[0]} entrées pour {targets.shape[0]} cibles"
            )
        inputs.setflags(write=False)
        targets.setflags(write=False)
        object.__setattr__(self, 'inputs', inputs)
        object.__setattr__(self, 'targets', targets)

    def __len__(self) -> int:
        return int(self.inputs.shape[0])

    @property
    def n_features(self) -> int:
        return int(self.inputs.shape[1])

    def digest(self) -> str:
        hasher = hashlib.sha256()
        hasher.update(np.ascontiguousarray(self.inputs).tobytes())
        hasher.update(np.ascontiguousarray(self.targets, dtype=np.float64).tobytes())
        return hasher.hexdigest()


def dataset_digest(datasets: Union[Mapping[int, TaskDataset], Sequence[TaskDataset]]) -> str:
    """Empreinte SHA-256 d'un ensemble de jeux de données, ordonné par agent"""
    if not isinstance(datasets, Mapping):
        datasets = dict(enumerate(datasets))
    hasher = hashlib.sha256()
    for agent_id in sorted(datasets):
        hasher.update(str(agent_id).encode('utf-8'))
        hasher.update(datasets[agent_id].digest().encode('utf-8'))
    return hasher.hexdigest()
