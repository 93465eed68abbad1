"""
Scénario généré : jeux de données par agent et vérité terrain
"""
import hashlib

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import numpy as np

from core.data.collab_types import CollabMatrix, GroupAssignment
from core.data.task_dataset import TaskDataset, dataset_digest


@dataclass
class GeneratedScenario:
    """Données d'une graine : un TaskDataset par agent, graphe et paramètres vrais"""
    task_type: str
    seed: int
    datasets: List[TaskDataset]
    groups: GroupAssignment
    ground_truth: CollabMatrix
    truths: Optional[np.ndarray] = None
    eval_datasets: Optional[List[TaskDataset]] = None
    settings: Dict[str, Any] = field(default_factory=dict)

    @property
    def n_agents(self) -> int:
        return len(self.datasets)

    @property
    def evaluation(self) -> List[TaskDataset]:
        """Données d'évaluation (repli sur les données locales)"""
        return self.eval_datasets if self.eval_datasets is not None else self.datasets

    def digest(self) -> str:
        """Empreinte des données d'entraînement et d'évaluation"""
        digest = dataset_digest(self.datasets)
        if self.eval_datasets is None:
            return digest
        combined = f"{digest}:{dataset_digest(self.eval_datasets)}"
        return hashlib.sha256(combined.encode('utf-8')).hexdigest()

    def summary(self) -> Dict[str, Any]:
        sizes = [len(d) for d in self.datasets]
        return {
            'task': self.task_type,
            'seed': self.seed,
            'n_agents': self.n_agents,
            'samples_min': int(min(sizes)),
            'samples_max': int(max(sizes)),
            'samples_total': int(sum(sizes)),
            'groups': list(self.groups.group_of),
            'dataset_digest': self.digest(),
            'settings': self.settings,
        }

