import numpy as np

from core.data.collab_types import CollabMatrix, GroupAssignment


def ground_truth_graph(groups: GroupAssignment) -> CollabMatrix:
    """
    Graphe de référence : poids uniformes entre membres d'un même groupe

    w_ij = 1 / (|groupe(i)| - 1) si groupe(i) = groupe(j) et j != i, 0 sinon.

    Raises:
        ConfigurationError: Groupe à un seul agent
    """
    groups.validate()
    labels = np.asarray(groups.group_of)
    same = labels[:, None] == labels[None, :]
    np.fill_diagonal(same, False)
    counts = same.sum(axis=1, keepdims=True)
    return same / counts
