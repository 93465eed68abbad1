"""
Lecture et export de features pré-calculées

Format : une ligne par échantillon, ``agent_id, label, f_0 .. f_{F-1}``,
en-tête optionnel commençant par ``agent_id``.
"""
import logging
import re

from pathlib import Path
from typing import List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from core.data.task_dataset import TaskDataset
from core.errors import ArtifactIOError, EmptyDatasetError, FeatureParseError, FeatureSchemaError

logger = logging.getLogger(__name__)

DEFAULT_N_FEATURES = 20
_LINE_PATTERN = re.compile(r"line (\d+)")


def _columns(n_features: int) -> List[str]:
    return ['agent_id', 'label'] + [f"f{k}" for k in range(n_features)]


def _has_header(path: Path) -> bool:
    with open(path, 'r', encoding='utf-8') as f:
        first = f.readline()
    return first.split(',')[0].strip().lower() == 'agent_id'


def _read_frame(path: Path, n_features: int) -> pd.DataFrame:
    header = _has_header(path)
    try:
        frame = pd.read_csv(
            path,
            header=0 if header else None,
            names=_columns(n_features),
            skipinitialspace=True,
            skip_blank_lines=False,
            float_precision='round_trip',
        )
    except pd.errors.EmptyDataError as e:
        raise EmptyDatasetError(f"Fichier de features vide : {path}") from e
    except pd.errors.ParserError as e:
        match = _LINE_PATTERN.search(str(e))
        line = int(match.group(1)) if match else 0
        raise FeatureParseError(f"nombre de champs supérieur à {n_features + 2}", line) from e

    # Index pandas -> numéro de ligne dans le fichier
    frame.index = frame.index + (2 if header else 1)
    return frame.dropna(how='all')


def load_features(path: Union[str, Path], n_features: int = DEFAULT_N_FEATURES,
                  n_agents: Optional[int] = None) -> List[TaskDataset]:
    """
    Charge un fichier de features et le découpe par agent

    Args:
        path: Fichier délimité par des virgules
        n_features (int): Dimension attendue des features
        n_agents (int, optional): Nombre d'agents de l'expérience

    Returns:
        List[TaskDataset]: Un jeu de données par agent, ordonné par identifiant

    Raises:
        FeatureParseError: Ligne mal formée (numéro de ligne porté par l'erreur)
        FeatureSchemaError: Identifiant d'agent inconnu
        EmptyDatasetError: Fichier vide ou agent sans échantillon
    """
    path = Path(path)
    if not path.is_file():
        raise ArtifactIOError(f"Fichier de features introuvable : {path}")

    frame = _read_frame(path, n_features)
    if frame.empty:
        raise EmptyDatasetError(f"Fichier de features vide : {path}")

    numeric = frame.apply(pd.to_numeric, errors='coerce')
    bad = numeric.isna().any(axis=1)
    if bad.any():
        line = int(bad.idxmax())
        missing = int(frame.loc[line].isna().sum())
        reason = f"{missing} champ(s) manquant(s)" if missing else "valeur non numérique"
        raise FeatureParseError(reason, line)

    ids = numeric['agent_id'].to_numpy()
    labels = numeric['label'].to_numpy()
    for column, values in (('agent_id', ids), ('label', labels)):
        fractional = values != np.floor(values)
        if fractional.any():
            raise FeatureParseError(f"{column} non entier", int(numeric.index[fractional.argmax()]))

    ids = ids.astype(np.int64)
    if (ids < 0).any():
        raise FeatureSchemaError(f"Identifiant d'agent négatif : {int(ids.min())}")
    expected = n_agents if n_agents is not None else int(ids.max()) + 1
    unknown = sorted(set(ids[ids >= expected].tolist()))
    if unknown:
        raise FeatureSchemaError(f"Identifiants d'agents inconnus : {unknown} (N={expected})")

    features = numeric[_columns(n_features)[2:]].to_numpy(dtype=np.float64)
    datasets = []
    for agent_id in range(expected):
        mask = ids == agent_id
        if not mask.any():
            raise EmptyDatasetError(f"Aucun échantillon pour l'agent {agent_id}")
        datasets.append(TaskDataset(inputs=features[mask], targets=labels[mask].astype(np.int64)))

    logger.info(f"Features chargées depuis {path} : {len(frame)} échantillons, {expected} agents")
    return datasets


def export_features(datasets: Sequence[TaskDataset], path: Union[str, Path]) -> Path:
    """
    Écrit les jeux de données au format lu par load_features

    Les valeurs sont écrites avec 17 chiffres significatifs.
    """
    path = Path(path)
    if not datasets:
        raise EmptyDatasetError("Aucun jeu de données à exporter")
    n_features = datasets[0].n_features

    frames = []
    for agent_id, dataset in enumerate(datasets):
        if dataset.n_features != n_features:
            raise FeatureSchemaError(
                f"Agent {agent_id} : {dataset.n_features} features, {n_features} attendues"
            )
        frame = pd.DataFrame(dataset.inputs, columns=_columns(n_features)[2:])
        frame.insert(0, 'label', dataset.targets)
        frame.insert(0, 'agent_id', agent_id)
        frames.append(frame)

    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        pd.concat(frames, ignore_index=True).to_csv(path, index=False, float_format='%.17g')
    except OSError as e:
        raise ArtifactIOError(f"Écriture impossible : {path} ({e})") from e

    logger.debug(f"Features exportées vers {path}")
    return path
