"""
Persistance de la diagonale P entraînée

Fichier JSON versionné : {format_version, M, gamma, K, diag, loss_trajectory,
best_epoch, config_digest, ...}. Les flottants sont écrits en précision
décimale complète (relecture bit à bit).
"""
import json
import logging

from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import numpy as np

from core.data.collab_types import ImportanceDiag
from core.errors import ArtifactIOError, ConfigurationError, DimensionError
from core.solver.unrolled_solver import UnrolledModel

logger = logging.getLogger(__name__)

IMPORTANCE_FORMAT_VERSION = 1


def save_importance(
        model: UnrolledModel,
        path: Path,
        training: Optional[Dict[str, Any]] = None,
        config_digest: Optional[str] = None,
        metadata: Optional[Dict[str, Any]] = None
) -> Path:
    """
    Ecrit le fichier de P

    Args:
        model (UnrolledModel): Modèle à persister
        path (Path): Fichier de sortie
        training (Optional[Dict[str, Any]]): loss_trajectory, best_epoch, ...
        config_digest (Optional[str]): Empreinte de la configuration d'entraînement
        metadata (Optional[Dict[str, Any]]): Provenance complémentaire

    Returns:
        Path: Chemin écrit
    """
    path = Path(path)
    document = {
        'format_version': IMPORTANCE_FORMAT_VERSION,
        'M': model.n_params,
        'gamma': model.P.gamma,
        'K': model.K,
        'diag': [float(v) for v in model.P.diag],
        'loss_trajectory': [],
        'best_epoch': 0,
        'config_digest': config_digest,
    }
    document.update(training or {})
    if metadata:
        document['metadata'] = metadata
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, 'w', encoding='utf-8') as f:
            json.dump(document, f, indent=2, default=str)
    except OSError as e:
        raise ArtifactIOError(f"Ecriture du fichier P impossible ({path}) : {e}")
    logger.info(f"P sauvegardée : {path} (M={model.n_params}, K={model.K})")
    return path


def load_importance(path: Path, expected_M: Optional[int] = None) -> Tuple[UnrolledModel, Dict[str, Any]]:
    """
    Relit un fichier de P et vérifie M

    Returns:
        Tuple[UnrolledModel, Dict[str, Any]]: Modèle et document complet

    Raises:
        ArtifactIOError: Fichier absent ou illisible
        DimensionError: M différent de celui de l'expérience
    """
    path = Path(path)
    try:
        with open(path, 'r', encoding='utf-8') as f:
            document = json.load(f)
    except OSError as e:
        raise ArtifactIOError(f"Lecture du fichier P impossible ({path}) : {e}")
    except json.JSONDecodeError as e:
        raise ConfigurationError(f"Fichier P mal formé ({path}) : {e}")

    if document.get('format_version') != IMPORTANCE_FORMAT_VERSION:
        raise ConfigurationError(f"Version de fichier P non supportée : {document.get('format_version')}")

    diag = np.array(document['diag'], dtype=np.float64)
    if diag.shape[0] != document['M']:
        raise DimensionError(f"Fichier P incohérent : M={document['M']}, {diag.shape[0]} entrées")
    if expected_M is not None and diag.shape[0] != expected_M:
        raise DimensionError(f"P de taille {diag.shape[0]}, M={expected_M} attendu par l'expérience")

    model = UnrolledModel(P=ImportanceDiag(diag=diag, gamma=float(document['gamma'])), K=int(document['K']))
    logger.info(f"P chargée depuis {path} (M={model.n_params}, K={model.K})")
    return model, document
