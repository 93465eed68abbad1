import logging

from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from core.errors import ArtifactIOError, ConfigurationError
from core.solver.unrolled_solver import UnrolledModel
from core.training.importance_store import load_importance, save_importance
from core.training.importance_trainer import TrainingResult

logger = logging.getLogger(__name__)


class ImportanceCache:
    """Gère le cache des diagonales P entraînées, indexé par empreinte de configuration"""

    def __init__(self, cache_dir: str = 'output/importance'):
        self.cache_dir = Path(cache_dir)
        logger.debug(f"ImportanceCache initialisé : {self.cache_dir}")

    def get_cache_path(self, task: str, config_hash: str) -> Path:
        """Génère le chemin du fichier P"""
        return self.cache_dir / f"{task}_P_{config_hash[:8]}.json"

    def exists(self, task: str, config_hash: str) -> bool:
        return self.get_cache_path(task, config_hash).exists()

    def save(
            self,
            task: str,
            config_hash: str,
            result: TrainingResult,
            metadata: Optional[Dict[str, Any]] = None
    ) -> Path:
        """Sauvegarde la meilleure P et son historique"""
        return save_importance(
            result.model,
            self.get_cache_path(task, config_hash),
            training=result.to_dict(),
            config_digest=config_hash,
            metadata=metadata,
        )

    def load(
            self,
            task: str,
            config_hash: str,
            expected_M: Optional[int] = None
    ) -> Optional[Tuple[UnrolledModel, Dict[str, Any]]]:
        """Relit une P en cache, None si absente ou inutilisable"""
        path = self.get_cache_path(task, config_hash)
        if not path.exists():
            return None
        try:
            model, document = load_importance(path, expected_M)
        except (ArtifactIOError, ConfigurationError) as e:
            logger.error(f"Erreur lors de la lecture de P en cache : {e}")
            return None
        if document.get('config_digest') != config_hash:
            logger.warning(f"Empreinte différente dans {path}, P ignorée")
            return None
        return model, document
