"""
Chargeur de configurations

Ce module gère le chargement et la sauvegarde des fichiers de configuration
"""
import json
import yaml
from pathlib import Path
from typing import Dict, Any, Optional
import logging

from core.data.experiment_config import ExperimentConfig
from core.errors import ArtifactIOError, ConfigurationError
from .defaults import ConfigDefaults
from .validator import ConfigValidator

logger = logging.getLogger(__name__)


class ConfigLoader:
    """
    Charge, complète, valide et sauvegarde les configurations d'expérience
    """

    @staticmethod
    def read(path: Path) -> Dict[str, Any]:
        """
        Lit un fichier de configuration brut (.json, .yaml, .yml)

        Raises:
            ArtifactIOError: Si le fichier n'existe pas ou est illisible
            ConfigurationError: Si le format n'est pas supporté ou le contenu mal formé
        """
        path = Path(path)
        if not path.exists():
            raise ArtifactIOError(f"Fichier de configuration introuvable: {path}")

        try:
            with open(path, 'r', encoding='utf-8') as f:
                if path.suffix == '.json':
                    config = json.load(f)
                elif path.suffix in ['.yaml', '.yml']:
                    config = yaml.safe_load(f)
                else:
                    raise ConfigurationError(
                        f"Format de fichier non supporté: {path.suffix}. "
                        "Utilisez .json, .yaml, .yml"
                    )
        except (json.JSONDecodeError, yaml.YAMLError) as e:
            raise ConfigurationError(f"Configuration mal formée ({path}): {e}")
        except OSError as e:
            raise ArtifactIOError(f"Lecture impossible de {path}: {e}")

        logger.info(f"Configuration chargée depuis {path}")
        return config if config is not None else {}

    @staticmethod
    def prepare(config: Dict[str, Any], overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Applique les surcharges de la section experiment, les valeurs par défaut, puis valide

        Args:
            config (Dict[str, Any]): Configuration brute
            overrides (Optional[Dict[str, Any]]): Valeurs de 'experiment' remplacées (ligne de commande)

        Returns:
            Dict[str, Any]: Configuration validée avec valeurs par défaut
        """
        if not isinstance(config, dict):
            raise ConfigurationError("La configuration doit être un dictionnaire")
        experiment = config.setdefault('experiment', {})
        for key, value in (overrides or {}).items():
            if value is not None:
                experiment[key] = value

        config = ConfigDefaults.apply_defaults(config)
        ConfigValidator.validate(config)
        return config

    @staticmethod
    def load(path: Path, overrides: Optional[Dict[str, Any]] = None) -> Dict[str, Any]:
        """
        Charge une configuration depuis un fichier

        Args:
            path (Path): Chemin vers le fichier de config
            overrides (Optional[Dict[str, Any]]): Surcharges de la section experiment

        Returns:
            Dict[str, Any]: Configuration validée avec valeurs par défaut
        """
        return ConfigLoader.prepare(ConfigLoader.read(path), overrides)

    @staticmethod
    def load_experiment(path: Optional[Path] = None, **overrides: Any) -> ExperimentConfig:
        """Charge (ou construit depuis les seules surcharges) la vue typée de l'expérience"""
        raw = ConfigLoader.read(path) if path is not None else {}
        return ExperimentConfig.from_dict(ConfigLoader.prepare(raw, overrides))

    @staticmethod
    def save(config: Dict[str, Any], output_path: Path) -> None:
        """
        Sauvegarde une configuration dans un fichier

        Args:
            config (Dict[str, Any]): Configuration à sauvegarder
            output_path (Path): Chemin de sauvegarde

        Raises:
            ConfigurationError: Si le format de fichier n'est pas supporté
            ArtifactIOError: Si l'écriture échoue
        """
        output_path = Path(output_path)
        if output_path.suffix not in ('.json', '.yaml', '.yml'):
            raise ConfigurationError(f"Format de fichier non supporté: {output_path.suffix}")

        try:
            output_path.parent.mkdir(parents=True, exist_ok=True)
            with open(output_path, 'w', encoding='utf-8') as f:
                if output_path.suffix == '.json':
                    json.dump(config, f, indent=2, ensure_ascii=False, sort_keys=True)
                else:
                    yaml.safe_dump(config, f, default_flow_style=False, allow_unicode=True, sort_keys=True)
        except OSError as e:
            raise ArtifactIOError(f"Écriture impossible de {output_path}: {e}")

        logger.info(f"Configuration sauvegardée : {output_path}")
