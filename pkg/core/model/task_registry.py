"""
Registre centralisé des tâches locales disponibles

Ce module charge le catalogue des tâches depuis des fichiers json et gère
leur instanciation
"""
import json
import logging

from pathlib import Path
from typing import Any, Dict, List, Optional

from core.errors import ConfigurationError
from core.model.task_definition import TaskDefinition

logger = logging.getLogger(__name__)


class TaskRegistry:
    _instance = None

    def __init__(self, catalog_path: Optional[Path] = None) -> None:
        if catalog_path is None:
            catalog_path = Path(__file__).parent / 'config'

        self.catalog_path = catalog_path
        self.tasks: Dict[str, TaskDefinition] = {}
        self.categories: Dict[str, Dict[str, str]] = {}

        self._load_catalog()

    def _load_catalog(self) -> None:
        """Charge le catalogue depuis les fichiers json"""
        if not self.catalog_path.exists():
            raise FileNotFoundError(
                f"Catalogue de tâches introuvable : {self.catalog_path}"
            )

        with open(self.catalog_path / 'index.json', 'r', encoding='utf-8') as f:
            index = json.load(f)

        categories_path = self.catalog_path / 'categories.json'
        if categories_path.exists():
            with open(categories_path, 'r', encoding='utf-8') as f:
                self.categories = json.load(f)

        for entry in index.get('tasks', []):
            task_path = self.catalog_path / entry['path']

            if not task_path.exists():
                logger.warning(f"Fichier de tâche introuvable : {task_path}")
                continue

            with open(task_path, 'r', encoding='utf-8') as f:
                definition = TaskDefinition.from_dict(json.load(f))
            self.tasks[definition.type] = definition
            logger.debug(f"Tâche chargée : {definition.type} ({task_path})")

        logger.debug(f"{len(self.tasks)} tâches chargées")

    @classmethod
    def get_instance(cls, catalog_path: Optional[Path] = None) -> 'TaskRegistry':
        """Retourne l'instance du registre"""
        if cls._instance is None:
            cls._instance = cls(catalog_path)
        return cls._instance

    def get_task_definition(self, task_type: str) -> TaskDefinition:
        """Récupère la définition d'une tâche"""
        if task_type not in self.tasks:
            available = ', '.join(self.tasks.keys())
            raise ConfigurationError(
                f"Type de tâche inconnu : '{task_type}'. "
                f"Types disponibles : {available}"
            )
        return self.tasks[task_type]

    def create_task(self, task_type: str, params: Optional[Dict[str, Any]] = None) -> Any:
        """
        Crée une instance de tâche

        Args:
            task_type (str): 'regression' ou 'classification'
            params (Optional[Dict[str, Any]]): Surcharge des paramètres par défaut

        Returns:
            LocalTask
        """
        definition = self.get_task_definition(task_type)
        merged_params = definition.get_default_params()
        if params:
            merged_params.update({k: v for k, v in params.items() if v is not None})

        instance = definition.get_class()(params=merged_params)
        logger.debug(f"Tâche instanciée : {definition.name} ({task_type})")
        return instance

    def get_task_types(self) -> List[str]:
        """Retourne la liste des types de tâches disponibles"""
        return list(self.tasks.keys())

    def get_task_metrics(self, task_type: str) -> List[str]:
        return list(self.get_task_definition(task_type).metrics)
