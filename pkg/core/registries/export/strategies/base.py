"""Classe de base abstraite pour les stratégies d'export"""
from abc import ABC, abstractmethod
from pathlib import Path
from typing import Any


class ExportStrategy(ABC):
    """Interface pour les stratégies d'export"""

    @property
    @abstractmethod
    def format_name(self) -> str:
        """Nom du format (ex: 'csv', 'json', 'jsonl')"""
        pass

    @property
    @abstractmethod
    def file_extension(self) -> str:
        """Extension de fichier (ex: '.csv', '.json')"""
        pass

    @abstractmethod
    def export(self, payload: Any, output_path: Path, name: str) -> Path:
        """Ecrit output_path / (name + extension). Retourne le Path du fichier créé."""
        pass

    @abstractmethod
    def accepts(self, payload: Any) -> bool:
        """Vérifie si ce format sait écrire ce contenu"""
        pass

    def target(self, output_path: Path, name: str) -> Path:
        return Path(output_path) / f"{name}{self.file_extension}"
