"""Stratégie d'export JSON"""
import json
from pathlib import Path
from typing import Any, Mapping

import numpy as np

from .base import ExportStrategy


def to_builtin(value: Any) -> Any:
    """Convertit les types numpy pour json.dump"""
    if isinstance(value, np.ndarray):
        return value.tolist()
    if isinstance(value, np.generic):
        return value.item()
    if isinstance(value, Path):
        return str(value)
    raise TypeError(f"Type non sérialisable : {type(value).__name__}")


class JSONExportStrategy(ExportStrategy):
    """Export au format JSON (clés triées, sortie identique d'une exécution à l'autre)"""

    @property
    def format_name(self) -> str:
        return "json"

    @property
    def file_extension(self) -> str:
        return ".json"

    def export(self, payload: Any, output_path: Path, name: str) -> Path:
        filepath = self.target(output_path, name)
        with open(filepath, 'w', encoding='utf-8') as f:
            json.dump(payload, f, indent=2, sort_keys=True, ensure_ascii=False, default=to_builtin)
            f.write('\n')
        return filepath

    def accepts(self, payload: Any) -> bool:
        return isinstance(payload, (Mapping, list))
