"""Stratégie d'export JSONL (un objet par ligne)"""
import json
from pathlib import Path
from typing import Any, Mapping

from .base import ExportStrategy
from .json_strategy import to_builtin


class JSONLExportStrategy(ExportStrategy):
    """Export d'une suite d'enregistrements, une ligne JSON compacte chacun"""

    @property
    def format_name(self) -> str:
        return "jsonl"

    @property
    def file_extension(self) -> str:
        return ".jsonl"

    def export(self, payload: Any, output_path: Path, name: str) -> Path:
        filepath = self.target(output_path, name)
        with open(filepath, 'w', encoding='utf-8') as f:
            for record in payload:
                f.write(json.dumps(record, sort_keys=True, default=to_builtin) + '\n')
        return filepath

    def accepts(self, payload: Any) -> bool:
        return isinstance(payload, (list, tuple)) and all(isinstance(r, Mapping) for r in payload)
