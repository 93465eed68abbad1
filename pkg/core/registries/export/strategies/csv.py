"""Stratégie d'export CSV"""
from pathlib import Path
from typing import Any, Mapping

import pandas as pd

from .base import ExportStrategy


class CSVExportStrategy(ExportStrategy):
    """Export tabulaire : DataFrame ou liste d'enregistrements"""

    @property
    def format_name(self) -> str:
        return "csv"

    @property
    def file_extension(self) -> str:
        return ".csv"

    def export(self, payload: Any, output_path: Path, name: str) -> Path:
        frame = payload if isinstance(payload, pd.DataFrame) else pd.DataFrame.from_records(list(payload))
        filepath = self.target(output_path, name)
        frame.to_csv(filepath, index=False, lineterminator='\n')
        return filepath

    def accepts(self, payload: Any) -> bool:
        if isinstance(payload, pd.DataFrame):
            return True
        return isinstance(payload, (list, tuple)) and all(isinstance(r, Mapping) for r in payload)
