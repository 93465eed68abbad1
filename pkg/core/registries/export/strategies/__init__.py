from .base import ExportStrategy
from .csv import CSVExportStrategy
from .json_strategy import JSONExportStrategy, to_builtin
from .jsonl import JSONLExportStrategy

__all__ = [
    'ExportStrategy',
    'CSVExportStrategy',
    'JSONExportStrategy',
    'JSONLExportStrategy',
    'to_builtin',
]
