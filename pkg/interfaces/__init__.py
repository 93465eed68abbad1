"""
Module interfaces - Interaction avec l'utilisateur et export de données

Ce module regroupe :
- Chargement et validation de configuration
- Export des artefacts d'exécution et des rapports de comparaison
"""

from .config import ConfigLoader
from .result_exporter import ResultsExporter
from .metrics_exporter import MetricsExporter
from .config.schema.config_schema import ConfigSchema

__all__ = [
    'ConfigLoader',
    'ResultsExporter',
    'MetricsExporter',
    'ConfigSchema'
]
