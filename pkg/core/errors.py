"""
Hiérarchie des exceptions du simulateur

Les familles héritent de ValueError / OSError quand le code appelant
attrapait déjà ces types. Chaque famille porte un code de sortie CLI.
"""
from typing import Optional

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_CONFIGURATION = 2
EXIT_CONVERGENCE = 3
EXIT_IO = 4


class CollabError(Exception):
    """Racine de toutes les erreurs du simulateur"""
    exit_code: int = EXIT_FAILURE


# ====================================
# Configuration et dimensions
# ====================================

class ConfigurationError(CollabError, ValueError):
    """Configuration ou scénario invalide"""
    exit_code = EXIT_CONFIGURATION


class DimensionError(ConfigurationError):
    """Longueur ou forme incompatible avec l'expérience"""


class DegenerateObjectiveError(ConfigurationError):
    """Objectif du graph learning dégénéré (λ1 = 0)"""


class UnsupportedMetricError(ConfigurationError):
    """Métrique non définie pour ce type de tâche"""


class MissingDependencyError(ConfigurationError):
    """Artefact requis absent (ex : fichier P pour unrolled-gl)"""


# ====================================
# Convergence
# ====================================

class ConvergenceError(CollabError, ArithmeticError):
    """Un solveur itératif n'a pas convergé"""
    exit_code = EXIT_CONVERGENCE

    def __init__(self, message: str, residual: Optional[float] = None, iterations: Optional[int] = None):
        super().__init__(message)
        self.residual = residual
        self.iterations = iterations


class FitError(ConvergenceError):
    """Échec de l'ajustement local (gradient final trop grand)"""

    def __init__(self, message: str, gradient_norm: float, iterations: Optional[int] = None):
        super().__init__(message, residual=gradient_norm, iterations=iterations)
        self.gradient_norm = gradient_norm


class TrainingError(ConvergenceError):
    """Entraînement de P interrompu"""

    def __init__(self, message: str, epoch: int):
        super().__init__(message)
        self.epoch = epoch


# ====================================
# Échanges entre agents
# ====================================

class IncompleteBroadcastError(CollabError, KeyError):
    """Paramètres manquants pour au moins un agent"""

    def __init__(self, missing: list):
        super().__init__(f"Paramètres manquants pour les agents : {missing}")
        self.missing = missing

    def __str__(self) -> str:
        return str(self.args[0])


class RoutingError(CollabError, LookupError):
    """Expéditeur ou destinataire non enregistré sur le bus"""


class ExperimentAbortedError(CollabError, RuntimeError):
    """Échec d'un agent pendant une expérience ; reprend le code de sortie de la cause"""

    def __init__(self, message: str, round_index: int, cause: Optional[BaseException] = None):
        super().__init__(f"Tour {round_index} : {message}")
        self.round_index = round_index
        self.cause = cause
        if isinstance(cause, CollabError):
            self.exit_code = cause.exit_code


# ====================================
# Décodage des trames
# ====================================

class FrameDecodeError(CollabError, ValueError):
    """Trame invalide"""


class BadMagicError(FrameDecodeError):
    """Signature de trame incorrecte"""


class BadVersionError(FrameDecodeError):
    """Version de format non supportée"""


class BadLengthError(FrameDecodeError):
    """Longueur incohérente avec l'en-tête"""


class BadChecksumError(FrameDecodeError):
    """CRC-32 invalide"""


# ====================================
# Données externes et artefacts
# ====================================

class FeatureParseError(ConfigurationError):
    """Ligne mal formée dans un fichier de features"""

    def __init__(self, message: str, line: int):
        super().__init__(f"Ligne {line} : {message}")
        self.line = line


class FeatureSchemaError(ConfigurationError):
    """Fichier de features incohérent avec l'expérience"""


class EmptyDatasetError(ConfigurationError):
    """Aucun échantillon exploitable"""


class ArtifactIOError(CollabError, OSError):
    """Lecture ou écriture d'un artefact impossible"""
    exit_code = EXIT_IO
