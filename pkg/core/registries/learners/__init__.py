from .registry import LearnerRegistry, METHODS
