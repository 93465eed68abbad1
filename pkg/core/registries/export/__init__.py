from .registry import ExportRegistry
from .strategies import ExportStrategy, to_builtin

__all__ = ['ExportRegistry', 'ExportStrategy', 'to_builtin']
