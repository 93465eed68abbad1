from .config_schema import ConfigSchema

__all__ = [
    'ConfigSchema'
]