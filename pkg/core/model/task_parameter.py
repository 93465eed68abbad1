from dataclasses import dataclass
from typing import Any, Dict, Union


@dataclass
class TaskParameter:
    """Représente un paramètre de tâche"""
    id: str
    label: str
    unit: str
    default: Union[float, int, str]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'TaskParameter':
        return cls(**data)
