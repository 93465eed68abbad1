from typing import Any, Dict, Mapping

from core.data.experiment_config import config_digest, normalize_config


class ConfigurationComparator:
    """Compare la configuration d'entraînement de P à celle d'une exécution"""

    RELEVANT_SECTIONS = ('experiment.task', 'experiment.n_agents', 'hyperparams', 'scenario', 'local_fit', 'training')

    @staticmethod
    def flatten(config: Mapping[str, Any], prefix: str = '') -> Dict[str, Any]:
        """Aplatit une configuration en clés pointées"""
        flat = {}
        for key, value in config.items():
            name = f"{prefix}{key}"
            if isinstance(value, Mapping):
                flat.update(ConfigurationComparator.flatten(value, f"{name}."))
            else:
                flat[name] = value
        return flat

    @staticmethod
    def relevant(config: Mapping[str, Any]) -> Dict[str, Any]:
        """Champs qui conditionnent la validité d'une P entraînée"""
        flat = ConfigurationComparator.flatten(normalize_config(config))
        return {
            key: value for key, value in flat.items()
            if any(key == s or key.startswith(f"{s}.") for s in ConfigurationComparator.RELEVANT_SECTIONS)
        }

    @staticmethod
    def compute_hash(config: Mapping[str, Any]) -> str:
        """Empreinte des seuls champs qui conditionnent P"""
        return config_digest(ConfigurationComparator.relevant(config))

    @staticmethod
    def compare_configs(current: Mapping[str, Any], reference: Mapping[str, Any]) -> Dict[str, Any]:
        """Compare deux configurations en détail"""
        norm1 = ConfigurationComparator.relevant(current)
        norm2 = ConfigurationComparator.relevant(reference)

        differences = {
            'added': {},
            'removed': {},
            'modified': {}
        }

        for key in sorted(set(norm1) | set(norm2)):
            if key not in norm1:
                differences['removed'][key] = norm2[key]
            elif key not in norm2:
                differences['added'][key] = norm1[key]
            elif norm1[key] != norm2[key]:
                differences['modified'][key] = {
                    'old': norm2[key],
                    'new': norm1[key]
                }

        return differences
