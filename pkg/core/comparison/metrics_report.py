"""
Rapport de comparaison des méthodes (tableau par méthode, moyenne et écart-type)
"""
import math

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

import pandas as pd

from core.errors import ConfigurationError
from core.registries.learners import METHODS

ABSENT = '−'
FAILED = 'ÉCHEC'


def _clean(value: Any) -> Optional[float]:
    if value is None:
        return None
    value = float(value)
    return None if math.isnan(value) else value


@dataclass(frozen=True)
class MetricsReport:
    """Métriques d'une méthode pour une graine"""
    method: str
    task: str
    seed: int
    config_digest: str
    dataset_digest: str = ''
    l_reg: Optional[float] = None
    acc: Optional[float] = None
    gmse: Optional[float] = None
    error: Optional[str] = None

    def __post_init__(self):
        if self.failed:
            return
        if self.task == 'regression' and (self.l_reg is None or self.acc is not None):
            raise ConfigurationError("Un rapport de régression porte L_reg et pas ACC")
        if self.task == 'classification' and (self.acc is None or self.l_reg is not None):
            raise ConfigurationError("Un rapport de classification porte ACC et pas L_reg")
        if self.method == 'no-colla' and self.gmse is not None:
            raise ConfigurationError("Pas de GMSE sans collaboration")

    @property
    def failed(self) -> bool:
        return self.error is not None

    @classmethod
    def from_metrics(cls, method: str, task: str, seed: int, config_digest: str,
                     dataset_digest: str, metrics: Dict[str, float]) -> 'MetricsReport':
        return cls(
            method=method, task=task, seed=seed,
            config_digest=config_digest, dataset_digest=dataset_digest,
            l_reg=metrics.get('l_reg'), acc=metrics.get('acc'), gmse=metrics.get('gmse'),
        )

    @classmethod
    def failure(cls, method: str, task: str, seed: int, config_digest: str,
                error: str, dataset_digest: str = '') -> 'MetricsReport':
        return cls(method=method, task=task, seed=seed, config_digest=config_digest,
                   dataset_digest=dataset_digest, error=error)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'method': self.method,
            'task': self.task,
            'seed': self.seed,
            'config_digest': self.config_digest,
            'dataset_digest': self.dataset_digest,
            'l_reg': self.l_reg,
            'acc': self.acc,
            'gmse': self.gmse,
            'error': self.error,
        }


@dataclass
class ComparisonReport:
    """Tableau des quatre méthodes sur les mêmes données, agrégé sur les graines"""
    task: str
    config_digest: str
    seeds: List[int]
    rows: List[MetricsReport] = field(default_factory=list)
    metadata: Dict[str, Any] = field(default_factory=dict)

    @property
    def metric_names(self) -> List[str]:
        return ['l_reg', 'gmse'] if self.task == 'regression' else ['acc', 'gmse']

    @property
    def single_run(self) -> bool:
        return len(self.seeds) == 1

    @property
    def methods(self) -> List[str]:
        present = {row.method for row in self.rows}
        return [m for m in METHODS if m in present] + sorted(present - set(METHODS))

    def frame(self) -> pd.DataFrame:
        """Une ligne par (graine, méthode)"""
        return pd.DataFrame([row.to_dict() for row in self.rows])

    def digests_consistent(self) -> bool:
        """Toutes les méthodes d'une graine ont vu les mêmes données"""
        frame = self.frame()
        if frame.empty:
            return True
        digests = frame[frame['dataset_digest'] != ''].groupby('seed')['dataset_digest'].nunique()
        return bool((digests <= 1).all())

    def summary_records(self) -> List[Dict[str, Any]]:
        """Moyenne, écart-type (ddof=1), nombre d'exécutions et d'échecs par méthode"""
        frame = self.frame()
        records = []
        for method in self.methods:
            rows = frame[frame['method'] == method]
            ok = rows[rows['error'].isna()]
            record = {'method': method, 'runs': int(len(rows)), 'failed': int(len(rows) - len(ok))}
            for metric in self.metric_names:
                values = ok[metric].dropna().astype(float)
                record[f"{metric}_mean"] = _clean(values.mean()) if len(values) else None
                record[f"{metric}_std"] = _clean(values.std(ddof=1)) if len(values) > 1 else None
            records.append(record)
        return records

    def summary(self) -> pd.DataFrame:
        return pd.DataFrame.from_records(self.summary_records())

    def to_dict(self) -> Dict[str, Any]:
        return {
            'task': self.task,
            'config_digest': self.config_digest,
            'seeds': list(self.seeds),
            'single_run': self.single_run,
            'digests_consistent': self.digests_consistent(),
            'summary': self.summary_records(),
            'runs': [row.to_dict() for row in self.rows],
            'metadata': self.metadata,
        }

    def _cell(self, record: Dict[str, Any], metric: str) -> str:
        mean = _clean(record.get(f"{metric}_mean"))
        if mean is None:
            return FAILED if record['failed'] == record['runs'] else ABSENT
        std = _clean(record.get(f"{metric}_std"))
        return f"{mean:.4f}" if std is None else f"{mean:.4f} ± {std:.4f}"

    def to_text(self) -> str:
        """Tableau aligné lisible"""
        labels = {'l_reg': 'L_reg', 'acc': 'ACC', 'gmse': 'GMSE'}
        table = pd.DataFrame([
            {
                'Méthode': record['method'],
                **{labels[m]: self._cell(record, m) for m in self.metric_names},
                'Exécutions': record['runs'],
                'Échecs': record['failed'],
            }
            for record in self.summary_records()
        ])
        header = (
            f"Comparaison des méthodes - {self.task}\n"
            f"Graines : {list(self.seeds)}" + (" (exécution unique)" if self.single_run else "") + "\n"
            f"Configuration : {self.config_digest}\n"
        )
        body = table.to_string(index=False) if not table.empty else "(aucune exécution)"
        failures = [f"  {r.method} / graine {r.seed} : {r.error}" for r in self.rows if r.failed]
        if failures:
            body += "\n\nÉchecs :\n" + "\n".join(failures)
        return header + "\n" + body + "\n"
