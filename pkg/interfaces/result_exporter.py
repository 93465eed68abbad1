"""
Module d'export des artefacts d'une exécution

Rôle :
- Ecrire l'instantané de configuration, la trajectoire, les métriques et le trafic
- Copier le fichier P utilisé (unrolled-gl)
- Produire un manifeste ; chaque fichier porte l'empreinte de la configuration
"""
import logging
import shutil

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, Optional

from core.comparison.method_runner import MethodRun
from core.comparison.metrics_report import MetricsReport
from core.data.experiment_config import ExperimentConfig
from core.errors import ArtifactIOError
from core.registries.export.registry import ExportRegistry

logger = logging.getLogger(__name__)


@dataclass
class RunArtifacts:
    """Fichiers écrits pour une exécution"""
    directory: Path
    config_digest: str
    report: MetricsReport
    files: Dict[str, Path] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'config_digest': self.config_digest,
            'files': {k: v.name for k, v in sorted(self.files.items())},
        }


class ResultsExporter:
    """
    Gère l'export des artefacts d'exécution dans un répertoire dédié
    """

    @staticmethod
    def run_directory(config: ExperimentConfig, method: str, seed: int, base_dir: Optional[str] = None) -> Path:
        """<out>/<nom>/<méthode>_seed<graine>_<empreinte courte>"""
        base = Path(base_dir if base_dir is not None else config.output_dir)
        return base / config.name / f"{method}_seed{seed}_{config.digest[:8]}"

    @staticmethod
    def export_config(config: ExperimentConfig, output_dir: Path) -> Path:
        """Instantané complet de la configuration effective"""
        payload = {
            'config_digest': config.digest,
            'config': config.to_dict(),
            'reproduction_contract': config.reproduction_contract(),
        }
        return ExportRegistry.get_instance().export('json', payload, output_dir, 'config')

    @staticmethod
    def export_metrics(report: MetricsReport, output_dir: Path) -> Path:
        return ExportRegistry.get_instance().export('json', report.to_dict(), output_dir, 'metrics')

    @staticmethod
    def export_traffic(run: MethodRun, config_digest: str, output_dir: Path) -> Path:
        payload = {'config_digest': config_digest, **run.traffic.to_dict()}
        return ExportRegistry.get_instance().export('json', payload, output_dir, 'traffic')

    @staticmethod
    def export_importance(p_file: Path, output_dir: Path) -> Path:
        """Copie du fichier P utilisé par l'exécution"""
        target = Path(output_dir) / 'importance.json'
        try:
            shutil.copyfile(p_file, target)
        except OSError as e:
            raise ArtifactIOError(f"Copie du fichier P impossible ({p_file}) : {e}")
        return target

    @staticmethod
    def export_run(
        run: MethodRun,
        config: ExperimentConfig,
        base_dir: Optional[str] = None,
        p_file: Optional[Path] = None
    ) -> RunArtifacts:
        """
        Exporte tous les artefacts d'une exécution

        Args:
            run (MethodRun): Exécution terminée
            config (ExperimentConfig): Configuration de l'exécution
            base_dir (Optional[str]): Répertoire de base (output_dir de la configuration sinon)
            p_file (Optional[Path]): Fichier P utilisé, copié avec les artefacts

        Returns:
            RunArtifacts: Chemins de tous les fichiers exportés
        """
        directory = ResultsExporter.run_directory(config, run.method, run.seed, base_dir)
        digest = config.digest
        report = MetricsReport.from_metrics(
            run.method, config.task, run.seed, digest, run.dataset_digest, run.metrics
        )
        artifacts = RunArtifacts(directory=directory, config_digest=digest, report=report)

        artifacts.files['config'] = ResultsExporter.export_config(config, directory)
        artifacts.files['trajectory'] = run.trajectory.save(directory / 'trajectory.jsonl')
        artifacts.files['metrics'] = ResultsExporter.export_metrics(report, directory)
        artifacts.files['traffic'] = ResultsExporter.export_traffic(run, digest, directory)
        if p_file is not None:
            artifacts.files['importance'] = ResultsExporter.export_importance(p_file, directory)

        artifacts.files['manifest'] = ExportRegistry.get_instance().export(
            'json', artifacts.to_dict(), directory, 'manifest'
        )
        logger.info(f"Artefacts exportés dans : {directory}")
        return artifacts
