"""
Module d'export spécialisé pour les rapports de comparaison et les données de tracé

Les tracés sont émis en CSV de triplets (x, y, series) ; le rendu est externe.
"""
import logging

from pathlib import Path
from typing import Dict, Mapping, Optional

import numpy as np
import pandas as pd

from core.comparison.method_runner import MethodRun
from core.comparison.metrics_report import ComparisonReport
from core.errors import ArtifactIOError
from core.registries.export.registry import ExportRegistry
from core.registries.learners import METHODS

logger = logging.getLogger(__name__)

PLOT_COLUMNS = ['x', 'y', 'series']


def _ordered(runs: Mapping[str, MethodRun]):
    return [runs[m] for m in METHODS if m in runs] + [runs[m] for m in sorted(set(runs) - set(METHODS))]


class MetricsExporter:
    """Export des tableaux de comparaison et des séries de tracé"""

    @staticmethod
    def theta_frame(runs: Mapping[str, MethodRun]) -> pd.DataFrame:
        """
        Trajectoires de theta : x = tour (0 = initialisation), y = valeur,
        series = méthode/agent/coordonnée
        """
        frames = []
        for run in _ordered(runs):
            history = run.trajectory.theta_history()
            n_rounds, n_agents, n_params = history.shape
            labels = [f"{run.method}/agent{i}/theta{m}" for i in range(n_agents) for m in range(n_params)]
            frames.append(pd.DataFrame({
                'x': np.repeat(np.arange(n_rounds), n_agents * n_params),
                'y': history.reshape(-1),
                'series': labels * n_rounds,
            }))
        return pd.concat(frames, ignore_index=True) if frames else pd.DataFrame(columns=PLOT_COLUMNS)

    @staticmethod
    def weights_frame(runs: Mapping[str, MethodRun], ground_truth: Optional[np.ndarray] = None) -> pd.DataFrame:
        """
        Valeurs de carte de chaleur de W : x = colonne j, y = w_ij,
        series = méthode/t<tour>/agent<i> (dernier graphe de chaque méthode)
        """
        matrices = []
        for run in _ordered(runs):
            latest = run.trajectory.weight_matrices()
            if latest:
                t, weights = latest[-1]
                matrices.append((f"{run.method}/t{t}", weights))
        if ground_truth is not None:
            matrices.append(('ground-truth', np.asarray(ground_truth)))

        rows = [
            {'x': j, 'y': float(w[i, j]), 'series': f"{label}/agent{i}"}
            for label, w in matrices
            for i in range(w.shape[0])
            for j in range(w.shape[1])
        ]
        return pd.DataFrame(rows, columns=PLOT_COLUMNS)

    @staticmethod
    def export_plot_data(
        runs: Mapping[str, MethodRun],
        output_dir: str,
        ground_truth: Optional[np.ndarray] = None
    ) -> Dict[str, Path]:
        """
        Exporte les trajectoires de theta et la carte de chaleur de W

        Args:
            runs (Mapping[str, MethodRun]): Exécutions d'une même graine, par méthode
            output_dir (str): Répertoire de sortie
            ground_truth (Optional[np.ndarray]): Graphe de référence ajouté à la carte

        Returns:
            Dict[str, Path]: Dict {nom: chemin_csv}
        """
        registry = ExportRegistry.get_instance()
        plot_dir = Path(output_dir) / 'plots'
        exported = {
            'theta': registry.export('csv', MetricsExporter.theta_frame(runs), plot_dir, 'theta_trajectories'),
            'weights': registry.export(
                'csv', MetricsExporter.weights_frame(runs, ground_truth), plot_dir, 'weights_heatmap'
            ),
        }
        logger.info(f"Données de tracé exportées dans : {plot_dir}")
        return exported

    @staticmethod
    def create_comparison_report(report: ComparisonReport, output_path: str) -> Path:
        """
        Crée le rapport textuel de comparaison

        Args:
            report (ComparisonReport): Rapport agrégé
            output_path (str): Chemin du fichier de sortie

        Returns:
            Path: Path du fichier créé
        """
        path = Path(output_path)
        try:
            path.parent.mkdir(parents=True, exist_ok=True)
            with open(path, 'w', encoding='utf-8') as f:
                f.write("=" * 70 + "\n")
                f.write("Rapport de comparaison - Apprentissage collaboratif\n")
                f.write("=" * 70 + "\n")
                f.write(report.to_text())
                if not report.digests_consistent():
                    f.write("\nATTENTION : données différentes entre méthodes d'une même graine\n")
                f.write("=" * 70 + "\n")
        except OSError as e:
            raise ArtifactIOError(f"Ecriture du rapport impossible ({path}) : {e}")
        return path

    @staticmethod
    def export_comparison(report: ComparisonReport, output_dir: str) -> Dict[str, Path]:
        """
        Exporte le rapport lisible par machine (JSON, CSV) et par un humain (texte)

        Returns:
            Dict[str, Path]: Chemins des fichiers créés
        """
        registry = ExportRegistry.get_instance()
        output_path = Path(output_dir)
        exported = {
            'json': registry.export('json', report.to_dict(), output_path, 'report'),
            'runs_csv': registry.export('csv', report.frame(), output_path, 'runs'),
            'summary_csv': registry.export('csv', report.summary(), output_path, 'summary'),
            'text': MetricsExporter.create_comparison_report(report, str(output_path / 'report.txt')),
        }
        logger.info(f"Rapport de comparaison exporté dans : {output_path}")
        return exported
