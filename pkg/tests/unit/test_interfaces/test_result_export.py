"""
Tests unitaires pour l'export de résultats
"""
import pytest
import json

import pandas as pd

from core.comparison.method_runner import run_method
from core.comparison.metrics_report import ComparisonReport, MetricsReport
from core.errors import ArtifactIOError
from core.orchestrator import load_trajectory
from interfaces.result_exporter import ResultsExporter
from interfaces.metrics_exporter import MetricsExporter


@pytest.fixture
def fixed_run(regression_config, regression_task, regression_scenario):
    return run_method(regression_config, regression_task, regression_scenario, 'fixed-colla')


@pytest.fixture
def no_colla_run(regression_config, regression_task, regression_scenario):
    return run_method(regression_config, regression_task, regression_scenario, 'no-colla')


class TestResultsExporter:
    """Tests pour ResultsExporter"""

    def test_run_directory(self, regression_config):
        directory = ResultsExporter.run_directory(regression_config, 'original-gl', 2)
        assert directory.name == f"original-gl_seed2_{regression_config.digest[:8]}"
        assert directory.parent.name == regression_config.name

    def test_export_run_files(self, fixed_run, regression_config):
        """Test : config, trajectoire, métriques, trafic et manifeste écrits"""
        artifacts = ResultsExporter.export_run(fixed_run, regression_config)

        assert set(artifacts.files) == {'config', 'trajectory', 'metrics', 'traffic', 'manifest'}
        for path in artifacts.files.values():
            assert path.exists()

        manifest = json.loads(artifacts.files['manifest'].read_text(encoding='utf-8'))
        assert manifest['config_digest'] == regression_config.digest
        metrics = json.loads(artifacts.files['metrics'].read_text(encoding='utf-8'))
        assert metrics['gmse'] == 0.0
        traffic = json.loads(artifacts.files['traffic'].read_text(encoding='utf-8'))
        assert traffic['broadcast_rounds'] == [0, 3]
        assert traffic['unicast_rounds'] == [1, 2, 4, 5]

    def test_trajectory_reloads_identically(self, fixed_run, regression_config):
        artifacts = ResultsExporter.export_run(fixed_run, regression_config)
        loaded = load_trajectory(artifacts.files['trajectory'])

        assert loaded.theta_history().tobytes() == fixed_run.trajectory.theta_history().tobytes()
        assert loaded.metadata['config_digest'] == regression_config.digest

    def test_export_is_idempotent(self, fixed_run, regression_config):
        """Test : deux exports identiques octet pour octet"""
        first = ResultsExporter.export_run(fixed_run, regression_config)
        contents = {k: p.read_bytes() for k, p in first.files.items()}
        second = ResultsExporter.export_run(fixed_run, regression_config)

        assert {k: p.read_bytes() for k, p in second.files.items()} == contents

    def test_importance_copy(self, fixed_run, regression_config, temp_dir):
        p_file = temp_dir / 'P.json'
        p_file.write_text('{"diag": [0.1, 0.2]}', encoding='utf-8')
        artifacts = ResultsExporter.export_run(fixed_run, regression_config, p_file=p_file)

        assert artifacts.files['importance'].read_bytes() == p_file.read_bytes()

    def test_importance_copy_missing(self, temp_dir):
        with pytest.raises(ArtifactIOError):
            ResultsExporter.export_importance(temp_dir / 'absent.json', temp_dir)


class TestMetricsExporter:
    """Tests pour MetricsExporter"""

    def test_theta_frame(self, fixed_run):
        """Test : une ligne par (tour, agent, coordonnée)"""
        frame = MetricsExporter.theta_frame({'fixed-colla': fixed_run})

        assert list(frame.columns) == ['x', 'y', 'series']
        assert len(frame) == 7 * 6 * 2
        assert frame['series'].iloc[0] == 'fixed-colla/agent0/theta0'

    def test_weights_frame_skips_no_colla(self, fixed_run, no_colla_run, regression_scenario):
        frame = MetricsExporter.weights_frame(
            {'no-colla': no_colla_run, 'fixed-colla': fixed_run}, regression_scenario.ground_truth
        )

        series = set(frame['series'].str.split('/').str[0])
        assert series == {'fixed-colla', 'ground-truth'}
        assert len(frame) == 2 * 36

    def test_export_plot_data(self, fixed_run, temp_dir):
        paths = MetricsExporter.export_plot_data({'fixed-colla': fixed_run}, str(temp_dir))

        assert paths['theta'].parent.name == 'plots'
        assert list(pd.read_csv(paths['weights']).columns) == ['x', 'y', 'series']

    def test_export_comparison(self, temp_dir):
        rows = [
            MetricsReport.from_metrics('no-colla', 'regression', 1, 'cfg', 'd', {'l_reg': 2.0}),
            MetricsReport.from_metrics('fixed-colla', 'regression', 1, 'cfg', 'd', {'l_reg': 0.5, 'gmse': 0.0}),
        ]
        report = ComparisonReport(task='regression', config_digest='cfg', seeds=[1], rows=rows)
        paths = MetricsExporter.export_comparison(report, str(temp_dir))

        assert set(paths) == {'json', 'runs_csv', 'summary_csv', 'text'}
        text = paths['text'].read_text(encoding='utf-8')
        assert 'Rapport de comparaison' in text
        assert 'ATTENTION' not in text
        assert len(pd.read_csv(paths['runs_csv'])) == 2
