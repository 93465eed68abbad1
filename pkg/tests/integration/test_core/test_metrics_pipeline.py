"""
Tests d'intégration : pipeline métriques

Vérifie la chaîne :
  generate_scenario → run_method (par méthode) → MetricsRegistry → ComparisonReport
"""
import pytest

from core.comparison import compare_methods
from core.comparison.metrics_report import FAILED
from tests.conftest import SMALL_REGRESSION, build_config

METHODS = ('no-colla', 'original-gl', 'fixed-colla')


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _rows(report, method):
    return [row for row in report.rows if row.method == method]


class TestRegressionComparison:
    """Comparaison sur la régression linéaire"""

    @pytest.fixture
    def comparison(self, regression_config):
        return compare_methods(regression_config, methods=METHODS, keep_runs_for=1)

    def test_one_row_per_method_and_seed(self, comparison):
        report, _ = comparison

        assert len(report.rows) == len(METHODS) * 2
        assert report.methods == list(METHODS)
        assert not any(row.failed for row in report.rows)

    def test_same_data_for_every_method(self, comparison):
        report, _ = comparison

        assert report.digests_consistent()
        for seed in (1, 2):
            digests = {row.dataset_digest for row in report.rows if row.seed == seed}
            assert len(digests) == 1

    def test_metric_presence(self, comparison):
        """Test : L_reg partout, pas d'ACC, GMSE absente sans collaboration"""
        report, _ = comparison

        for row in report.rows:
            assert row.l_reg is not None and row.l_reg >= 0.0
            assert row.acc is None
        assert all(row.gmse is None for row in _rows(report, 'no-colla'))
        assert all(row.gmse == 0.0 for row in _rows(report, 'fixed-colla'))
        assert all(row.gmse is not None for row in _rows(report, 'original-gl'))

    def test_summary(self, comparison):
        report, _ = comparison
        summary = {record['method']: record for record in report.summary_records()}

        assert summary['no-colla']['gmse_mean'] is None
        assert summary['fixed-colla']['gmse_mean'] == 0.0
        assert summary['original-gl']['runs'] == 2
        assert summary['original-gl']['l_reg_std'] is not None

    def test_kept_runs(self, comparison):
        _, runs = comparison

        assert set(runs) == set(METHODS)
        assert all(run.seed == 1 for run in runs.values())

    def test_single_seed_has_no_std(self, regression_config):
        report, _ = compare_methods(regression_config, seeds=[1], methods=METHODS)

        assert report.single_run
        assert all(record['l_reg_std'] is None for record in report.summary_records())
        assert 'exécution unique' in report.to_text()


class TestClassificationComparison:
    """Comparaison sur la classification multi-classes"""

    def test_accuracy_in_unit_interval(self, classification_config):
        report, _ = compare_methods(classification_config, methods=METHODS)

        for row in report.rows:
            assert not row.failed
            assert 0.0 <= row.acc <= 1.0
            assert row.l_reg is None
        assert report.metric_names == ['acc', 'gmse']


class TestFailureIsolation:
    """Une méthode en échec n'interrompt pas les autres"""

    def test_degenerate_graph_learning_fails_alone(self, temp_dir):
        raw = {**SMALL_REGRESSION, 'hyperparams': {**SMALL_REGRESSION['hyperparams'], 'lambda1': 0.0}}
        config = build_config(raw, temp_dir)

        report, _ = compare_methods(config, seeds=[1], methods=METHODS)

        failed = [row for row in report.rows if row.failed]
        assert [row.method for row in failed] == ['original-gl']
        assert 'ExperimentAbortedError' in failed[0].error
        assert failed[0].dataset_digest != ''

        summary = {record['method']: record for record in report.summary_records()}
        assert summary['original-gl']['failed'] == 1
        assert FAILED in report.to_text()
