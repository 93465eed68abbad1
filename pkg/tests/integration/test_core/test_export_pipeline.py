"""
Tests d'intégration : pipeline d'export

Vérifie la chaîne :
  cmd_generate() → features.csv, eval_features.csv, ground_truth.json par graine
  cmd_run()      → config, trajectoire, métriques, trafic, manifeste par graine
  cmd_compare()  → rapport JSON/CSV/texte et données de tracé
"""
import json

import pytest
import numpy as np
import pandas as pd

from core.errors import MissingDependencyError
from core.orchestrator import load_trajectory
from core.scenarios import generate_scenario, load_features
from core.sim_runner import cmd_compare, cmd_generate, cmd_run


class TestGenerateExport:
    """Tests pour cmd_generate"""

    def test_regression_files(self, regression_config):
        written = cmd_generate(regression_config)

        assert set(written) == {1, 2}
        files = written[1]
        assert set(files) == {'features', 'ground_truth'}
        assert files['features'].parent.name == 'seed_1'

        reference = json.loads(files['ground_truth'].read_text(encoding='utf-8'))
        scenario = generate_scenario(regression_config, 1)
        assert reference['dataset_digest'] == scenario.digest()
        assert np.array_equal(np.array(reference['ground_truth']), scenario.ground_truth)
        assert len(reference['truths']) == 6

        frame = pd.read_csv(files['features'])
        assert list(frame.columns[:2]) == ['agent_id', 'label']
        assert sorted(frame['agent_id'].unique()) == list(range(6))

    def test_classification_features_reload(self, classification_config):
        """Test : fichiers de features relisibles, évaluation comprise"""
        written = cmd_generate(classification_config)
        files = written[1]
        scenario = generate_scenario(classification_config, 1)

        assert set(files) == {'features', 'eval_features', 'ground_truth'}
        datasets = load_features(files['features'], n_features=3, n_agents=4)
        assert len(datasets) == 4
        for loaded, original in zip(datasets, scenario.datasets):
            assert np.array_equal(loaded.inputs, original.inputs)
            assert np.array_equal(loaded.targets, original.targets)


class TestRunExport:
    """Tests pour cmd_run"""

    def test_artifacts_per_seed(self, regression_config):
        artifacts = cmd_run(regression_config)

        assert len(artifacts) == 2
        for exported in artifacts:
            assert exported.directory.name.startswith('original-gl_seed')
            assert exported.directory.name.endswith(regression_config.digest[:8])
            trajectory = load_trajectory(exported.files['trajectory'])
            assert len(trajectory) == 6
            assert trajectory.refresh_rounds() == [0, 3]

    def test_seed_selection(self, regression_config):
        artifacts = cmd_run(regression_config, seeds=[2])

        assert len(artifacts) == 1
        assert artifacts[0].directory.name.startswith('original-gl_seed2_')

    def test_rerun_is_byte_identical(self, regression_config):
        """Test : même configuration, mêmes octets"""
        first = cmd_run(regression_config, seeds=[1])[0]
        contents = {k: p.read_bytes() for k, p in first.files.items()}
        second = cmd_run(regression_config, seeds=[1])[0]

        assert {k: p.read_bytes() for k, p in second.files.items()} == contents

    def test_unrolled_requires_importance(self, regression_config):
        config = regression_config.with_overrides(method='unrolled-gl')
        with pytest.raises(MissingDependencyError):
            cmd_run(config)


class TestCompareExport:
    """Tests pour cmd_compare"""

    def test_outputs(self, regression_config):
        methods = ('no-colla', 'original-gl', 'fixed-colla')
        report, exported = cmd_compare(regression_config, methods=methods)

        assert set(exported) == {'json', 'runs_csv', 'summary_csv', 'text', 'theta', 'weights'}
        assert exported['json'].parent.name == f"compare_{regression_config.digest[:8]}"

        document = json.loads(exported['json'].read_text(encoding='utf-8'))
        assert document['digests_consistent'] is True
        assert [r['method'] for r in document['summary']] == list(methods)
        assert len(pd.read_csv(exported['runs_csv'])) == len(report.rows) == 6

        weights = pd.read_csv(exported['weights'])
        assert 'ground-truth' in set(weights['series'].str.split('/').str[0])
