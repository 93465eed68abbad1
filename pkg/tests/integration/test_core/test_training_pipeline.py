"""
Tests d'intégration : pipeline d'entraînement de P

Vérifie la chaîne :
  ImportanceTrainingManager → fichier P → unrolled-gl (run et compare)
"""
import json

from pathlib import Path

import numpy as np

from core.registries.learners import METHODS
from core.sim_runner import cmd_compare, cmd_run, cmd_train
from core.training import ImportanceCache, ImportanceTrainingManager, load_importance


class TestTrainThenRun:
    """P entraînée puis utilisée par unrolled-gl"""

    def test_train_writes_importance(self, regression_config, temp_dir):
        result, path = cmd_train(regression_config, temp_dir / 'P.json')
        model, document = load_importance(path, expected_M=2)

        assert path == temp_dir / 'P.json'
        assert len(result.loss_trajectory) == 3
        assert result.best_loss == min(result.loss_trajectory)
        assert np.all(model.P.diag >= regression_config.hyperparams.gamma)
        assert document['metadata']['training_seeds'] == [101, 102]
        assert document['best_epoch'] == result.best_epoch

    def test_run_with_trained_importance(self, regression_config, temp_dir):
        _, path = cmd_train(regression_config, temp_dir / 'P.json')
        config = regression_config.with_overrides(method='unrolled-gl')

        artifacts = cmd_run(config, p_file=path, seeds=[1])

        exported = artifacts[0]
        assert exported.directory.name.startswith('unrolled-gl_seed1_')
        assert exported.files['importance'].read_bytes() == path.read_bytes()
        metrics = json.loads(exported.files['metrics'].read_text(encoding='utf-8'))
        assert metrics['gmse'] is not None

    def test_run_uses_cached_importance(self, regression_config):
        """Test : sans --p-file, la P en cache de output_dir est retrouvée"""
        _, _, cached = ImportanceTrainingManager(regression_config).train_or_load()
        config = regression_config.with_overrides(method='unrolled-gl')

        artifacts = cmd_run(config, seeds=[1])

        assert artifacts[0].files['importance'].read_bytes() == cached.read_bytes()

    def test_classification_training(self, classification_config, temp_dir):
        manager = ImportanceTrainingManager(classification_config)
        result, path = cmd_train(classification_config, temp_dir / 'P_cls.json')
        model, _ = load_importance(path)

        assert model.n_params == manager.task.n_params
        assert len(result.loss_trajectory) == 2
        assert np.all(np.isfinite(result.loss_trajectory))


class TestCompareTrainsWhenMissing:
    """cmd_compare entraîne P si aucune n'est disponible"""

    def test_all_methods_compared(self, regression_config):
        report, _ = cmd_compare(regression_config)

        assert report.methods == list(METHODS)
        assert len(report.rows) == len(METHODS) * 2
        assert not any(row.failed for row in report.rows)

        manager = ImportanceTrainingManager(regression_config)
        cache = ImportanceCache(str(Path(regression_config.output_dir) / 'importance'))
        assert cache.exists(regression_config.task, manager.config_hash)
