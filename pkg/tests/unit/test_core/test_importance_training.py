"""
Tests unitaires pour l'entraînement de la diagonale P
"""
import json

import pytest
import numpy as np

from core.data.collab_types import ImportanceDiag
from core.errors import ArtifactIOError, ConfigurationError, DimensionError, TrainingError
from core.solver.unrolled_solver import UnrolledModel
from core.training import (
    ConfigurationComparator,
    ImportanceCache,
    ImportancePipeline,
    ImportanceTrainer,
    ImportanceTrainingManager,
    RegressionSupervision,
    Supervision,
    TrainerSettings,
    TrainingScenario,
    build_training_scenario,
    load_importance,
    save_importance,
)
from tests.conftest import SMALL_REGRESSION, build_config

DIAG = np.array([1e-3, 2e-3])


@pytest.fixture
def scenario(regression_task, regression_scenario):
    return build_training_scenario(
        regression_task, regression_scenario.datasets, RegressionSupervision(regression_scenario.truths), seed=1
    )


class _NaNSupervision(Supervision):
    def loss(self, theta):
        return float('nan')

    def gradient(self, theta):
        return np.full_like(theta, np.nan)


class _NaNGradientSupervision(Supervision):
    def loss(self, theta):
        return 0.0

    def gradient(self, theta):
        return np.full_like(theta, np.nan)


# ====================================
# Pipeline
# ====================================

class TestImportancePipeline:
    """Tests pour ImportancePipeline"""

    @pytest.mark.parametrize('horizon', ['truncated', 'full'])
    def test_analytic_gradient_matches_finite_differences(self, scenario, horizon):
        """Test : gradient en mode inverse = différences centrées"""
        pipeline = ImportancePipeline(lambda2=0.1, T2=3, T1=6, K=5, horizon=horizon)
        trainer = ImportanceTrainer(TrainerSettings(gradient_mode='finite_difference'), pipeline)

        _, analytic = pipeline.evaluate([scenario], DIAG)
        numeric = trainer.finite_difference_gradient([scenario], DIAG)

        assert np.allclose(analytic, numeric, rtol=1e-3, atol=1e-8)

    def test_rounds_per_horizon(self):
        assert ImportancePipeline(0.1, T2=3, T1=7, K=5).n_rounds == 3
        assert ImportancePipeline(0.1, T2=3, T1=7, K=5, horizon='full').n_rounds == 7

    def test_no_smoothing_zero_gradient(self, scenario):
        """Test : lambda2 = 0 -> Theta = alpha, gradient nul"""
        pipeline = ImportancePipeline(lambda2=0.0, T2=3, T1=6, K=5)
        loss, grad = pipeline.evaluate([scenario], DIAG)

        assert loss == pytest.approx(scenario.supervision.loss(scenario.alphas))
        assert not grad.any()

    def test_diag_size_mismatch(self, scenario):
        with pytest.raises(DimensionError):
            ImportancePipeline(0.1, T2=3, T1=6, K=5).scenario_loss(scenario, np.ones(3))

    def test_invalid_pipeline(self):
        with pytest.raises(ConfigurationError):
            ImportancePipeline(0.1, T2=3, T1=6, K=5, horizon='infinite')
        with pytest.raises(ConfigurationError):
            ImportancePipeline(-0.1, T2=3, T1=6, K=5)

    def test_non_finite_loss_gives_nan_gradient(self, scenario):
        """Test : L_P non finie -> gradient NaN sans rétropropagation"""
        broken = TrainingScenario(surrogates=scenario.surrogates, supervision=_NaNSupervision())
        loss, grad = ImportancePipeline(0.1, T2=3, T1=6, K=5).scenario_loss(broken, DIAG)

        assert np.isnan(loss)
        assert np.isnan(grad).all()

    def test_scenario_needs_two_agents(self, scenario):
        with pytest.raises(ConfigurationError):
            TrainingScenario(surrogates=scenario.surrogates[:1], supervision=scenario.supervision)


# ====================================
# Entraîneur
# ====================================

class TestImportanceTrainer:
    """Tests pour ImportanceTrainer"""

    @pytest.fixture
    def pipeline(self):
        return ImportancePipeline(lambda2=0.1, T2=3, T1=6, K=5)

    def test_zero_epochs_evaluates_initial(self, scenario, pipeline):
        model = UnrolledModel(P=ImportanceDiag(DIAG, gamma=1e-6), K=5)
        result = ImportanceTrainer(TrainerSettings(epochs=0), pipeline).train([scenario], model)

        assert len(result.loss_trajectory) == 1
        assert result.best_epoch == 0
        assert np.array_equal(result.model.P.diag, DIAG)

    def test_best_never_worse_than_initial(self, scenario, pipeline):
        model = UnrolledModel(P=ImportanceDiag(DIAG, gamma=1e-6), K=5)
        settings = TrainerSettings(epochs=3, learning_rate=1e-4, gradient_mode='analytic')
        result = ImportanceTrainer(settings, pipeline).train([scenario], model)

        assert len(result.loss_trajectory) == 4
        assert result.best_loss <= result.loss_trajectory[0]
        assert result.best_loss == min(result.loss_trajectory)
        assert result.initial_model is model

    def test_projection_on_floor(self, scenario, pipeline):
        """Test : P initiale sous le plancher de l'entraîneur relevée à gamma"""
        model = UnrolledModel(P=ImportanceDiag(np.array([1e-9, 2e-3]), gamma=1e-10), K=5)
        result = ImportanceTrainer(TrainerSettings(epochs=0, gamma=1e-6), pipeline).train([scenario], model)

        assert result.model.P.diag[0] == 1e-6
        assert result.model.P.diag[1] == 2e-3

        settings = TrainerSettings(epochs=2, learning_rate=1.0, optimizer='sgd', gradient_mode='analytic')
        result = ImportanceTrainer(settings, pipeline).train([scenario], model)
        assert np.all(result.model.P.diag >= 1e-6)

    def test_non_finite_loss(self, scenario, pipeline):
        broken = TrainingScenario(surrogates=scenario.surrogates, supervision=_NaNSupervision())
        model = UnrolledModel(P=ImportanceDiag(DIAG, gamma=1e-6), K=5)

        with pytest.raises(TrainingError) as excinfo:
            ImportanceTrainer(TrainerSettings(gradient_mode='analytic'), pipeline).train([broken], model)
        assert excinfo.value.epoch == 0

    def test_non_finite_gradient(self, scenario, pipeline):
        """Test : gradient de supervision non fini en mode analytique -> TrainingError à l'époque 0"""
        broken = TrainingScenario(surrogates=scenario.surrogates, supervision=_NaNGradientSupervision())
        model = UnrolledModel(P=ImportanceDiag(DIAG, gamma=1e-6), K=5)

        with pytest.raises(TrainingError) as excinfo:
            ImportanceTrainer(TrainerSettings(gradient_mode='analytic'), pipeline).train([broken], model)
        assert excinfo.value.epoch == 0

    def test_no_scenarios(self, pipeline):
        model = UnrolledModel(P=ImportanceDiag(DIAG, gamma=1e-6), K=5)
        with pytest.raises(ConfigurationError):
            ImportanceTrainer(TrainerSettings(), pipeline).train([], model)

    @pytest.mark.parametrize('kwargs', [
        {'learning_rate': -1.0},
        {'epochs': -1},
        {'gradient_mode': 'autodiff'},
        {'optimizer': 'rmsprop'},
        {'fd_relative_step': 0.1},
        {'gamma': 0.0},
    ])
    def test_invalid_settings(self, kwargs):
        with pytest.raises(ConfigurationError):
            TrainerSettings(**kwargs)


# ====================================
# Persistance et cache
# ====================================

class TestImportanceStore:
    """Tests pour save_importance / load_importance"""

    def test_round_trip_bit_exact(self, temp_dir):
        model = UnrolledModel(P=ImportanceDiag(np.array([1.0 / 3.0, 0.1 + 0.2]), gamma=1e-6), K=7)
        path = save_importance(model, temp_dir / 'P.json', training={'best_epoch': 4}, config_digest='abc')
        loaded, document = load_importance(path, expected_M=2)

        assert loaded.P.diag.tobytes() == model.P.diag.tobytes()
        assert loaded.K == 7
        assert document['best_epoch'] == 4
        assert document['config_digest'] == 'abc'

    def test_dimension_mismatch(self, temp_dir):
        path = save_importance(UnrolledModel(P=ImportanceDiag.constant(2, 0.1)), temp_dir / 'P.json')
        with pytest.raises(DimensionError):
            load_importance(path, expected_M=8)

    def test_missing_file(self, temp_dir):
        with pytest.raises(ArtifactIOError):
            load_importance(temp_dir / 'absent.json')

    def test_unknown_version(self, temp_dir):
        path = save_importance(UnrolledModel(P=ImportanceDiag.constant(2, 0.1)), temp_dir / 'P.json')
        document = json.loads(path.read_text(encoding='utf-8'))
        document['format_version'] = 99
        path.write_text(json.dumps(document), encoding='utf-8')
        with pytest.raises(ConfigurationError):
            load_importance(path)


class TestImportanceCache:
    """Tests pour ImportanceCache"""

    def test_path_uses_hash_prefix(self, temp_dir):
        cache = ImportanceCache(str(temp_dir))
        assert cache.get_cache_path('regression', 'abcdef0123456789') == temp_dir / 'regression_P_abcdef01.json'

    def test_load_absent(self, temp_dir):
        assert ImportanceCache(str(temp_dir)).load('regression', 'abcdef0123') is None

    def test_digest_mismatch_ignored(self, temp_dir):
        """Test : fichier présent mais empreinte différente -> None"""
        cache = ImportanceCache(str(temp_dir))
        save_importance(
            UnrolledModel(P=ImportanceDiag.constant(2, 0.1)),
            cache.get_cache_path('regression', 'abcdef0123'),
            config_digest='autre',
        )
        assert cache.load('regression', 'abcdef0123') is None


class TestConfigurationComparator:
    """Tests pour ConfigurationComparator"""

    def test_hash_ignores_execution_fields(self, regression_raw):
        other = json.loads(json.dumps(regression_raw))
        other['experiment']['method'] = 'unrolled-gl'
        other['experiment']['workers'] = 4

        assert ConfigurationComparator.compute_hash(regression_raw) == ConfigurationComparator.compute_hash(other)

    def test_hash_tracks_hyperparams(self, regression_raw):
        other = json.loads(json.dumps(regression_raw))
        other['hyperparams']['lambda1'] = 1.0

        assert ConfigurationComparator.compute_hash(regression_raw) != ConfigurationComparator.compute_hash(other)
        differences = ConfigurationComparator.compare_configs(other, regression_raw)
        assert differences['modified'] == {'hyperparams.lambda1': {'old': 3.0, 'new': 1.0}}


class TestImportanceTrainingManager:
    """Tests pour ImportanceTrainingManager"""

    def test_train_or_load_reuses_cache(self, regression_config):
        manager = ImportanceTrainingManager(regression_config)

        model, result, path = manager.train_or_load()
        cached_model, cached_result, cached_path = manager.train_or_load()

        assert result is not None
        assert len(result.loss_trajectory) == 3
        assert cached_result is None
        assert cached_path == path
        assert cached_model.P.diag.tobytes() == model.P.diag.tobytes()

    def test_initial_model(self, regression_config):
        model = ImportanceTrainingManager(regression_config).initial_model()

        assert model.n_params == 2
        assert model.K == regression_config.hyperparams.K
        assert np.all(model.P.diag == 1e-3)

    def test_training_seeds_disjoint_from_test_seeds(self, temp_dir):
        raw = json.loads(json.dumps(SMALL_REGRESSION))
        raw['training']['seeds'] = [2, 101]
        with pytest.raises(ConfigurationError):
            ImportanceTrainingManager(build_config(raw, temp_dir))
