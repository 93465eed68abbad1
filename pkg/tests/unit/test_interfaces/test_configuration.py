"""
Tests unitaires pour la configuration et validation
"""
import pytest

from pathlib import Path

from core.data.experiment_config import ExperimentConfig, config_digest, normalize_config
from core.errors import ArtifactIOError, ConfigurationError
from interfaces.config.loader import ConfigLoader
from interfaces.config.validator import ConfigValidator
from interfaces.config.defaults import ConfigDefaults
from interfaces.config.schema.config_schema import ConfigSchema

CONFIG_DIR = Path(__file__).resolve().parents[3] / 'config'


class TestConfigDefaults:
    """Tests pour ConfigDefaults"""

    def test_regression_defaults(self):
        config = ConfigDefaults.apply_defaults({'experiment': {'task': 'regression'}})

        assert config['hyperparams']['lambda1'] == 3.0
        assert config['hyperparams']['T2'] == 10
        assert config['hyperparams']['T1'] == 20
        assert config['hyperparams']['lambda2'] == 0.1
        assert config['experiment']['name'] == 'regression_original-gl'
        assert config['scenario']['lines'] == [[2.0, 1.0], [-1.0, 3.0]]

    def test_classification_defaults(self):
        config = ConfigDefaults.apply_defaults({'experiment': {'task': 'classification'}})

        assert config['hyperparams']['T1'] == 400
        assert config['training']['gradient_mode'] == 'analytic'
        assert config['local_fit']['l2_reg'] == 1e-3

    def test_user_values_kept(self):
        """Test : les valeurs fournies ne sont pas écrasées"""
        config = ConfigDefaults.apply_defaults({
            'experiment': {'task': 'regression', 'name': 'mine'},
            'hyperparams': {'T2': 4, 'T1': 5, 'lambda2': 0.5},
            'training': {'epochs': 3},
        })

        assert config['experiment']['name'] == 'mine'
        assert config['hyperparams']['T1'] == 5
        assert config['hyperparams']['lambda2'] == 0.5
        assert config['training']['epochs'] == 3
        assert config['training']['optimizer'] == 'adam'

    def test_defaults_are_copies(self):
        first = ConfigDefaults.apply_defaults({'experiment': {'task': 'regression'}})
        first['experiment']['seeds'].append(99)
        second = ConfigDefaults.apply_defaults({'experiment': {'task': 'regression'}})
        assert second['experiment']['seeds'] == [1, 2, 3, 4, 5]


class TestConfigValidator:
    """Tests pour ConfigValidator"""

    @pytest.fixture
    def valid(self, regression_raw):
        return ConfigDefaults.apply_defaults(regression_raw)

    def test_validate_minimal_valid_config(self, valid):
        """Test : config minimale complétée valide"""
        ConfigValidator.validate(valid)

    def test_missing_section(self, valid):
        del valid['training']
        with pytest.raises(ConfigurationError, match='Sections manquantes'):
            ConfigValidator.validate(valid)

    def test_missing_required_field(self, valid):
        del valid['hyperparams']['lambda1']
        with pytest.raises(ConfigurationError, match='lambda1'):
            ConfigValidator.validate(valid)

    @pytest.mark.parametrize('section, field, value', [
        ('experiment', 'task', 'ranking'),
        ('experiment', 'method', 'gossip'),
        ('experiment', 'transport', 'carrier-pigeon'),
        ('experiment', 'n_agents', 1),
        ('experiment', 'seeds', []),
        ('experiment', 'seeds', [1, 1]),
        ('hyperparams', 'lambda2', -0.1),
        ('hyperparams', 'K', 0),
        ('hyperparams', 'T2', 2.5),
        ('hyperparams', 'gamma', 0.0),
        ('local_fit', 'loss_reduction', 'max'),
        ('training', 'gradient_mode', 'autodiff'),
        ('training', 'fd_relative_step', 0.1),
        ('training', 'epochs', True),
    ])
    def test_invalid_values(self, valid, section, field, value):
        valid[section][field] = value
        with pytest.raises(ConfigurationError):
            ConfigValidator.validate(valid)

    def test_dual_ascent_rules(self, valid):
        valid['hyperparams']['dual_ascent']['max_iters'] = 0
        with pytest.raises(ConfigurationError, match='dual_ascent.max_iters'):
            ConfigValidator.validate(valid)

    def test_zero_lambda1_passes(self, valid):
        """Test : lambda1 = 0 accepté ici, rejeté par le solveur"""
        valid['hyperparams']['lambda1'] = 0.0
        ConfigValidator.validate(valid)

    def test_groups_length(self, valid):
        valid['scenario']['groups'] = [0, 1]
        with pytest.raises(ConfigurationError, match='scenario.groups'):
            ConfigValidator.validate(valid)

    def test_seed_overlap(self, valid):
        valid['training']['seeds'] = [1, 101]
        with pytest.raises(ConfigurationError, match='communes'):
            ConfigValidator.validate(valid)


class TestConfigSchema:
    """Tests pour ConfigSchema"""

    def test_supported_values(self):
        assert ConfigSchema.get_supported_task_types() == ['regression', 'classification']
        assert ConfigSchema.get_supported_methods() == ['no-colla', 'original-gl', 'unrolled-gl', 'fixed-colla']
        assert 'memory' in ConfigSchema.get_supported_transports()

    def test_value_range(self):
        assert ConfigSchema.get_value_range('n_agents') == (2, 100)
        assert ConfigSchema.get_value_range('unknown') is None


class TestConfigLoader:
    """Tests pour ConfigLoader"""

    def test_load_yaml_with_overrides(self, temp_dir, regression_raw):
        path = temp_dir / 'config.yaml'
        ConfigLoader.save(regression_raw, path)

        config = ConfigLoader.load(path, {'method': 'fixed-colla', 'workers': None})

        assert config['experiment']['method'] == 'fixed-colla'
        assert config['experiment']['workers'] == 1

    def test_json_round_trip(self, temp_dir, regression_raw):
        path = temp_dir / 'config.json'
        ConfigLoader.save(regression_raw, path)
        assert ConfigLoader.read(path) == regression_raw

    def test_missing_file(self, temp_dir):
        with pytest.raises(ArtifactIOError):
            ConfigLoader.read(temp_dir / 'absent.yaml')

    def test_unsupported_format(self, temp_dir):
        path = temp_dir / 'config.toml'
        path.write_text('x = 1', encoding='utf-8')
        with pytest.raises(ConfigurationError, match='non supporté'):
            ConfigLoader.read(path)

    def test_malformed_yaml(self, temp_dir):
        path = temp_dir / 'config.yaml'
        path.write_text('experiment: [unclosed', encoding='utf-8')
        with pytest.raises(ConfigurationError, match='mal formée'):
            ConfigLoader.read(path)

    def test_load_experiment_from_overrides_only(self):
        config = ConfigLoader.load_experiment(task='regression', n_agents=4)

        assert isinstance(config, ExperimentConfig)
        assert config.n_agents == 4
        assert config.hyperparams.T1 == 20

    @pytest.mark.parametrize('name', ['regression.yaml', 'classification.yaml'])
    def test_shipped_configs_are_valid(self, name):
        config = ConfigLoader.load_experiment(CONFIG_DIR / name)
        assert config.task == name.split('.')[0]


class TestExperimentConfig:
    """Tests pour la vue typée et l'empreinte"""

    def test_typed_view(self, regression_config):
        assert regression_config.n_agents == 6
        assert regression_config.hyperparams.T1 == 6
        assert regression_config.hyperparams.effective_stepsize == pytest.approx(1.5)
        assert regression_config.task_params['loss_reduction'] == 'mean'

    def test_classification_local_classes(self, classification_config):
        """Test : classes locales = n_classes / n_groups"""
        assert classification_config.task_params['n_classes'] == 2
        assert classification_config.task_params['n_features'] == 3

    def test_digest_ignores_execution_fields(self, regression_config):
        other = regression_config.with_overrides(workers=4, output_dir='/elsewhere', name='renamed')
        assert other.digest == regression_config.digest

    def test_digest_tracks_hyperparams(self, regression_config):
        raw = regression_config.to_dict()
        raw['hyperparams']['lambda2'] = 0.2
        assert config_digest(raw) != regression_config.digest

    def test_digest_rounds_floats(self):
        """Test : 12 chiffres significatifs"""
        a = {'experiment': {}, 'hyperparams': {'lambda1': 0.1 + 0.2}}
        b = {'experiment': {}, 'hyperparams': {'lambda1': 0.3}}
        assert config_digest(a) == config_digest(b)
        assert normalize_config(a)['hyperparams']['lambda1'] == 0.3

    def test_invalid_view(self, regression_config):
        raw = regression_config.to_dict()
        raw['experiment']['task'] = 'ranking'
        with pytest.raises(ConfigurationError):
            ExperimentConfig.from_dict(raw)

    def test_view_is_frozen(self, regression_config):
        with pytest.raises(TypeError):
            regression_config.scenario['noise'] = 2.0
        snapshot = regression_config.to_dict()
        snapshot['scenario']['noise'] = 2.0
        assert regression_config.scenario['noise'] == 1.0
