"""
Tests unitaires pour les générateurs de scénarios
"""
import copy

import pytest
import numpy as np

from sklearn.linear_model import LogisticRegression

from core.data.collab_types import GroupAssignment
from core.errors import ConfigurationError, DimensionError, EmptyDatasetError
from core.data.task_dataset import TaskDataset, dataset_digest
from core.scenarios import (
    ClassificationScenario,
    RegressionScenario,
    class_means,
    export_features,
    gen_classification,
    gen_regression,
    generate_scenario,
)
from tests.conftest import SMALL_CLASSIFICATION, build_config


class TestTaskDataset:
    """Tests pour TaskDataset"""

    def test_vector_inputs_become_column(self):
        dataset = TaskDataset(inputs=np.arange(4.0), targets=np.zeros(4))
        assert dataset.inputs.shape == (4, 1)
        assert len(dataset) == 4

    def test_empty_dataset(self):
        with pytest.raises(EmptyDatasetError):
            TaskDataset(inputs=np.zeros((0, 2)), targets=np.zeros(0))

    def test_length_mismatch(self):
        with pytest.raises(DimensionError):
            TaskDataset(inputs=np.zeros((3, 2)), targets=np.zeros(2))


# ====================================
# Régression
# ====================================

class TestRegressionScenario:
    """Tests pour gen_regression"""

    def test_same_seed_same_data(self):
        """Test : une graine donne des données identiques"""
        scenario = RegressionScenario(n_agents=6, samples_per_agent=20)
        assert gen_regression(scenario, 4).digest() == gen_regression(scenario, 4).digest()
        assert gen_regression(scenario, 4).digest() != gen_regression(scenario, 5).digest()

    def test_truths_follow_groups(self):
        """Test : (k_i, b_i) est la droite du groupe de l'agent"""
        generated = gen_regression(RegressionScenario(n_agents=6, samples_per_agent=20), 1)

        assert generated.groups.group_of == (0, 0, 0, 1, 1, 1)
        assert np.array_equal(generated.truths[0], [2.0, 1.0])
        assert np.array_equal(generated.truths[5], [-1.0, 3.0])
        assert np.allclose(generated.ground_truth[0], [0.0, 0.5, 0.5, 0.0, 0.0, 0.0])

    def test_segments_partition_the_range(self):
        """Test : N segments disjoints couvrant [x_lo, x_hi]"""
        generated = gen_regression(RegressionScenario(n_agents=5, x_range=(0.0, 10.0), groups=GroupAssignment((0, 0, 1, 1, 1))), 2)
        segments = sorted(generated.settings['segments'])

        assert np.allclose([s[0] for s in segments], [0.0, 2.0, 4.0, 6.0, 8.0])
        for dataset, (lo, hi) in zip(generated.datasets, generated.settings['segments']):
            assert np.all((dataset.inputs >= lo) & (dataset.inputs <= hi))

    def test_noise_free_samples_lie_on_line(self):
        generated = gen_regression(RegressionScenario(n_agents=4, noise=0.0, samples_per_agent=10), 3)
        dataset = generated.datasets[3]
        k, b = generated.truths[3]
        assert np.allclose(dataset.targets, k * dataset.inputs[:, 0] + b)

    @pytest.mark.parametrize('kwargs', [
        {'noise': -1.0},
        {'samples_per_agent': 1},
        {'x_range': (1.0, 1.0)},
        {'groups': GroupAssignment((0, 0, 1, 1))},
        {'groups': GroupAssignment((0, 0, 0, 1, 1, 1)), 'lines': ((1.0, 0.0),)},
        {'groups': GroupAssignment((0, 0, 0, 0, 0, 1))},
    ])
    def test_invalid_scenarios(self, kwargs):
        """Test : paramètres incohérents -> ConfigurationError"""
        with pytest.raises(ConfigurationError):
            RegressionScenario(n_agents=6, **kwargs)


# ====================================
# Classification
# ====================================

class TestClassificationScenario:
    """Tests pour gen_classification"""

    def test_local_labels_are_reindexed(self, classification_scenario):
        """Test : étiquettes locales dans [0, C_g)"""
        for dataset in classification_scenario.datasets:
            assert set(np.unique(dataset.targets)) <= {0, 1}
            assert np.unique(dataset.targets).shape[0] >= 2

    def test_sample_sizes_follow_jitter(self, classification_scenario):
        sizes = [len(d) for d in classification_scenario.datasets]
        assert all(35 <= n <= 45 for n in sizes)
        assert classification_scenario.settings['sample_counts'] == sizes

    def test_evaluation_set_is_balanced(self, classification_scenario):
        """Test : eval // C_g échantillons par classe"""
        for dataset in classification_scenario.evaluation:
            assert np.array_equal(np.bincount(dataset.targets), [10, 10])

    def test_class_means_on_sphere(self):
        scenario = ClassificationScenario(n_agents=4, n_features=3, n_classes=4, mean_radius=2.5)
        means = class_means(scenario, 1)

        assert means.shape == (4, 3)
        assert np.allclose(np.linalg.norm(means, axis=1), 2.5)

    def test_groups_draw_from_their_classes(self):
        """Test : les groupes tirent leurs données de moyennes distinctes"""
        scenario = ClassificationScenario(
            n_agents=4, n_features=2, n_classes=4, mean_radius=50.0,
            samples_per_agent=30, samples_jitter=0, eval_samples_per_agent=0,
        )
        generated = gen_classification(scenario, 1)
        means = class_means(scenario, 1)

        first = generated.datasets[0]
        expected = means[np.asarray(scenario.group_classes(0))[first.targets]]
        assert np.all(np.linalg.norm(first.inputs - expected, axis=1) < 10.0)
        assert generated.eval_datasets is None

    def test_pooled_group_classifier_separates_classes(self):
        """Test : un classifieur entraîné sur les données poolées d'un groupe dépasse 0.95"""
        scenario = ClassificationScenario()
        generated = gen_classification(scenario, 1)

        for group in range(scenario.n_groups):
            members = scenario.groups.members(group)
            train = [generated.datasets[i] for i in members]
            held_out = [generated.evaluation[i] for i in members]
            classifier = LogisticRegression(max_iter=2000).fit(
                np.vstack([d.inputs for d in train]), np.concatenate([d.targets for d in train])
            )
            accuracy = classifier.score(
                np.vstack([d.inputs for d in held_out]), np.concatenate([d.targets for d in held_out])
            )
            assert accuracy >= 0.95

    def test_explicit_mixtures(self):
        scenario = ClassificationScenario(
            n_agents=4, n_features=2, n_classes=4, samples_per_agent=40, samples_jitter=0,
            mixtures=((0.5, 0.5),) * 4,
        )
        for dataset in gen_classification(scenario, 2).datasets:
            assert len(dataset) == 40

    @pytest.mark.parametrize('kwargs', [
        {'n_classes': 5},
        {'n_classes': 2},
        {'mixtures': ((0.5, 0.5),) * 3},
        {'mixtures': ((1.0, 0.0),) * 4},
        {'dirichlet_alpha': 0.0},
        {'samples_per_agent': 10, 'samples_jitter': 9},
    ])
    def test_invalid_scenarios(self, kwargs):
        params = {'n_agents': 4, 'n_features': 2, 'n_classes': 4, **kwargs}
        with pytest.raises(ConfigurationError):
            ClassificationScenario(**params)


class TestGenerateScenario:
    """Tests pour generate_scenario"""

    def test_dispatch_by_task(self, regression_config, classification_config):
        assert generate_scenario(regression_config, 1).task_type == 'regression'
        assert generate_scenario(classification_config, 1).n_agents == 4

    def test_feature_files(self, temp_dir, classification_scenario):
        """Test : scenario.features_path remplace le générateur"""
        export_features(classification_scenario.datasets, temp_dir / 'features.csv')
        raw = copy.deepcopy(SMALL_CLASSIFICATION)
        raw['scenario']['features_path'] = str(temp_dir / 'features.csv')

        generated = generate_scenario(build_config(raw, temp_dir), 9)

        assert dataset_digest(generated.datasets) == dataset_digest(classification_scenario.datasets)
        assert generated.eval_datasets is None
        assert [len(d) for d in generated.datasets] == [len(d) for d in classification_scenario.datasets]
        assert generated.groups.group_of == (0, 0, 1, 1)
        assert generated.settings['n_features'] == 3
