"""
Tests unitaires pour LearnerRegistry et les stratégies de graph learning
"""
import pytest
import numpy as np
from unittest.mock import MagicMock

from core.data.collab_types import GroupAssignment, ImportanceDiag
from core.errors import ConfigurationError, DimensionError, MissingDependencyError
from core.registries.learners import LearnerRegistry, METHODS
from core.solver.ground_truth import ground_truth_graph
from core.solver.unrolled_solver import UnrolledModel


@pytest.fixture
def theta():
    """Deux groupes bien séparés de trois agents (M = 2)"""
    return np.array([[2.0, 1.0], [2.1, 1.0], [1.9, 1.1], [-1.0, 3.0], [-1.1, 3.0], [-0.9, 2.9]])


@pytest.fixture
def ground_truth():
    return ground_truth_graph(GroupAssignment.from_blocks([3, 3]))


class TestLearnerRegistry:
    """Tests pour le registre des méthodes"""

    def test_singleton_pattern(self):
        assert LearnerRegistry.get_instance() is LearnerRegistry.get_instance()

    def test_methods(self):
        assert LearnerRegistry.get_instance().list_methods() == list(METHODS)

    def test_create_each_method(self, ground_truth):
        """Test : chaque méthode instancie la stratégie portant son nom"""
        registry = LearnerRegistry.get_instance()
        model = UnrolledModel(P=ImportanceDiag.constant(2, 0.1))
        for method in METHODS:
            learner = registry.create(method, lambda1=1.0, lambda2=0.1, model=model, ground_truth=ground_truth)
            assert learner.method_name == method

    def test_unrolled_requires_model(self):
        """Test : unrolled-gl sans P -> MissingDependencyError"""
        with pytest.raises(MissingDependencyError):
            LearnerRegistry.get_instance().create('unrolled-gl', model=None)

    def test_unknown_method(self):
        with pytest.raises(ConfigurationError, match='not registered'):
            LearnerRegistry.get_instance().create('gossip')

    def test_register_duplicate(self):
        registry = LearnerRegistry()
        with pytest.raises(ConfigurationError, match='already registered'):
            registry.register('no-colla', MagicMock())


class TestStrategies:
    """Tests des quatre stratégies"""

    def test_dual_ascent_finds_groups(self, theta, assert_on_simplex):
        """Test : les poids se concentrent sur le groupe de l'agent"""
        learner = LearnerRegistry.get_instance().create('original-gl', lambda1=0.01, lambda2=1.0)
        w = learner.learn(theta, 0)

        assert_on_simplex(w.weights, 0)
        assert set(w.partners) <= {1, 2}

    def test_unrolled_output_on_simplex(self, theta, assert_on_simplex):
        learner = LearnerRegistry.get_instance().create('unrolled-gl', model=UnrolledModel(P=ImportanceDiag.constant(2, 0.05)))
        w = learner.learn(theta, 4)

        assert_on_simplex(w.weights, 4)
        assert w.weights[3] + w.weights[5] > w.weights[0] + w.weights[1] + w.weights[2]

    def test_unrolled_size_mismatch(self, theta):
        learner = LearnerRegistry.get_instance().create('unrolled-gl', model=UnrolledModel(P=ImportanceDiag.constant(3, 0.05)))
        with pytest.raises(DimensionError):
            learner.learn(theta, 0)

    def test_fixed_returns_ground_truth(self, theta, ground_truth):
        learner = LearnerRegistry.get_instance().create('fixed-colla', ground_truth=ground_truth)
        assert np.array_equal(learner.learn(theta, 4).weights, ground_truth[4])

    def test_fixed_size_mismatch(self, theta, ground_truth):
        learner = LearnerRegistry.get_instance().create('fixed-colla', ground_truth=ground_truth)
        with pytest.raises(DimensionError):
            learner.learn(theta[:4], 0)

    def test_no_collaboration(self, theta):
        learner = LearnerRegistry.get_instance().create('no-colla')

        assert not learner.communicates
        assert not learner.learn(theta, 2).weights.any()
