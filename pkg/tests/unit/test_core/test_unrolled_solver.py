"""
Tests unitaires pour le graph learning déroulé et sa rétropropagation
"""
import pytest
import numpy as np

from core.data.collab_types import ImportanceDiag
from core.data.distances import distance_matrix
from core.errors import ConfigurationError, DimensionError
from core.solver.unrolled_solver import (
    UnrolledModel,
    distance_grad_to_params,
    unrolled_backward,
    unrolled_forward,
    unrolled_trace,
)

EPS = 1e-6


@pytest.fixture
def problem():
    """D (M=3, N=5) pour l'agent 2, diagonale P et gradient amont"""
    rng = np.random.default_rng(3)
    D = rng.uniform(0.0, 1.0, (3, 5))
    D[:, 2] = 0.0
    diag = rng.uniform(0.1, 0.5, 3)
    grad_output = rng.standard_normal(5)
    return D, diag, grad_output


def _objective(D, diag, grad_output, K=3):
    return float(grad_output @ unrolled_trace(D, 2, diag, K).output)


class TestUnrolledForward:
    """Tests pour la passe avant"""

    def test_output_on_simplex(self, problem, assert_on_simplex):
        D, diag, _ = problem
        w = unrolled_forward(D, 2, UnrolledModel(P=ImportanceDiag(diag), K=5))

        assert_on_simplex(w.weights, 2, tol=1e-12)
        assert not w.degenerate

    def test_zero_distances_keep_uniform(self):
        """Test : D = 0 laisse l'initialisation uniforme inchangée"""
        w = unrolled_forward(np.zeros((2, 4)), 0, UnrolledModel(P=ImportanceDiag.constant(2, 1.0), K=4))
        assert np.allclose(w.weights, [0.0, 1 / 3, 1 / 3, 1 / 3])

    def test_distant_agent_loses_weight(self):
        """Test : l'agent le plus éloigné reçoit le poids le plus faible"""
        D = np.array([[0.0, 0.1, 0.2, 3.0]])
        w = unrolled_forward(D, 0, UnrolledModel(P=ImportanceDiag.constant(1, 0.5), K=10))

        assert w.weights[3] < w.weights[2] < w.weights[1]

    def test_trace_keeps_k_iterates(self, problem):
        D, diag, _ = problem
        trace = unrolled_trace(D, 2, diag, 4)

        assert len(trace.projected) == 4
        assert len(trace.iterates) == 5

    def test_shape_mismatch(self, problem):
        D, _, _ = problem
        with pytest.raises(DimensionError):
            unrolled_trace(D, 2, np.ones(2), 3)

    def test_invalid_k(self):
        with pytest.raises(ConfigurationError):
            UnrolledModel(P=ImportanceDiag.constant(2, 1.0), K=0)


class TestUnrolledBackward:
    """Tests des gradients contre des différences finies centrées"""

    def test_grad_wrt_diag(self, problem):
        """Test : dL/dP analytique = différences finies"""
        D, diag, g = problem
        grad_P, _ = unrolled_backward(unrolled_trace(D, 2, diag, 3), g)

        numeric = np.zeros_like(diag)
        for m in range(diag.shape[0]):
            step = np.zeros_like(diag)
            step[m] = EPS
            numeric[m] = (_objective(D, diag + step, g) - _objective(D, diag - step, g)) / (2 * EPS)

        assert np.allclose(grad_P, numeric, rtol=1e-4, atol=1e-7)

    def test_grad_wrt_distances(self, problem):
        """Test : dL/dD analytique = différences finies"""
        D, diag, g = problem
        _, grad_D = unrolled_backward(unrolled_trace(D, 2, diag, 3), g)

        numeric = np.zeros_like(D)
        for index in np.ndindex(*D.shape):
            step = np.zeros_like(D)
            step[index] = EPS
            numeric[index] = (_objective(D + step, diag, g) - _objective(D - step, diag, g)) / (2 * EPS)

        assert np.allclose(grad_D, numeric, rtol=1e-4, atol=1e-7)

    def test_degenerate_trace_has_zero_gradient(self, problem):
        D, diag, g = problem
        trace = unrolled_trace(D, 2, diag, 3)
        trace.degenerate = True

        grad_P, grad_D = unrolled_backward(trace, g)
        assert not grad_P.any()
        assert not grad_D.any()


class TestDistanceChainRule:
    """Tests pour distance_grad_to_params"""

    def test_matches_finite_differences(self):
        """Test : chaîne D_i -> Theta conforme aux différences finies"""
        rng = np.random.default_rng(5)
        theta = rng.standard_normal((4, 3))
        upstream = rng.standard_normal((3, 4))

        def objective(values):
            return float(np.sum(upstream * distance_matrix(values, 1)))

        analytic = distance_grad_to_params(theta, 1, upstream)
        numeric = np.zeros_like(theta)
        for index in np.ndindex(*theta.shape):
            step = np.zeros_like(theta)
            step[index] = EPS
            numeric[index] = (objective(theta + step) - objective(theta - step)) / (2 * EPS)

        assert analytic.shape == theta.shape
        assert np.allclose(analytic, numeric, rtol=1e-6, atol=1e-8)
