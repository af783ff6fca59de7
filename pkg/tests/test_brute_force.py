import numpy as np
import pytest

from conftest import orthonormal_design, sparse_vector, squared_problem
from ihtgap.exceptions import CombinatorialCapError, InvalidParameterError
from ihtgap.models.iht_params import IhtParams
from ihtgap.solvers import brute_force_l0_erm, iht_solve


def test_recovers_planted_support(rng):
    X = rng.standard_normal((8, 4))
    w_bar = np.array([1.0, -2.0, 0.0, 0.0])
    report = brute_force_l0_erm(squared_problem(X, X @ w_bar), 2)
    assert report.support.indices == (0, 1)
    assert report.objective == pytest.approx(0.0, abs=1e-20)
    np.testing.assert_allclose(report.solution, w_bar, atol=1e-10)
    assert report.converged and report.iters_run == 0


def test_full_support_is_least_squares(rng):
    X = rng.standard_normal((12, 5))
    y = rng.standard_normal(12)
    report = brute_force_l0_erm(squared_problem(X, y), 5)
    expected, *_ = np.linalg.lstsq(X, y, rcond=None)
    np.testing.assert_allclose(report.solution, expected, atol=1e-10)


def test_caps(rng):
    with pytest.raises(CombinatorialCapError):
        brute_force_l0_erm(squared_problem(rng.standard_normal((60, 30)), rng.standard_normal(60)), 2)
    with pytest.raises(CombinatorialCapError):
        brute_force_l0_erm(squared_problem(rng.standard_normal((5, 25)), rng.standard_normal(5)), 12, p_cap=30)
    with pytest.raises(InvalidParameterError):
        brute_force_l0_erm(squared_problem(rng.standard_normal((5, 3)), rng.standard_normal(5)), 0)


def test_ties_go_to_the_lexicographically_smallest_support():
    X = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    report = brute_force_l0_erm(squared_problem(X, [1.0, 0.0]), 1)
    assert report.support.indices == (0,)


def test_dominates_debiased_iht(rng):
    for _ in range(20):
        p = int(rng.integers(3, 9))
        n = int(rng.integers(p, 3 * p))
        k = int(rng.integers(1, 4))
        X = rng.standard_normal((n, p))
        problem = squared_problem(X, X @ sparse_vector(rng, p, min(k, p)) + rng.standard_normal(n))
        oracle = brute_force_l0_erm(problem, k)
        assert oracle.objective <= iht_solve(problem, IhtParams(k=k)).debiased_objective + 1e-12


def test_matches_iht_on_noiseless_orthonormal_designs(rng):
    for _ in range(50):
        p = int(rng.integers(4, 11))
        k = int(rng.integers(1, 4))
        X = orthonormal_design(rng, 4 * p, p)
        problem = squared_problem(X, X @ sparse_vector(rng, p, k))
        oracle = brute_force_l0_erm(problem, k)
        report = iht_solve(problem, IhtParams(k=k))
        assert abs(report.debiased_objective - oracle.objective) <= 1e-8
        assert report.support == oracle.support
