import math

import numpy as np
import pytest

from conftest import logistic_problem, squared_problem
from ihtgap.analyzers.risk_analyzer import (
    bound_curve,
    estimation_error_bound,
    risk_report,
    strong_signal_check,
    theory_bound,
)
from ihtgap.core.losses import empirical_risk, population_risk_linear
from ihtgap.exceptions import InvalidParameterError
from ihtgap.models.bound_curve import BoundKind
from ihtgap.models.ground_truth import CovarianceSpec, GroundTruth, ModelKind
from ihtgap.models.risk_report import ExcessMode, PopulationMode, RiskReport


@pytest.fixture
def linear_setup(rng):
    w_bar = np.array([2.0, -1.0, 0.0, 0.5, 0.0])
    truth = GroundTruth(w_bar=w_bar, noise_sigma=0.5)
    X = rng.standard_normal((40, 5))
    return squared_problem(X, X @ w_bar + 0.5 * rng.standard_normal(40)), truth


def test_white_box_excess_and_exact_gap(linear_setup, rng):
    problem, truth = linear_setup
    w = truth.w_bar + np.array([1.0, 0.0, 0.0, 0.0, 0.0])
    report = risk_report(problem, w, truth, excess_mode=ExcessMode.WHITE_BOX_LINEAR)
    assert report.excess_risk == pytest.approx(0.5)
    assert report.empirical_risk == empirical_risk(problem, w)
    assert report.population_risk == population_risk_linear(w, truth)
    assert report.generalization_gap == report.population_risk - report.empirical_risk
    assert report.population_std_error is None


def test_white_box_excess_uses_the_covariance(linear_setup):
    problem, _ = linear_setup
    truth = GroundTruth(w_bar=np.zeros(5), covariance=CovarianceSpec.diagonal([4.0, 1.0, 1.0, 1.0, 1.0]))
    report = risk_report(problem, [1.0, 0.0, 0.0, 0.0, 0.0], truth, excess_mode=ExcessMode.WHITE_BOX_LINEAR)
    assert report.excess_risk == pytest.approx(2.0)


def test_black_box_excess(linear_setup):
    problem, truth = linear_setup
    w = np.array([2.0, -1.0, 0.0, 0.0, 0.0])
    report = risk_report(problem, w, truth, excess_mode=ExcessMode.BLACK_BOX_LINEAR, k=2)
    # H_2(w_bar) = w itself
    assert report.excess_risk == pytest.approx(0.0, abs=1e-15)

    white = risk_report(problem, w, truth, excess_mode=ExcessMode.WHITE_BOX_LINEAR)
    black = risk_report(problem, w, truth, excess_mode=ExcessMode.BLACK_BOX_LINEAR, k=3)
    assert black.excess_risk == pytest.approx(white.excess_risk, abs=1e-15)


def test_black_box_needs_k(linear_setup):
    problem, truth = linear_setup
    with pytest.raises(InvalidParameterError):
        risk_report(problem, np.zeros(5), truth, excess_mode=ExcessMode.BLACK_BOX_LINEAR)


def test_monte_carlo_excess_is_zero_at_the_truth(rng, seed):
    truth = GroundTruth(w_bar=[1.0, 0.0, -1.0], model_kind=ModelKind.LOGISTIC)
    X = rng.standard_normal((30, 3))
    problem = logistic_problem(X, rng.choice([-1.0, 1.0], size=30))
    report = risk_report(problem, truth.w_bar, truth, population_mode=PopulationMode.MONTE_CARLO,
                         excess_mode=ExcessMode.WHITE_BOX_MC, seed=seed, mc_samples=2000)
    assert report.excess_risk == 0.0
    assert report.population_std_error > 0
    assert report.generalization_gap == report.population_risk - report.empirical_risk


def test_monte_carlo_population_risk_tracks_closed_form(linear_setup, seed):
    problem, truth = linear_setup
    w = np.array([1.5, -1.0, 0.2, 0.5, 0.0])
    exact = risk_report(problem, w, truth)
    estimate = risk_report(problem, w, truth, population_mode=PopulationMode.MONTE_CARLO,
                           seed=seed, mc_samples=50_000)
    assert abs(estimate.population_risk - exact.population_risk) <= 4 * estimate.population_std_error
    assert estimate.excess_risk is None


def test_mode_mismatches_are_rejected(rng, linear_setup, seed):
    truth = GroundTruth(w_bar=[1.0, 0.0], model_kind=ModelKind.LOGISTIC)
    problem = logistic_problem(rng.standard_normal((10, 2)), rng.choice([-1.0, 1.0], size=10))
    with pytest.raises(InvalidParameterError):
        risk_report(problem, np.zeros(2), truth)
    with pytest.raises(InvalidParameterError):
        risk_report(problem, np.zeros(2), truth, population_mode=PopulationMode.MONTE_CARLO,
                    excess_mode=ExcessMode.WHITE_BOX_LINEAR, seed=seed)
    linear_problem, linear_truth = linear_setup
    with pytest.raises(InvalidParameterError):
        risk_report(linear_problem, np.zeros(5), linear_truth, population_mode=PopulationMode.MONTE_CARLO)


def test_risk_report_rejects_inconsistent_gap():
    with pytest.raises(ValueError):
        RiskReport(empirical_risk=1.0, population_risk=2.0, generalization_gap=0.5)


def test_theory_bound_examples():
    assert theory_bound(BoundKind.WHITE_BOX, k=10, p=1000, n=50) == pytest.approx(1.381551056, rel=1e-9)
    assert theory_bound(BoundKind.UNIFORM, k=10, p=1000, n=100) == pytest.approx(
        math.sqrt(10 * math.log(1000) / 100), rel=1e-12)
    assert theory_bound(BoundKind.STRONG_SIGNAL, k=10, p=1000, n=100) == pytest.approx(math.log(100) / 10)
    assert theory_bound("whitebox", k=10, p=1000, n=50, sigma=2.0, L=2.0, mu=2.0, constant=3.0) == pytest.approx(
        3.0 * 0.5 * 10 * 4.0 * math.log(1000) / 50)


@pytest.mark.parametrize("kind", list(BoundKind))
def test_theory_bound_decreases_when_n_doubles(kind):
    for n in [8, 50, 400, 3000]:
        assert theory_bound(kind, k=5, p=200, n=2 * n) < theory_bound(kind, k=5, p=200, n=n)


def test_theory_bound_with_confidence_level():
    assert theory_bound(BoundKind.WHITE_BOX, k=1, p=10, n=10, delta=0.1) == pytest.approx(math.log(100) / 10)
    assert theory_bound(BoundKind.UNIFORM, k=1, p=10, n=10, delta=0.1) == pytest.approx(
        math.sqrt((math.log(10) + math.log(10)) / 10))
    assert theory_bound(BoundKind.STRONG_SIGNAL, k=1, p=10, n=10, delta=0.1) == pytest.approx(
        math.sqrt(math.log(10) * math.log(100) / 10))


@pytest.mark.parametrize("params", [
    dict(k=0, p=10, n=10),
    dict(k=1, p=0, n=10),
    dict(k=1, p=10, n=1),
    dict(k=1, p=10, n=10, mu=0.0),
    dict(k=1, p=10, n=10, delta=1.0),
    dict(k=1, p=10, n=math.inf),
])
def test_theory_bound_rejects_bad_inputs(params):
    with pytest.raises(InvalidParameterError):
        theory_bound(BoundKind.WHITE_BOX, **params)


def test_white_box_bound_monotonicity():
    base = dict(k=10, p=1000, n=500, sigma=1.0)
    value = theory_bound(BoundKind.WHITE_BOX, **base)
    assert theory_bound(BoundKind.WHITE_BOX, **{**base, "n": 1000}) < value
    assert theory_bound(BoundKind.WHITE_BOX, **{**base, "k": 20}) > value
    assert theory_bound(BoundKind.WHITE_BOX, **{**base, "sigma": 2.0}) > value


def test_bound_curve_is_sorted_and_labelled():
    curve = bound_curve(BoundKind.UNIFORM, [400, 100, 200, 100], k=5, p=100)
    assert curve.n_values == [100, 200, 400]
    assert curve.values == [theory_bound(BoundKind.UNIFORM, k=5, p=100, n=n) for n in (100, 200, 400)]
    assert curve.label == "uniform bound"
    assert bound_curve("whitebox", [10], label="rate", k=1, p=10).label == "rate"


def test_estimation_error_bound_holds_for_quadratics(rng):
    for _ in range(50):
        p, s = 6, 2
        B = rng.standard_normal((p, p))
        A = B @ B.T + 0.5 * np.eye(p)
        mu = float(np.linalg.eigvalsh(A)[0])
        center = rng.standard_normal(p)
        support = rng.choice(p, size=s, replace=False)
        # exact minimizer of 0.5 (w - center)' A (w - center) restricted to `support`
        w_hat = np.zeros(p)
        w_hat[support] = np.linalg.solve(A[np.ix_(support, support)], (A @ center)[support])
        w_ref = np.zeros(p)
        w_ref[support] = rng.standard_normal(s)
        grad_ref = A @ (w_ref - center)
        bound = estimation_error_bound(float(np.max(np.abs(grad_ref))), s, mu)
        assert np.linalg.norm(w_hat - w_ref) <= bound + 1e-9


def test_estimation_error_bound_formula_and_errors():
    assert estimation_error_bound(0.5, 4, 2.0, epsilon=1.0) == pytest.approx(2 * 2 * 0.5 / 2 + 1.0)
    with pytest.raises(InvalidParameterError):
        estimation_error_bound(-1.0, 4, 2.0)
    with pytest.raises(InvalidParameterError):
        estimation_error_bound(1.0, 4, 0.0)


def test_strong_signal_check():
    check = strong_signal_check(w_min=1.0, k=2, mu=1.0, G=1.0, n=1000, p=100, delta=0.05)
    expected = 2.0 * math.sqrt(2 * 2 * math.log(2 * 100 / 0.05) / 2000)
    assert check.threshold == pytest.approx(expected)
    assert check.satisfied == (1.0 > expected)
    assert not strong_signal_check(w_min=0.01, k=2, mu=1.0, G=1.0, n=10, p=100, delta=0.05).satisfied
    with pytest.raises(InvalidParameterError):
        strong_signal_check(w_min=1.0, k=2, mu=1.0, G=1.0, n=10, p=100, delta=0.0)
