import math

import numpy as np
import pytest

from conftest import sparse_vector
from ihtgap.analyzers.stability_analyzer import (
    gradient_concentration_check,
    iht_stability_certificate,
    required_sample_size,
    support_stability_experiment,
)
from ihtgap.core.vectors import smallest_nonzero_magnitude
from ihtgap.exceptions import InvalidParameterError, SweepError
from ihtgap.models.ground_truth import GroundTruth, ModelKind
from ihtgap.models.iht_params import IhtParams


def test_gradient_concentration_at_the_truth(rng, seed):
    truth = GroundTruth(w_bar=sparse_vector(rng, 200, 10), noise_sigma=1.0)
    result = gradient_concentration_check(truth, 500, 200, 0.05, seed)
    assert result.bound == pytest.approx(math.sqrt(2 * math.log(200 / 0.05) / 500))
    assert result.passed
    assert result.empirical_quantile <= result.bound


def test_gradient_concentration_without_noise(rng, seed):
    truth = GroundTruth(w_bar=sparse_vector(rng, 20, 3), noise_sigma=0.0)
    result = gradient_concentration_check(truth, 50, 20, 0.1, seed)
    assert result.empirical_quantile == pytest.approx(0.0, abs=1e-12)
    assert result.bound == 0.0


def test_concentration_bound_halves_when_n_quadruples(seed):
    truth = GroundTruth(w_bar=np.zeros(10), noise_sigma=2.0)
    small = gradient_concentration_check(truth, 100, 20, 0.05, seed)
    large = gradient_concentration_check(truth, 400, 20, 0.05, seed)
    assert large.bound == pytest.approx(small.bound / 2)


def test_gradient_concentration_rejects_bad_inputs(seed):
    truth = GroundTruth(w_bar=np.zeros(5))
    with pytest.raises(InvalidParameterError):
        gradient_concentration_check(truth, 10, 19, 0.05, seed)
    with pytest.raises(InvalidParameterError):
        gradient_concentration_check(truth, 10, 20, 1.5, seed)
    with pytest.raises(InvalidParameterError):
        gradient_concentration_check(GroundTruth(w_bar=np.zeros(5), model_kind=ModelKind.LOGISTIC), 10, 20, 0.05, seed)


def test_identical_replacement_is_perfectly_stable(rng, seed):
    truth = GroundTruth(w_bar=sparse_vector(rng, 30, 3), noise_sigma=0.5)
    report = support_stability_experiment(truth, n=40, k=3, trials=4, seed=seed, identical_replacement=True,
                                          eval_samples=500)
    assert report.support_agreement_rate == 1.0
    assert report.max_loss_discrepancy == 0.0


def test_stability_report_structure(rng, seed):
    truth = GroundTruth(w_bar=sparse_vector(rng, 30, 3), noise_sigma=0.5)
    report = support_stability_experiment(truth, n=40, k=5, trials=6, seed=seed, eval_samples=500)
    assert report.n_trials == 6
    assert len(report.ht_margins) == len(report.loss_discrepancies) == 6
    assert 0.0 <= report.support_agreement_rate <= 1.0
    assert report.max_loss_discrepancy == max(report.loss_discrepancies)
    assert all(margin >= 0 for margin in report.ht_margins)


def test_stability_experiment_is_reproducible(rng, seed):
    truth = GroundTruth(w_bar=sparse_vector(rng, 20, 2, scale=0.3), model_kind=ModelKind.LOGISTIC)
    first = support_stability_experiment(truth, n=60, k=2, trials=3, seed=seed, eval_samples=200)
    second = support_stability_experiment(truth, n=60, k=2, trials=3, seed=seed, eval_samples=200)
    assert first == second


def test_failed_trial_is_named(rng, seed):
    truth = GroundTruth(w_bar=sparse_vector(rng, 8, 2), noise_sigma=1.0)
    with pytest.raises(SweepError) as excinfo:
        support_stability_experiment(truth, n=30, k=8, trials=3, seed=seed,
                                     params=IhtParams(k=8, step_size=1e3), eval_samples=100)
    assert "trial 0" in str(excinfo.value)


def test_required_sample_size():
    assert required_sample_size(0.0, 1.0, 1.0, 1.0, 10, 5, 0.05) == math.inf
    assert required_sample_size(math.inf, 1.0, 1.0, 1.0, 10, 5, 0.05) == 0.0
    expected = 2 * 4.0 * 9.0 * math.log(10 * 5 / 0.05) / (4.0 * 1.0 * 0.25)
    assert required_sample_size(0.5, 2.0, 2.0, 1.0, 10, 5, 0.05) == pytest.approx(expected)
    with pytest.raises(InvalidParameterError):
        required_sample_size(0.5, 1.0, 0.0, 1.0, 10, 5, 0.05)
    with pytest.raises(InvalidParameterError):
        required_sample_size(0.5, 1.0, 1.0, 1.0, 10, 5, 0.0)


def test_certificate_scales_with_signal_strength(rng):
    w_bar = sparse_vector(rng, 40, 5)
    params = IhtParams(k=5, step_size=0.5, max_iters=30)
    weak = iht_stability_certificate(GroundTruth(w_bar=w_bar), params)
    strong = iht_stability_certificate(GroundTruth(w_bar=2 * w_bar), params)
    assert weak.epsilon_k == pytest.approx(0.5 * smallest_nonzero_magnitude(w_bar), abs=1e-12)
    assert strong.epsilon_k == pytest.approx(2 * weak.epsilon_k)
    n_weak = weak.required_sample_size(1.0, 1.0, 1.0, 40, 30, 0.05)
    n_strong = strong.required_sample_size(1.0, 1.0, 1.0, 40, 30, 0.05)
    assert n_strong == pytest.approx(n_weak / 4)


def test_certificate_for_tied_truth_is_vacuous():
    certificate = iht_stability_certificate(GroundTruth(w_bar=[1.0, 1.0, 1.0, 0.0, 0.0]),
                                            IhtParams(k=2, step_size=0.5, max_iters=10))
    assert certificate.epsilon_k == 0.0
    assert certificate.required_sample_size(1.0, 1.0, 1.0, 5, 10, 0.05) == math.inf


def test_certificate_needs_linear_truth():
    with pytest.raises(InvalidParameterError):
        iht_stability_certificate(GroundTruth(w_bar=[1.0, 0.0], model_kind=ModelKind.LOGISTIC), IhtParams(k=1))
