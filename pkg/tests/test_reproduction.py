"""Desk-scale reproduction runs of the published sweeps. Selected with `pytest -m slow`."""
import numpy as np
import pytest
from scipy import stats

from ihtgap.analyzers.stability_analyzer import support_stability_experiment
from ihtgap.clients.config_loader import load_experiment_config
from ihtgap.core.experiment_engine import ExperimentEngine
from ihtgap.generators.data_generator import gen_ground_truth
from ihtgap.models.ground_truth import ModelKind
from ihtgap.models.seed import Seed
from ihtgap.models.signal_scheme import SignalScheme

pytestmark = pytest.mark.slow

THREADS = 4


def _summary(preset: str, **overrides):
    engine = ExperimentEngine(threads=THREADS)
    config = load_experiment_config(preset, **overrides)
    return config, engine.summarize(engine.run_sweep(config))


def _series(summary, **match):
    rows = [row for row in summary if all(getattr(row, key) == value for key, value in match.items())]
    return sorted(rows, key=lambda row: row.n)


def test_gap_and_excess_shrink_with_n_and_grow_with_k():
    config, summary = _summary("fig1a")
    for k in config.k:
        rows = _series(summary, k=k)
        n = [row.n for row in rows]
        assert stats.spearmanr(n, [row.gap_mean for row in rows]).correlation <= -0.9
        assert stats.spearmanr(n, [row.excess_mean for row in rows]).correlation <= -0.9

    largest = max(config.n_values)
    gaps = [_series(summary, k=k, n=largest)[0].gap_mean for k in sorted(config.k)]
    assert all(later >= earlier for earlier, later in zip(gaps, gaps[1:]))


def test_lower_noise_gives_smaller_gap():
    _, summary = _summary("fig1b")
    quiet = _series(summary, sigma_or_r=0.1)
    loud = _series(summary, sigma_or_r=1.0)
    violations = sum(q.gap_mean > l.gap_mean for q, l in zip(quiet, loud))
    assert violations <= 1


def test_white_box_excess_risk_decays_like_one_over_n():
    config, summary = _summary("fig1a", k=[50])
    rows = _series(summary, k=50)[len(config.n_values) // 2:]
    slope = np.polyfit(np.log([row.n for row in rows]), np.log([row.excess_mean for row in rows]), 1)[0]
    assert -1.35 <= slope <= -0.65


def test_stronger_signal_gives_smaller_gap():
    config, summary = _summary("fig4")
    largest = max(config.n_values)
    gaps = [_series(summary, sigma_or_r=r, n=largest)[0].gap_mean for r in sorted(config.sigma_or_r)]
    assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))


def test_gap_becomes_insensitive_to_k_under_strong_signal():
    config, summary = _summary("fig4b")

    def spread(n):
        gaps = [_series(summary, k=k, n=n)[0].gap_mean for k in config.k]
        return max(gaps) - min(gaps)

    assert spread(max(config.n_values)) <= 0.5 * spread(min(config.n_values))


def test_support_is_stable_under_strong_signal():
    seed = Seed(value=20240101)
    truth = gen_ground_truth(1000, SignalScheme.scaled_fixed(100, 10.0), 1.0, ModelKind.LINEAR, seed.child("truth"))
    report = support_stability_experiment(truth, n=1000, k=100, trials=50, seed=seed.child("stability"))
    assert report.support_agreement_rate >= 0.98


def test_full_sweep_is_deterministic(tmp_path):
    config = load_experiment_config("fig1a")
    serial = ExperimentEngine(threads=1).run_experiment(config, str(tmp_path / "serial"))
    parallel = ExperimentEngine(threads=THREADS).run_experiment(config, str(tmp_path / "parallel"))
    with open(serial.csv_path, "rb") as a, open(parallel.csv_path, "rb") as b:
        assert a.read() == b.read()
