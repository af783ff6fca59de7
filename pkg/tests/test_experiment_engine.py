import json
import math
import os

import numpy as np
import pytest

from ihtgap.core.experiment_engine import ExperimentEngine
from ihtgap.exceptions import InvalidParameterError, SweepError
from ihtgap.models.experiment_config import ExperimentConfig, ExperimentKind
from ihtgap.models.result_row import ResultRow, SummaryRow


def small_config(**overrides) -> ExperimentConfig:
    values = dict(name="small", kind="LinearWhiteBox", p=50, n_over_p=[0.6, 1.0], k=[5, 10],
                  sigma_or_r=[1.0], k_bar=5, replicates=3, base_seed=7)
    values.update(overrides)
    return ExperimentConfig(**values)


def make_row(gap: float, n: int = 10, k: int = 2, excess=None, replicate: int = 0) -> ResultRow:
    return ResultRow(experiment="LinearWhiteBox", replicate=replicate, n=n, k=k, sigma_or_r=1.0, seed=0,
                     empirical_risk=1.0, population_risk=1.0 + gap, generalization_gap=gap,
                     excess_risk=excess, iters_run=1, support_size=k, min_ht_margin=0.1)


def summary_row(n: int, k: int, gap_mean: float) -> SummaryRow:
    return SummaryRow(experiment="LinearWhiteBox", n=n, k=k, sigma_or_r=1.0, count=1, gap_mean=gap_mean, gap_std=0.0)


def test_rows_come_in_grid_order():
    config = small_config()
    rows = ExperimentEngine().run_sweep(config)
    assert len(rows) == config.expected_rows == 12
    expected = [(n, k, rep) for n in (30, 50) for k in (5, 10) for rep in range(3)]
    assert [(row.n, row.k, row.replicate) for row in rows] == expected
    for row in rows:
        assert row.generalization_gap == row.population_risk - row.empirical_risk
        assert row.excess_risk >= 0
        assert row.support_size <= row.k
        assert row.wall_time_ms == 0.0


def test_single_grid_point_gives_one_row():
    rows = ExperimentEngine().run_sweep(small_config(n_over_p=[1.0], k=[5], replicates=1))
    assert len(rows) == 1


def test_thread_count_does_not_change_results(tmp_path):
    config = small_config()
    serial = ExperimentEngine(threads=1).run_experiment(config, str(tmp_path / "serial"))
    parallel = ExperimentEngine(threads=4).run_experiment(config, str(tmp_path / "parallel"))
    with open(serial.csv_path, "rb") as a, open(parallel.csv_path, "rb") as b:
        assert a.read() == b.read()


def test_timing_is_recorded_on_request():
    rows = ExperimentEngine().run_sweep(small_config(n_over_p=[1.0], k=[5], replicates=2, record_timing=True))
    assert all(row.wall_time_ms > 0 for row in rows)


def test_noise_grid_shares_one_truth():
    truths = ExperimentEngine().ground_truths(small_config(sigma_or_r=[0.1, 1.0]))
    assert np.array_equal(truths[(0.1, 5)].w_bar, truths[(1.0, 5)].w_bar)
    assert truths[(0.1, 5)].noise_sigma == 0.1


def test_signal_strength_grid_scales_one_vector():
    config = small_config(kind="SignalStrength", k=[5], sigma_or_r=[1.0, 4.0], noise_sigma=0.5)
    truths = ExperimentEngine().ground_truths(config)
    np.testing.assert_allclose(truths[(4.0, 5)].w_bar, 4.0 * truths[(1.0, 5)].w_bar, rtol=1e-15)
    assert truths[(4.0, 5)].noise_sigma == 0.5


def test_sparsity_invariance_plants_k_nonzeros():
    config = small_config(kind="SparsityInvariance", k=[5, 10], perturb_sigma=0.0)
    truths = ExperimentEngine().ground_truths(config)
    assert np.count_nonzero(truths[(1.0, 5)].w_bar) == 5
    assert np.count_nonzero(truths[(1.0, 10)].w_bar) == 10


def test_logistic_black_box_has_no_excess_risk():
    config = small_config(kind="LogisticBlackBox", p=20, n_over_p=[2.0], k=[3], k_bar=3, replicates=2,
                          mc_samples=500)
    rows = ExperimentEngine().run_sweep(config)
    assert all(row.excess_risk is None for row in rows)
    assert all(row.generalization_gap == row.population_risk - row.empirical_risk for row in rows)


def test_failing_task_names_its_replicate():
    config = small_config(p=10, n_over_p=[3.0], k=[10], k_bar=2, replicates=1, step_size=1e3)
    with pytest.raises(SweepError) as excinfo:
        ExperimentEngine().run_sweep(config)
    assert "replicate 0" in str(excinfo.value)
    assert "n=30" in str(excinfo.value)


def test_summarize_identical_rows():
    summary = ExperimentEngine().summarize([make_row(0.5, replicate=r) for r in range(4)])
    assert len(summary) == 1
    assert summary[0].count == 4
    assert summary[0].gap_mean == pytest.approx(0.5)
    assert summary[0].gap_std == pytest.approx(0.0, abs=1e-15)
    assert summary[0].excess_mean is None and summary[0].excess_std is None


def test_summarize_mean_and_sample_std():
    rows = [make_row(1.0, excess=0.2), make_row(3.0, excess=0.4, replicate=1), make_row(7.0, n=20)]
    summary = ExperimentEngine().summarize(rows)
    assert [row.n for row in summary] == [10, 20]
    assert summary[0].gap_mean == pytest.approx(2.0)
    assert summary[0].gap_std == pytest.approx(math.sqrt(2.0))
    assert summary[0].excess_mean == pytest.approx(0.3)
    assert summary[1].count == 1 and summary[1].gap_std == 0.0


def test_summarize_rejects_empty_input():
    with pytest.raises(InvalidParameterError):
        ExperimentEngine().summarize([])


def test_overlays_meet_the_series_at_the_largest_n():
    config = small_config()
    summary = [summary_row(100, 5, 0.8), summary_row(200, 5, 0.3),
               summary_row(100, 10, 0.5), summary_row(200, 10, -0.1)]
    overlays = ExperimentEngine().overlays(config, summary)
    assert len(overlays) == 1
    curve = overlays[0]
    assert curve.n_values == [100, 200]
    assert curve.values[-1] == pytest.approx(0.3)
    # white-box rate is proportional to 1/n
    assert curve.values[0] == pytest.approx(0.6)


def test_engine_rejects_zero_threads():
    with pytest.raises(InvalidParameterError):
        ExperimentEngine(threads=0)


def test_run_experiment_writes_every_output(tmp_path):
    outputs = ExperimentEngine().run_experiment(small_config(replicates=2), str(tmp_path))
    assert outputs.csv_path == os.path.join(str(tmp_path), "small.csv")
    assert [os.path.basename(path) for path in outputs.plot_paths] == ["small_gap.svg", "small_excess.svg"]
    assert all(os.path.isfile(path) for path in outputs.plot_paths)
    with open(outputs.metadata_path, encoding="utf-8") as f:
        metadata = json.load(f)
    assert metadata["rows"] == len(outputs.rows) == 8
    assert metadata["config"]["kind"] == ExperimentKind.LINEAR_WHITE_BOX.value
