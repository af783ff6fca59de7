"""ExperimentEngine for running generalization-gap sweeps and summarizing them."""
import logging
import os
import time
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from ihtgap import __version__
from ihtgap.analyzers.risk_analyzer import bound_curve, risk_report
from ihtgap.clients.plot_renderer import emit_plot, series_key
from ihtgap.clients.result_writer import emit_csv, rows_to_frame, write_metadata
from ihtgap.config import DEFAULT_THREADS, NORMAL_TRANSFORM, RNG_NAME, get_config_summary
from ihtgap.exceptions import InvalidParameterError, SweepError
from ihtgap.generators.data_generator import gen_dataset, gen_ground_truth
from ihtgap.models.bound_curve import BoundCurve, BoundKind
from ihtgap.models.experiment_config import ExperimentConfig, ExperimentKind
from ihtgap.models.ground_truth import GroundTruth, ModelKind
from ihtgap.models.iht_params import IhtParams
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.result_row import ResultRow, SummaryRow
from ihtgap.models.risk_report import ExcessMode, PopulationMode
from ihtgap.models.seed import Seed
from ihtgap.models.signal_scheme import SignalScheme
from ihtgap.solvers.iht_solver import iht_solve

logger = logging.getLogger("IhtGap.ExperimentEngine")

# How each protocol measures the excess risk
EXCESS_MODES = {
    ExperimentKind.LINEAR_WHITE_BOX: ExcessMode.WHITE_BOX_LINEAR,
    ExperimentKind.LINEAR_BLACK_BOX: ExcessMode.BLACK_BOX_LINEAR,
    ExperimentKind.LOGISTIC_WHITE_BOX: ExcessMode.WHITE_BOX_MC,
    ExperimentKind.LOGISTIC_BLACK_BOX: ExcessMode.NONE,
    ExperimentKind.SIGNAL_STRENGTH: ExcessMode.WHITE_BOX_LINEAR,
    ExperimentKind.SPARSITY_INVARIANCE: ExcessMode.BLACK_BOX_LINEAR,
}

# Rate drawn over the gap curves of each protocol
OVERLAY_KINDS = {
    ExperimentKind.LINEAR_WHITE_BOX: BoundKind.WHITE_BOX,
    ExperimentKind.LINEAR_BLACK_BOX: BoundKind.UNIFORM,
    ExperimentKind.LOGISTIC_WHITE_BOX: BoundKind.WHITE_BOX,
    ExperimentKind.LOGISTIC_BLACK_BOX: BoundKind.UNIFORM,
    ExperimentKind.SIGNAL_STRENGTH: BoundKind.STRONG_SIGNAL,
    ExperimentKind.SPARSITY_INVARIANCE: BoundKind.STRONG_SIGNAL,
}


class SweepTask(NamedTuple):
    """One (grid point, replicate) unit of work."""
    n: int
    k: int
    sigma_or_r: float
    replicate: int


class SweepOutputs(NamedTuple):
    csv_path: str
    plot_paths: List[str]
    metadata_path: str
    rows: List[ResultRow]


class ExperimentEngine:
    """
    Runs the sweeps behind every generalization experiment.
    Orchestrates truth generation, data generation, IHT and risk evaluation per
    task, and turns the rows into summaries, plots and files.
    """

    def __init__(self, threads: int = DEFAULT_THREADS, verbose: bool = False):
        """
        Initialize the experiment engine.

        Args:
            threads: Worker threads for sweep tasks
            verbose: Whether to enable verbose logging and progress bars
        """
        if threads < 1:
            raise InvalidParameterError(f"threads must be >= 1, got {threads}")
        self.threads = threads
        self.verbose = verbose

        if self.verbose:
            logger.info(f"Initializing ExperimentEngine with {threads} thread(s)")

    def tasks(self, config: ExperimentConfig) -> List[SweepTask]:
        """Tasks in grid-major (n, k, sigma_or_r), replicate-minor order."""
        return [
            SweepTask(n=n, k=k, sigma_or_r=value, replicate=rep)
            for n in config.n_values
            for k in config.k
            for value in config.sigma_or_r
            for rep in range(config.replicates)
        ]

    def ground_truths(self, config: ExperimentConfig) -> Dict[Tuple[float, int], GroundTruth]:
        """
        The nominal model of every (sigma_or_r, k) pair of the grid.

        Every truth comes from the "truth" substream, so sigma grids share one w_bar
        and signal-strength grids scale one fixed vector. SparsityInvariance plants
        k nonzeros and adds "k:<k>" to the substream.
        """
        base = Seed(value=config.base_seed)
        model_kind = ModelKind.LOGISTIC if config.kind.is_logistic else ModelKind.LINEAR
        truths = {}
        for value in config.sigma_or_r:
            for k in config.k:
                seed = base.child("truth")
                sigma = value
                if config.kind in (ExperimentKind.LINEAR_WHITE_BOX, ExperimentKind.LOGISTIC_WHITE_BOX):
                    scheme = SignalScheme.gaussian_sparse(config.k_bar, config.nonzero_std)
                elif config.kind == ExperimentKind.SIGNAL_STRENGTH:
                    scheme = SignalScheme.scaled_fixed(config.k_bar, value)
                    sigma = config.noise_sigma
                elif config.kind == ExperimentKind.SPARSITY_INVARIANCE:
                    scheme = SignalScheme.nearly_sparse(k, config.perturb_sigma, config.nonzero_std)
                    seed = seed.child(f"k:{k}")
                else:
                    scheme = SignalScheme.nearly_sparse(config.k_bar, config.perturb_sigma, config.nonzero_std)
                truths[(value, k)] = gen_ground_truth(config.p, scheme, sigma, model_kind, seed,
                                                      margin_scale=config.margin_scale)
        return truths

    def run_task(self, config: ExperimentConfig, truth: GroundTruth, task: SweepTask) -> ResultRow:
        """Generate, solve and evaluate one task. Pure given the config and the task."""
        base = Seed(value=config.base_seed)
        data_seed = base.child("data", f"n:{task.n}", f"rep:{task.replicate}")
        loss_kind = LossKind.LOGISTIC if config.kind.is_logistic else LossKind.SQUARED

        data = gen_dataset(truth, task.n, data_seed)
        problem = Problem(loss_kind=loss_kind, data=data, margin_scale=config.margin_scale)
        params = IhtParams(k=task.k, step_size=config.step_size, max_iters=config.max_iters,
                           grad_tol=config.grad_tol)

        started = time.perf_counter()
        report = iht_solve(problem, params, debias_solution=config.evaluate_debiased)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        w = report.debiased if config.evaluate_debiased else report.solution

        risks = risk_report(
            problem, w, truth,
            population_mode=PopulationMode.MONTE_CARLO if config.kind.is_logistic else PopulationMode.CLOSED_FORM,
            excess_mode=EXCESS_MODES[config.kind],
            seed=base.child("eval", f"rep:{task.replicate}"),
            mc_samples=config.mc_samples,
            k=task.k,
        )

        return ResultRow(
            experiment=config.kind.value,
            replicate=task.replicate,
            n=task.n,
            k=task.k,
            sigma_or_r=task.sigma_or_r,
            seed=data_seed.fingerprint(),
            empirical_risk=risks.empirical_risk,
            population_risk=risks.population_risk,
            generalization_gap=risks.generalization_gap,
            excess_risk=risks.excess_risk,
            iters_run=report.iters_run,
            support_size=int(np.count_nonzero(w)),
            min_ht_margin=report.min_margin,
            wall_time_ms=elapsed_ms if config.record_timing else 0.0,
        )

    def run_sweep(self, config: ExperimentConfig) -> List[ResultRow]:
        """
        Run every (grid point, replicate) task of the config.

        Rows come back in task order whatever the thread count, so a config and
        seed always produce the same rows.

        Raises:
            SweepError: If any task fails, naming its grid point and replicate
        """
        tasks = self.tasks(config)
        if self.verbose:
            logger.info(f"Starting {config.kind.value} sweep '{config.name}' with {len(tasks)} tasks")

        truths = self.ground_truths(config)

        def run(task: SweepTask) -> ResultRow:
            truth_key = (task.sigma_or_r, task.k)
            try:
                return self.run_task(config, truths[truth_key], task)
            except Exception as e:
                location = (f"grid point n={task.n}, k={task.k}, sigma_or_r={task.sigma_or_r:g}, "
                            f"replicate {task.replicate}")
                logger.error(f"Sweep task failed at {location}: {e}")
                raise SweepError(location, e) from e

        progress = dict(total=len(tasks), desc=config.name, disable=not self.verbose)
        if self.threads == 1:
            rows = [run(task) for task in tqdm(tasks, **progress)]
        else:
            with ThreadPoolExecutor(max_workers=self.threads) as executor:
                # map yields results in submission order
                rows = list(tqdm(executor.map(run, tasks), **progress))

        if self.verbose:
            logger.info(f"Sweep '{config.name}' finished with {len(rows)} rows")
        return rows

    def summarize(self, rows: Sequence[ResultRow]) -> List[SummaryRow]:
        """
        Mean, sample standard deviation and count of gap and excess risk per grid point.

        Groups keep the order in which they first appear. A single replicate
        has standard deviation 0.
        """
        if not rows:
            raise InvalidParameterError("cannot summarize an empty set of rows")
        frame = rows_to_frame(rows)
        grouped = frame.groupby(["experiment", "n", "k", "sigma_or_r"], sort=False)
        stats = grouped.agg(
            count=("generalization_gap", "size"),
            gap_mean=("generalization_gap", "mean"),
            gap_std=("generalization_gap", "std"),
            excess_mean=("excess_risk", "mean"),
            excess_std=("excess_risk", "std"),
        ).reset_index()

        summary = []
        for record in stats.to_dict(orient="records"):
            has_excess = not pd.isna(record["excess_mean"])
            summary.append(SummaryRow(
                experiment=record["experiment"],
                n=int(record["n"]),
                k=int(record["k"]),
                sigma_or_r=float(record["sigma_or_r"]),
                count=int(record["count"]),
                gap_mean=float(record["gap_mean"]),
                gap_std=0.0 if pd.isna(record["gap_std"]) else float(record["gap_std"]),
                excess_mean=float(record["excess_mean"]) if has_excess else None,
                excess_std=(0.0 if pd.isna(record["excess_std"]) else float(record["excess_std"]))
                if has_excess else None,
            ))
        return summary

    def overlays(self, config: ExperimentConfig, summary: Sequence[SummaryRow]) -> List[BoundCurve]:
        """
        One dashed theoretical curve per plotted series.

        The free constant of each curve is chosen so that it meets the series'
        mean gap at the largest n; series whose gap there is not positive get no curve.
        """
        kind = OVERLAY_KINDS[config.kind]
        key = series_key(summary)
        last: Dict[object, SummaryRow] = {}
        for row in summary:
            value = getattr(row, key)
            if value not in last or row.n > last[value].n:
                last[value] = row

        n_values = sorted({row.n for row in summary if row.n >= 2})
        curves = []
        for value, anchor in last.items():
            if anchor.gap_mean <= 0 or anchor.n < 2:
                continue
            sigma = anchor.sigma_or_r if not config.kind.grid_is_signal_strength else config.noise_sigma
            params = dict(k=anchor.k, p=config.p, sigma=sigma if sigma > 0 else 1.0)
            unit = bound_curve(kind, [anchor.n], **params).values[0]
            curves.append(bound_curve(kind, n_values, label=f"{kind.value} rate",
                                      constant=anchor.gap_mean / unit, **params))
        return curves

    def run_experiment(self, config: ExperimentConfig, output_dir: Optional[str] = None) -> SweepOutputs:
        """
        Run a sweep and write `<name>.csv`, `<name>_gap.svg`, `<name>_excess.svg`
        (when excess risk is available) and `<name>_meta.json`.
        """
        output_dir = output_dir or config.output_dir
        rows = self.run_sweep(config)
        csv_path = emit_csv(rows, os.path.join(output_dir, f"{config.name}.csv"))

        summary = self.summarize(rows)
        plot_paths = [emit_plot(summary, self.overlays(config, summary),
                                os.path.join(output_dir, f"{config.name}_gap.svg"),
                                metric="gap", title=f"{config.name}: generalization gap")]
        if any(row.excess_mean is not None for row in summary):
            plot_paths.append(emit_plot(summary, [], os.path.join(output_dir, f"{config.name}_excess.svg"),
                                        metric="excess", title=f"{config.name}: excess risk"))

        metadata = {
            "version": __version__,
            "config": config.model_dump(mode="json"),
            "settings": get_config_summary(),
            "rng": RNG_NAME,
            "normal_transform": NORMAL_TRANSFORM,
            "rows": len(rows),
            "threads": self.threads,
        }
        metadata_path = write_metadata(os.path.join(output_dir, f"{config.name}_meta.json"), metadata)

        if self.verbose:
            logger.info(f"Sweep outputs written to {output_dir}")
        return SweepOutputs(csv_path=csv_path, plot_paths=plot_paths, metadata_path=metadata_path, rows=rows)
