"""Command-line interface for the ihtgap toolkit."""
import argparse
import json
import logging
import os
import sys
from typing import List, Optional

from pydantic import ValidationError

from ihtgap.analyzers.risk_analyzer import theory_bound
from ihtgap.analyzers.stability_analyzer import iht_stability_certificate, support_stability_experiment
from ihtgap.clients.config_loader import load_experiment_config, write_truth
from ihtgap.config import (
    DEFAULT_OUTPUT_DIR,
    DEFAULT_PERTURB_SIGMA,
    DEFAULT_SEED,
    DEFAULT_THREADS,
    STABILITY_EVAL_SAMPLES,
    logger
)
from ihtgap.core.experiment_engine import ExperimentEngine
from ihtgap.exceptions import IhtGapError
from ihtgap.generators.data_generator import gen_dataset, gen_ground_truth
from ihtgap.models.bound_curve import BoundKind
from ihtgap.models.dataset import Dataset
from ihtgap.models.ground_truth import ModelKind
from ihtgap.models.iht_params import IhtParams
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.seed import Seed
from ihtgap.models.signal_scheme import SignalScheme
from ihtgap.solvers.brute_force import brute_force_l0_erm
from ihtgap.solvers.iht_solver import iht_solve

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2


class UsageError(Exception):
    """Raised instead of exiting when the command line cannot be parsed."""

    def __init__(self, message: str, usage: str):
        self.usage = usage
        super().__init__(message)


class CliArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message, self.format_usage())


def _step_size(value: str):
    return value if value == "auto" else float(value)


def setup_argparser() -> argparse.ArgumentParser:
    """Set up the argument parser for the command-line interface."""
    parser = CliArgumentParser(
        prog="ihtgap",
        description="Sparsity-constrained ERM with IHT: solvers, generalization sweeps and stability diagnostics.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter
    )

    # Global options
    parser.add_argument("--seed", type=int, default=None, help=f"Base seed (default {DEFAULT_SEED})")
    parser.add_argument("--threads", type=int, default=DEFAULT_THREADS, help="Worker threads for sweeps")
    parser.add_argument("--config", help="Sweep config file or preset name (fig1a, fig1b, fig2, ...)")
    parser.add_argument("--out", default=None, help=f"Output directory (default {DEFAULT_OUTPUT_DIR})")
    parser.add_argument("--verbose", "-v", action="store_true", help="Enable verbose logging")

    subparsers = parser.add_subparsers(dest="command", metavar="command")
    subparsers.required = True

    gen = subparsers.add_parser("gen", help="Write a synthetic dataset and its ground truth")
    gen.add_argument("--model", choices=["linear", "logistic"], default="linear")
    gen.add_argument("--p", type=int, required=True)
    gen.add_argument("--n", type=int, required=True)
    gen.add_argument("--k-bar", type=int, required=True)
    gen.add_argument("--sigma", type=float, default=1.0, help="Noise level of the linear model")
    gen.add_argument("--scheme", choices=["gaussian", "scaled", "nearly"], default="gaussian")
    gen.add_argument("--r", type=float, default=1.0, help="Signal strength for the scaled scheme")
    gen.add_argument("--perturb-sigma", type=float, default=DEFAULT_PERTURB_SIGMA)

    solve = subparsers.add_parser("solve", help="Run IHT on a dataset CSV and print the report")
    solve.add_argument("--data", required=True, help="Dataset CSV written by 'gen'")
    solve.add_argument("--loss", choices=["squared", "logistic"], default="squared")
    solve.add_argument("--k", type=int, required=True)
    solve.add_argument("--step", type=_step_size, default="auto", help="Step size or 'auto' for 2/(3L)")
    solve.add_argument("--max-iters", type=int, default=1000)
    solve.add_argument("--grad-tol", type=float, default=1e-10)
    solve.add_argument("--trace", action="store_true", help="Include objectives and margins per step")

    oracle = subparsers.add_parser("oracle", help="Exact l0-ERM by enumeration on a small instance")
    oracle.add_argument("--data", help="Dataset CSV; otherwise a dataset is generated from --p, --n, --k-bar")
    oracle.add_argument("--p", type=int)
    oracle.add_argument("--n", type=int)
    oracle.add_argument("--k-bar", type=int)
    oracle.add_argument("--sigma", type=float, default=0.0)
    oracle.add_argument("--k", type=int, required=True)
    oracle.add_argument("--loss", choices=["squared", "logistic"], default="squared")

    subparsers.add_parser("sweep", help="Run the sweep named by --config")

    stability = subparsers.add_parser("stability", help="Replace-one-sample support stability experiment")
    stability.add_argument("--p", type=int, required=True)
    stability.add_argument("--n", type=int, required=True)
    stability.add_argument("--k", type=int, required=True)
    stability.add_argument("--k-bar", type=int, required=True)
    stability.add_argument("--r", type=float, default=1.0)
    stability.add_argument("--sigma", type=float, default=1.0)
    stability.add_argument("--trials", type=int, default=50)
    stability.add_argument("--eval-samples", type=int, default=STABILITY_EVAL_SAMPLES)

    bounds = subparsers.add_parser("bounds", help="Evaluate a theoretical generalization rate")
    bounds.add_argument("--kind", choices=[kind.value for kind in BoundKind], required=True)
    bounds.add_argument("--k", type=float, required=True)
    bounds.add_argument("--p", type=float, required=True)
    bounds.add_argument("--n", type=int, nargs="+", required=True)
    bounds.add_argument("--sigma", type=float, default=1.0)
    bounds.add_argument("--L", type=float, default=1.0)
    bounds.add_argument("--mu", type=float, default=1.0)
    bounds.add_argument("--constant", type=float, default=1.0)
    bounds.add_argument("--delta", type=float)

    certify = subparsers.add_parser("certify", help="IHT stability margin of a linear population risk")
    certify.add_argument("--p", type=int, required=True)
    certify.add_argument("--k-bar", type=int, required=True)
    certify.add_argument("--k", type=int, required=True)
    certify.add_argument("--r", type=float, default=1.0)
    certify.add_argument("--eta", type=_step_size, default=0.5)
    certify.add_argument("--T", type=int, default=50)
    certify.add_argument("--G", type=float, default=1.0)
    certify.add_argument("--L", type=float, default=1.0)
    certify.add_argument("--mu", type=float, default=1.0)
    certify.add_argument("--delta", type=float, default=0.05)

    return parser


def _base_seed(args: argparse.Namespace) -> Seed:
    return Seed(value=DEFAULT_SEED if args.seed is None else args.seed)


def _out_dir(args: argparse.Namespace) -> str:
    return args.out or DEFAULT_OUTPUT_DIR


def run_gen(args: argparse.Namespace) -> int:
    schemes = {
        "gaussian": SignalScheme.gaussian_sparse(args.k_bar),
        "scaled": SignalScheme.scaled_fixed(args.k_bar, args.r),
        "nearly": SignalScheme.nearly_sparse(args.k_bar, args.perturb_sigma),
    }
    seed = _base_seed(args)
    truth = gen_ground_truth(args.p, schemes[args.scheme], args.sigma, ModelKind(args.model), seed.child("truth"))
    data = gen_dataset(truth, args.n, seed.child("data"))
    out = _out_dir(args)
    data_path = data.to_csv(os.path.join(out, "dataset.csv"))
    truth_path = write_truth(truth, os.path.join(out, "truth.yaml"))
    print(f"Dataset written to {data_path}")
    print(f"Ground truth written to {truth_path}")
    return EXIT_OK


def run_solve(args: argparse.Namespace) -> int:
    problem = Problem(loss_kind=LossKind(args.loss), data=Dataset.from_csv(args.data))
    params = IhtParams(k=args.k, step_size=args.step, max_iters=args.max_iters, grad_tol=args.grad_tol)
    report = iht_solve(problem, params, record_trace=args.trace, verbose=args.verbose)
    print(json.dumps(report.to_dict(include_trace=args.trace), indent=2, allow_nan=False))
    return EXIT_OK


def run_oracle(args: argparse.Namespace) -> int:
    loss_kind = LossKind(args.loss)
    if args.data:
        data = Dataset.from_csv(args.data)
    else:
        if args.p is None or args.n is None or args.k_bar is None:
            raise UsageError("oracle needs --data or all of --p, --n and --k-bar", "")
        seed = _base_seed(args)
        model_kind = ModelKind.LOGISTIC if loss_kind == LossKind.LOGISTIC else ModelKind.LINEAR
        truth = gen_ground_truth(args.p, SignalScheme.gaussian_sparse(args.k_bar), args.sigma, model_kind,
                                 seed.child("truth"))
        data = gen_dataset(truth, args.n, seed.child("data"))
    report = brute_force_l0_erm(Problem(loss_kind=loss_kind, data=data), args.k, verbose=args.verbose)
    print(report.to_json())
    return EXIT_OK


def run_sweep(args: argparse.Namespace) -> int:
    if not args.config:
        raise UsageError("sweep requires --config <path or preset>", "")
    config = load_experiment_config(args.config, base_seed=args.seed, output_dir=args.out)
    engine = ExperimentEngine(threads=args.threads, verbose=args.verbose)
    outputs = engine.run_experiment(config)
    print(f"Sweep '{config.name}' complete: {len(outputs.rows)} rows")
    print(f"Results: {outputs.csv_path}")
    for path in outputs.plot_paths:
        print(f"Plot: {path}")
    print(f"Metadata: {outputs.metadata_path}")
    return EXIT_OK


def run_stability(args: argparse.Namespace) -> int:
    seed = _base_seed(args)
    truth = gen_ground_truth(args.p, SignalScheme.scaled_fixed(args.k_bar, args.r), args.sigma, ModelKind.LINEAR,
                             seed.child("truth"))
    report = support_stability_experiment(truth, args.n, args.k, args.trials, seed.child("stability"),
                                          eval_samples=args.eval_samples, verbose=args.verbose)
    print(report.model_dump_json(indent=2))
    return EXIT_OK


def run_bounds(args: argparse.Namespace) -> int:
    for n in args.n:
        value = theory_bound(BoundKind(args.kind), k=args.k, p=args.p, n=n, sigma=args.sigma, L=args.L,
                             mu=args.mu, constant=args.constant, delta=args.delta)
        print(f"{value:.10g}" if len(args.n) == 1 else f"{n}\t{value:.10g}")
    return EXIT_OK


def run_certify(args: argparse.Namespace) -> int:
    truth = gen_ground_truth(args.p, SignalScheme.scaled_fixed(args.k_bar, args.r), 0.0, ModelKind.LINEAR,
                             _base_seed(args).child("truth"))
    params = IhtParams(k=args.k, step_size=args.eta, max_iters=args.T)
    certificate = iht_stability_certificate(truth, params, verbose=args.verbose)
    required = certificate.required_sample_size(args.G, args.L, args.mu, args.p, args.T, args.delta)
    print(f"epsilon_k\t{certificate.epsilon_k:.10g}")
    print(f"required_n\t{required:.10g}")
    return EXIT_OK


COMMANDS = {
    "gen": run_gen,
    "solve": run_solve,
    "oracle": run_oracle,
    "sweep": run_sweep,
    "stability": run_stability,
    "bounds": run_bounds,
    "certify": run_certify,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point for the command-line interface. Returns the exit code."""
    parser = setup_argparser()
    try:
        args = parser.parse_args(argv)
        if args.verbose:
            logging.getLogger("IhtGap").setLevel(logging.DEBUG)
        return COMMANDS[args.command](args)
    except UsageError as e:
        print(e.usage or parser.format_usage(), file=sys.stderr, end="")
        print(f"ihtgap: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as e:
        # --help and --version exit through argparse
        return e.code if isinstance(e.code, int) else EXIT_OK
    except (IhtGapError, ValidationError, ValueError, OSError) as e:
        logger.error(f"Error: {e}")
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
