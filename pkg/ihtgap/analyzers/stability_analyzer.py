"""Stability diagnostics: gradient concentration, replace-one-sample experiments and IHT certificates."""
import functools
import logging
import math
from typing import List, Optional

import numpy as np
from tqdm import tqdm

from ihtgap.config import STABILITY_EVAL_SAMPLES
from ihtgap.core.losses import empirical_gradient, sample_losses
from ihtgap.exceptions import IhtGapError, InvalidParameterError, SweepError
from ihtgap.generators.data_generator import gen_dataset, gen_linear_dataset
from ihtgap.models.ground_truth import GroundTruth, ModelKind
from ihtgap.models.iht_params import IhtParams
from ihtgap.models.problem import LossKind, Problem
from ihtgap.models.seed import Seed
from ihtgap.models.stability_report import ConcentrationResult, StabilityCertificate, StabilityReport
from ihtgap.solvers.iht_solver import iht_solve, population_iht_trajectory

logger = logging.getLogger("IhtGap.StabilityAnalyzer")

MIN_CONCENTRATION_REPS = 20


def _loss_kind(truth: GroundTruth) -> LossKind:
    return LossKind.LOGISTIC if truth.model_kind == ModelKind.LOGISTIC else LossKind.SQUARED


def gradient_concentration_check(truth: GroundTruth, n: int, reps: int, delta: float, seed: Seed,
                                 verbose: bool = False) -> ConcentrationResult:
    """
    Compare the (1 - delta)-quantile of |grad F_S(w_bar)|_inf with sigma sqrt(2 log(p/delta) / n).

    Each of the `reps` datasets is drawn from substream "rep:<r>".

    Raises:
        InvalidParameterError: If reps < 20, delta is outside (0, 1) or the truth is not linear
    """
    if truth.model_kind != ModelKind.LINEAR:
        raise InvalidParameterError("gradient concentration check needs a linear ground truth")
    if reps < MIN_CONCENTRATION_REPS:
        raise InvalidParameterError(f"reps must be at least {MIN_CONCENTRATION_REPS}, got {reps}")
    if not 0 < delta < 1:
        raise InvalidParameterError(f"delta must lie in (0, 1), got {delta}")
    if n < 1:
        raise InvalidParameterError(f"sample size must be >= 1, got {n}")

    sup_norms = np.empty(reps)
    for r in range(reps):
        data = gen_linear_dataset(truth, n, seed.child(f"rep:{r}"))
        problem = Problem(loss_kind=LossKind.SQUARED, data=data)
        sup_norms[r] = np.max(np.abs(empirical_gradient(problem, truth.w_bar)))

    quantile = float(np.quantile(sup_norms, 1.0 - delta))
    bound = truth.noise_sigma * math.sqrt(2.0 * math.log(truth.p / delta) / n)
    if verbose:
        logger.info(f"Gradient sup-norm {1 - delta:.2f}-quantile {quantile:.6e} against bound {bound:.6e}")
    return ConcentrationResult(empirical_quantile=quantile, bound=bound, passed=quantile <= bound)


def support_stability_experiment(truth: GroundTruth, n: int, k: int, trials: int, seed: Seed,
                                 params: Optional[IhtParams] = None,
                                 identical_replacement: bool = False,
                                 eval_samples: int = STABILITY_EVAL_SAMPLES,
                                 verbose: bool = False) -> StabilityReport:
    """
    Measure how IHT reacts to replacing one training sample.

    For each trial a dataset S is drawn, S' replaces one uniformly chosen sample
    of S by a fresh draw, and both are solved with IHT plus debiasing. The trial
    records whether the kept supports agree, the largest per-sample loss change
    between the two debiased models over a fixed evaluation set (empirical gamma)
    and the smallest hard-thresholding margin along both runs.

    Args:
        truth: Generative model
        n: Training sample size
        k: Sparsity level
        trials: Number of (S, S') pairs
        seed: Root stream; trial i uses substream "trial:<i>", the evaluation set "eval"
        params: Step size, budget and tolerance; k overrides params.k
        identical_replacement: Use S' = S, a degenerate pair
        eval_samples: Size of the evaluation set
        verbose: Whether to show progress

    Returns:
        StabilityReport

    Raises:
        SweepError: If a solver run fails, naming the trial
    """
    if trials < 1:
        raise InvalidParameterError(f"trials must be >= 1, got {trials}")
    if n < 1:
        raise InvalidParameterError(f"sample size must be >= 1, got {n}")
    base = params or IhtParams(k=k)
    params = IhtParams(k=k, step_size=base.step_size, max_iters=base.max_iters, grad_tol=base.grad_tol)

    loss_kind = _loss_kind(truth)
    evaluation = Problem(loss_kind=loss_kind, data=gen_dataset(truth, eval_samples, seed.child("eval")),
                         margin_scale=truth.margin_scale)

    agreements = 0
    discrepancies: List[float] = []
    margins: List[float] = []
    for i in tqdm(range(trials), desc="stability trials", disable=not verbose):
        trial_seed = seed.child(f"trial:{i}")
        try:
            data = gen_dataset(truth, n, trial_seed.child("train"))
            if identical_replacement:
                replaced = data
            else:
                index = int(trial_seed.child("index").generator().integers(n))
                fresh = gen_dataset(truth, 1, trial_seed.child("replacement"))
                replaced = data.replace_sample(index, fresh.features[0], fresh.responses[0])

            report = iht_solve(Problem(loss_kind=loss_kind, data=data, margin_scale=truth.margin_scale), params)
            report_prime = iht_solve(Problem(loss_kind=loss_kind, data=replaced, margin_scale=truth.margin_scale),
                                     params)
        except IhtGapError as e:
            logger.error(f"Stability trial {i} failed: {e}")
            raise SweepError(f"trial {i}", e) from e

        agreements += int(report.support == report_prime.support)
        losses = sample_losses(evaluation, report.debiased)
        losses_prime = sample_losses(evaluation, report_prime.debiased)
        discrepancies.append(float(np.max(np.abs(losses - losses_prime))))
        margins.append(min(report.min_margin, report_prime.min_margin))

    rate = agreements / trials
    if verbose:
        logger.info(f"Support agreement {rate:.3f} over {trials} trials, empirical gamma {max(discrepancies):.6e}")

    return StabilityReport(
        support_agreement_rate=rate,
        max_loss_discrepancy=max(discrepancies),
        ht_margins=margins,
        loss_discrepancies=discrepancies,
        n_trials=trials,
    )


def required_sample_size(epsilon_k: float, G: float, L: float, mu: float, p: int, T: int, delta: float) -> float:
    """
    Sample size 2 G^2 (L + mu)^2 log(pT/delta) / (L^2 mu^2 epsilon_k^2) above which
    an IHT-stable population trajectory transfers to the empirical one.

    Returns +inf when epsilon_k = 0 and 0 when epsilon_k is infinite.
    """
    if not (L > 0 and mu > 0 and p >= 1 and T >= 1 and G >= 0):
        raise InvalidParameterError("need L, mu > 0, G >= 0 and p, T >= 1")
    if not 0 < delta < 1:
        raise InvalidParameterError(f"delta must lie in (0, 1), got {delta}")
    if epsilon_k == 0:
        return math.inf
    if math.isinf(epsilon_k):
        return 0.0
    return 2.0 * G ** 2 * (L + mu) ** 2 * math.log(p * T / delta) / (L ** 2 * mu ** 2 * epsilon_k ** 2)


def iht_stability_certificate(truth: GroundTruth, params: IhtParams, verbose: bool = False) -> StabilityCertificate:
    """
    IHT stability margin of the population trajectory and the matching sample-size threshold.

    epsilon_k is the smallest pre-threshold margin over steps 1..T of
    population_iht_trajectory; the second field evaluates the sample-size
    threshold for given (G, L, mu, p, T, delta).
    """
    trace = population_iht_trajectory(truth, params, verbose=verbose)
    epsilon_k = trace.min_margin
    if verbose:
        logger.info(f"Population IHT stability margin {epsilon_k:.6e} over {trace.iters_run} steps")
    return StabilityCertificate(epsilon_k=epsilon_k,
                                required_sample_size=functools.partial(required_sample_size, epsilon_k))
