"""Static SVG plots of sweep summaries with optional theoretical-rate overlays."""
import logging
import os
from typing import Dict, List, Sequence, Tuple

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from ihtgap.models.bound_curve import BoundCurve
from ihtgap.models.result_row import SummaryRow

logger = logging.getLogger("IhtGap.PlotRenderer")

# Fixed ids and no timestamp keep repeated renders byte-identical
matplotlib.rcParams["svg.hashsalt"] = "ihtgap"

METRIC_LABELS = {
    "gap": "generalization gap",
    "excess": "excess risk",
}


def series_key(summary: Sequence[SummaryRow]) -> str:
    """Plot one series per k when k varies, otherwise one per sigma_or_r."""
    return "k" if len({row.k for row in summary}) > 1 else "sigma_or_r"


def _collect_series(summary: Sequence[SummaryRow], metric: str) -> Dict[object, List[Tuple[int, float, float]]]:
    key = series_key(summary)
    series: Dict[object, List[Tuple[int, float, float]]] = {}
    for row in summary:
        mean = row.gap_mean if metric == "gap" else row.excess_mean
        std = row.gap_std if metric == "gap" else row.excess_std
        if mean is None:
            continue
        series.setdefault(getattr(row, key), []).append((row.n, mean, std or 0.0))
    for points in series.values():
        points.sort()
    return series


def emit_plot(summary: Sequence[SummaryRow], overlays: Sequence[BoundCurve], path: str,
              metric: str = "gap", title: str = "") -> str:
    """
    Draw the mean of `metric` against n, one line per series with a +-1 std band.

    Args:
        summary: Grouped sweep results
        overlays: Bound curves drawn dashed; may be empty
        path: Destination .svg file
        metric: "gap" or "excess"
        title: Figure title

    Returns:
        The path written

    Raises:
        ValueError: If the metric is unknown or nothing is available to plot
        OSError: If the file cannot be written
    """
    if metric not in METRIC_LABELS:
        raise ValueError(f"unknown metric '{metric}', expected one of {sorted(METRIC_LABELS)}")
    series = _collect_series(summary, metric)
    if not series:
        raise ValueError(f"no {METRIC_LABELS[metric]} values to plot")
    key = series_key(summary)
    label_name = "k" if key == "k" else "sigma/r"

    fig, ax = plt.subplots(figsize=(6, 4))
    for value, points in series.items():
        n = np.array([point[0] for point in points])
        mean = np.array([point[1] for point in points])
        std = np.array([point[2] for point in points])
        line, = ax.plot(n, mean, "o-", lw=1.5, markersize=4, label=f"{label_name}={value:g}")
        ax.fill_between(n, mean - std, mean + std, color=line.get_color(), alpha=0.2)

    for curve in overlays:
        ax.plot(curve.n_values, curve.values, "--", lw=1, color="grey", label=curve.label)

    ax.set_xlabel("n")
    ax.set_ylabel(METRIC_LABELS[metric])
    if title:
        ax.set_title(title)
    ax.legend(fontsize=7)
    fig.tight_layout()

    directory = os.path.dirname(path)
    try:
        if directory:
            os.makedirs(directory, exist_ok=True)
        fig.savefig(path, format="svg", metadata={"Date": None})
    except OSError as e:
        raise OSError(f"could not write plot to {path}: {e}") from e
    finally:
        plt.close(fig)
    logger.info(f"Figure -> {path}")
    return path
