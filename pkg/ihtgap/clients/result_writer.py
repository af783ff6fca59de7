"""Persist sweep rows as CSV and run metadata as JSON."""
import json
import logging
import os
from typing import Any, Dict, List, Sequence

import numpy as np
import pandas as pd

from ihtgap.models.result_row import RESULT_COLUMNS, ResultRow

logger = logging.getLogger("IhtGap.ResultWriter")

# 17 significant digits round-trip every float64
FLOAT_FORMAT = "%.17g"


def _ensure_parent(path: str) -> None:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)


def rows_to_frame(rows: Sequence[ResultRow]) -> pd.DataFrame:
    """Result rows as a DataFrame with the CSV column order; missing excess risk becomes NaN."""
    frame = pd.DataFrame([row.model_dump() for row in rows], columns=RESULT_COLUMNS)
    frame["excess_risk"] = frame["excess_risk"].astype(np.float64)
    return frame


def emit_csv(rows: Sequence[ResultRow], path: str) -> str:
    """
    Write rows in run order under the fixed header, floats at 17 significant digits.

    An unavailable excess risk is written as an empty field.

    Raises:
        OSError: If the file cannot be written, with the path in the message
    """
    try:
        _ensure_parent(path)
        rows_to_frame(rows).to_csv(path, index=False, float_format=FLOAT_FORMAT, na_rep="", lineterminator="\n")
    except OSError as e:
        raise OSError(f"could not write results to {path}: {e}") from e
    logger.info(f"Wrote {len(rows)} rows to {path}")
    return path


def read_results_csv(path: str) -> List[ResultRow]:
    """Parse a CSV written by `emit_csv` back into result rows."""
    frame = pd.read_csv(path, float_precision="round_trip", dtype={"experiment": str})
    if list(frame.columns) != RESULT_COLUMNS:
        raise ValueError(f"{path}: unexpected header {','.join(frame.columns)}")
    frame["excess_risk"] = frame["excess_risk"].astype(object).where(frame["excess_risk"].notna(), None)
    return [ResultRow(**record) for record in frame.to_dict(orient="records")]


def write_metadata(path: str, metadata: Dict[str, Any]) -> str:
    try:
        _ensure_parent(path)
        with open(path, "w", encoding="utf-8") as f:
            json.dump(metadata, f, indent=2, default=str)
    except OSError as e:
        raise OSError(f"could not write metadata to {path}: {e}") from e
    return path
