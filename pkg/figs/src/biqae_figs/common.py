"""Shared loading and aggregation for the figure scripts.

The only inputs are the benchmark harness's flat-file exports: the fixed
CSV schema below, and the JSON trace export (records plus per-stage radii).
No re-simulation happens here.
"""

from __future__ import annotations

import argparse
import csv
import json
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

CSV_COLUMNS = [
    "method", "a_true", "epsilon", "alpha", "rep", "seed",
    "n_oracle_k", "n_oracle_K", "n_shots",
    "lo", "hi", "point", "covered", "stages", "max_k", "wall_ns",
]

FLOAT_COLUMNS = {"a_true", "epsilon", "alpha", "lo", "hi", "point"}
INT_COLUMNS = {"rep", "seed", "n_oracle_k", "n_oracle_K", "n_shots",
               "covered", "stages", "max_k", "wall_ns"}


class SchemaError(ValueError):
    """Input does not match the harness export schema."""


def load_csv(path) -> list[dict]:
    """Read harness records; raises SchemaError naming the offending column."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        header = reader.fieldnames or []
        for col in CSV_COLUMNS:
            if col not in header:
                raise SchemaError(f"missing column {col!r} in {path}")
        for col in header:
            if col not in CSV_COLUMNS:
                raise SchemaError(f"unexpected column {col!r} in {path}")
        rows = []
        for row in reader:
            parsed = dict(row)
            for col in FLOAT_COLUMNS:
                parsed[col] = float(row[col])
            for col in INT_COLUMNS:
                parsed[col] = int(row[col])
            rows.append(parsed)
        return rows


def load_trace_json(path) -> list[dict]:
    """Read the JSON trace export; each record must carry stage_radii."""
    with open(path) as fh:
        payload = json.load(fh)
    if not isinstance(payload, list):
        raise SchemaError(f"expected a JSON array of records in {path}")
    for record in payload:
        if "stage_radii" not in record:
            raise SchemaError(f"missing column 'stage_radii' in {path}")
    return payload


@dataclass(frozen=True)
class Cell:
    method: str
    a_true: float
    epsilon: float
    median_abs_error: float
    mean_complexity: float


def aggregate(rows, weighting: str = "k") -> list[Cell]:
    """Per-(method, a, epsilon) medians and means, mirroring the harness
    summary conventions."""
    col = "n_oracle_k" if weighting == "k" else "n_oracle_K"
    groups: dict[tuple, list[dict]] = {}
    for row in rows:
        groups.setdefault((row["method"], row["a_true"], row["epsilon"]),
                          []).append(row)
    cells = []
    for (method, a, eps), recs in sorted(groups.items()):
        errors = sorted(abs(r["point"] - r["a_true"]) for r in recs)
        mid = len(errors) // 2
        median = errors[mid] if len(errors) % 2 else \
            0.5 * (errors[mid - 1] + errors[mid])
        mean_c = sum(r[col] for r in recs) / len(recs)
        cells.append(Cell(method, a, eps, median, mean_c))
    return cells


def loglog_fit(points) -> tuple[float, float]:
    """OLS slope/intercept in log10-log10 space."""
    import numpy as np

    x = np.log10([p[0] for p in points])
    y = np.log10([p[1] for p in points])
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(intercept)


def sqrt_a_fit(points) -> float:
    """Through-origin coefficient of complexity on sqrt(a(1-a))."""
    import numpy as np

    a = np.array([p[0] for p in points])
    y = np.array([p[1] for p in points])
    g = np.sqrt(a * (1.0 - a))
    return float(np.sum(g * y) / np.sum(g * g))


def make_parser(description: str) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(description=description)
    parser.add_argument("--in", dest="input", required=True)
    parser.add_argument("--out", dest="output", required=True)
    return parser


def run_script(render_fn, argv=None, extra_args=None) -> int:
    parser = make_parser(render_fn.__doc__ or "")
    if extra_args:
        extra_args(parser)
    args = parser.parse_args(argv)
    try:
        render_fn(args)
    except (OSError, SchemaError, json.JSONDecodeError) as exc:
        print(f"error: {exc}")
        return 1
    return 0
