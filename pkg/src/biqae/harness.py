"""Experiment runner, summary statistics, scaling fits, and flat-file export.

Every repetition gets a seed derived deterministically from the master
seed and the (amplitude, accuracy, repetition) cell, so two methods run
against the same plan see identical oracle shot streams ("matched seeds")
and the whole pipeline is bit-stable.
"""

from __future__ import annotations

import csv
import json
import math
import struct
import time
from dataclasses import dataclass, field, asdict

import numpy as np

from .estimators import (
    BudgetExceededError,
    EstimationResult,
    EstimatorConfig,
    classical_qae,
    iterative_run,
)
from .oracle import AmplitudeOracle

#: method tag -> (schedule, interval kind); classical is handled separately.
ITERATIVE_METHODS = {
    "iqae-ch": ("standard", "chernoff_hoeffding"),
    "iqae-cp": ("standard", "clopper_pearson"),
    "hybrid3": ("hybrid3", "chernoff_hoeffding"),
    "hybrid35": ("hybrid35", "chernoff_hoeffding"),
    "biqae-normal": ("standard", "normal_bayes"),
    "biqae-beta": ("standard", "beta_bayes"),
}
METHODS = ("classical",) + tuple(ITERATIVE_METHODS)

CSV_COLUMNS = [
    "method", "a_true", "epsilon", "alpha", "rep", "seed",
    "n_oracle_k", "n_oracle_K", "n_shots",
    "lo", "hi", "point", "covered", "stages", "max_k", "wall_ns",
]


@dataclass(frozen=True)
class ExperimentRecord:
    """One repetition's outcome, plus optional stage traces."""

    method: str
    a_true: float
    epsilon: float
    alpha: float
    rep: int
    seed: int
    n_oracle_k: int
    n_oracle_K: int
    n_shots: int
    lo: float
    hi: float
    point: float
    covered: int
    stages: int
    max_k: int
    #: Wall time is reported but excluded from equality: reruns of the same
    #: plan and seed are identical in every scientific field.
    wall_ns: int = field(compare=False)
    stage_radii: tuple[float, ...] = field(default=(), compare=False)
    stage_ks: tuple[int, ...] = field(default=(), compare=False)
    failed: bool = field(default=False, compare=False)


@dataclass(frozen=True)
class ExperimentPlan:
    method: str
    a_values: tuple[float, ...]
    epsilons: tuple[float, ...]
    alpha: float = 0.05
    repetitions: int = 1
    master_seed: int = 0
    overrides: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        if not self.a_values or not self.epsilons:
            raise ValueError("amplitude and accuracy grids must be nonempty")
        if self.repetitions < 1:
            raise ValueError("repetitions must be >= 1")


@dataclass(frozen=True)
class ScalingFit:
    slope: float
    intercept: float
    r_squared: float


def _float_bits(x: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", x))[0]


def _cell_seeds(master_seed: int, a: float, epsilon: float, rep: int):
    """Independent oracle and transform streams, identical across methods."""
    base = [master_seed, rep, _float_bits(a), _float_bits(epsilon)]
    oracle_ss = np.random.SeedSequence(base + [0])
    transform_ss = np.random.SeedSequence(base + [1])
    seed = int(oracle_ss.generate_state(1, dtype=np.uint64)[0])
    return oracle_ss, transform_ss, seed


def classical_shot_budget(a: float, epsilon: float) -> int:
    """Shots for the unamplified baseline to reach mean-squared accuracy
    epsilon^2 at a known amplitude: a(1-a)/epsilon^2."""
    return max(1, math.ceil(a * (1.0 - a) / epsilon**2))


def matched_radius_budget(epsilon: float, alpha: float) -> int:
    """Shots so the unamplified mean-concentration interval has half-width
    epsilon at level alpha: log(2/alpha)/(2 epsilon^2).  This matches the
    interval-producing methods' accuracy contract, not just the standard
    error."""
    return max(1, math.ceil(math.log(2.0 / alpha) / (2.0 * epsilon**2)))


def _run_single(
    method: str, a: float, epsilon: float, alpha: float, rep: int,
    master_seed: int, overrides: dict,
) -> ExperimentRecord:
    oracle_ss, transform_ss, seed = _cell_seeds(master_seed, a, epsilon, rep)
    oracle = AmplitudeOracle.for_amplitude(a, oracle_ss)
    failed = False
    start = time.perf_counter_ns()
    if method == "classical":
        kind = overrides.get("interval_kind", "chernoff_hoeffding")
        if overrides.get("match_radius"):
            default_n = matched_radius_budget(epsilon, alpha)
        else:
            default_n = classical_shot_budget(a, epsilon)
        n = overrides.get("n", default_n)
        result = classical_qae(oracle, n, alpha, interval_kind=kind)
    else:
        schedule, interval_kind = ITERATIVE_METHODS[method]
        config = EstimatorConfig(
            epsilon=epsilon,
            alpha=alpha,
            schedule=schedule,
            interval_kind=interval_kind,
            **{k: v for k, v in overrides.items()
               if k not in ("interval_kind", "n", "match_radius")},
        )
        try:
            result = iterative_run(
                oracle, config, np.random.default_rng(transform_ss)
            )
        except BudgetExceededError as exc:
            result = exc.partial
            failed = True
    wall_ns = time.perf_counter_ns() - start
    return _to_record(method, a, epsilon, alpha, rep, seed, result, wall_ns, failed)


def _to_record(method, a, epsilon, alpha, rep, seed, result: EstimationResult,
               wall_ns: int, failed: bool) -> ExperimentRecord:
    ledger = result.ledger
    return ExperimentRecord(
        method=method,
        a_true=a,
        epsilon=epsilon,
        alpha=alpha,
        rep=rep,
        seed=seed,
        n_oracle_k=ledger.total("k_weighted"),
        n_oracle_K=ledger.total("K_weighted"),
        n_shots=ledger.total("shots_only"),
        lo=result.a_lo,
        hi=result.a_hi,
        point=result.a_point,
        covered=int(result.a_lo <= a <= result.a_hi),
        stages=result.T,
        max_k=ledger.max_k,
        wall_ns=wall_ns,
        stage_radii=tuple(s.radius for s in result.stages),
        stage_ks=tuple(s.K for s in result.stages),
        failed=failed,
    )


def run_experiment(plan: ExperimentPlan) -> list[ExperimentRecord]:
    """Run every (a, epsilon, repetition) cell of the plan in deterministic
    order.  Budget-exceeded runs are kept as failed records."""
    records = []
    for a in plan.a_values:
        for epsilon in plan.epsilons:
            for rep in range(plan.repetitions):
                records.append(
                    _run_single(
                        plan.method, a, epsilon, plan.alpha, rep,
                        plan.master_seed, plan.overrides,
                    )
                )
    return records


@dataclass(frozen=True)
class CellSummary:
    method: str
    a_true: float
    epsilon: float
    count: int
    median_abs_error: float
    mean_complexity_k: float
    mean_complexity_K: float
    mean_shots: float
    p05_complexity_K: float
    p95_complexity_K: float
    coverage: float
    mean_radius: float
    mean_stages: float
    #: Mean per-stage shrink factor of the angle interval, final stage excluded.
    radius_ratio_mean: float | None


def _radius_ratios(record: ExperimentRecord) -> list[float]:
    radii = record.stage_radii
    ratios = []
    for prev, cur in zip(radii, radii[1:]):
        if cur > 0.0:
            ratios.append(prev / cur)
    # Drop the shrink into the (possibly early-terminated) final stage.
    return ratios[:-1] if len(ratios) > 1 else ratios


def summarize(records) -> dict[tuple[str, float, float], CellSummary]:
    """Per-(method, amplitude, accuracy) summary statistics."""
    if not records:
        raise ValueError("no records to summarize")
    cells: dict[tuple[str, float, float], list[ExperimentRecord]] = {}
    for r in records:
        cells.setdefault((r.method, r.a_true, r.epsilon), []).append(r)
    out = {}
    for key, recs in cells.items():
        errors = [abs(r.point - r.a_true) for r in recs]
        ck = [r.n_oracle_k for r in recs]
        cK = [r.n_oracle_K for r in recs]
        ratios = [x for r in recs for x in _radius_ratios(r)]
        out[key] = CellSummary(
            method=key[0],
            a_true=key[1],
            epsilon=key[2],
            count=len(recs),
            median_abs_error=float(np.median(errors)),
            mean_complexity_k=float(np.mean(ck)),
            mean_complexity_K=float(np.mean(cK)),
            mean_shots=float(np.mean([r.n_shots for r in recs])),
            p05_complexity_K=float(np.percentile(cK, 5)),
            p95_complexity_K=float(np.percentile(cK, 95)),
            coverage=float(np.mean([r.covered for r in recs])),
            mean_radius=float(np.mean([0.5 * (r.hi - r.lo) for r in recs])),
            mean_stages=float(np.mean([r.stages for r in recs])),
            radius_ratio_mean=float(np.mean(ratios)) if ratios else None,
        )
    return out


def fit_scaling(points, model: str = "loglog") -> ScalingFit:
    """Least-squares fits used by the scaling analyses.

    ``loglog``: OLS of log10(complexity) on log10(error).
    ``sqrt_a``: complexity = beta * sqrt(a(1-a)) through the origin; the
    slope field holds beta and the intercept is zero.
    """
    pts = [(float(x), float(y)) for x, y in points]
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    x = np.array([p[0] for p in pts])
    y = np.array([p[1] for p in pts])
    if model == "loglog":
        lx, ly = np.log10(x), np.log10(y)
        if np.ptp(lx) == 0.0:
            raise ValueError("rank-deficient input: all abscissae equal")
        slope, intercept = np.polyfit(lx, ly, 1)
        pred = slope * lx + intercept
        r2 = _r_squared(ly, pred)
        return ScalingFit(float(slope), float(intercept), r2)
    if model == "sqrt_a":
        if np.any(x <= 0.0) or np.any(x >= 1.0):
            raise ValueError("sqrt_a model needs amplitudes strictly inside (0, 1)")
        g = np.sqrt(x * (1.0 - x))
        beta = float(np.sum(g * y) / np.sum(g * g))
        return ScalingFit(beta, 0.0, _r_squared(y, beta * g))
    raise ValueError(f"unknown model {model!r}")


def _r_squared(y, pred) -> float:
    ss_tot = float(np.sum((y - np.mean(y)) ** 2))
    ss_res = float(np.sum((y - pred) ** 2))
    if ss_tot == 0.0:
        return 1.0 if ss_res == 0.0 else 0.0
    return max(0.0, 1.0 - ss_res / ss_tot)


@dataclass(frozen=True)
class ObservableTerm:
    coefficient: float
    a_true: float

    def __post_init__(self):
        if not math.isfinite(self.coefficient):
            raise ValueError("coefficient must be finite")


@dataclass(frozen=True)
class ObservableEstimate:
    value_lo: float
    value_hi: float
    records: tuple[ExperimentRecord, ...]

    @property
    def center(self) -> float:
        return 0.5 * (self.value_lo + self.value_hi)


def estimate_observable(
    terms,
    epsilon_term: float,
    alpha: float,
    method: str,
    master_seed: int = 0,
    overrides: dict | None = None,
) -> ObservableEstimate:
    """Estimate a signed weighted sum of term expectations 1 - 2a.

    Each term gets one amplitude estimation at level alpha/len(terms); the
    per-term amplitude intervals are combined by sign-aware interval
    arithmetic.
    """
    terms = list(terms)
    if not terms:
        raise ValueError("term list is empty")
    per_term_alpha = alpha / len(terms)
    lo_sum = hi_sum = 0.0
    records = []
    for i, term in enumerate(terms):
        rec = _run_single(
            method, term.a_true, epsilon_term, per_term_alpha,
            rep=i, master_seed=master_seed, overrides=dict(overrides or {}),
        )
        records.append(rec)
        # Expectation 1 - 2a is decreasing in a.
        e_lo, e_hi = 1.0 - 2.0 * rec.hi, 1.0 - 2.0 * rec.lo
        c = term.coefficient
        if c >= 0.0:
            lo_sum += c * e_lo
            hi_sum += c * e_hi
        else:
            lo_sum += c * e_hi
            hi_sum += c * e_lo
    return ObservableEstimate(lo_sum, hi_sum, tuple(records))


def export_records(records, fmt: str, path, trace: bool = False) -> None:
    """Write records as CSV (fixed column set) or JSON (full records; stage
    traces only when trace is set)."""
    try:
        if fmt == "csv":
            with open(path, "w", newline="") as fh:
                writer = csv.writer(fh)
                writer.writerow(CSV_COLUMNS)
                for r in records:
                    writer.writerow([_csv_value(r, col) for col in CSV_COLUMNS])
        elif fmt == "json":
            payload = []
            for r in records:
                d = asdict(r)
                if not trace:
                    d.pop("stage_radii")
                    d.pop("stage_ks")
                payload.append(d)
            with open(path, "w") as fh:
                json.dump(payload, fh, indent=1)
        else:
            raise ValueError(f"unknown export format {fmt!r}")
    except OSError as exc:
        raise OSError(f"cannot write records to {path}: {exc}") from exc


def _csv_value(record: ExperimentRecord, col: str):
    value = getattr(record, col)
    return repr(value) if isinstance(value, float) else value


def import_records(path) -> list[ExperimentRecord]:
    """Read records back from a CSV produced by export_records."""
    records = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames != CSV_COLUMNS:
            raise ValueError(f"unexpected CSV columns in {path}: {reader.fieldnames}")
        for row in reader:
            records.append(
                ExperimentRecord(
                    method=row["method"],
                    a_true=float(row["a_true"]),
                    epsilon=float(row["epsilon"]),
                    alpha=float(row["alpha"]),
                    rep=int(row["rep"]),
                    seed=int(row["seed"]),
                    n_oracle_k=int(row["n_oracle_k"]),
                    n_oracle_K=int(row["n_oracle_K"]),
                    n_shots=int(row["n_shots"]),
                    lo=float(row["lo"]),
                    hi=float(row["hi"]),
                    point=float(row["point"]),
                    covered=int(row["covered"]),
                    stages=int(row["stages"]),
                    max_k=int(row["max_k"]),
                    wall_ns=int(row["wall_ns"]),
                )
            )
    return records
