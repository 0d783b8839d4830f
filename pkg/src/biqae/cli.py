"""Command-line benchmark driver.

Subcommands: run (single cell), sweep-epsilon, sweep-amplitude, observable,
fit.  Records go to CSV (or JSON with --trace); fits are emitted as JSON.
Exit codes: 0 success, 2 when any run hit the shot budget, 1 on error.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import harness
from .harness import ExperimentPlan, ObservableTerm

WEIGHTING = {"k": "k_weighted", "K": "K_weighted"}


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--method", required=True, choices=harness.METHODS)
    parser.add_argument("--alpha", type=float, default=0.05)
    parser.add_argument("--reps", type=int, default=1)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--n-incre", type=int, default=10)
    parser.add_argument("--weighting", choices=("k", "K"), default="k")
    parser.add_argument("--prior-r", type=int, default=1000)
    parser.add_argument("--max-shots", type=int, default=10**8,
                        help="shot guardrail per repetition")
    parser.add_argument("--trace", action="store_true",
                        help="export JSON with per-stage traces")
    parser.add_argument("--out", default=None, help="output path (default stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biqae")
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="one (a, epsilon) cell")
    _add_common(p_run)
    p_run.add_argument("--a", type=float, required=True)
    p_run.add_argument("--epsilon", type=float, required=True)

    p_eps = sub.add_parser("sweep-epsilon", help="one amplitude, many accuracies")
    _add_common(p_eps)
    p_eps.add_argument("--a", type=float, required=True)
    p_eps.add_argument("--epsilon", type=float, nargs="+", required=True)

    p_amp = sub.add_parser("sweep-amplitude", help="one accuracy, many amplitudes")
    _add_common(p_amp)
    p_amp.add_argument("--a", type=float, nargs="+", required=True)
    p_amp.add_argument("--epsilon", type=float, required=True)

    p_obs = sub.add_parser("observable",
                           help="weighted observable from a JSON term list")
    _add_common(p_obs)
    p_obs.add_argument("--terms", required=True,
                       help="JSON file: array of {coeff, a}")
    p_obs.add_argument("--epsilon", type=float, required=True,
                       help="per-term amplitude accuracy")

    p_fit = sub.add_parser("fit", help="scaling fit from an exported CSV")
    p_fit.add_argument("--in", dest="input", required=True)
    p_fit.add_argument("--model", choices=("loglog", "sqrt_a"), default="loglog")
    p_fit.add_argument("--weighting", choices=("k", "K"), default="k")
    p_fit.add_argument("--out", default=None)
    return parser


def _overrides(args) -> dict:
    return {
        "n_incre": args.n_incre,
        "weighting": WEIGHTING[args.weighting],
        "prior_r": args.prior_r,
        "max_shots": args.max_shots,
    }


def _emit_records(records, args) -> int:
    if args.out is None:
        _write_csv_stdout(records)
    else:
        fmt = "json" if args.trace or str(args.out).endswith(".json") else "csv"
        harness.export_records(records, fmt, args.out, trace=args.trace)
    return 2 if any(r.failed for r in records) else 0


def _write_csv_stdout(records) -> None:
    import csv

    writer = csv.writer(sys.stdout)
    writer.writerow(harness.CSV_COLUMNS)
    for r in records:
        writer.writerow([harness._csv_value(r, col) for col in harness.CSV_COLUMNS])


def _run_plan(args, a_values, epsilons) -> int:
    plan = ExperimentPlan(
        method=args.method,
        a_values=tuple(a_values),
        epsilons=tuple(epsilons),
        alpha=args.alpha,
        repetitions=args.reps,
        master_seed=args.seed,
        overrides=_overrides(args),
    )
    return _emit_records(harness.run_experiment(plan), args)


def _cmd_observable(args) -> int:
    with open(args.terms) as fh:
        raw = json.load(fh)
    terms = [ObservableTerm(float(t["coeff"]), float(t["a"])) for t in raw]
    est = harness.estimate_observable(
        terms, args.epsilon, args.alpha, args.method,
        master_seed=args.seed, overrides=_overrides(args),
    )
    payload = {
        "value_lo": est.value_lo,
        "value_hi": est.value_hi,
        "center": est.center,
        "n_terms": len(terms),
    }
    _write_json(payload, args.out)
    if args.trace and args.out:
        harness.export_records(est.records, "json", str(args.out) + ".records.json",
                               trace=True)
    return 2 if any(r.failed for r in est.records) else 0


def _cmd_fit(args) -> int:
    records = harness.import_records(args.input)
    cells = harness.summarize(records)
    convention = args.weighting
    points = []
    for cell in cells.values():
        complexity = (cell.mean_complexity_k if convention == "k"
                      else cell.mean_complexity_K)
        if args.model == "loglog":
            points.append((cell.median_abs_error, complexity))
        else:
            points.append((cell.a_true, complexity))
    fit = harness.fit_scaling(points, args.model)
    _write_json(
        {"model": args.model, "slope": fit.slope,
         "intercept": fit.intercept, "r_squared": fit.r_squared},
        args.out,
    )
    return 0


def _write_json(payload, out) -> None:
    text = json.dumps(payload, indent=1)
    if out is None:
        print(text)
    else:
        with open(out, "w") as fh:
            fh.write(text + "\n")


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "run":
            return _run_plan(args, [args.a], [args.epsilon])
        if args.command == "sweep-epsilon":
            return _run_plan(args, [args.a], args.epsilon)
        if args.command == "sweep-amplitude":
            return _run_plan(args, args.a, [args.epsilon])
        if args.command == "observable":
            return _cmd_observable(args)
        return _cmd_fit(args)
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
