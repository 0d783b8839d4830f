"""Log-log complexity-vs-error figure with fitted guide lines per method."""

from __future__ import annotations

import math
import sys

import matplotlib.pyplot as plt

from .common import aggregate, load_csv, loglog_fit, run_script


def render(input_path, output_path, weighting: str = "k") -> dict[str, float]:
    """Render the scaling figure; returns the fitted slope per method."""
    rows = load_csv(input_path)
    cells = aggregate(rows, weighting)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.set_xlabel("median absolute error")
    ax.set_ylabel(f"mean oracle complexity ({weighting}-weighted)")
    ax.set_xscale("log")
    ax.set_yscale("log")

    slopes: dict[str, float] = {}
    methods = sorted({c.method for c in cells})
    for method in methods:
        pts = sorted(
            (c.median_abs_error, c.mean_complexity)
            for c in cells if c.method == method
        )
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.plot(xs, ys, "o-", label=method)
        if len(pts) >= 2 and len(set(xs)) >= 2:
            slope, intercept = loglog_fit(pts)
            slopes[method] = slope
            guide = [10 ** (intercept + slope * math.log10(x)) for x in xs]
            ax.plot(xs, guide, "--", alpha=0.6,
                    label=f"{method} fit (slope {slope:.2f})")
    if methods:
        ax.legend()
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)
    return slopes


def _render_args(args):
    """Log-log scaling plot from a harness CSV export."""
    render(args.input, args.output, args.weighting)


def main(argv=None) -> int:
    def extra(parser):
        parser.add_argument("--weighting", choices=("k", "K"), default="k")

    return run_script(_render_args, argv, extra)


if __name__ == "__main__":
    sys.exit(main())
