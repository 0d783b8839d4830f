"""Complexity versus amplitude with a through-origin sqrt(a(1-a)) fit."""

from __future__ import annotations

import math
import sys

import matplotlib.pyplot as plt

from .common import aggregate, load_csv, run_script, sqrt_a_fit


def render(input_path, output_path, weighting: str = "K") -> dict[str, float]:
    """Render the amplitude sweep; returns the fitted coefficient per method."""
    cells = aggregate(load_csv(input_path), weighting)

    fig, ax = plt.subplots(figsize=(6, 4.5))
    ax.set_xlabel("amplitude")
    ax.set_ylabel(f"mean oracle complexity ({weighting}-weighted)")

    betas: dict[str, float] = {}
    for method in sorted({c.method for c in cells}):
        pts = sorted(
            (c.a_true, c.mean_complexity)
            for c in cells
            if c.method == method and 0.0 < c.a_true < 1.0
        )
        if not pts:
            continue
        xs = [p[0] for p in pts]
        ys = [p[1] for p in pts]
        ax.plot(xs, ys, "o", label=method)
        if len(pts) >= 3:
            beta = sqrt_a_fit(pts)
            betas[method] = beta
            grid = [i / 200 for i in range(1, 200)]
            ax.plot(grid, [beta * math.sqrt(a * (1 - a)) for a in grid],
                    "--", alpha=0.6, label=f"{method} fit ({beta:.3g})")
    if betas or cells:
        ax.legend()
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)
    return betas


def _render_args(args):
    """Amplitude-sweep figure from a harness CSV export."""
    render(args.input, args.output)


def main(argv=None) -> int:
    return run_script(_render_args, argv)


if __name__ == "__main__":
    sys.exit(main())
