"""Percentage complexity improvement of a challenger method over a baseline,
one bar per target accuracy."""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt

from .common import aggregate, load_csv, run_script


def render(input_path, output_path, baseline: str = "iqae-cp",
           challenger: str = "biqae-beta", weighting: str = "K") -> dict:
    """Render the improvement bars; returns {epsilon: percent}."""
    cells = aggregate(load_csv(input_path), weighting)
    base = {c.epsilon: c.mean_complexity for c in cells if c.method == baseline}
    chal = {c.epsilon: c.mean_complexity for c in cells
            if c.method == challenger}
    shared = sorted(set(base) & set(chal))
    improvements = {
        eps: 100.0 * (base[eps] - chal[eps]) / base[eps] for eps in shared
    }

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.set_xlabel("target accuracy")
    ax.set_ylabel(f"improvement of {challenger} over {baseline} (%)")
    if shared:
        labels = [f"{eps:.0e}" for eps in shared]
        ax.bar(labels, [improvements[eps] for eps in shared])
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)
    return improvements


def _render_args(args):
    """Improvement bar chart from a two-method harness CSV export."""
    render(args.input, args.output, args.baseline, args.challenger)


def main(argv=None) -> int:
    def extra(parser):
        parser.add_argument("--baseline", default="iqae-cp")
        parser.add_argument("--challenger", default="biqae-beta")

    return run_script(_render_args, argv, extra)


if __name__ == "__main__":
    sys.exit(main())
