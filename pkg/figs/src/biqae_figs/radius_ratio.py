"""Per-stage interval-radius-ratio curve from a JSON trace export."""

from __future__ import annotations

import sys

import matplotlib.pyplot as plt

from .common import load_trace_json, run_script


def render(input_path, output_path) -> list[float]:
    """Render mean radius ratio by stage transition; returns the means."""
    records = load_trace_json(input_path)
    by_stage: dict[int, list[float]] = {}
    for record in records:
        radii = record["stage_radii"]
        for t, (prev, cur) in enumerate(zip(radii, radii[1:]), start=1):
            if cur > 0.0:
                by_stage.setdefault(t, []).append(prev / cur)
    stages = sorted(by_stage)
    means = [sum(by_stage[t]) / len(by_stage[t]) for t in stages]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.set_xlabel("stage transition")
    ax.set_ylabel("mean radius ratio")
    if stages:
        ax.plot(stages, means, "o-")
    fig.tight_layout()
    fig.savefig(output_path)
    plt.close(fig)
    return means


def _render_args(args):
    """Radius-ratio-by-stage curve from a JSON trace export."""
    render(args.input, args.output)


def main(argv=None) -> int:
    return run_script(_render_args, argv)


if __name__ == "__main__":
    sys.exit(main())
