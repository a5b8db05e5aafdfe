"""Figure rendering for sweep profiles and verification reports.

Figures are written to files next to the delimited output; the Agg backend
keeps everything headless.
"""

from __future__ import annotations

import math
from typing import Sequence


def _pyplot():
    import matplotlib

    matplotlib.use("Agg", force=True)
    import matplotlib.pyplot as plt

    return plt


def save_sweep_figure(rows, path: str, label: str, weighted: bool = False) -> None:
    """Plot a mean (or weighted-mean) profile against -log2(1-r)."""
    plt = _pyplot()
    ks = [-math.log2(1.0 - r) for r, *_ in rows]
    values = [v for _, v, *_ in rows]
    fig, ax = plt.subplots(figsize=(6.4, 4.0))
    ax.plot(ks, values, marker="o", ms=3, lw=1.2)
    ax.set_yscale("log")
    ax.set_xlabel(r"$-\log_2(1-r)$")
    ax.set_ylabel("weighted mean" if weighted else "integral mean")
    ax.set_title(label)
    ax.grid(True, which="both", alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_verify_figure(reports: Sequence, path: str) -> None:
    """Bar chart of per-check violations relative to their tolerances."""
    plt = _pyplot()
    names = [f"{r.name}: {r.instance}" for r in reports]
    margins = [r.max_violation - r.tolerance for r in reports]
    colors = [
        "#2a7e43" if r.ok else "#b33" for r in reports
    ]
    height = max(2.5, 0.22 * len(reports) + 1.2)
    fig, ax = plt.subplots(figsize=(9.0, height))
    ax.barh(range(len(reports)), margins, color=colors)
    ax.axvline(0.0, color="black", lw=0.8)
    ax.set_yticks(range(len(reports)))
    ax.set_yticklabels(names, fontsize=5)
    ax.set_xlabel("violation minus tolerance (negative = satisfied)")
    ax.set_xscale("symlog", linthresh=1e-12)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
