"""Render a ratio table as a convergence figure (matplotlib, Agg)."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .report import RatioTable


def render_ratio_figure(table: RatioTable, path, title: str = "") -> None:
    """Plot deterministic value and randomized bracket against the
    horizon and write the figure to path."""
    ts = [row.horizon for row in table.rows]
    det = [float(row.det_value) for row in table.rows]
    lo = [float(row.rand_low) for row in table.rows]
    hi = [float(row.rand_high) for row in table.rows]

    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(ts, det, "o-", label="deterministic")
    ax.plot(ts, hi, "s-", label="randomized (upper)")
    ax.fill_between(ts, lo, hi, alpha=0.25, label="randomized bracket")
    ax.set_xlabel("horizon T")
    ax.set_ylabel("strict competitive ratio")
    ax.set_xticks(ts)
    if title:
        ax.set_title(title)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
