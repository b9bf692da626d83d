"""Figure rendering for CLI reports (headless matplotlib).

Each report-producing subcommand accepts ``--figure PATH``; the figure is
a plain bar chart summarising the report's central distribution, written
next to the delimited output rather than shown interactively.
"""

from __future__ import annotations

import os
from typing import Sequence

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

__all__ = ["save_bar_chart"]


def save_bar_chart(
    path: os.PathLike | str,
    labels: Sequence[object],
    values: Sequence[int],
    *,
    title: str,
    xlabel: str,
    ylabel: str,
    rotation: int = 0,
) -> None:
    fig, ax = plt.subplots(figsize=(max(4.0, 0.5 * len(values) + 2.0), 3.2))
    ax.bar(range(len(values)), values, color="#3465a4")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(
        [str(l) for l in labels],
        rotation=rotation,
        ha="right" if rotation else "center",
    )
    ax.set_title(title)
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    for spine in ("top", "right"):
        ax.spines[spine].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
