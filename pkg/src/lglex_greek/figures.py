"""Report figures rendered next to the delimited outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .normalize import CATEGORIES  # noqa: E402


def save_change_histogram(
    histogram: dict[str, tuple[int, float]], path: Path | str
) -> None:
    """Bar chart of the change categories (count and percent) as a PNG."""
    counts = [histogram[cat][0] for cat in CATEGORIES]
    percents = [histogram[cat][1] for cat in CATEGORIES]
    fig, ax = plt.subplots(figsize=(7, 4))
    bars = ax.bar(range(len(CATEGORIES)), percents, color="#4878a8")
    ax.set_xticks(range(len(CATEGORIES)))
    ax.set_xticklabels([c.replace("_", " ") for c in CATEGORIES], rotation=20, ha="right")
    ax.set_ylabel("share of changes (%)")
    ax.set_title("Heading and column changes by category")
    for bar, count, percent in zip(bars, counts, percents):
        ax.annotate(
            f"{count} ({percent:.1f}%)",
            (bar.get_x() + bar.get_width() / 2, bar.get_height()),
            ha="center", va="bottom", fontsize=8,
        )
    ax.set_ylim(0, max(percents + [1.0]) * 1.2)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
