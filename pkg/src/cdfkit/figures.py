"""Report figures rendered to files alongside the textual summaries."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")  # headless rendering only

import matplotlib.pyplot as plt


def save_bar_chart(counts: dict, title: str, ylabel: str, path: Path) -> Path:
    """Render a labeled bar chart of a {category: count} mapping."""
    fig, ax = plt.subplots(figsize=(6, 4))
    labels = list(counts) or ["(none)"]
    values = [counts[k] for k in counts] or [0]
    ax.bar(range(len(labels)), values, color="#3465a4")
    ax.set_xticks(range(len(labels)))
    ax.set_xticklabels(labels, rotation=20, ha="right")
    ax.set_title(title)
    ax.set_ylabel(ylabel)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def render_summary_figures(summary: dict, out_dir) -> list[Path]:
    """Write the standard summary charts (event types, frames per period)
    into a directory; returns the created paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    written.append(
        save_bar_chart(
            summary.get("event_counts", {}),
            "Events by type",
            "events",
            out_dir / "event_types.png",
        )
    )
    written.append(
        save_bar_chart(
            summary.get("frame_counts", {}),
            "Tracking frames by period",
            "frames",
            out_dir / "frames_per_period.png",
        )
    )
    return written
