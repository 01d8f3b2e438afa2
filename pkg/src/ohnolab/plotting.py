"""Report figures.  Uses the non-interactive Agg backend and only writes files."""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def residual_plot(labels: Sequence[str], log10_residuals: Sequence[float], tol_log10: float,
                  path: str | Path, title: str = "") -> Path:
    """Scatter of ``log10 |residual|`` per check with the tolerance line."""
    path = Path(path)
    floor = min([v for v in log10_residuals if math.isfinite(v)] + [tol_log10]) - 5
    ys = [v if math.isfinite(v) else floor for v in log10_residuals]
    fig, ax = plt.subplots(figsize=(max(6, 0.12 * len(ys)), 4))
    ax.scatter(range(len(ys)), ys, s=10)
    ax.axhline(tol_log10, color="red", linestyle="--", label=f"tolerance 1e{tol_log10:g}")
    ax.set_xlabel("check")
    ax.set_ylabel("log10 |residual|")
    if len(labels) <= 30:
        ax.set_xticks(range(len(labels)), labels, rotation=90, fontsize=6)
    ax.set_title(title)
    ax.legend(loc="upper right")
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path


def table1_plot(weights: Sequence[int], ohno_span: Sequence[int],
                all_relations: Sequence[int | None], reference: dict[str, dict[int, int]],
                path: str | Path) -> Path:
    """Computed relation counts next to the reference counts, on a log scale."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(7, 4))
    w = 0.2
    xs = list(range(len(weights)))
    ref_span = [reference["ohno_span"].get(n, 0) for n in weights]
    ref_all = [reference["all_relations"].get(n, 0) for n in weights]
    got_all = [a if a is not None else 0 for a in all_relations]
    ax.bar([x - 1.5 * w for x in xs], [v + 1 for v in ohno_span], w, label="Ohno span (computed)")
    ax.bar([x - 0.5 * w for x in xs], [v + 1 for v in ref_span], w, label="Ohno span (reference)")
    ax.bar([x + 0.5 * w for x in xs], [v + 1 for v in got_all], w, label="all relations (found)")
    ax.bar([x + 1.5 * w for x in xs], [v + 1 for v in ref_all], w, label="all relations (reference)")
    ax.set_yscale("log")
    ax.set_xticks(xs, [str(n) for n in weights])
    ax.set_xlabel("weight")
    ax.set_ylabel("count + 1")
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=100)
    plt.close(fig)
    return path
