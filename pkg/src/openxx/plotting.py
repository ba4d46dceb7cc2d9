"""Render sweep results to figure files next to the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

_LABELS = {
    "t_right": r"$T_R$",
    "t_left": r"$T_L$",
    "delta": r"$\Delta$",
    "g": r"$g$",
}


def render_sweep(path, variable: str, header: list[str],
                 rows: list[list[float | None]], title: str = "",
                 ylabel: str = "") -> Path:
    """One curve per observable column versus the sweep variable.

    Skipped grid points are left out of the curves. Returns the figure path.
    """
    path = Path(path)
    xs = [row[0] for row in rows if not row[1]]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for j, name in enumerate(header[2:], start=2):
        ys = [row[j] for row in rows if not row[1]]
        ax.plot(xs, ys, label=name)
    ax.set_xlabel(_LABELS.get(variable, variable))
    if ylabel:
        ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(header) > 3:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def render_curves(path, xlabel: str, curves: dict[str, tuple], title: str = "",
                  ylabel: str = "", marker: str | None = None) -> Path:
    """Plot named (x, y) pairs on one axes and save to `path`."""
    path = Path(path)
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    for name, (xs, ys) in curves.items():
        ax.plot(xs, ys, label=name, marker=marker)
    ax.set_xlabel(xlabel)
    if ylabel:
        ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    if len(curves) > 1:
        ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
