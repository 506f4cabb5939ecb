"""Figures for the report command (written to files, never shown)."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .cometric import Cometric  # noqa: E402
from .polyring.numbers import to_complex  # noqa: E402


def _grid_values(poly, X, Y):
    out = np.zeros_like(X)
    for e, c in poly.terms.items():
        out += float(c) * X ** e[0] * Y ** e[1]
    return out


def _extent(points) -> float:
    coords = [abs(to_complex(c).real) for p in points for c in p]
    return max([1.5] + [1.25 * c for c in coords])


def plot_boundary(g: Cometric, resolution, path: str, title: str = "") -> str:
    """Zero set of D, the positive-definite region shaded, singular points labelled."""
    pts = resolution.real_points if resolution is not None else []
    lim = _extent([bp.point for bp in pts])
    xs = np.linspace(-lim, lim, 401)
    X, Y = np.meshgrid(xs, xs)
    D = _grid_values(g.boundary, X, Y)
    g11 = _grid_values(g[0, 0], X, Y)
    inside = (D > 0) & (g11 > 0)
    fig, ax = plt.subplots(figsize=(5.5, 5.5))
    ax.contourf(X, Y, inside.astype(float), levels=[0.5, 1.5], colors=["#cfe3f5"])
    ax.contour(X, Y, D, levels=[0.0], colors="#1f4e79", linewidths=1.4)
    for bp in pts:
        px, py = (to_complex(c).real for c in bp.point)
        ax.plot(px, py, "o", color="#b03a2e", ms=6)
        ax.annotate(f"{bp.verdict.label}  {bp.verdict.angle_text()}", (px, py), textcoords="offset points",
                    xytext=(6, 6), fontsize=8)
    ax.set_xlim(-lim, lim)
    ax.set_ylim(-lim, lim)
    ax.set_aspect("equal")
    ax.set_xlabel(g.names[0])
    ax.set_ylabel(g.names[1])
    ax.set_title(title or "boundary D = 0")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def plot_shell_ratios(estimates, path: str, lower: float, upper: float) -> str:
    """Shell-to-shell ratios of the integrability estimate, one line per boundary point."""
    fig, ax = plt.subplots(figsize=(6, 4))
    for label, _, est in estimates:
        ax.plot(range(1, len(est.ratios) + 1), est.ratios, marker="o", label=f"{label}: {est.verdict}")
    ax.axhline(lower, color="grey", ls="--", lw=0.8)
    ax.axhline(upper, color="grey", ls=":", lw=0.8)
    ax.set_xlabel("shell index")
    ax.set_ylabel("ratio of successive shell integrals")
    ax.set_ylim(0, 1.3)
    ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path
