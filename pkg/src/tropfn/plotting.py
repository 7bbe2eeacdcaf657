"""Figure rendering for functions and polygonal lines.

Rendering is the one place floats appear: exact breakpoint data is converted
at the last moment for matplotlib.  Figures always go to files (Agg backend),
never to a display.
"""

from __future__ import annotations

from fractions import Fraction

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .parametrize import PolygonalLine, slope_vectors
from .pwl import PwlFunction

__all__ = ["function_table_points", "save_function_figure", "save_polyline_figure"]


def function_table_points(f: PwlFunction, margin: int = 1) -> list[Fraction]:
    """Breakpoints plus one sentinel beyond each end (enough to draw exactly)."""
    if not f.breakpoints:
        return [Fraction(-margin), Fraction(0), Fraction(margin)]
    pts = [f.breakpoints[0] - margin]
    pts.extend(f.breakpoints)
    pts.append(f.breakpoints[-1] + margin)
    return pts


def save_function_figure(f: PwlFunction, path: str, *, margin: int = 1,
                         title: str | None = None) -> None:
    pts = function_table_points(f, margin)
    xs = [float(x) for x in pts]
    ys = [float(f(x)) for x in pts]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(xs, ys, "-", color="tab:blue", lw=1.8)
    if f.breakpoints:
        ax.plot(xs[1:-1], ys[1:-1], "o", color="tab:red", ms=4, zorder=3)
    ax.grid(True, alpha=0.3)
    ax.set_xlabel("x")
    ax.set_ylabel("f(x)")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_polyline_figure(line: PolygonalLine, path: str, *,
                         ray_length: float = 1.5, title: str | None = None) -> None:
    """Draw the first two coordinates: segments solid, rays dashed."""
    verts = [(float(v[0]), float(v[1]) if line.dimension > 1 else 0.0)
             for v in line.vertices]
    vecs = slope_vectors(line)

    def ray_step(vec):
        dx = float(vec[0])
        dy = float(vec[1]) if line.dimension > 1 else 0.0
        norm = max((dx * dx + dy * dy) ** 0.5, 1e-9)
        return dx / norm * ray_length, dy / norm * ray_length

    fig, ax = plt.subplots(figsize=(5.0, 5.0))
    xs = [v[0] for v in verts]
    ys = [v[1] for v in verts]
    ax.plot(xs, ys, "-o", color="tab:blue", lw=1.8, ms=5)
    dx, dy = ray_step(vecs[0])
    ax.plot([xs[0] - dx, xs[0]], [ys[0] - dy, ys[0]], "--", color="tab:blue")
    dx, dy = ray_step(vecs[-1])
    ax.plot([xs[-1], xs[-1] + dx], [ys[-1], ys[-1] + dy], "--", color="tab:blue")
    ax.grid(True, alpha=0.3)
    ax.set_aspect("equal", adjustable="datalim")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
