"""Figure rendering for two-dimensional problems.

Draws the constraint set, classified candidate points, and the
objective-space picture (shifted image, negated ordering cone, and any
witness ray) to an SVG file. Unbounded regions are clipped to a declared
viewport; edges introduced by the clipping are dashed so the picture
never pretends a region is bounded.

Rendering is the only place in the package where rationals are lowered
to floats; all machine-readable output stays exact.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch
from .model import LinearVOP, shift_of
from .polyhedra import HPolyhedron, box, generated_cone_closure, negate
from .rationals import dot, frac, solve_linear, vec_sub, vector

_Z = Fraction(0)

DEFAULT_VIEWPORT = (Fraction(-5), Fraction(5), Fraction(-5), Fraction(5))


def parse_viewport(text: str) -> tuple:
    parts = vector([p for p in text.split(",")], 4)
    xmin, xmax, ymin, ymax = parts
    if xmin >= xmax or ymin >= ymax:
        raise DimensionMismatch("viewport must satisfy xmin < xmax and ymin < ymax")
    return (xmin, xmax, ymin, ymax)


def _viewport_box(viewport) -> HPolyhedron:
    xmin, xmax, ymin, ymax = (frac(v) for v in viewport)
    return HPolyhedron(2,
                       ((Fraction(1), _Z), (Fraction(-1), _Z),
                        (_Z, Fraction(1)), (_Z, Fraction(-1))),
                       (xmax, -xmin, ymax, -ymin))


def clipped_polygon(region: HPolyhedron, viewport):
    """Vertices of region clipped to the viewport, in drawing order,
    plus a per-edge flag telling whether the edge came from clipping."""
    if region.dim != 2:
        raise DimensionMismatch("plots are only drawn for two-dimensional sets")
    clipped = region.intersect(_viewport_box(viewport))
    rows = list(clipped.ineqs()) + [(e, d) for e, d in clipped.eqs()]
    verts = set()
    for (a1, b1), (a2, b2) in itertools.combinations(rows, 2):
        pt = solve_linear([a1, a2], [b1, b2])
        if pt is not None and clipped.contains(pt):
            verts.add(pt)
    if not verts:
        return [], []
    cx = sum(v[0] for v in verts) / len(verts)
    cy = sum(v[1] for v in verts) / len(verts)
    import math

    ordered = sorted(verts, key=lambda v: math.atan2(float(v[1] - cy), float(v[0] - cx)))
    orig_rows = list(region.ineqs()) + [(e, d) for e, d in region.eqs()]

    def edge_is_original(p, q):
        return any(dot(a, p) == b and dot(a, q) == b for a, b in orig_rows)

    flags = []
    for i in range(len(ordered)):
        p, q = ordered[i], ordered[(i + 1) % len(ordered)]
        flags.append(not edge_is_original(p, q))
    return ordered, flags


def _shade_generated_cone(ax, shifted: HPolyhedron, viewport, samples=80):
    """Shade the criterion cone section from exact membership samples.

    The closed generated cone has no single halfspace system in the lazy
    representation, so the section is rasterized from pointwise-exact
    membership tests instead of drawn as a polygon.
    """
    gcc = generated_cone_closure(shifted)
    xmin, xmax, ymin, ymax = (frac(v) for v in viewport)
    cells = []
    for iy in range(samples):
        wy = ymin + (ymax - ymin) * Fraction(2 * iy + 1, 2 * samples)
        row = []
        for ix in range(samples):
            wx = xmin + (xmax - xmin) * Fraction(2 * ix + 1, 2 * samples)
            row.append(1.0 if gcc.contains((wx, wy)) else 0.0)
        cells.append(row)
    ax.imshow(cells, origin="lower", aspect="auto", cmap="Greens", alpha=0.25,
              vmin=0.0, vmax=2.5,
              extent=(float(xmin), float(xmax), float(ymin), float(ymax)),
              interpolation="nearest")
    ax.plot([], [], "s", color="tab:green", alpha=0.4,
            label="generated cone closure")


def _draw_region(ax, region: HPolyhedron, viewport, color, label=None, alpha=0.25):
    verts, clipped_flags = clipped_polygon(region, viewport)
    if not verts:
        return
    xs = [float(v[0]) for v in verts]
    ys = [float(v[1]) for v in verts]
    if len(verts) >= 3:
        ax.fill(xs, ys, color=color, alpha=alpha, label=label, linewidth=0)
    for i, clipped in enumerate(clipped_flags):
        j = (i + 1) % len(verts)
        style = ":" if clipped else "-"
        ax.plot([xs[i], xs[j]], [ys[i], ys[j]], style, color=color, linewidth=1.4)
    if len(verts) < 3 and label:
        ax.plot(xs, ys, "-", color=color, label=label, linewidth=1.8)


def render_problem_figure(problem: LinearVOP, path, *, pert=None,
                          kind: str = "epsilon", point=None,
                          classification=None, viewport=DEFAULT_VIEWPORT,
                          witness_ray=None) -> str:
    """Write an SVG with the decision-space and objective-space pictures."""
    if problem.n != 2 or problem.m != 2:
        raise DimensionMismatch("figures need two decision and two objective dimensions")
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(11, 5))

    _draw_region(ax1, problem.X, viewport, "tab:blue", label="constraint set")
    if classification:
        groups = {
            ("proper",): ("tab:green", "o", "efficient and proper"),
            ("efficient",): ("tab:orange", "s", "efficient, not proper"),
            ("neither",): ("tab:red", "x", "not efficient"),
        }
        buckets = {"proper": [], "efficient": [], "neither": []}
        for row in classification:
            key = ("proper" if row.benson_proper else
                   "efficient" if row.eps_efficient else "neither")
            buckets[key].append(row.point)
        for key, pts in buckets.items():
            if not pts:
                continue
            color, marker, label = groups[(key,)]
            ax1.plot([float(p[0]) for p in pts], [float(p[1]) for p in pts],
                     marker, linestyle="none", color=color, label=label,
                     markersize=5)
    if point is not None:
        ax1.plot([float(point[0])], [float(point[1])], "*", color="black",
                 markersize=12, label="query point")
    ax1.set_title("decision space")
    ax1.set_xlim(float(viewport[0]), float(viewport[1]))
    ax1.set_ylim(float(viewport[2]), float(viewport[3]))
    ax1.legend(loc="upper right", fontsize=8)
    ax1.axhline(0, color="gray", linewidth=0.5)
    ax1.axvline(0, color="gray", linewidth=0.5)

    _draw_region(ax2, problem.objective_image, viewport, "tab:blue",
                 label="objective image")
    _draw_region(ax2, negate(problem.K).carrier, viewport, "tab:red",
                 label="negated ordering cone", alpha=0.18)
    if point is not None and pert is not None:
        shift = vector(shift_of(pert), 2)
        c = vec_sub(problem.evaluate(vector(point, 2)), shift)
        shifted = problem.objective_image.translate(tuple(-v for v in c))
        _draw_region(ax2, shifted, viewport, "tab:purple",
                     label="shifted image", alpha=0.18)
        _shade_generated_cone(ax2, shifted, viewport)
    if witness_ray is not None:
        ax2.annotate("witness", xy=(float(witness_ray[0]), float(witness_ray[1])),
                     xytext=(0, 0),
                     arrowprops={"arrowstyle": "->", "color": "black"})
    ax2.set_title("objective space")
    ax2.set_xlim(float(viewport[0]), float(viewport[1]))
    ax2.set_ylim(float(viewport[2]), float(viewport[3]))
    ax2.legend(loc="upper right", fontsize=8)
    ax2.axhline(0, color="gray", linewidth=0.5)
    ax2.axvline(0, color="gray", linewidth=0.5)

    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)
    return str(path)
