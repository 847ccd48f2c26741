"""Matplotlib figures: bounded complexes of tropical planes, tree arrangements, census f-vectors, graphs.

Layouts are deterministic.  Plane points are drawn through the fixed linear
chart x -> sum_i x_i (cos g i, sin g i) with g the golden angle.  Evenly
spaced directions would send e_1 + e_3 + e_5 to zero when n = 6 and make
distinct vertices collide; golden-angle directions avoid such cancellations.  Trees use a radial layout with
leaves evenly spaced in depth-first order.
"""

from __future__ import annotations

import math
from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .trees import LeafTree, to_notation  # noqa: E402

STYLE = {
    "font.size": 9,
    "axes.titlesize": 10,
    "savefig.dpi": 150,
    "svg.hashsalt": "dressian",
    "svg.fonttype": "none",
}


GOLDEN_ANGLE = math.pi * (3 - math.sqrt(5))


def chart(x: Sequence, n: int) -> tuple:
    cx = sum(float(v) * math.cos(GOLDEN_ANGLE * i) for i, v in enumerate(x))
    cy = sum(float(v) * math.sin(GOLDEN_ANGLE * i) for i, v in enumerate(x))
    return cx, cy


def draw_bounded_complex(plane, ax, rays: bool = True, labels: bool = True) -> None:
    """Vertices labelled by their cell matroids, bounded edges and polygons, stubs for rays."""
    n = plane.n
    pts = [chart(v.coords, n) for v in plane.vertices]
    for poly in plane.bounded_polygons:
        ring = _polygon_order([pts[i] for i in poly.vertices])
        ax.fill([p[0] for p in ring], [p[1] for p in ring], color="#dde6f0", zorder=0)
    for e in plane.edges:
        (x0, y0), (x1, y1) = pts[e.vertices[0]], pts[e.vertices[1]]
        ax.plot([x0, x1], [y0, y1], color="black", lw=1.4, zorder=1)
    if rays:
        span = max((max(abs(p[0]), abs(p[1])) for p in pts), default=1.0) or 1.0
        for r in plane.rays:
            x0, y0 = pts[r.vertices[0]]
            dx, dy = chart([1 if i + 1 in r.directions else 0 for i in range(n)], n)
            norm = math.hypot(dx, dy) or 1.0
            step = 0.35 * span / norm
            ax.annotate("", xy=(x0 + dx * step, y0 + dy * step), xytext=(x0, y0),
                        arrowprops={"arrowstyle": "->", "color": "#888888", "lw": 0.8}, zorder=1)
    ax.scatter([p[0] for p in pts], [p[1] for p in pts], s=18, color="#1f4e79", zorder=2)
    if labels:
        for p, v in zip(pts, plane.vertices):
            ax.annotate(str(v.label), p, textcoords="offset points", xytext=(4, 4), fontsize=7)
    ax.set_aspect("equal", adjustable="datalim")
    ax.set_xticks([])
    ax.set_yticks([])


def _polygon_order(points: list) -> list:
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)
    return sorted(points, key=lambda p: math.atan2(p[1] - cy, p[0] - cx))


def tree_layout(tree: LeafTree) -> dict:
    """Radial positions: leaves on the unit circle in depth-first order, internal nodes at leaf means."""
    nodes, edges = tree.graph()
    children = {}
    for parent, child, _ in edges:
        children.setdefault(parent, []).append(child)
    top = edges[0][0]
    order = []

    def visit(v):
        if isinstance(v, int):
            order.append(v)
            return
        for c in children.get(v, []):
            visit(c)

    order.append(edges[0][1])
    visit(top)
    pos = {}
    for k, leaf in enumerate(order):
        a = 2 * math.pi * k / len(order)
        pos[leaf] = (math.cos(a), math.sin(a))

    def place(v, depth):
        if isinstance(v, int):
            return pos[v]
        pts = [place(c, depth + 1) for c in children.get(v, [])]
        if v == top:
            pts.append(pos[edges[0][1]])
        shrink = 0.75 ** (depth + 1)
        x = sum(p[0] for p in pts) / len(pts) * shrink
        y = sum(p[1] for p in pts) / len(pts) * shrink
        pos[v] = (x, y)
        return pos[v]

    place(top, 0)
    return pos


def draw_tree(tree: LeafTree, ax, title: str = "") -> None:
    pos = tree_layout(tree)
    _, edges = tree.graph()
    for a, b, _ in edges:
        ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="black", lw=1.0)
    for v, (x, y) in pos.items():
        if isinstance(v, int):
            ax.annotate(str(v), (x, y), textcoords="offset points", xytext=(3 * x, 3 * y + 1),
                        ha="center", fontsize=8)
    ax.set_title(title)
    ax.set_aspect("equal")
    ax.axis("off")


def arrangement_figure(arrangement, notation: bool = True):
    n = arrangement.n
    cols = min(n, 5)
    rows = math.ceil(n / cols)
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(rows, cols, figsize=(2.0 * cols, 2.1 * rows), squeeze=False)
        for k, ax in enumerate(axes.flat):
            if k < n:
                t = arrangement.trees[k]
                draw_tree(t, ax, f"T{k + 1}: {to_notation(t.topology())}" if notation else f"T{k + 1}")
            else:
                ax.axis("off")
        fig.tight_layout()
    return fig


def plane_figure(plane, title: str = ""):
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(4.5, 4.5))
        draw_bounded_complex(plane, ax)
        ax.set_title(title)
        fig.tight_layout()
    return fig


def fvector_figure(fvec: Sequence[int], fvec_mod: Sequence[int], title: str = ""):
    with plt.rc_context(STYLE):
        fig, axes = plt.subplots(1, 2, figsize=(7, 3))
        for ax, vals, name in ((axes[0], fvec, "cells"), (axes[1], fvec_mod, "orbits")):
            ax.bar(range(len(vals)), vals, color="#1f4e79")
            ax.set_xticks(range(len(vals)))
            ax.set_xlabel("dimension")
            ax.set_ylabel(name)
            for i, v in enumerate(vals):
                ax.annotate(str(v), (i, v), ha="center", va="bottom", fontsize=7)
        fig.suptitle(title)
        fig.tight_layout()
    return fig


def graph_figure(names: Sequence[str], edges: Sequence[tuple], groups: Sequence[str], triangles=(), title: str = ""):
    """Nodes on concentric circles by group, edges as segments, triangles shaded."""
    kinds = sorted(set(groups), key=list(groups).index)
    pos = {}
    for ring, kind in enumerate(kinds):
        members = [nm for nm, g in zip(names, groups) if g == kind]
        radius = 1.0 + ring
        for k, nm in enumerate(members):
            a = 2 * math.pi * k / len(members) + ring * 0.3
            pos[nm] = (radius * math.cos(a), radius * math.sin(a))
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(6, 6))
        for tri in triangles:
            ax.fill([pos[v][0] for v in tri], [pos[v][1] for v in tri], color="#f4d6a0", zorder=0)
        for a, b in edges:
            ax.plot([pos[a][0], pos[b][0]], [pos[a][1], pos[b][1]], color="#555555", lw=0.8, zorder=1)
        colours = ["#c0392b", "#1f4e79", "#27ae60", "#8e44ad"]
        for kind, colour in zip(kinds, colours):
            pts = [pos[nm] for nm, g in zip(names, groups) if g == kind]
            ax.scatter([p[0] for p in pts], [p[1] for p in pts], color=colour, s=30, zorder=2, label=kind)
        for nm, (x, y) in pos.items():
            ax.annotate(nm, (x, y), textcoords="offset points", xytext=(3, 3), fontsize=5)
        ax.legend(loc="upper right", fontsize=7)
        ax.set_aspect("equal")
        ax.axis("off")
        ax.set_title(title)
        fig.tight_layout()
    return fig


def save(fig, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with plt.rc_context(STYLE):
        fig.savefig(path, metadata={"Date": None} if path.suffix == ".svg" else None)
    plt.close(fig)
    return path
