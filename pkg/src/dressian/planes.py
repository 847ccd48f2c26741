"""Tropical planes as the polyhedral complexes dual to matroid subdivisions of Delta(3,n).

A point x lies on the plane of pi when the minimisers of pi(S) - <x, e_S>
form a loopless matroid.  Vertices are dual to maximal cells, edges and
2-cells to loopless faces of codimension one and two; a cell is bounded
when its dual face meets the interior of the hypersimplex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arrangements import (
    DressianCensus,
    TreeArrangement,
    arrangement_from_subdivision,
    trivalent_realizable,
)
from .foundations import InvalidInput, canonical_vector, from_mask, rat
from .golden import DR36_TYPES
from .matroid import Matroid, MatroidLabel, classify_label, is_series_parallel
from .subdivision import MatroidSubdivision, regular_subdivision
from .tropical import INF, TropicalPluckerVector, cone_signature, relation_action


class NotGeneric(InvalidInput):
    pass


class NotInCensus(InvalidInput):
    pass


@dataclass(frozen=True)
class PlaneVertex:
    coords: tuple          # normalised so that x_1 = 0
    cell: Matroid
    label: MatroidLabel


@dataclass(frozen=True)
class PlaneCell:
    """A 1- or 2-cell: its dual face, the vertices it touches, and the directions it is unbounded in."""

    dim: int
    face: frozenset
    vertices: tuple
    bounded: bool
    directions: tuple      # i such that the cell recedes along e_i (empty when bounded)


@dataclass
class TropicalPlaneComplex:
    n: int
    pi: TropicalPluckerVector
    subdivision: MatroidSubdivision
    vertices: list
    edges: list
    rays: list
    bounded_polygons: list
    unbounded_polygons: list

    def f_vector(self) -> tuple:
        return f_vector(self)

    def bounded_edges(self) -> list:
        return [(e.vertices[0], e.vertices[1]) for e in self.edges]

    def is_series_parallel(self) -> bool:
        return all(is_series_parallel(v.cell) for v in self.vertices)

    def arrangement(self) -> TreeArrangement:
        return arrangement_from_subdivision(self.subdivision)


def _normalise(x: Sequence[Fraction]) -> tuple:
    return tuple(v - x[0] for v in x)


def plane_from_plucker(pi: TropicalPluckerVector) -> TropicalPlaneComplex:
    if pi.d != 3:
        raise InvalidInput("planes need d = 3")
    if not pi.is_finite:
        raise InvalidInput("plane_from_plucker needs a finite vector")
    sub = regular_subdivision(pi)
    n = pi.n
    index = {cell: k for k, cell in enumerate(sub.cells)}
    vertices = []
    for cell, m in zip(sub.cells, sub.maximal_cells):
        vertices.append(PlaneVertex(_normalise(sub.dual_points[cell]), m, classify_label(m)))
    full = (1 << n) - 1
    faces = sub.faces()
    edges, rays, bpoly, upoly = [], [], [], []
    for codim in (1, 2):
        for face in faces[codim]:
            union = 0
            inter = full
            for b in face.points:
                union |= b
                inter &= b
            if union != full:
                continue  # a loop: the face lies in a deletion facet and is not on the plane
            directions = tuple(i + 1 for i in range(n) if inter >> i & 1)
            verts = tuple(index[sub.cells[c]] for c in face.cells)
            cell = PlaneCell(codim, face.points, verts, face.interior, directions)
            if codim == 1:
                (edges if face.interior else rays).append(cell)
            else:
                (bpoly if face.interior else upoly).append(cell)
    return TropicalPlaneComplex(n, pi, sub, vertices, edges, rays, bpoly, upoly)


def f_vector(plane: TropicalPlaneComplex) -> tuple:
    """(f_0, f_1^b, f_1^u, f_2^b, f_2^u): vertices, bounded edges, rays, bounded and unbounded 2-cells."""
    return (len(plane.vertices), len(plane.edges), len(plane.rays),
            len(plane.bounded_polygons), len(plane.unbounded_polygons))


def plane_f_vector_bounds(n: int) -> tuple:
    """Upper bounds on (f_0, f_1^b, f_1^u, f_2^b) for planes in TP^(n-1)."""
    return ((n - 2) * (n - 3) // 2, (n - 3) * (n - 4), n * (n - 3), (n - 4) * (n - 5) // 2)


def trivalent_unbounded_counts(n: int) -> tuple:
    """(f_1^u, f_2^u) when all n trees are trivalent."""
    return n * (n - 3), n * (n - 4) + n * (n - 1) // 2


def point_in_plane(pi: TropicalPluckerVector, x: Sequence) -> bool:
    """For every 4-set, min of pi(tau - i) + x_i over i in tau is attained at least twice."""
    if pi.d != 3:
        raise InvalidInput("planes need d = 3")
    x = [rat(v) for v in x]
    if len(x) != pi.n:
        raise InvalidInput("point has the wrong length")
    for tau in itertools.combinations(range(1, pi.n + 1), 4):
        terms = []
        for i in tau:
            v = pi[tuple(e for e in tau if e != i)]
            if v is not INF:
                terms.append(v + x[i - 1])
        if not terms:
            continue
        low = min(terms)
        if terms.count(low) < 2:
            return False
    return True


def type_table(n: int) -> dict:
    """Canonical signature of each generic type -> name (n = 6) or index 1.. (otherwise)."""
    if n == 6:
        from .trees import parse_tree
        out = {}
        full = set(range(1, 7))
        for name, rows, _ in DR36_TYPES:
            arr = TreeArrangement(6, [parse_tree(r, full - {i}) for i, r in enumerate(rows, start=1)])
            out[canonical_vector(arr.signature(), relation_action(3, 6)).key] = name
        return out
    return {key: str(k) for k, key in enumerate(trivalent_realizable(n), start=1)}


def classify_type(plane: TropicalPlaneComplex, census: DressianCensus | None = None) -> str:
    """Name of the generic type of the plane: Table names for n = 6, census index otherwise."""
    n = plane.n
    sig = cone_signature(plane.pi).compact()
    if 3 in sig:
        raise NotGeneric("some tree of the plane is not trivalent")
    key = canonical_vector(sig, relation_action(3, n)).key
    if census is not None and key not in census.by_signature():
        raise NotInCensus("the plane's cell is missing from the census")
    table = type_table(n)
    if key not in table:
        raise NotInCensus("no generic type with this signature")
    return table[key]


def dual_cell_bases(plane: TropicalPlaneComplex, k: int) -> list:
    return sorted(from_mask(b) for b in plane.vertices[k].cell.bases)


def random_plane_point(plane: TropicalPlaneComplex, rng) -> tuple:
    """A random point of a random bounded or unbounded cell (convex combination plus ray steps)."""
    cells = plane.edges + plane.rays + plane.bounded_polygons + plane.unbounded_polygons
    if not cells:
        return plane.vertices[0].coords
    cell = rng.choice(cells)
    weights = [Fraction(rng.randint(1, 9)) for _ in cell.vertices]
    total = sum(weights)
    x = [Fraction(0)] * plane.n
    for w, v in zip(weights, cell.vertices):
        x = [a + w / total * b for a, b in zip(x, plane.vertices[v].coords)]
    for i in cell.directions:
        x[i - 1] += Fraction(rng.randint(1, 9), rng.randint(1, 4))
    return tuple(x)
