"""Simplicial complexes over Dressian fans, integral homology, and the Pappus census.

The crosscut complex of a fan has the rays as vertices and a face for every
set of rays lying in a common cone.  Homology is computed from boundary
matrices by integer elimination (Smith normal form), which is only sensible
at desk scale; a size guard refuses larger inputs.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .arrangements import DressianCensus
from .foundations import (
    InvalidInput,
    TooLarge,
    canonical_orbit_rep,
    from_mask,
    maximize,
    rank,
)
from .matroid import Matroid, hessian, pappus
from .subdivision import MatroidSubdivision, mask_vector, refines, regular_subdivision
from .tropical import (
    INF,
    NotInDressian,
    TropicalPluckerVector,
    matroid_dressian_member,
    relation_action,
    trinomial_excludes,
)

HOMOLOGY_FACE_LIMIT = 100_000


# ---------------------------------------------------------------------------
# complexes

@dataclass
class CellComplex:
    """Cells graded by dimension.

    A simplicial complex stores each face as a sorted vertex tuple and the
    face relation is inclusion.  A general complex stores opaque cell keys
    and an explicit covering relation ``covers[(k, c)]`` listing the
    (k-1)-faces of c.
    """

    cells: dict                      # dim -> sorted list of cells
    simplicial: bool = True
    covers: dict = field(default_factory=dict)

    @classmethod
    def from_facets(cls, facets: Iterable[Iterable]) -> "CellComplex":
        faces = set()
        for f in facets:
            f = tuple(sorted(set(f)))
            if not f:
                continue
            for k in range(1, len(f) + 1):
                faces.update(itertools.combinations(f, k))
        if len(faces) > 10 * HOMOLOGY_FACE_LIMIT:
            raise TooLarge(f"{len(faces)} faces")
        cells = {}
        for f in faces:
            cells.setdefault(len(f) - 1, []).append(f)
        return cls({k: sorted(v) for k, v in sorted(cells.items())})

    @property
    def dimension(self) -> int:
        return max(self.cells, default=-1)

    def f_vector(self) -> tuple:
        return tuple(len(self.cells.get(k, ())) for k in range(self.dimension + 1))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * f for k, f in enumerate(self.f_vector()))

    def facets(self) -> list:
        if not self.simplicial:
            raise InvalidInput("facets are listed for simplicial complexes only")
        out = []
        for k in sorted(self.cells, reverse=True):
            for f in self.cells[k]:
                s = set(f)
                if not any(s < set(g) for g in out):
                    out.append(f)
        return sorted(out)

    def validate(self) -> None:
        """Face relation closed under taking faces and graded by size."""
        if self.simplicial:
            present = {f for v in self.cells.values() for f in v}
            for k, fs in self.cells.items():
                for f in fs:
                    if len(f) != k + 1:
                        raise InvalidInput(f"face {f} sits in the wrong dimension {k}")
                    for g in itertools.combinations(f, k):
                        if g and g not in present:
                            raise InvalidInput(f"face {g} of {f} is missing")
        else:
            for (k, c), lower in self.covers.items():
                if any(x not in self.cells.get(k - 1, ()) for x in lower):
                    raise InvalidInput(f"cell {c} has a boundary cell outside dimension {k - 1}")

    def graph(self) -> tuple:
        """(vertices, edges) of the 1-skeleton of a simplicial complex."""
        verts = [v[0] for v in self.cells.get(0, [])]
        return verts, list(self.cells.get(1, []))


def simplex_boundary(dim: int) -> CellComplex:
    """The boundary of the dim-simplex on vertices 1..dim+1."""
    return CellComplex.from_facets(itertools.combinations(range(1, dim + 2), dim))


def full_simplex(dim: int) -> CellComplex:
    return CellComplex.from_facets([tuple(range(1, dim + 2))])


# ---------------------------------------------------------------------------
# crosscut complex of a fan

def _absolute_signatures(census: DressianCensus, cells) -> list:
    """Every image under Sym(n) of the given orbit representatives, as int arrays."""
    action = relation_action(3, census.n)
    out = {}
    for c in cells:
        imgs = action.apply(np.asarray(c.signature, dtype=np.int16))
        for row in np.unique(imgs, axis=0):
            out[row.tobytes()] = row
    return [out[k] for k in sorted(out)]


def ray_containment(census: DressianCensus) -> tuple:
    """(rays, cells) where cells are sets of ray indices, one per cell of the fan.

    A ray lies on a cone when at every relation slot it either agrees with
    the cone's signature or has all three terms tied.
    """
    rays = _absolute_signatures(census, [c for c in census.cells if c.dimension == 0])
    cones = _absolute_signatures(census, [c for c in census.cells if c.dimension >= 0])
    R = np.array(rays)
    out = []
    for sig in cones:
        ok = ((R == sig) | (R == 3)).all(axis=1)
        out.append(frozenset(int(i) for i in np.nonzero(ok)[0]))
    return rays, out


def crosscut_complex(cells: Sequence[Iterable]) -> CellComplex:
    """Simplicial complex on the rays: every set of rays contained in one cone is a face.

    ``cells`` lists, for every cone of the fan, the rays it contains.
    """
    sets = sorted({frozenset(c) for c in cells if c}, key=lambda s: (-len(s), sorted(s)))
    maximal = []
    for s in sets:
        if not any(s <= m for m in maximal):
            maximal.append(s)
    return CellComplex.from_facets(sorted(tuple(sorted(m)) for m in maximal))


def census_crosscut(census: DressianCensus) -> CellComplex:
    _, cells = ray_containment(census)
    return crosscut_complex(cells)


# ---------------------------------------------------------------------------
# homology

def _boundary_rows(cx: CellComplex, k: int) -> list:
    """Sparse boundary map C_k -> C_{k-1}: one dict {row of (k-1)-face: sign} per k-face."""
    if cx.simplicial:
        index = {f: i for i, f in enumerate(cx.cells.get(k - 1, []))}
        cols = []
        for f in cx.cells.get(k, []):
            col = {}
            for j in range(len(f)):
                col[index[f[:j] + f[j + 1:]]] = -1 if j % 2 else 1
            cols.append(col)
        return cols
    index = {c: i for i, c in enumerate(cx.cells.get(k - 1, []))}
    cols = []
    for c in cx.cells.get(k, []):
        col = {}
        for face, sign in cx.covers[(k, c)]:
            col[index[face]] = sign
        cols.append(col)
    return cols


class _SparseMatrix:
    """Integer matrix kept as row and column dictionaries for elimination."""

    def __init__(self, cols: list):
        self.cols = {j: dict(c) for j, c in enumerate(cols) if c}
        self.rows = {}
        for j, col in self.cols.items():
            for i, v in col.items():
                self.rows.setdefault(i, {})[j] = v

    def _set(self, i, j, v):
        if v:
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, {})[i] = v
        else:
            self.rows.get(i, {}).pop(j, None)
            self.cols.get(j, {}).pop(i, None)

    def row_op(self, target, source, q):
        """row[target] -= q * row[source]"""
        for j, v in list(self.rows.get(source, {}).items()):
            self._set(target, j, self.rows.get(target, {}).get(j, 0) - q * v)

    def col_op(self, target, source, q):
        """col[target] -= q * col[source]"""
        for i, v in list(self.cols.get(source, {}).items()):
            self._set(i, target, self.cols.get(target, {}).get(i, 0) - q * v)

    def remove(self, i, j):
        """Delete row i and column j once the pivot is isolated."""
        self.rows.pop(i, None)
        self.cols.pop(j, None)
        self.rows = {k: v for k, v in self.rows.items() if v}
        self.cols = {k: v for k, v in self.cols.items() if v}

    def pivot(self):
        best = None
        for j, col in self.cols.items():
            for i, v in col.items():
                if best is None or abs(v) < best[0]:
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        return best
        return best


def smith_invariants(cols: list) -> tuple:
    """(rank, invariant factors > 1) of a sparse integer matrix given by columns."""
    mat = _SparseMatrix(cols)
    diag = []
    while True:
        best = mat.pivot()
        if best is None:
            break
        _, i, j = best
        p = mat.rows[i][j]
        for ii, v in list(mat.cols[j].items()):
            if ii != i:
                mat.row_op(ii, i, v // p)
        for jj, v in list(mat.rows[i].items()):
            if jj != j:
                mat.col_op(jj, j, v // p)
        if len(mat.cols[j]) == 1 and len(mat.rows[i]) == 1:
            diag.append(abs(p))
            mat.remove(i, j)
    return len(diag), _invariant_factors(diag)


def _invariant_factors(diag: list) -> tuple:
    """Smith invariant factors (> 1) of a diagonal integer matrix."""
    d = list(diag)
    for a in range(len(d)):
        for b in range(a + 1, len(d)):
            g = math.gcd(d[a], d[b])
            d[a], d[b] = g, d[a] * d[b] // g if g else 0
    return tuple(x for x in d if x > 1)


def homology(cx: CellComplex) -> list:
    """Integral homology: a list of (free rank, torsion coefficients) for dimensions 0..dim."""
    total = sum(len(v) for v in cx.cells.values())
    if total > HOMOLOGY_FACE_LIMIT:
        raise TooLarge(f"{total} faces exceed the homology limit of {HOMOLOGY_FACE_LIMIT}")
    top = cx.dimension
    ranks, torsion = {}, {}
    for k in range(1, top + 1):
        ranks[k], torsion[k] = smith_invariants(_boundary_rows(cx, k))
    out = []
    for k in range(top + 1):
        ck = len(cx.cells.get(k, []))
        free = ck - ranks.get(k, 0) - ranks.get(k + 1, 0)
        out.append((free, torsion.get(k + 1, ())))
    return out


def betti_numbers(cx: CellComplex) -> tuple:
    return tuple(r for r, _ in homology(cx))


# ---------------------------------------------------------------------------
# the Pappus census

PAPPUS_LINE_SETS = tuple(frozenset(l) for l in ((1, 2, 3), (1, 4, 8), (1, 5, 9), (2, 4, 7), (2, 6, 9),
                                                 (3, 5, 7), (3, 6, 8), (4, 5, 6), (7, 8, 9)))


def merged_matroid(classes: Sequence[Iterable[int]], lines: Sequence[frozenset] = PAPPUS_LINE_SETS,
                   n: int = 9) -> Matroid:
    """Rank-3 matroid obtained from a simple point-line configuration by making each class parallel.

    Lines that come to share two points after the merge are fused.
    """
    rep = {}
    for c in classes:
        c = set(c)
        for x in c:
            rep[x] = min(c)
    r = lambda x: rep.get(x, x)
    cur = [set(map(r, l)) for l in lines]
    cur = [l for l in cur if len(l) >= 3]
    fused = True
    while fused:
        fused = False
        for a, b in itertools.combinations(range(len(cur)), 2):
            if len(cur[a] & cur[b]) >= 2:
                cur[a] |= cur.pop(b)
                fused = True
                break
    bases = []
    for t in itertools.combinations(range(1, n + 1), 3):
        s = set(map(r, t))
        if len(s) == 3 and not any(s <= l for l in cur):
            bases.append(t)
    return Matroid(3, n, bases)


def graves_triads(lines: Sequence[frozenset] = PAPPUS_LINE_SETS, n: int = 9) -> list:
    """Partitions of the points into three bases all of whose pairs lie on three-point lines."""
    on_line = {frozenset(p) for l in lines for p in itertools.combinations(sorted(l), 2)}
    good = [frozenset(t) for t in itertools.combinations(range(1, n + 1), 3)
            if frozenset(t) not in lines
            and all(frozenset(p) in on_line for p in itertools.combinations(t, 2))]
    out = set()
    for a, b, c in itertools.combinations(good, 3):
        if len(a | b | c) == n:
            out.add(frozenset((a, b, c)))
    return sorted(out, key=lambda tr: sorted(sorted(t) for t in tr))


def triad_name(triad) -> str:
    return "{" + ",".join("".join(map(str, sorted(t))) for t in sorted(triad, key=sorted)) + "}"


def graves_adjacent(t1, t2) -> bool:
    """Every triple of one triad meets exactly one triple of the other in two points."""
    return all(sum(len(a & b) == 2 for b in t2) == 1 for a in t1)


def connector_classes(t1, t2) -> tuple:
    """Parallel-class lists of the seven cells of the connector between adjacent triads, and its split basis."""
    pairs = [(a, b) for a in t1 for b in t2 if len(a & b) == 2]
    shared = [a & b for a, b in pairs]
    cells = [shared]
    cells += [[a | b] for a, b in pairs]
    disjoint = [(a, b) for a in t1 for b in t2 if not a & b]
    cells += [[a, b] for a, b in disjoint]
    split = frozenset(range(1, 10)) - frozenset().union(*shared)
    return cells, split


def weight_from_cells(host: Matroid, cells: Sequence[Matroid]) -> TropicalPluckerVector:
    """A nonnegative weight on the bases of host inducing exactly the given cells.

    Solves for a convex piecewise affine function: affine on each cell and
    at least one above each cell's affine function off that cell.  The
    optimum minimising the total weight is returned, scaled to integers;
    non-bases get infinity.
    """
    n = host.n
    bases = sorted(host.bases)
    nb, k = len(bases), len(cells)
    m = nb + n * k
    rows, rhs = [], []
    for j, cell in enumerate(cells):
        for bi, b in enumerate(bases):
            row = [0] * m
            row[bi] = 1
            for i, a in enumerate(mask_vector(b, n)):
                row[nb + n * j + i] = -a
            if b in cell.bases:
                rows.append(row)
                rhs.append(0)
                rows.append([-x for x in row])
                rhs.append(0)
            else:
                rows.append(row)
                rhs.append(1)
    for bi in range(nb):
        row = [0] * m
        row[bi] = 1
        rows.append(row)
        rhs.append(0)
    res = maximize(rows, rhs, [-1] * nb + [0] * (n * k))
    if res is None:
        raise NotInDressian("the cells are not the maximal cells of a regular subdivision")
    _, point = res
    vals = [Fraction(int(v.numerator), int(v.denominator)) for v in point[:nb]]
    den = math.lcm(*(v.denominator for v in vals))
    value = {b: int(v * den) for b, v in zip(bases, vals)}
    return TropicalPluckerVector.from_mapping(3, n, {from_mask(b): v for b, v in value.items()})


def secondary_cone_dimension(sub: MatroidSubdivision) -> int:
    """Dimension of the space of weights that are affine on every maximal cell.

    The system w_B = <a_j, e_B> (B in cell j) has solution space K; its
    projection to w has dimension dim K minus the affine functions that
    vanish on a whole cell.
    """
    n = sub.n
    bases = sorted(set().union(*sub.cells))
    nb, k = len(bases), len(sub.cells)
    pos = {b: i for i, b in enumerate(bases)}
    m = nb + n * k
    rows = []
    hidden = 0
    for j, cell in enumerate(sub.cells):
        pts = [mask_vector(b, n) for b in sorted(cell)]
        hidden += n - rank(pts)
        for b, vec in zip(sorted(cell), pts):
            row = [0] * m
            row[pos[b]] = 1
            for i, a in enumerate(vec):
                row[nb + n * j + i] = -a
            rows.append(row)
    return m - rank(rows) - hidden


@dataclass
class PappusNode:
    kind: str               # split, graves or connector
    name: str
    weight: TropicalPluckerVector
    subdivision: MatroidSubdivision
    cells: tuple            # basis counts of the maximal cells, descending


@dataclass
class PappusCensus:
    split_nodes: list
    graves_nodes: list
    connector_nodes: list
    edges: list             # pairs of node names
    triangles: list         # triples of node names
    core_cell_is_hessian: bool
    trinomial_excludes: bool
    lineality: int

    @property
    def nodes(self) -> list:
        return self.split_nodes + self.graves_nodes + self.connector_nodes

    @property
    def counts(self) -> tuple:
        return len(self.nodes), len(self.edges), len(self.triangles)

    def to_json(self) -> str:
        def node(p):
            return {"kind": p.kind, "name": p.name, "cells": list(p.cells),
                    "weight": {"".join(map(str, s)): int(v) for s, v in p.weight.items() if v is not INF and v}}
        return json.dumps({
            "vertices": len(self.nodes), "edges": len(self.edges), "triangles": len(self.triangles),
            "split": len(self.split_nodes), "graves": len(self.graves_nodes),
            "connector": len(self.connector_nodes),
            "nodes": [node(p) for p in self.nodes],
            "edge_list": [list(e) for e in self.edges],
            "triangle_list": [list(t) for t in self.triangles],
            "core_cell_is_hessian": self.core_cell_is_hessian,
            "trinomial_excludes": self.trinomial_excludes,
        }, indent=2, sort_keys=True)


class CensusMismatch(InvalidInput):
    pass


def _node(kind, name, pi, host, expected_cells=None) -> PappusNode:
    if not matroid_dressian_member(pi, host):
        raise CensusMismatch(f"{kind} node {name} is not in Dr(M)")
    sub = regular_subdivision(pi)
    if expected_cells is not None:
        got = sorted(sub.cells, key=sorted)
        want = sorted((frozenset(c.bases) for c in expected_cells), key=sorted)
        if got != want:
            raise CensusMismatch(f"{kind} node {name} induces the wrong subdivision")
    counts = tuple(sorted((len(c) for c in sub.cells), reverse=True))
    return PappusNode(kind, name, pi, sub, counts)


def _cone_feasible(nodes: Sequence[PappusNode], host: Matroid) -> bool:
    """The nodes span a common cone of Dr(M): their sum is a member refining every node."""
    total = nodes[0].weight
    for p in nodes[1:]:
        total = total + p.weight
    if not matroid_dressian_member(total, host):
        return False
    sub = regular_subdivision(total)
    return all(refines(sub, p.subdivision) for p in nodes)


def verify_pappus_census() -> PappusCensus:
    """Build and certify the 18 vertices, 30 edges and the one triangle of Dr(Pappus)."""
    host = pappus()
    lineality = secondary_cone_dimension(regular_subdivision(
        TropicalPluckerVector.from_mapping(3, 9, {from_mask(b): 0 for b in host.bases})))
    splits = []
    for b in ((1, 6, 7), (2, 5, 8), (3, 4, 9)):
        pi = TropicalPluckerVector.from_mapping(3, 9, {from_mask(x): int(from_mask(x) == b) for x in host.bases})
        splits.append(_node("split", "".join(map(str, b)), pi, host))
    triads = graves_triads()
    if len(triads) != 6:
        raise CensusMismatch(f"found {len(triads)} Graves triads, expected 6")
    graves = []
    for t in triads:
        cells = [merged_matroid([c]) for c in sorted(t, key=sorted)]
        graves.append(_node("graves", triad_name(t), weight_from_cells(host, cells), host, cells))
    connectors = []
    for t1, t2 in itertools.combinations(triads, 2):
        if not graves_adjacent(t1, t2):
            continue
        classes, split = connector_classes(t1, t2)
        cells = [merged_matroid(c) for c in classes]
        name = triad_name(t1) + "~" + triad_name(t2)
        connectors.append(_node("connector", name, weight_from_cells(host, cells), host, cells))
    nodes = splits + graves + connectors
    for p in nodes:
        if secondary_cone_dimension(p.subdivision) != lineality + 1:
            raise CensusMismatch(f"node {p.name} is not a ray")
    edges = []
    for a, b in itertools.combinations(range(len(nodes)), 2):
        if _cone_feasible([nodes[a], nodes[b]], host):
            edges.append((a, b))
    edge_set = set(edges)
    triangles = []
    for a, b, c in itertools.combinations(range(len(nodes)), 3):
        if {(a, b), (a, c), (b, c)} <= edge_set and _cone_feasible([nodes[a], nodes[b], nodes[c]], host):
            triangles.append((a, b, c))
    for tri in triangles:
        for x in range(len(nodes)):
            if x not in tri and all(tuple(sorted((x, y))) in edge_set for y in tri):
                if _cone_feasible([nodes[i] for i in tri + (x,)], host):
                    raise CensusMismatch("a tetrahedron was found")
    core = splits[0].weight + splits[1].weight + splits[2].weight
    core_sub = regular_subdivision(core)
    big = max(core_sub.maximal_cells, key=lambda c: len(c.bases))
    is_hessian = canonical_orbit_rep(big).key == canonical_orbit_rep(hessian()).key
    interior = splits[0].weight + splits[1].weight.scale(2) + splits[2].weight.scale(4)
    names = [p.name for p in nodes]
    return PappusCensus(
        splits, graves, connectors,
        [(names[a], names[b]) for a, b in edges],
        [tuple(names[i] for i in t) for t in triangles],
        is_hessian, trinomial_excludes(interior), lineality)
