"""Regular subdivisions of hypersimplices and matroid polytopes, and splits.

Cells are stored as frozensets of basis bitmasks.  A regular subdivision is
extracted by walking its dual graph: every maximal cell A comes with a dual
point x at which A is exactly the set of minimisers of pi(S) - <x, e_S>.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .foundations import (
    InvalidInput,
    LinearSystem,
    cone_rays,
    from_mask,
    lp_solve,
    nullspace,
    popcount,
    rank,
    rref,
    subsets,
    to_mask,
)
from .matroid import ExchangeAxiomViolation, Matroid, uniform
from .tropical import INF, NotInDressian, TropicalPluckerVector


def mask_vector(mask: int, n: int) -> list:
    return [(mask >> i) & 1 for i in range(n)]


def affine_dimension(masks: Iterable[int], n: int) -> int:
    masks = list(masks)
    if not masks:
        return -1
    base = mask_vector(masks[0], n)
    diffs = []
    for m in masks[1:]:
        v = mask_vector(m, n)
        diffs.append([a - b for a, b in zip(v, base)])
    return rank(diffs) if diffs else 0


def _pair(mask: int, x: Sequence[Fraction]) -> Fraction:
    total = Fraction(0)
    i = 0
    while mask:
        if mask & 1:
            total += x[i]
        mask >>= 1
        i += 1
    return total


def _dot_mask(w: Sequence[int], mask: int) -> int:
    total = 0
    i = 0
    while mask:
        if mask & 1:
            total += w[i]
        mask >>= 1
        i += 1
    return total


@dataclass(frozen=True)
class Facet:
    normal: tuple  # integer outward normal
    value: int     # <normal, x> <= value on the cell, with equality on `points`
    points: frozenset


def matroid_facets(cell: frozenset, n: int, dim: int | None = None) -> list:
    """Facets of a matroid polytope, from the rank inequalities x(F) <= r(F)."""
    bases = list(cell)
    if dim is None:
        dim = affine_dimension(bases, n)
    seen = {}
    for f in range(1, (1 << n) - 1):
        r = max(popcount(f & b) for b in bases)
        face = frozenset(b for b in bases if popcount(f & b) == r)
        if len(face) == len(bases) or face in seen:
            continue
        seen[face] = (f, r)
    out = []
    for face, (f, r) in seen.items():
        if affine_dimension(face, n) == dim - 1:
            out.append(Facet(tuple(mask_vector(f, n)), r, face))
    out.sort(key=lambda ft: sorted(ft.points))
    return out


def general_facets(cell: frozenset, n: int, dim: int | None = None) -> list:
    """Facets of the convex hull of 0/1 points, by double description on the polar cone."""
    pts = sorted(cell)
    if dim is None:
        dim = affine_dimension(pts, n)
    # rows (-e_S, 1): cone of (a, b) with <a, e_S> <= b for all points
    rows = [[-v for v in mask_vector(p, n)] + [1] for p in pts]
    # quotient by the lineality {(a, b) : <a, e_S> = b for all S}
    basis_rows = []
    for r in rows:
        if rank(basis_rows + [r]) > len(basis_rows):
            basis_rows.append(r)
    k = len(basis_rows)
    red, piv = rref([[Fraction(basis_rows[i][j]) for i in range(k)] +
                     [Fraction(r[j]) for r in rows] for j in range(n + 1)], k + len(rows))
    coeffs = []
    for s in range(len(rows)):
        coeffs.append([red[i][k + s] for i in range(k)])
    rays = cone_rays(coeffs)
    out = []
    for ray in rays:
        vals = [sum(c * u for c, u in zip(cf, ray)) for cf in coeffs]
        face = frozenset(p for p, v in zip(pts, vals) if v == 0)
        if affine_dimension(face, n) != dim - 1:
            continue
        # recover (a, b) from any point: solve basis_rows . (a, b) = ray
        aug = [[Fraction(x) for x in br] + [Fraction(u)] for br, u in zip(basis_rows, ray)]
        red2, piv2 = rref(aug, n + 2)
        sol = [Fraction(0)] * (n + 1)
        for row, p in zip(red2, piv2):
            sol[p] = row[n + 1]
        a = sol[:n]
        den = 1
        for v in a:
            den = den * v.denominator // math.gcd(den, v.denominator)
        ai = [int(v * den) for v in a]
        value = _dot_mask(ai, next(iter(face)))
        out.append(Facet(tuple(ai), value, face))
    out.sort(key=lambda ft: sorted(ft.points))
    return out


@dataclass(frozen=True)
class Face:
    points: frozenset
    dim: int
    interior: bool
    cells: tuple  # indices of the maximal cells containing the face


class MatroidSubdivision:
    """A subdivision of a matroid polytope (the hypersimplex by default) into cells."""

    def __init__(self, d: int, n: int, cells: Iterable[Iterable[int]], host: Matroid | None = None,
                 weight: TropicalPluckerVector | None = None, labels: Sequence[int] | None = None,
                 dual_points: dict | None = None):
        self.d, self.n = d, n
        self.host = host if host is not None else uniform(d, n)
        norm = set()
        for c in cells:
            norm.add(frozenset(x if isinstance(x, int) else to_mask(x) for x in c))
        self.cells = tuple(sorted(norm, key=lambda c: sorted(c)))
        self.weight = weight
        self.labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        self.dual_points = dual_points or {}
        self._faces = None

    def __eq__(self, other):
        return isinstance(other, MatroidSubdivision) and (self.d, self.n, set(self.cells)) == (
            other.d, other.n, set(other.cells))

    def __hash__(self):
        return hash((self.d, self.n, frozenset(self.cells)))

    def __repr__(self):
        return f"MatroidSubdivision(d={self.d}, n={self.n}, {len(self.cells)} cells)"

    @property
    def spread(self) -> int:
        return len(self.cells)

    @property
    def maximal_cells(self) -> list:
        return [Matroid(self.d, self.n, c, labels=self.labels, check=False) for c in self.cells]

    def is_matroidal(self) -> bool:
        for c in self.cells:
            try:
                Matroid(self.d, self.n, c)
            except ExchangeAxiomViolation:
                return False
        return True

    def to_text(self) -> str:
        out = [f"{self.d} {self.n} {len(self.cells)}"]
        for m in self.maximal_cells:
            out.append(m.to_text().rstrip("\n"))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MatroidSubdivision":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
        if not lines:
            raise InvalidInput("empty subdivision file")
        try:
            d, n, k = (int(x) for x in lines[0].split())
        except ValueError as exc:
            raise InvalidInput("header must be 'd n k'") from exc
        cells = []
        pos = 1
        for _ in range(k):
            if pos >= len(lines):
                raise InvalidInput("truncated subdivision file")
            nn, dd = (int(x) for x in lines[pos].split())
            if (nn, dd) != (n, d):
                raise InvalidInput("cell header does not match the ambient")
            pos += 1
            bases = []
            while pos < len(lines) and not _is_header(lines[pos], n, d):
                bases.append(tuple(int(x) for x in lines[pos].split()))
                pos += 1
            cells.append(Matroid(d, n, bases).bases)
        return cls(d, n, cells)

    # faces -----------------------------------------------------------------

    def faces(self) -> dict:
        """Faces of codimension 1 and 2, keyed by codimension."""
        if self._faces is None:
            self._faces = self._compute_faces()
        return self._faces

    def _compute_faces(self):
        n = self.n
        top = affine_dimension(self.host.bases, n)
        host_facets = [f.points for f in matroid_facets(self.host.bases, n, top)]

        def interior(points):
            return not any(points <= hf for hf in host_facets)

        codim1 = {}
        codim2 = {}
        for ci, cell in enumerate(self.cells):
            facets = [f.points for f in matroid_facets(cell, n, top)]
            for f in facets:
                codim1.setdefault(f, set()).add(ci)
            for f, g in itertools.combinations(facets, 2):
                inter = f & g
                if len(inter) >= top - 1 and affine_dimension(inter, n) == top - 2:
                    codim2.setdefault(inter, set()).add(ci)
        out = {1: [], 2: []}
        for codim, table in ((1, codim1), (2, codim2)):
            for pts in sorted(table, key=lambda p: sorted(p)):
                cont = tuple(sorted(ci for ci, c in enumerate(self.cells) if pts <= c))
                out[codim].append(Face(pts, top - codim, interior(pts), cont))
        return out


def _is_header(line, n, d):
    # basis lines are written in increasing order, so "n d" never collides with one
    return line.split() == [str(n), str(d)]


# ---------------------------------------------------------------------------
# extraction

def _values(pi: TropicalPluckerVector):
    pts, vals = [], []
    for s, v in pi.items():
        if v is not INF:
            pts.append(to_mask(s))
            vals.append(v)
    return pts, vals


def _argmin(pts, vals, x):
    best = None
    cell = []
    for p, v in zip(pts, vals):
        h = v - _pair(p, x)
        if best is None or h < best:
            best, cell = h, [p]
        elif h == best:
            cell.append(p)
    return frozenset(cell), best


def regular_subdivision(pi: TropicalPluckerVector, check: bool = True) -> MatroidSubdivision:
    """Maximal cells of the subdivision induced by pi on the support polytope.

    With check=True every cell must be a matroid polytope, otherwise
    NotInDressian is raised.  With check=False arbitrary cells are allowed and
    facets are computed by a general convex hull routine.
    """
    d, n = pi.d, pi.n
    pts, vals = _values(pi)
    host = Matroid(d, n, pts, check=False)
    target = affine_dimension(pts, n)
    val_of = dict(zip(pts, vals))

    x = [Fraction(0)] * n
    cell, low = _argmin(pts, vals, x)
    # climb: enlarge the minimising set until it is full dimensional
    while affine_dimension(cell, n) < target:
        s0 = next(iter(cell))
        base = mask_vector(s0, n)
        diffs = [[a - b for a, b in zip(mask_vector(p, n), base)] for p in cell if p != s0]
        basis = nullspace(diffs, n) if diffs else [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
        w = None
        for cand in basis:
            if any(_pair(u, cand) != _pair(s0, cand) for u in pts):
                w = cand
                break
        if w is None:
            raise InvalidInput("degenerate support")
        ref = _pair(s0, w)
        if not any(_pair(u, w) > ref for u in pts):
            w = [-a for a in w]
            ref = -ref
        best_t = None
        for u in pts:
            slope = _pair(u, w) - ref
            if slope > 0:
                t = (val_of[u] - _pair(u, x) - low) / slope
                if best_t is None or t < best_t:
                    best_t = t
        x = [a + best_t * b for a, b in zip(x, w)]
        cell, low = _argmin(pts, vals, x)

    facet_fn = matroid_facets if check else general_facets
    cells = {}
    queue = [(cell, x, low)]
    while queue:
        cell, x, low = queue.pop()
        if cell in cells:
            continue
        if check:
            try:
                Matroid(d, n, cell)
            except ExchangeAxiomViolation as exc:
                raise NotInDressian(f"cell {sorted(from_mask(b) for b in cell)} is not a matroid polytope") from exc
        cells[cell] = x
        for facet in facet_fn(cell, n, target):
            w = facet.normal
            beyond = [u for u in pts if _dot_mask(w, u) > facet.value]
            if not beyond:
                continue
            best_t = None
            for u in beyond:
                t = (val_of[u] - _pair(u, x) - low) / (_dot_mask(w, u) - facet.value)
                if best_t is None or t < best_t:
                    best_t = t
            x2 = [a + best_t * b for a, b in zip(x, w)]
            nxt, low2 = _argmin(pts, vals, x2)
            if nxt not in cells:
                queue.append((nxt, x2, low2))
    host_arg = None if pi.is_finite else host
    return MatroidSubdivision(d, n, cells.keys(), host=host_arg, weight=pi, dual_points=dict(cells))


def has_long_edge(pi: TropicalPluckerVector) -> bool:
    """Independent oracle: some edge {S, T} of the induced subdivision has |S ^ T| >= 4.

    A pair spans an edge iff some x makes S and T the only minimisers of
    pi(U) - <x, e_U>; each pair is decided by one exact LP.
    """
    n = pi.n
    pts, vals = _values(pi)
    for a, b in itertools.combinations(range(len(pts)), 2):
        if popcount(pts[a] ^ pts[b]) < 4:
            continue
        # variables x_1..x_n, c: pi(S) - <x,e_S> = c for S, T; > c for others
        eq = []
        for k in (a, b):
            eq.append((mask_vector(pts[k], n) + [1], vals[k]))
        strict = []
        for k in range(len(pts)):
            if k in (a, b):
                continue
            strict.append(([-v for v in mask_vector(pts[k], n)] + [-1], -vals[k]))
        if lp_solve(LinearSystem(n + 1, eq, [], strict), want_dimension=False).feasible:
            return True
    return False


def cell_weight_certificate(pi: TropicalPluckerVector, cell: frozenset):
    """Exact (x, c) with pi(S) = <x,e_S> + c on the cell and pi(S) > <x,e_S> + c elsewhere."""
    n = pi.n
    pts, vals = _values(pi)
    eq, strict = [], []
    for p, v in zip(pts, vals):
        row = mask_vector(p, n) + [1]
        if p in cell:
            eq.append((row, v))
        else:
            strict.append(([-a for a in row], -v))
    res = lp_solve(LinearSystem(n + 1, eq, [], strict), want_dimension=False)
    if not res.feasible:
        return None
    return res.witness[:n], res.witness[n]


# ---------------------------------------------------------------------------
# comparisons

def refines(s1: MatroidSubdivision, s2: MatroidSubdivision) -> bool:
    if (s1.d, s1.n) != (s2.d, s2.n):
        raise InvalidInput("ambient mismatch")
    return all(any(c <= c2 for c2 in s2.cells) for c in s1.cells)


def boundary_restriction(sub: MatroidSubdivision, facet: tuple) -> MatroidSubdivision:
    """Restriction to the facet ('contract', i): x_i = 1 or ('delete', i): x_i = 0, reindexed."""
    kind, i = facet
    if kind not in ("contract", "delete") or not 1 <= i <= sub.n:
        raise InvalidInput(f"bad facet {facet!r}")
    bit = 1 << (i - 1)
    low = bit - 1

    def squeeze(m):
        return (m & low) | ((m >> 1) & ~low)

    d2 = sub.d - 1 if kind == "contract" else sub.d
    pieces = []
    for c in sub.cells:
        part = [squeeze(b) for b in c if bool(b & bit) == (kind == "contract")]
        if part:
            pieces.append(frozenset(part))
    host_part = frozenset(squeeze(b) for b in sub.host.bases if bool(b & bit) == (kind == "contract"))
    if not host_part:
        raise InvalidInput("the facet does not meet the support")
    top = affine_dimension(host_part, sub.n - 1)
    cells = [p for p in pieces if affine_dimension(p, sub.n - 1) == top]
    labels = [x for k, x in enumerate(sub.labels) if k != i - 1]
    weight = None
    if sub.weight is not None:
        vals = []
        for s in subsets(sub.n - 1, d2):
            orig = [x if x < i else x + 1 for x in s]
            if kind == "contract":
                orig = sorted(orig + [i])
            vals.append(sub.weight[tuple(orig)])
        weight = TropicalPluckerVector(d2, sub.n - 1, vals, check_support=False)
    host = Matroid(d2, sub.n - 1, host_part, check=False)
    return MatroidSubdivision(d2, sub.n - 1, cells, host=host, weight=weight, labels=labels)


# ---------------------------------------------------------------------------
# splits

@dataclass(frozen=True)
class Split:
    """The subdivision of Delta(d,n) cut by the hyperplane <a, x> = rhs."""

    d: int
    n: int
    normal: tuple
    rhs: int

    def sides(self):
        small, big = [], []
        for s in subsets(self.n, self.d):
            v = sum(self.normal[i - 1] for i in s)
            if v >= self.rhs:
                small.append(to_mask(s))
            if v <= self.rhs:
                big.append(to_mask(s))
        return frozenset(small), frozenset(big)

    def weight(self) -> TropicalPluckerVector:
        """max(0, <a, e_S> - rhs): bends exactly along the hyperplane."""
        return TropicalPluckerVector.from_function(
            self.d, self.n, lambda s: max(0, sum(self.normal[i - 1] for i in s) - self.rhs))

    def subdivision(self) -> MatroidSubdivision:
        return MatroidSubdivision(self.d, self.n, self.sides(), weight=self.weight())

    def validate(self):
        small, big = self.sides()
        for side in (small, big):
            if affine_dimension(side, self.n) != self.n - 1:
                raise InvalidInput("split side is not full dimensional")
            Matroid(self.d, self.n, side)
        return self

    def key(self):
        return frozenset(self.sides())


def vertex_split(d: int, n: int, s: Sequence[int]) -> Split:
    s = tuple(sorted(s))
    if len(s) != d or len(set(s)) != d or any(not 1 <= x <= n for x in s):
        raise InvalidInput(f"{s} is not a vertex of Delta({d},{n})")
    if not (1 < n - d and d > 1):
        raise InvalidInput("vertex splits need 2 <= d <= n - 2")
    normal = tuple(1 if i in s else 0 for i in range(1, n + 1))
    return Split(d, n, normal, d - 1)


def hypersimplex_splits(d: int, n: int) -> list:
    """All splits x(A) = mu of Delta(d,n), one per split (A and its complement identified)."""
    out = {}
    for r in range(1, n):
        for a in itertools.combinations(range(1, n + 1), r):
            b = n - r
            for mu in range(max(0, d - b) + 1, min(r, d)):
                normal = tuple(1 if i in a else 0 for i in range(1, n + 1))
                sp = Split(d, n, normal, mu)
                out.setdefault(sp.key(), sp)
    return sorted(out.values(), key=lambda sp: (sp.normal[::-1], sp.rhs))


def splits_compatible(s1: Split, s2: Split) -> bool:
    """True iff the two split hyperplanes do not meet in the interior of the hypersimplex."""
    if (s1.d, s1.n) != (s2.d, s2.n):
        raise InvalidInput("ambient mismatch")
    if s1.key() == s2.key():
        return True
    n = s1.n
    eq = [([1] * n, s1.d), (list(s1.normal), s1.rhs), (list(s2.normal), s2.rhs)]
    strict = []
    for i in range(n):
        e = [0] * n
        e[i] = 1
        strict.append((e, 0))
        strict.append(([-x for x in e], -1))
    return not lp_solve(LinearSystem(n, eq, [], strict), want_dimension=False).feasible
