"""Tree arrangements, their realizability cones and the enumeration of Dr(3,n).

An arrangement for n is a tuple of trees T_1..T_n, tree i on the leaves
[n] minus {i}.  Its signature lists, for every relation (h; Q), the quartet
code of T_h on Q, which is exactly the compact cone signature of any
tropical Plucker vector inducing the arrangement.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .foundations import (
    InvalidInput,
    LinearSystem,
    canonical_vector,
    cone_rays,
    lp_solve,
    nullspace,
    primitive,
    rank,
    rref,
    subset_position,
    subsets,
)
from .matroid import generalized_fano
from .subdivision import MatroidSubdivision, boundary_restriction, vertex_split, splits_compatible
from .trees import (
    STAR,
    LeafTree,
    TreeMetric,
    parse_tree,
    insert_leaf,
    to_newick,
    to_notation,
    tree_from_metric,
    tree_from_quartets,
    trivalent_trees,
)
from .tropical import (
    NotInDressian,
    TropicalPluckerVector,
    dressian_member,
    relation_action,
    relations,
)


class InvalidArrangement(InvalidInput):
    pass


class TreeArrangement:
    """Trees T_1..T_n, tree i leaf-labelled by [n] minus {i}."""

    def __init__(self, n: int, trees: Sequence[LeafTree]):
        if n < 4:
            raise InvalidArrangement("arrangements need n >= 4")
        trees = tuple(trees)
        if len(trees) != n:
            raise InvalidArrangement(f"expected {n} trees, got {len(trees)}")
        full = frozenset(range(1, n + 1))
        for i, t in enumerate(trees, start=1):
            if t.leaves != full - {i}:
                raise InvalidArrangement(f"tree {i} has leaves {sorted(t.leaves)}")
        self.n = n
        self.trees = trees
        self._sig = None

    @property
    def metric(self) -> bool:
        return all(t.is_metric for t in self.trees)

    def __eq__(self, other):
        return isinstance(other, TreeArrangement) and self.n == other.n and all(
            a.same_topology(b) for a, b in zip(self.trees, other.trees))

    def __hash__(self):
        return hash(self.signature())

    def __repr__(self):
        return f"TreeArrangement({self.notation()})"

    def signature(self) -> tuple:
        if self._sig is None:
            self._sig = tuple(self.trees[r.s[0] - 1].quartet(r.quad) for r in relations(3, self.n))
        return self._sig

    def orbit_encoding(self):
        return ("arrangement", self.n), self.signature(), relation_action(3, self.n)

    def topology(self) -> "TreeArrangement":
        return TreeArrangement(self.n, [t.topology() for t in self.trees])

    def is_trivalent(self) -> bool:
        return all(t.is_trivalent for t in self.trees)

    def delta(self, i: int, j: int, k: int) -> Fraction:
        return self.trees[i - 1].distance(j, k)

    def restrict(self, keep: Iterable[int]) -> "TreeArrangement":
        """Arrangement on the kept labels, relabelled to 1..len(keep) in order."""
        keep = sorted(keep)
        rel = {x: k for k, x in enumerate(keep, start=1)}
        trees = []
        for i in keep:
            t = self.trees[i - 1].restrict(set(keep) - {i})
            trees.append(t.relabel(rel))
        return TreeArrangement(len(keep), trees)

    def deletion(self, i: int) -> "TreeArrangement":
        return self.restrict([x for x in range(1, self.n + 1) if x != i])

    def relabel(self, perm: Sequence[int]) -> "TreeArrangement":
        """Image under x -> perm[x-1]; tree i becomes tree perm[i-1]."""
        mapping = {x: perm[x - 1] for x in range(1, self.n + 1)}
        trees = [None] * self.n
        for i, t in enumerate(self.trees, start=1):
            trees[mapping[i] - 1] = t.relabel(mapping)
        return TreeArrangement(self.n, trees)

    def notation(self) -> str:
        return " | ".join(to_notation(t) for t in self.trees)

    def to_text(self) -> str:
        lines = []
        for t in self.trees:
            lines.append(to_newick(t) if t.is_metric else to_notation(t))
        return "\n".join(lines) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "TreeArrangement":
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        n = len(lines)
        if n < 4:
            raise InvalidArrangement("an arrangement file needs at least four trees")
        full = set(range(1, n + 1))
        trees = [parse_tree(ln, full - {i}) for i, ln in enumerate(lines, start=1)]
        return cls(n, trees)


def arrangement_from_signature(n: int, sig: Sequence[int]) -> TreeArrangement:
    rels = relations(3, n)
    per_tree = [dict() for _ in range(n)]
    for r, v in zip(rels, sig):
        per_tree[r.s[0] - 1][r.quad] = int(v)
    full = set(range(1, n + 1))
    trees = [tree_from_quartets(full - {i}, per_tree[i - 1]) for i in range(1, n + 1)]
    return TreeArrangement(n, trees)


# ---------------------------------------------------------------------------
# validity

@lru_cache(maxsize=None)
def _five_leaf_profiles() -> dict:
    """Quartet profiles (code of T|[5]-p for p = 0..4) of all 5-leaf trees, keyed by profile."""
    leaves = (1, 2, 3, 4, 5)
    trees = [LeafTree(leaves)]
    for r in (2,):
        for side in itertools.combinations(leaves[1:], r):
            trees.append(LeafTree(leaves, [side]))
    trees.extend(trivalent_trees(leaves))
    out = {}
    for t in trees:
        prof = tuple(t.quartet([x for x in leaves if x != p]) for p in leaves)
        out[prof] = t
    return out


def is_abstract_arrangement(arr: TreeArrangement) -> bool:
    """Recursive validity: n=4 always, n=5 by a common 5-leaf tree, n>=6 via all deletions."""
    memo = {}

    def valid(keep: tuple) -> bool:
        if keep in memo:
            return memo[keep]
        m = len(keep)
        if m == 4:
            ok = True
        elif m == 5:
            prof = tuple(arr.trees[i - 1].quartet([x for x in keep if x != i]) for i in keep)
            ok = prof in _five_leaf_profiles()
        else:
            ok = all(valid(tuple(x for x in keep if x != i)) for i in keep)
        memo[keep] = ok
        return ok

    return valid(tuple(range(1, arr.n + 1)))


def metric_consistency(arr: TreeArrangement) -> bool:
    if not arr.metric:
        raise InvalidArrangement("arrangement has no edge lengths")
    for i, j, k in itertools.combinations(range(1, arr.n + 1), 3):
        a = arr.delta(i, j, k)
        if arr.delta(j, i, k) != a or arr.delta(k, i, j) != a:
            return False
    return True


def plucker_from_arrangement(arr: TreeArrangement) -> TropicalPluckerVector:
    """pi(ijk) = -delta_i(j,k): tree distances are maximised where Plucker terms are minimised."""
    if not metric_consistency(arr):
        raise InvalidArrangement("metric trees disagree on some triple")
    return TropicalPluckerVector.from_function(3, arr.n, lambda s: -arr.delta(*s))


def arrangement_from_subdivision(sub: MatroidSubdivision) -> TreeArrangement:
    """Tree i is dual to the restriction of the subdivision to the facet x_i = 1.

    Splits of tree i are the parallel classes (of size 2 .. n-3) of the rank-2
    cells.  When the subdivision carries a finite weight the trees get the
    metric delta_i(j,k) = 1 + (max pi - pi(ijk)) / (max pi - min pi), with
    delta constant 2 when pi is constant.
    """
    if sub.d != 3:
        raise InvalidInput("tree arrangements describe subdivisions of Delta(3,n)")
    n = sub.n
    full = frozenset(range(1, n + 1))
    topo = []
    for i in range(1, n + 1):
        part = boundary_restriction(sub, ("contract", i))
        labels = part.labels
        splits = set()
        for cell in part.maximal_cells:
            for cls_ in cell.parallel_classes:
                if 2 <= len(cls_) <= n - 3:
                    splits.add(frozenset(labels[x - 1] for x in cls_))
        topo.append(LeafTree(full - {i}, splits))
    pi = sub.weight
    if pi is None or not pi.is_finite:
        return TreeArrangement(n, topo)
    vals = [v for _, v in pi.items()]
    hi, lo = max(vals), min(vals)

    def delta(s):
        if hi == lo:
            return Fraction(2)
        return 1 + (hi - pi[s]) / (hi - lo)

    trees = []
    for i in range(1, n + 1):
        leaves = sorted(full - {i})
        m = TreeMetric.from_function(leaves, lambda a, b: delta(tuple(sorted((i, a, b)))))
        t = tree_from_metric(m)
        if not t.same_topology(topo[i - 1]):
            raise NotInDressian(f"tree {i} of the weight disagrees with the subdivision")
        trees.append(t)
    return TreeArrangement(n, trees)


# ---------------------------------------------------------------------------
# realizability

def signature_system(n: int, sig: Sequence[int]) -> LinearSystem:
    """The relatively open cone in pi-space of Plucker vectors with this signature."""
    pos = subset_position(n, 3)
    m = len(pos)
    eq, strict = [], []
    for rel, v in zip(relations(3, n), sig):
        terms = []
        for a, b in rel.term_sets():
            row = [0] * m
            row[pos[a]] += 1
            row[pos[b]] += 1
            terms.append(row)
        if v == STAR:
            eq.append(([x - y for x, y in zip(terms[0], terms[1])], 0))
            eq.append(([x - y for x, y in zip(terms[0], terms[2])], 0))
        else:
            o1, o2 = [t for t in range(3) if t != v]
            eq.append(([x - y for x, y in zip(terms[o1], terms[o2])], 0))
            strict.append(([x - y for x, y in zip(terms[v], terms[o1])], 0))
    return LinearSystem(m, eq, [], strict)


def edge_length_system(arr: TreeArrangement) -> tuple:
    """Edge-length variables of all trees with the triple equations.

    Returns (system, variables) where variables lists (tree, edge side).
    Pendant lengths are >= 0 and internal lengths > 0.
    """
    variables = []
    index = {}
    for i, t in enumerate(arr.trees, start=1):
        for side in t.edges():
            index[(i, side)] = len(variables)
            variables.append((i, side))
    m = len(variables)

    def delta_row(i, j, k):
        row = [0] * m
        for side in arr.trees[i - 1].edges():
            if (j in side) != (k in side):
                row[index[(i, side)]] += 1
        return row

    eq = []
    for i, j, k in itertools.combinations(range(1, arr.n + 1), 3):
        a = delta_row(i, j, k)
        for other in (delta_row(j, i, k), delta_row(k, i, j)):
            diff = [x - y for x, y in zip(a, other)]
            if any(diff):
                eq.append((diff, 0))
    weak, strict = [], []
    for k, (i, side) in enumerate(variables):
        row = [0] * m
        row[k] = 1
        t = arr.trees[i - 1]
        if 2 <= len(side) <= len(t.leaves) - 2:
            strict.append((row, 0))
        else:
            weak.append((row, 0))
    return LinearSystem(m, eq, weak, strict), variables


def metric_realizable(arr: TreeArrangement) -> bool:
    system, _ = edge_length_system(arr)
    return lp_solve(system, want_dimension=False).feasible


@dataclass
class DressianCell:
    """One cell of Dr(3,n), stored through the arrangement type of its relative interior."""

    n: int
    signature: tuple
    cone_dimension: int          # dimension of the cone modulo the lineality space
    orbit_size: int = 1
    stabilizer_order: int = 1
    interior: TropicalPluckerVector | None = None
    facets: list = field(default_factory=list)   # signatures of codimension-one faces

    @property
    def dimension(self) -> int:
        """Dimension of the polyhedral cell, rays having dimension 0."""
        return self.cone_dimension - 1

    @property
    def arrangement(self) -> TreeArrangement:
        return arrangement_from_signature(self.n, self.signature)

    @property
    def cone(self) -> LinearSystem:
        return signature_system(self.n, self.signature)

    def census_line(self) -> str:
        return f"{self.dimension} {self.orbit_size} {self.arrangement.notation()}"


def realizability_cone(arr: TreeArrangement) -> DressianCell | None:
    """The cone of Plucker vectors inducing the arrangement; None if it is empty."""
    if not is_abstract_arrangement(arr):
        raise InvalidArrangement("not an abstract tree arrangement")
    sig = arr.signature()
    res = lp_solve(signature_system(arr.n, sig))
    if not res.feasible:
        return None
    pi = TropicalPluckerVector(3, arr.n, res.witness)
    cf = canonical_vector(sig, relation_action(3, arr.n))
    return DressianCell(arr.n, sig, res.dimension - arr.n, math.factorial(arr.n) // cf.stabilizer_order,
                        cf.stabilizer_order, pi)


# ---------------------------------------------------------------------------
# enumeration

def _signature_of_trees(n: int, trees: Sequence[LeafTree]) -> tuple:
    return tuple(trees[r.s[0] - 1].quartet(r.quad) for r in relations(3, n))


@lru_cache(maxsize=None)
def _profile_table() -> dict:
    """For 5 positions with the new leaf last: codes at positions 0..3 -> allowed codes at 4."""
    table = {}
    for prof, t in _five_leaf_profiles().items():
        if STAR in prof:
            continue
        table.setdefault(prof[:4], set()).add(prof[4])
    return table


@lru_cache(maxsize=None)
def _tree_quartet_matrix(m: int):
    trees = trivalent_trees(tuple(range(1, m + 1)))
    quads = list(itertools.combinations(range(1, m + 1), 4))
    mat = np.array([[t.quartet(q) for q in quads] for t in trees], dtype=np.int8)
    return trees, quads, mat


def _extensions(base: TreeArrangement):
    """Trivalent abstract arrangements on [n] whose deletion of n is `base`."""
    n = base.n + 1
    table = _profile_table()
    options = []
    for g in range(1, n):
        s = base.trees[g - 1]
        opts = []
        for e in s.edges():
            t = insert_leaf(s, n, e)
            opts.append((t, {q: t.quartet(q) for q in itertools.combinations(sorted(t.leaves), 4) if q[-1] == n}))
        options.append(opts)
    tn_trees, quads, qmat = _tree_quartet_matrix(n - 1)
    qindex = {q: k for k, q in enumerate(quads)}
    groups = {g: [q for q in quads if q[-1] == g] for g in range(4, n)}
    allowed = np.zeros((len(quads), 3), dtype=bool)
    chosen = []

    def search(g):
        if g == n:
            ok = allowed[np.arange(len(quads))[None, :], qmat].all(axis=1)
            for k in np.nonzero(ok)[0]:
                yield chosen + [tn_trees[int(k)]]
            return
        for t, qs in options[g - 1]:
            chosen.append(t)
            good = True
            touched = []
            for quad in groups.get(g, ()):
                codes = []
                for h in quad:
                    rest = tuple(sorted([x for x in quad if x != h] + [n]))
                    codes.append(chosen[h - 1].quartet(rest) if h < g else qs[rest])
                allow = table.get(tuple(codes))
                if not allow:
                    good = False
                    break
                row = np.zeros(3, dtype=bool)
                row[list(allow)] = True
                touched.append((qindex[quad], row))
            if good:
                saved = [(k, allowed[k].copy()) for k, _ in touched]
                for k, row in touched:
                    allowed[k] = row
                yield from search(g + 1)
                for k, row in saved:
                    allowed[k] = row
            chosen.pop()

    for trees in search(1):
        yield TreeArrangement(n, trees)


@lru_cache(maxsize=None)
def trivalent_realizable(n: int) -> tuple:
    """Canonical signatures of realizable all-trivalent arrangements, one per Sym(n) orbit."""
    if n < 4:
        raise InvalidInput("n must be at least 4")
    action = relation_action(3, n)
    if n == 4:
        trees = [LeafTree(set(range(1, 5)) - {i}) for i in range(1, 5)]
        sig = _signature_of_trees(4, trees)
        return (canonical_vector(sig, action).key,)
    found = {}
    for key in trivalent_realizable(n - 1):
        base = arrangement_from_signature(n - 1, key)
        seen = set()
        for arr in _extensions(base):
            sig = arr.signature()
            if sig in seen:
                continue
            seen.add(sig)
            ck = canonical_vector(sig, action).key
            if ck in found:
                continue
            found[ck] = lp_solve(signature_system(n, ck), want_dimension=False).feasible
    return tuple(sorted(k for k, ok in found.items() if ok))


class _ConeData:
    """A maximal cone, reduced modulo lineality to a pointed cone {u : C u >= 0}."""

    def __init__(self, n: int, sig: tuple):
        self.n, self.sig = n, sig
        system = signature_system(n, sig)
        m = system.m
        N = nullspace([r for r, _ in system.equalities], m)  # columns of the equality kernel
        self.N = N
        slot_of_strict = [k for k, v in enumerate(sig) if v != STAR]
        W = []
        for r, _ in system.strict:
            W.append([sum(Fraction(a) * b for a, b in zip(r, col) if a) for col in N])
        basis = []
        for k, row in enumerate(W):
            if rank([W[j] for j in basis] + [row]) > len(basis):
                basis.append(k)
        R = [W[j] for j in basis]
        k = len(R)
        f = len(N)
        # coordinates of each W row in terms of R
        red, piv = rref([[R[i][c] for i in range(k)] + [W[s][c] for s in range(len(W))] for c in range(f)],
                        k + len(W))
        C = []
        for s in range(len(W)):
            C.append([red[i][k + s] for i in range(k)])
        self.C = [list(primitive(c)) for c in C]
        self.slots = slot_of_strict
        self.R = R
        self.k = k
        self.rays = cone_rays(self.C)
        self.tight = []
        for u in self.rays:
            mask = 0
            for s, c in enumerate(self.C):
                if sum(a * b for a, b in zip(c, u)) == 0:
                    mask |= 1 << s
            self.tight.append(mask)

    def lift(self, u) -> list:
        """A pi vector whose strict-row values are the coordinates u."""
        f = len(self.N)
        aug = [list(row) + [Fraction(x)] for row, x in zip(self.R, u)]
        red, piv = rref(aug, f + 1)
        z = [Fraction(0)] * f
        for row, p in zip(red, piv):
            z[p] = row[f]
        m = len(self.N[0])
        return [sum(z[j] * self.N[j][i] for j in range(f) if z[j]) for i in range(m)]

    def closure(self, members: Iterable[int]) -> frozenset:
        z = -1
        for r in members:
            z &= self.tight[r]
        return frozenset(r for r, t in enumerate(self.tight) if t & z == z)

    def face_signature(self, face: frozenset) -> tuple:
        z = -1
        for r in face:
            z &= self.tight[r]
        sig = list(self.sig)
        for s, slot in enumerate(self.slots):
            if z >> s & 1:
                sig[slot] = STAR
        return tuple(sig)

    def faces(self):
        """All nonzero faces as (ray set, cone dimension) with covering pairs."""
        dims = {}
        level = []
        for r in range(len(self.rays)):
            f = self.closure([r])
            if f not in dims:
                dims[f] = 1
                level.append(f)
        covers = []
        rank_cache = {}
        while level:
            nxt = []
            for f in level:
                for r in range(len(self.rays)):
                    if r in f:
                        continue
                    g = self.closure(f | {r})
                    if g not in rank_cache:
                        rank_cache[g] = rank([self.rays[x] for x in g])
                    if rank_cache[g] != dims[f] + 1:
                        continue
                    if g not in dims:
                        dims[g] = dims[f] + 1
                        nxt.append(g)
                    covers.append((f, g))
            level = sorted(set(nxt), key=sorted)
        covers = sorted(set(covers), key=lambda p: (sorted(p[0]), sorted(p[1])))
        return dims, covers


@dataclass
class DressianCensus:
    n: int
    cells: list  # DressianCell, sorted by (dimension, signature)

    def f_vector(self, mod_symmetry: bool = False) -> tuple:
        top = max(c.dimension for c in self.cells)
        f = [0] * (top + 1)
        for c in self.cells:
            if c.dimension < 0:
                continue  # the lineality space itself, empty after projectivising
            f[c.dimension] += 1 if mod_symmetry else c.orbit_size
        return tuple(f)

    def maximal(self) -> list:
        covered = set()
        for c in self.cells:
            covered.update(c.facets)
        return [c for c in self.cells if c.signature not in covered]

    def by_signature(self) -> dict:
        return {c.signature: c for c in self.cells}

    def lines(self) -> list:
        out = [c.census_line() for c in self.cells]
        out.append("f " + " ".join(map(str, self.f_vector(True))) + " ; " + " ".join(map(str, self.f_vector())))
        return out


def _integral(values: Sequence[Fraction]) -> list:
    den = 1
    for v in values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    return [int(v * den) for v in values]


@lru_cache(maxsize=None)
def enumerate_dressian(n: int, d: int = 3) -> DressianCensus:
    """All cells of Dr(3,n) up to Sym(n): faces of the realizable trivalent cones."""
    if d != 3:
        raise InvalidInput("only d = 3 is supported")
    if n < 4:
        raise InvalidInput("n must be at least 4")
    action = relation_action(3, n)
    nfact = math.factorial(n)
    cells = {}
    if n == 4:
        sig = trivalent_realizable(4)[0]
        cells[sig] = DressianCell(4, sig, 0, 1, 24, TropicalPluckerVector(3, 4, [0] * 4), [])
        return DressianCensus(4, list(cells.values()))
    for top in trivalent_realizable(n):
        cone = _ConeData(n, top)
        dims, covers = cone.faces()
        canon = {}
        for face, dim in dims.items():
            sig = cone.face_signature(face)
            cf = canonical_vector(sig, action)
            canon[face] = cf.key
            if cf.key in cells:
                continue
            point = [Fraction(0)] * len(cone.N[0])
            for r in face:
                lifted = cone.lift(cone.rays[r])
                point = [a + b for a, b in zip(point, lifted)]
            pi = TropicalPluckerVector(3, n, _integral(point)).relabel(cf.witness)
            cells[cf.key] = DressianCell(n, cf.key, dim, nfact // cf.stabilizer_order,
                                         cf.stabilizer_order, pi, [])
        facet_sets = {}
        for small, big in covers:
            facet_sets.setdefault(canon[big], set()).add(canon[small])
        for key, fs in facet_sets.items():
            cell = cells[key]
            cell.facets = sorted(set(cell.facets) | fs)
    ordered = sorted(cells.values(), key=lambda c: (c.dimension, c.signature))
    return DressianCensus(n, ordered)


# ---------------------------------------------------------------------------
# generalized Fano matroids

@dataclass
class FanoBattery:
    r: int
    n: int
    nu: int
    beta: int
    stable: bool
    compatible: bool | None
    member: bool


def fano_membership_battery(r: int, check_compatibility: bool = True) -> FanoBattery:
    """Nonbases of F_r as a stable set of vertex splits whose weights sum into Dr(3, 2^r - 1)."""
    if r not in (3, 4):
        raise InvalidInput("the battery needs r in {3, 4}: F_2 has only three points")
    m = generalized_fano(r)
    n = m.n
    nonbases = m.nonbases()
    stable = not any(
        len(set(a) ^ set(b)) == 2 for a, b in itertools.combinations(nonbases, 2))
    compatible = None
    if check_compatibility:
        splits = [vertex_split(3, n, s) for s in nonbases]
        compatible = all(splits_compatible(a, b) for a, b in itertools.combinations(splits, 2))
    nb = {tuple(s) for s in nonbases}
    # sum of the vertex-split weights max(0, |S cap B| - 2): one exactly on the nonbases
    pi = TropicalPluckerVector(3, n, [1 if s in nb else 0 for s in subsets(n, 3)])
    return FanoBattery(r, n, len(nonbases), len(m.bases), stable, compatible, dressian_member(pi))
