"""Exact arithmetic, subset bookkeeping, symmetry reduction and linear programming.

Everything here works over the rationals.  Public values are
``fractions.Fraction``; the simplex kernel uses ``gmpy2.mpq`` internally and
converts back at the boundary.
"""

from __future__ import annotations

import itertools
import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np
from gmpy2 import mpq

Rat = Fraction
SubsetIndex = tuple  # sorted tuple of 1-based labels
Permutation = tuple  # images of 1..n, 1-based


class DressianError(Exception):
    """Base class for the errors raised by this package."""


class InvalidInput(DressianError):
    pass


class TooLarge(DressianError):
    """Raised when a requested computation exceeds a documented size guard."""


def rat(value) -> Fraction:
    """Parse an exact rational from int, Fraction, mpq or a 'p/q' string."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidInput(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(type(value), type) and type(value).__name__ == "mpq":
        return Fraction(int(value.numerator), int(value.denominator))
    if isinstance(value, str):
        text = value.strip()
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInput(f"not a rational: {value!r}") from exc
    if isinstance(value, float):
        raise InvalidInput("floating point values are not accepted; use p/q strings")
    raise InvalidInput(f"not a rational: {value!r}")


def to_mpq(value) -> mpq:
    if isinstance(value, Fraction):
        return mpq(value.numerator, value.denominator)
    return mpq(value)


def from_mpq(value) -> Fraction:
    return Fraction(int(value.numerator), int(value.denominator))


# ---------------------------------------------------------------------------
# subsets

@lru_cache(maxsize=None)
def subsets(n: int, d: int) -> tuple:
    """All d-subsets of {1..n} in lexicographic order."""
    if d < 0 or n < 0:
        raise InvalidInput("negative size")
    return tuple(itertools.combinations(range(1, n + 1), d))


@lru_cache(maxsize=None)
def subset_position(n: int, d: int) -> dict:
    return {s: k for k, s in enumerate(subsets(n, d))}


def to_mask(labels: Iterable[int]) -> int:
    m = 0
    for i in labels:
        m |= 1 << (i - 1)
    return m


def from_mask(mask: int) -> tuple:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def hypersimplex_vertices(d: int, n: int) -> tuple:
    """Vertices e_S of the hypersimplex, indexed by sorted d-subsets of {1..n}."""
    if not 0 < d < n:
        raise InvalidInput(f"need 0 < d < n, got d={d}, n={n}")
    return subsets(n, d)


def vertices_adjacent(s: Sequence[int], t: Sequence[int]) -> bool:
    """Two vertices of a hypersimplex span an edge iff |S symmetric-difference T| = 2."""
    if len(s) != len(t):
        raise InvalidInput("vertices of different hypersimplices")
    return len(set(s) ^ set(t)) == 2


def indicator(labels: Iterable[int], n: int) -> tuple:
    v = [0] * n
    for i in labels:
        v[i - 1] = 1
    return tuple(v)


# ---------------------------------------------------------------------------
# exact linear algebra

def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q.

    Returns (reduced rows as lists of Fractions, pivot columns).
    """
    mat = [[rat(x) for x in r] for r in rows]
    if not mat:
        return [], []
    width = len(mat[0]) if ncols is None else ncols
    pivots = []
    r = 0
    for c in range(width):
        pr = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        piv = mat[r][c]
        if piv != 1:
            mat[r] = [x / piv for x in mat[r]]
        prow = mat[r]
        for i in range(len(mat)):
            if i != r:
                f = mat[i][c]
                if f != 0:
                    row = mat[i]
                    mat[i] = [a - f * b for a, b in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat[:r], pivots


def rank(rows: Sequence[Sequence]) -> int:
    rows = [r for r in rows]
    if not rows:
        return 0
    if all(isinstance(x, int) for r in rows for x in r):
        return _int_rank([list(r) for r in rows])
    return len(rref(rows)[1])


def _int_rank(mat: list) -> int:
    """Fraction-free (Bareiss style) rank of an integer matrix."""
    if not mat:
        return 0
    m, n = len(mat), len(mat[0])
    r = 0
    prev = 1
    for c in range(n):
        pr = None
        for i in range(r, m):
            if mat[i][c] != 0:
                pr = i
                break
        if pr is None:
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        p = mat[r][c]
        for i in range(r + 1, m):
            f = mat[i][c]
            row = mat[i]
            mat[i] = [(p * row[j] - f * mat[r][j]) // prev for j in range(n)]
        prev = p
        r += 1
        if r == m:
            break
    return r


def nullspace(rows: Sequence[Sequence], ncols: int) -> list:
    """Basis of {x : rows . x = 0} as lists of Fractions."""
    if not rows:
        return [[Fraction(int(i == j)) for i in range(ncols)] for j in range(ncols)]
    red, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, p in zip(red, piv):
            v[p] = -row[f]
        basis.append(v)
    return basis


def affine_rank(points: Sequence[Sequence]) -> int:
    """Dimension of the affine hull of a finite point set (-1 for no points)."""
    pts = list(points)
    if not pts:
        return -1
    base = pts[0]
    diffs = [[a - b for a, b in zip(p, base)] for p in pts[1:]]
    return rank(diffs) if diffs else 0


def primitive(vec: Sequence) -> tuple:
    """Scale a rational vector to the primitive integer vector in the same direction."""
    fr = [rat(x) for x in vec]
    den = 1
    for x in fr:
        den = den * x.denominator // math.gcd(den, x.denominator)
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = math.gcd(g, x)
    if g == 0:
        return tuple(ints)
    return tuple(x // g for x in ints)


# ---------------------------------------------------------------------------
# linear programming

@dataclass
class LinearSystem:
    """A polyhedron {x in Q^m : E x = e, W x >= w, S x > s}.

    Rows are given as (coefficients, right hand side) pairs.
    """

    m: int
    equalities: list = field(default_factory=list)
    weak: list = field(default_factory=list)
    strict: list = field(default_factory=list)

    def copy(self) -> "LinearSystem":
        return LinearSystem(self.m, list(self.equalities), list(self.weak), list(self.strict))

    def satisfied_by(self, x: Sequence) -> bool:
        x = [rat(v) for v in x]

        def val(row):
            return sum((rat(a) * b for a, b in zip(row, x) if a), Fraction(0))

        return (all(val(r) == rat(h) for r, h in self.equalities)
                and all(val(r) >= rat(h) for r, h in self.weak)
                and all(val(r) > rat(h) for r, h in self.strict))


@dataclass
class LPResult:
    feasible: bool
    dimension: int | None = None
    witness: tuple | None = None


class Unbounded(DressianError):
    pass


class _Dictionary:
    """Simplex dictionary  basic_i = const_i + sum_j coef_ij * nonbasic_j."""

    def __init__(self, rows, consts, ncols):
        self.coef = rows
        self.const = consts
        self.basic = [("s", i) for i in range(len(rows))]
        self.nonbasic = [("v", j) for j in range(ncols)]
        self.free_rows = set()

    def pivot(self, r, c):
        coef, const = self.coef, self.const
        row = coef[r]
        a = row[c]
        inv = 1 / a
        new_row = [-x * inv for x in row]
        new_row[c] = inv
        new_const = -const[r] * inv
        coef[r] = new_row
        const[r] = new_const
        for i in range(len(coef)):
            if i == r:
                continue
            ri = coef[i]
            f = ri[c]
            if f == 0:
                continue
            ri[c] = 0
            for j, x in enumerate(new_row):
                if x:
                    ri[j] += f * x
            const[i] += f * new_const
        self.basic[r], self.nonbasic[c] = self.nonbasic[c], self.basic[r]

    def objective_pivot(self, obj, obj_const, r, c):
        """Update an objective row (list, const) for the pivot just performed at (r, c)."""
        f = obj[c]
        if f == 0:
            return obj, obj_const
        row = self.coef[r]
        obj = list(obj)
        obj[c] = 0
        for j, x in enumerate(row):
            if x:
                obj[j] += f * x
        return obj, obj_const + f * self.const[r]


def _simplex(dic: _Dictionary, obj, obj_const, rows_active, max_iter=100000):
    """Maximise obj over the dictionary; rows_active are the sign-constrained rows."""
    degenerate = 0
    for _ in range(max_iter):
        use_bland = degenerate > 20
        enter = None
        best = 0
        for j, x in enumerate(obj):
            if x > 0:
                if use_bland:
                    if enter is None or dic.nonbasic[j] < dic.nonbasic[enter]:
                        enter = j
                elif x > best:
                    best, enter = x, j
        if enter is None:
            return obj, obj_const
        leave = None
        ratio = None
        for i in rows_active:
            a = dic.coef[i][enter]
            if a < 0:
                t = dic.const[i] / (-a)
                if (ratio is None or t < ratio
                        or (t == ratio and dic.basic[i] < dic.basic[leave])):
                    ratio, leave = t, i
        if leave is None:
            raise Unbounded("objective unbounded")
        degenerate = degenerate + 1 if ratio == 0 else 0
        dic.pivot(leave, enter)
        obj, obj_const = dic.objective_pivot(obj, obj_const, leave, enter)
    raise DressianError("simplex iteration limit reached")


def maximize(rows: Sequence[Sequence], rhs: Sequence, objective: Sequence):
    """Maximise objective . v subject to rows . v >= rhs with all variables free.

    Returns (optimal value, optimal point) as mpq values, or None when the
    constraints are infeasible.  Raises Unbounded if the optimum is infinite.
    """
    ncols = len(objective)
    coef = [[to_mpq(a) for a in r] for r in rows]
    const = [-to_mpq(h) for h in rhs]
    dic = _Dictionary(coef, const, ncols)
    obj = [to_mpq(c) for c in objective]
    obj_const = mpq(0)
    dropped = []
    # move the free variables into the basis
    for j in range(ncols):
        col = None
        for i in range(len(coef)):
            if i not in dic.free_rows and dic.coef[i][j] != 0:
                col = i
                break
        if col is None:
            if obj[j] != 0:
                raise Unbounded("free variable with no constraint")
            dropped.append(j)
            continue
        dic.pivot(col, j)
        obj, obj_const = dic.objective_pivot(obj, obj_const, col, j)
        dic.free_rows.add(col)
    active = [i for i in range(len(coef)) if i not in dic.free_rows]
    # phase one with a single artificial column
    if any(dic.const[i] < 0 for i in active):
        art = len(dic.nonbasic)
        active_set = set(active)
        for i in range(len(coef)):
            dic.coef[i].append(mpq(1) if i in active_set else mpq(0))
        dic.nonbasic.append(("a", 0))
        obj.append(mpq(0))
        worst = min(active, key=lambda i: dic.const[i])
        ph = [mpq(0)] * len(dic.nonbasic)
        ph[art] = mpq(-1)
        ph_const = mpq(0)
        dic.pivot(worst, art)
        ph, ph_const = dic.objective_pivot(ph, ph_const, worst, art)
        obj, obj_const = dic.objective_pivot(obj, obj_const, worst, art)
        ph, ph_const, obj, obj_const = _simplex_with_tracking(dic, ph, ph_const, active, obj, obj_const)
        if ph_const < 0:
            return None
        # drive the artificial variable out of the basis
        if ("a", 0) in dic.basic:
            r = dic.basic.index(("a", 0))
            c = next((j for j, x in enumerate(dic.coef[r]) if x != 0 and dic.nonbasic[j] != ("a", 0)), None)
            if c is not None:
                dic.pivot(r, c)
                obj, obj_const = dic.objective_pivot(obj, obj_const, r, c)
            else:
                active = [i for i in active if i != r]
        c_art = dic.nonbasic.index(("a", 0)) if ("a", 0) in dic.nonbasic else None
        if c_art is not None:
            for i in range(len(dic.coef)):
                dic.coef[i][c_art] = mpq(0)
            obj[c_art] = mpq(0)
    obj, obj_const = _simplex(dic, obj, obj_const, active)
    point = [mpq(0)] * ncols
    for i, b in enumerate(dic.basic):
        if b[0] == "v":
            point[b[1]] = dic.const[i]
    return obj_const, point


def _simplex_with_tracking(dic, ph, ph_const, active, obj, obj_const):
    """Phase-one simplex that keeps the phase-two objective row up to date."""
    degenerate = 0
    while True:
        use_bland = degenerate > 20
        enter = None
        best = 0
        for j, x in enumerate(ph):
            if x > 0:
                if use_bland:
                    if enter is None or dic.nonbasic[j] < dic.nonbasic[enter]:
                        enter = j
                elif x > best:
                    best, enter = x, j
        if enter is None:
            return ph, ph_const, obj, obj_const
        leave = None
        ratio = None
        for i in active:
            a = dic.coef[i][enter]
            if a < 0:
                t = dic.const[i] / (-a)
                if ratio is None or t < ratio or (t == ratio and dic.basic[i] < dic.basic[leave]):
                    ratio, leave = t, i
        if leave is None:
            raise Unbounded("phase one unbounded")
        degenerate = degenerate + 1 if ratio == 0 else 0
        dic.pivot(leave, enter)
        ph, ph_const = dic.objective_pivot(ph, ph_const, leave, enter)
        obj, obj_const = dic.objective_pivot(obj, obj_const, leave, enter)


def _normalize_rows(rows):
    """Drop duplicate inequality rows, keeping the tightest right hand side.

    rows: list of (coefficient tuple of Fractions, rhs, is_strict).
    """
    best = {}
    for coeffs, h, strict in rows:
        den = 1
        for x in coeffs:
            den = den * x.denominator // math.gcd(den, x.denominator)
        ints = [int(x * den) for x in coeffs]
        g = 0
        for x in ints:
            g = math.gcd(g, x)
        key = tuple(x // g for x in ints)
        scale = Fraction(den, g)
        hh = h * scale
        cur = best.get(key)
        if cur is None or hh > cur[0] or (hh == cur[0] and strict and not cur[1]):
            best[key] = (hh, strict)
    return [(tuple(Fraction(x) for x in k), v[0], v[1]) for k, v in best.items()]


def lp_solve(system: LinearSystem, want_dimension: bool = True) -> LPResult:
    """Decide feasibility of a linear system with strict inequalities.

    Returns the dimension of the solution set (the affine dimension of its
    closure) and an exact witness point when feasible.
    """
    m = system.m
    # parametrise the equality solutions x = x0 + N z
    if system.equalities:
        aug = [[rat(a) for a in r] + [rat(h)] for r, h in system.equalities]
        red, piv = rref(aug, m + 1)
        if m in piv:
            return LPResult(False)
        x0 = [Fraction(0)] * m
        for row, p in zip(red, piv):
            x0[p] = row[m]
        basis = nullspace([row[:m] for row in red], m)
    else:
        x0 = [Fraction(0)] * m
        basis = [[Fraction(int(i == j)) for i in range(m)] for j in range(m)]
    f = len(basis)

    def transform(row, h):
        row = [rat(a) for a in row]
        coeffs = tuple(sum((row[i] * b[i] for i in range(m) if row[i] and b[i]), Fraction(0)) for b in basis)
        shift = sum((row[i] * x0[i] for i in range(m) if row[i] and x0[i]), Fraction(0))
        return coeffs, rat(h) - shift

    rows = []
    for kind, group in ((False, system.weak), (True, system.strict)):
        for r, h in group:
            coeffs, hh = transform(r, h)
            if not any(coeffs):
                if hh > 0 or (kind and hh == 0):
                    return LPResult(False)
                continue
            rows.append((coeffs, hh, kind))
    rows = _normalize_rows(rows)

    def lift(z):
        return tuple(x0[i] + sum((z[k] * basis[k][i] for k in range(f) if z[k]), Fraction(0)) for i in range(m))

    if not rows:
        return LPResult(True, f, tuple(x0))
    strict_rows = [r for r in rows if r[2]]
    # maximise eps with strict rows >= rhs + eps, eps <= 1
    A, b = [], []
    for coeffs, h, strict in rows:
        A.append(list(coeffs) + [Fraction(-1) if strict else Fraction(0)])
        b.append(h)
    A.append([Fraction(0)] * f + [Fraction(-1)])
    b.append(Fraction(-1))
    if not strict_rows:
        A[-1][-1] = Fraction(-1)
    objective = [0] * f + [1 if strict_rows else 0]
    if not strict_rows:
        # eps is irrelevant; pin it to 1
        A.append([Fraction(0)] * f + [Fraction(1)])
        b.append(Fraction(1))
    res = maximize(A, b, objective)
    if res is None:
        return LPResult(False)
    value, point = res
    if strict_rows and value <= 0:
        return LPResult(False)
    z = [from_mpq(v) for v in point[:f]]
    witness = lift(z)
    if not want_dimension:
        return LPResult(True, None, witness)
    weak_rows = [(c, h) for c, h, s in rows]
    undecided = [k for k, (c, h) in enumerate(weak_rows)
                 if not rows[k][2] and sum(a * v for a, v in zip(c, z)) == h]
    implied = []
    while undecided:
        # maximise sum of t_k, t_k <= 1, row_k - t_k >= rhs_k for undecided rows
        u = len(undecided)
        pos = {k: i for i, k in enumerate(undecided)}
        A2, b2 = [], []
        for k, (c, h) in enumerate(weak_rows):
            extra = [Fraction(0)] * u
            if k in pos:
                extra[pos[k]] = Fraction(-1)
            A2.append(list(c) + extra)
            b2.append(h)
        for i in range(u):
            extra = [Fraction(0)] * u
            extra[i] = Fraction(-1)
            A2.append([Fraction(0)] * f + extra)
            b2.append(Fraction(-1))
            A2.append([Fraction(0)] * f + [-x for x in extra])
            b2.append(Fraction(0))
        res = maximize(A2, b2, [0] * f + [1] * u)
        value, point = res
        if value == 0:
            implied.extend(undecided)
            break
        undecided = [k for k in undecided if point[f + pos[k]] == 0]
    if implied:
        dim = f - rank([list(weak_rows[k][0]) for k in implied])
    else:
        dim = f
    return LPResult(True, dim, witness)


# ---------------------------------------------------------------------------
# cones

def cone_rays(constraints: Sequence[Sequence[int]]) -> list:
    """Extreme rays of a pointed cone {u : A u >= 0} by double description.

    A must have full column rank.  Rays come back as primitive integer tuples
    in a deterministic order.
    """
    A = [list(primitive(r)) for r in constraints]
    if not A:
        raise InvalidInput("empty constraint list")
    k = len(A[0])
    # choose k independent rows for the initial simplicial cone
    chosen = []
    for i, row in enumerate(A):
        if rank([A[j] for j in chosen] + [row]) > len(chosen):
            chosen.append(i)
            if len(chosen) == k:
                break
    if len(chosen) < k:
        raise InvalidInput("cone is not pointed")
    B = [[Fraction(x) for x in A[i]] for i in chosen]
    # invert B: columns of B^-1 are the initial rays
    aug = [row + [Fraction(int(i == j)) for j in range(k)] for i, row in enumerate(B)]
    red, _ = rref(aug, 2 * k)
    inv_cols = [[red[i][k + j] for i in range(k)] for j in range(k)]
    rays = [list(primitive(c)) for c in inv_cols]
    processed = list(chosen)

    def dot(a, b):
        return sum(x * y for x, y in zip(a, b))

    zero_sets = []
    for r in rays:
        zero_sets.append({i for i in processed if dot(A[i], r) == 0})
    for i, row in enumerate(A):
        if i in chosen:
            continue
        vals = [dot(row, r) for r in rays]
        pos = [j for j, v in enumerate(vals) if v > 0]
        neg = [j for j, v in enumerate(vals) if v < 0]
        zer = [j for j, v in enumerate(vals) if v == 0]
        new_rays = [rays[j] for j in pos + zer]
        new_zero = [zero_sets[j] for j in pos] + [zero_sets[j] | {i} for j in zer]
        for p in pos:
            for q in neg:
                common = zero_sets[p] & zero_sets[q]
                if len(common) < k - 2:
                    continue
                adjacent = True
                for t in range(len(rays)):
                    if t != p and t != q and common <= zero_sets[t]:
                        adjacent = False
                        break
                if not adjacent:
                    continue
                vp, vq = vals[p], -vals[q]
                comb = [vq * a + vp * b for a, b in zip(rays[p], rays[q])]
                new_rays.append(list(primitive(comb)))
                new_zero.append(common | {i})
        rays, zero_sets = new_rays, new_zero
        processed.append(i)
    out = sorted({tuple(r) for r in rays})
    return out


# ---------------------------------------------------------------------------
# symmetry

@lru_cache(maxsize=None)
def all_permutations(n: int) -> np.ndarray:
    """All permutations of {0..n-1} as an (n!, n) array, identity first."""
    if n > 10:
        raise TooLarge(f"symmetric group of degree {n} is too large to list")
    return np.array(list(itertools.permutations(range(n))), dtype=np.int16)


@dataclass
class PermutationAction:
    """How Sym(n) moves a list of slots, optionally transforming slot values.

    images[p, s]   : slot index that slot s is sent to by permutation p
    value_map[p, s, v] : new value of a slot whose old value is v
    """

    n: int
    images: np.ndarray
    value_map: np.ndarray | None = None

    def apply(self, vectors: np.ndarray) -> np.ndarray:
        """Images of one vector (shape (S,)) under every permutation, shape (P, S)."""
        vec = np.asarray(vectors)
        P, S = self.images.shape
        if self.value_map is not None:
            vals = self.value_map[:, np.arange(S), vec]
        else:
            vals = np.broadcast_to(vec, (P, S))
        out = np.empty((P, S), dtype=vals.dtype)
        np.put_along_axis(out, self.images.astype(np.intp), vals, axis=1)
        return out


@lru_cache(maxsize=None)
def subset_action(n: int, d: int) -> PermutationAction:
    perms = all_permutations(n)
    subs = subsets(n, d)
    pos = subset_position(n, d)
    arr = np.array(subs, dtype=np.int16) - 1
    imgs = perms[:, arr]  # (P, S, d)
    imgs.sort(axis=2)
    # encode sorted tuples to lex positions via a lookup on masks
    weights = (1 << np.arange(n)).astype(np.int64)
    masks = (weights[imgs.astype(np.intp)]).sum(axis=2)
    lookup = {sum(1 << (i - 1) for i in s): k for s, k in pos.items()}
    table = np.zeros(1 << n, dtype=np.int32)
    for mk, k in lookup.items():
        table[mk] = k
    return PermutationAction(n, table[masks])


@dataclass(frozen=True)
class CanonicalForm:
    key: tuple
    stabilizer_order: int
    witness: Permutation  # 1-based images of a permutation reaching the key


def canonical_vector(vec: Sequence[int], action: PermutationAction) -> CanonicalForm:
    """Lexicographically minimal image of an integer vector under the action."""
    vec = np.asarray(vec, dtype=np.int16)
    if vec.size == 0:
        return CanonicalForm((), math.factorial(action.n), tuple(range(1, action.n + 1)))
    imgs = action.apply(vec)
    order = np.lexsort(imgs.T[::-1])
    best = imgs[order[0]]
    count = int((imgs == best).all(axis=1).sum())
    perm = all_permutations(action.n)[order[0]]
    return CanonicalForm(tuple(int(x) for x in best), count, tuple(int(x) + 1 for x in perm))


def rank_encode(values: Sequence) -> tuple:
    """Replace values by their ranks among the distinct values (order preserving)."""
    distinct = sorted(set(values))
    pos = {v: k for k, v in enumerate(distinct)}
    return tuple(distinct), [pos[v] for v in values]


def canonical_orbit_rep(obj) -> CanonicalForm:
    """Canonical form of a matroid, tropical Plucker vector or tree arrangement under Sym(n).

    Two objects lie in the same orbit iff their keys are equal.  The key is
    the lexicographically smallest relabelled encoding.
    """
    enc = getattr(obj, "orbit_encoding", None)
    if enc is None:
        raise InvalidInput(f"no symmetry encoding for {type(obj).__name__}")
    header, vector, action = enc()
    cf = canonical_vector(vector, action)
    return CanonicalForm((header, cf.key), cf.stabilizer_order, cf.witness)


def worker_count() -> int:
    """Worker processes allowed by DRESSIAN_THREADS (default 1)."""
    raw = os.environ.get("DRESSIAN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InvalidInput(f"DRESSIAN_THREADS must be an integer, got {raw!r}")
