"""Tropical Plucker vectors and the three-term Dressian test.

Conventions: tropical addition is min, so a vector lies in the Dressian when
the minimum of every three-term Plucker relation is attained at least twice.
The value ``INF`` stands for a vanishing Plucker coordinate.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from .foundations import (
    DressianError,
    InvalidInput,
    PermutationAction,
    all_permutations,
    rank_encode,
    rat,
    subset_action,
    subset_position,
    subsets,
    to_mask,
)
from .matroid import Matroid


class NotInDressian(DressianError):
    """A vector failing some three-term relation (or otherwise not a valuated matroid)."""

    def __init__(self, message, relation=None):
        self.relation = relation
        super().__init__(message)


class DisconnectedMatroid(DressianError):
    pass


class _Infinity:
    """Tropical zero: larger than every rational and absorbing under addition."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("tropical-infinity")

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise InvalidInput("negating the tropical zero")


INF = _Infinity()


def tsum(*values):
    """Ordinary sum with INF absorbing."""
    total = Fraction(0)
    for v in values:
        if v is INF:
            return INF
        total += v
    return total


def parse_value(text: str):
    t = text.strip().lower()
    if t in ("inf", "infinity", "oo"):
        return INF
    return rat(t)


# ---------------------------------------------------------------------------
# relations

@dataclass(frozen=True)
class Relation:
    """The three-term relation for (S; i<j<k<l): terms ij|kl, ik|jl, il|jk."""

    s: tuple
    quad: tuple

    def term_sets(self):
        i, j, k, l = self.quad
        s = self.s
        return (
            (tuple(sorted(s + (i, j))), tuple(sorted(s + (k, l)))),
            (tuple(sorted(s + (i, k))), tuple(sorted(s + (j, l)))),
            (tuple(sorted(s + (i, l))), tuple(sorted(s + (j, k)))),
        )


@lru_cache(maxsize=None)
def relations(d: int, n: int) -> tuple:
    """All three-term relations of Gr(d,n) in a fixed order."""
    out = []
    for s in itertools.combinations(range(1, n + 1), d - 2):
        rest = [e for e in range(1, n + 1) if e not in s]
        for quad in itertools.combinations(rest, 4):
            out.append(Relation(s, quad))
    return tuple(out)


@lru_cache(maxsize=None)
def relation_term_indices(d: int, n: int) -> np.ndarray:
    """Array (R, 3, 2) of subset positions for every relation term."""
    pos = subset_position(n, d)
    rels = relations(d, n)
    arr = np.zeros((len(rels), 3, 2), dtype=np.int32)
    for r, rel in enumerate(rels):
        for t, (a, b) in enumerate(rel.term_sets()):
            arr[r, t, 0] = pos[a]
            arr[r, t, 1] = pos[b]
    return arr


@lru_cache(maxsize=None)
def relation_action(d: int, n: int) -> PermutationAction:
    """Action of Sym(n) on relations together with the induced map on term indices.

    Slot values 0,1,2 name a term, 3 means no term (used for 'all tie').
    """
    rels = relations(d, n)
    index = {(r.s, r.quad): k for k, r in enumerate(rels)}
    perms = all_permutations(n)
    P, R = len(perms), len(rels)
    images = np.zeros((P, R), dtype=np.int32)
    vmap = np.zeros((P, R, 4), dtype=np.int8)
    pairings = ((0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2))
    for p, perm in enumerate(perms):
        g = [0] + [int(x) + 1 for x in perm]
        for r, rel in enumerate(rels):
            s2 = tuple(sorted(g[x] for x in rel.s))
            q = [g[x] for x in rel.quad]
            q2 = tuple(sorted(q))
            images[p, r] = index[(s2, q2)]
            pos = {v: k for k, v in enumerate(q2)}
            for t, (a, b, c, e) in enumerate(pairings):
                first = {pos[q[a]], pos[q[b]]}
                if 0 not in first:
                    first = {pos[q[c]], pos[q[e]]}
                # the partner of the smallest image names the new term
                vmap[p, r, t] = max(first) - 1
            vmap[p, r, 3] = 3
    return PermutationAction(n, images, vmap)


# ---------------------------------------------------------------------------
# Plucker vectors

class TropicalPluckerVector:
    """A map from d-subsets of {1..n} to Q union {INF}, stored in lexicographic order."""

    __slots__ = ("d", "n", "values", "_support")

    def __init__(self, d: int, n: int, values: Sequence, check_support: bool = True):
        if not 0 < d < n:
            raise InvalidInput(f"need 0 < d < n, got d={d}, n={n}")
        subs = subsets(n, d)
        if len(values) != len(subs):
            raise InvalidInput(f"expected {len(subs)} coordinates, got {len(values)}")
        vals = tuple(INF if v is INF else rat(v) for v in values)
        if all(v is INF for v in vals):
            raise InvalidInput("all coordinates are infinite")
        self.d, self.n, self.values = d, n, vals
        self._support = None
        if check_support and any(v is INF for v in vals):
            self.support_matroid()

    @classmethod
    def from_mapping(cls, d: int, n: int, mapping: Mapping, default=INF) -> "TropicalPluckerVector":
        pos = subset_position(n, d)
        vals = [default] * len(pos)
        for key, v in mapping.items():
            s = tuple(sorted(key))
            if s not in pos:
                raise InvalidInput(f"{key} is not a {d}-subset of 1..{n}")
            vals[pos[s]] = v
        return cls(d, n, vals)

    @classmethod
    def from_function(cls, d: int, n: int, fn: Callable) -> "TropicalPluckerVector":
        return cls(d, n, [fn(s) for s in subsets(n, d)])

    @classmethod
    def from_text(cls, text: str) -> "TropicalPluckerVector":
        """Parse 'd n' then lines 'ijk value' (or 'i j k value'); unlisted subsets are INF."""
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise InvalidInput("empty Plucker file")
        head = lines[0].split()
        try:
            d, n = int(head[0]), int(head[1])
        except (ValueError, IndexError) as exc:
            raise InvalidInput("first line must be 'd n'") from exc
        mapping = {}
        for ln in lines[1:]:
            parts = ln.replace(",", " ").split()
            if len(parts) == 2 and d > 1 and len(parts[0]) == d and parts[0].isdigit():
                parts = list(parts[0]) + parts[1:]  # concatenated indices, n <= 9
            if len(parts) != d + 1:
                raise InvalidInput(f"malformed line {ln!r}")
            try:
                key = tuple(int(x) for x in parts[:d])
            except ValueError as exc:
                raise InvalidInput(f"malformed indices in {ln!r}") from exc
            if len(set(key)) != d or any(not 1 <= x <= n for x in key):
                raise InvalidInput(f"bad index set {key}")
            skey = tuple(sorted(key))
            if skey in mapping:
                raise InvalidInput(f"duplicate entry for {skey}")
            mapping[skey] = parse_value(parts[d])
        return cls.from_mapping(d, n, mapping)

    def to_text(self) -> str:
        out = [f"{self.d} {self.n}"]
        for s, v in zip(subsets(self.n, self.d), self.values):
            if v is not INF:
                key = "".join(map(str, s)) if self.n <= 9 else " ".join(map(str, s))
                out.append(f"{key} {v}")
        return "\n".join(out) + "\n"

    def __getitem__(self, s):
        return self.values[subset_position(self.n, self.d)[tuple(sorted(s))]]

    def items(self):
        return zip(subsets(self.n, self.d), self.values)

    def __eq__(self, other):
        return isinstance(other, TropicalPluckerVector) and (self.d, self.n, self.values) == (
            other.d, other.n, other.values)

    def __hash__(self):
        return hash((self.d, self.n, self.values))

    def __repr__(self):
        return f"TropicalPluckerVector(d={self.d}, n={self.n})"

    @property
    def is_finite(self) -> bool:
        return all(v is not INF for v in self.values)

    def support_matroid(self) -> Matroid:
        if self._support is None:
            bases = [s for s, v in self.items() if v is not INF]
            self._support = Matroid(self.d, self.n, bases)
        return self._support

    def __add__(self, other):
        if (self.d, self.n) != (other.d, other.n):
            raise InvalidInput("ambient mismatch")
        return TropicalPluckerVector(self.d, self.n, [tsum(a, b) for a, b in zip(self.values, other.values)])

    def scale(self, c) -> "TropicalPluckerVector":
        c = rat(c)
        if c < 0:
            raise InvalidInput("negative scaling")
        return TropicalPluckerVector(self.d, self.n, [v if v is INF else c * v for v in self.values],
                                     check_support=False)

    def add_lineality(self, coeffs: Sequence) -> "TropicalPluckerVector":
        """pi(S) + sum_{i in S} c_i, which leaves the induced subdivision unchanged."""
        c = [rat(x) for x in coeffs]
        vals = []
        for s, v in self.items():
            vals.append(INF if v is INF else v + sum(c[i - 1] for i in s))
        return TropicalPluckerVector(self.d, self.n, vals, check_support=False)

    def relabel(self, perm: Sequence[int]) -> "TropicalPluckerVector":
        """Image under i -> perm[i-1]: (g.pi)(g(S)) = pi(S)."""
        pos = subset_position(self.n, self.d)
        vals = [None] * len(self.values)
        for s, v in self.items():
            vals[pos[tuple(sorted(perm[i - 1] for i in s))]] = v
        return TropicalPluckerVector(self.d, self.n, vals, check_support=False)

    def orbit_encoding(self):
        distinct, ranks = rank_encode([(1, 0) if v is INF else (0, v) for v in self.values])
        return ("plucker", self.d, self.n, distinct), ranks, subset_action(self.n, self.d)


def zero_vector(d: int, n: int) -> TropicalPluckerVector:
    return TropicalPluckerVector(d, n, [0] * len(subsets(n, d)))


# ---------------------------------------------------------------------------
# membership

def relation_terms(pi: TropicalPluckerVector, rel: Relation) -> tuple:
    return tuple(tsum(pi[a], pi[b]) for a, b in rel.term_sets())


def three_term_min_attained_twice(pi: TropicalPluckerVector, s: Iterable[int], quad: Iterable[int]) -> bool:
    s = tuple(sorted(s))
    quad = tuple(sorted(quad))
    if len(s) != pi.d - 2 or len(quad) != 4 or len(set(s) | set(quad)) != pi.d + 2:
        raise InvalidInput(f"relation indices overlap or have the wrong size: S={s}, quad={quad}")
    if any(not 1 <= x <= pi.n for x in s + quad):
        raise InvalidInput("relation index out of range")
    terms = relation_terms(pi, Relation(s, quad))
    low = min(terms)
    return low is INF or sum(1 for t in terms if t == low) >= 2


def attainment_sets(pi: TropicalPluckerVector) -> list:
    """Per relation, a bitmask of the terms attaining the minimum (0 when all are INF)."""
    scaled = _integer_values(pi)
    if scaled is not None:
        idx = relation_term_indices(pi.d, pi.n)
        terms = scaled[idx[:, :, 0]] + scaled[idx[:, :, 1]]
        low = terms.min(axis=1, keepdims=True)
        hit = terms == low
        return (hit[:, 0] * 1 + hit[:, 1] * 2 + hit[:, 2] * 4).tolist()
    out = []
    for rel in relations(pi.d, pi.n):
        terms = relation_terms(pi, rel)
        low = min(terms)
        if low is INF:
            out.append(0)
        else:
            out.append(sum(1 << t for t, v in enumerate(terms) if v == low))
    return out


def _integer_values(pi: TropicalPluckerVector):
    """Finite values scaled to a common denominator as int64, when that is exact."""
    if not pi.is_finite:
        return None
    den = 1
    for v in pi.values:
        den = den * v.denominator // math.gcd(den, v.denominator)
    ints = [v.numerator * (den // v.denominator) for v in pi.values]
    if max(abs(x) for x in ints) >= 1 << 60:
        return None
    return np.array(ints, dtype=np.int64)


def failing_relation(pi: TropicalPluckerVector):
    """The first relation whose minimum is attained once, or None."""
    for rel, mask in zip(relations(pi.d, pi.n), attainment_sets(pi)):
        if mask in (1, 2, 4):
            return rel
    return None


def dressian_member(pi: TropicalPluckerVector) -> bool:
    """Every three-term relation attains its minimum at least twice (support must be a matroid)."""
    if not pi.is_finite:
        try:
            pi.support_matroid()
        except InvalidInput:
            return False
    return failing_relation(pi) is None


def matroid_dressian_member(pi: TropicalPluckerVector, m: Matroid) -> bool:
    """Membership in Dr(M): support equal to the bases of M and all three-term relations hold."""
    support = {to_mask(s) for s, v in pi.items() if v is not INF}
    if support != set(m.bases) or (pi.d, pi.n) != (m.d, m.n):
        return False
    return dressian_member(pi)


def valuated_matroid_check(pi: TropicalPluckerVector) -> bool:
    """Full exchange axiom for valuated matroids: for S, T in the support and i in S-T
    some j in T-S has pi(S) + pi(T) >= pi(S-i+j) + pi(T-j+i)."""
    pos = subset_position(pi.n, pi.d)
    supp = [(s, v) for s, v in pi.items() if v is not INF]
    for s, vs in supp:
        ss = set(s)
        for t, vt in supp:
            tt = set(t)
            lhs = vs + vt
            for i in ss - tt:
                ok = False
                for j in tt - ss:
                    a = pi.values[pos[tuple(sorted((ss - {i}) | {j}))]]
                    b = pi.values[pos[tuple(sorted((tt - {j}) | {i}))]]
                    if lhs >= tsum(a, b):
                        ok = True
                        break
                if not ok:
                    return False
    return True


@dataclass(frozen=True)
class ConeSignature:
    """Per relation, the set of terms attaining the minimum.

    Masks use bit t for term t (ij|kl, ik|jl, il|jk); 0 marks an all-infinite relation.
    """

    d: int
    n: int
    masks: tuple

    def compact(self) -> tuple:
        """0/1/2 = the one term strictly above the minimum, 3 = all three tie."""
        out = []
        for m in self.masks:
            if m == 7:
                out.append(3)
            elif m in (3, 5, 6):
                out.append({6: 0, 5: 1, 3: 2}[m])
            else:
                raise InvalidInput("compact form needs a finite Dressian vector")
        return tuple(out)


def cone_signature(pi: TropicalPluckerVector) -> ConeSignature:
    masks = attainment_sets(pi)
    for rel, mask in zip(relations(pi.d, pi.n), masks):
        if mask in (1, 2, 4):
            raise NotInDressian(f"relation S={rel.s} quad={rel.quad} attains its minimum once", rel)
    return ConeSignature(pi.d, pi.n, tuple(masks))


def indicator_vector(m: Matroid) -> TropicalPluckerVector:
    """lambda_M: 0 on bases, 1 on non-bases."""
    if not m.is_connected():
        raise DisconnectedMatroid("the indicator vector needs a connected matroid")
    return TropicalPluckerVector(m.d, m.n, [0 if to_mask(s) in m.bases else 1 for s in subsets(m.n, m.d)])


def random_lineality(n: int, rng: random.Random, bound: int = 5) -> list:
    return [Fraction(rng.randint(-bound, bound), rng.randint(1, 3)) for _ in range(n)]


# ---------------------------------------------------------------------------
# the Pappus trinomial

@dataclass(frozen=True)
class TrinomialWitness:
    monomials: tuple  # three tuples of 3-subsets


PAPPUS_TRINOMIAL = TrinomialWitness((
    ((2, 8, 9), (3, 8, 9), (4, 8, 9), (5, 6, 9), (5, 8, 9), (1, 6, 7)),
    ((1, 8, 9), (3, 8, 9), (4, 8, 9), (5, 6, 9), (6, 7, 9), (2, 5, 8)),
    ((1, 8, 9), (2, 8, 9), (5, 6, 9), (5, 8, 9), (6, 7, 8), (3, 4, 9)),
))


def trinomial_values(pi: TropicalPluckerVector, witness: TrinomialWitness = PAPPUS_TRINOMIAL) -> tuple:
    return tuple(tsum(*(pi[s] for s in mono)) for mono in witness.monomials)


def trinomial_excludes(pi: TropicalPluckerVector, witness: TrinomialWitness = PAPPUS_TRINOMIAL) -> bool:
    """True iff the minimum over the three monomials is attained exactly once."""
    if (pi.d, pi.n) != (3, 9):
        raise InvalidInput("the Pappus trinomial lives on Gr(3,9)")
    for mono in witness.monomials:
        for s in mono:
            if pi[s] is INF:
                raise InvalidInput(f"monomial variable p_{''.join(map(str, s))} vanishes on this support")
    vals = trinomial_values(pi, witness)
    low = min(vals)
    return sum(1 for v in vals if v == low) == 1
