"""Finite matroids given by their bases, with the named examples used throughout."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from .foundations import (
    InvalidInput,
    TooLarge,
    from_mask,
    popcount,
    rank as matrix_rank,
    subset_action,
    subsets,
    to_mask,
)


class ExchangeAxiomViolation(InvalidInput):
    """A pair of bases and an element for which no exchange partner exists."""

    def __init__(self, b1, b2, i):
        self.b1, self.b2, self.element = b1, b2, i
        super().__init__(f"basis exchange fails for B1={b1}, B2={b2}, i={i}")


class EmptyResult(InvalidInput):
    """A minor that would have no bases in the requested form."""


class Matroid:
    """A matroid of rank d on {1..n}, stored as a set of basis bitmasks.

    ``labels`` records the original names of the ground set elements after
    taking minors, so that position k (1-based) corresponds to labels[k-1].
    """

    __slots__ = ("d", "n", "bases", "labels", "__dict__")

    def __init__(self, d: int, n: int, bases: Iterable, labels: Sequence[int] | None = None,
                 check: bool = True):
        if n < 0 or not 0 <= d <= n:
            raise InvalidInput(f"invalid rank/size d={d}, n={n}")
        masks = set()
        for b in bases:
            mk = b if isinstance(b, int) else to_mask(b)
            if popcount(mk) != d or mk >> n:
                raise InvalidInput(f"basis {from_mask(mk) if isinstance(b, int) else tuple(b)} "
                                   f"is not a {d}-subset of 1..{n}")
            masks.add(mk)
        if not masks:
            raise InvalidInput("a matroid needs at least one basis")
        self.d, self.n = d, n
        self.bases = frozenset(masks)
        self.labels = tuple(labels) if labels is not None else tuple(range(1, n + 1))
        if len(self.labels) != n:
            raise InvalidInput("label list has the wrong length")
        if check:
            self._check_exchange()

    def _check_exchange(self):
        bases = self.bases
        for b1 in bases:
            for b2 in bases:
                only1 = b1 & ~b2
                if not only1:
                    continue
                only2 = b2 & ~b1
                for i in _bits(only1):
                    base = b1 & ~(1 << i)
                    if not any((base | (1 << j)) in bases for j in _bits(only2)):
                        raise ExchangeAxiomViolation(from_mask(b1), from_mask(b2), i + 1)

    # construction -----------------------------------------------------------

    @classmethod
    def from_nonbases(cls, d: int, n: int, nonbases: Iterable, **kw) -> "Matroid":
        bad = {to_mask(s) for s in nonbases}
        return cls(d, n, [to_mask(s) for s in subsets(n, d) if to_mask(s) not in bad], **kw)

    @classmethod
    def from_text(cls, text: str) -> "Matroid":
        """Parse 'n d' followed by one basis per line (labels 1..n)."""
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise InvalidInput("empty matroid file")
        try:
            n, d = (int(x) for x in lines[0].split())
            bases = [tuple(int(x) for x in ln.replace(",", " ").split()) for ln in lines[1:]]
        except ValueError as exc:
            raise InvalidInput(f"malformed matroid file: {exc}") from exc
        for b in bases:
            if len(set(b)) != len(b) or any(not 1 <= x <= n for x in b):
                raise InvalidInput(f"bad basis {b}")
        return cls(d, n, bases)

    def to_text(self) -> str:
        out = [f"{self.n} {self.d}"]
        out += [" ".join(map(str, b)) for b in self.sorted_bases()]
        return "\n".join(out) + "\n"

    # basic queries ------------------------------------------------------------

    def sorted_bases(self) -> list:
        return sorted(from_mask(b) for b in self.bases)

    def is_basis(self, s: Iterable[int]) -> bool:
        return to_mask(s) in self.bases

    def rank_of(self, s) -> int:
        mk = s if isinstance(s, int) else to_mask(s)
        return max(popcount(mk & b) for b in self.bases)

    def __len__(self):
        return len(self.bases)

    def __eq__(self, other):
        return isinstance(other, Matroid) and (self.d, self.n, self.bases) == (other.d, other.n, other.bases)

    def __hash__(self):
        return hash((self.d, self.n, self.bases))

    def __repr__(self):
        return f"Matroid(d={self.d}, n={self.n}, {len(self.bases)} bases)"

    @cached_property
    def loops(self) -> tuple:
        union = 0
        for b in self.bases:
            union |= b
        return tuple(i for i in range(1, self.n + 1) if not union >> (i - 1) & 1)

    @cached_property
    def coloops(self) -> tuple:
        inter = (1 << self.n) - 1
        for b in self.bases:
            inter &= b
        return from_mask(inter)

    def nonbases(self) -> list:
        return [s for s in subsets(self.n, self.d) if to_mask(s) not in self.bases]

    @cached_property
    def parallel_classes(self) -> tuple:
        """Parallel classes of the non-loop elements, each a sorted tuple."""
        loops = set(self.loops)
        elems = [i for i in range(1, self.n + 1) if i not in loops]
        classes = []
        seen = set()
        for e in elems:
            if e in seen:
                continue
            cls_ = [e]
            for f in elems:
                if f > e and f not in seen and self.rank_of(to_mask((e, f))) == 1:
                    cls_.append(f)
            seen.update(cls_)
            classes.append(tuple(cls_))
        return tuple(classes)

    def circuits(self) -> list:
        """Minimal dependent sets, as sorted tuples."""
        if self.n > 16:
            raise TooLarge("circuit enumeration limited to n <= 16")
        out = []
        indep_cache = {}

        def independent(mk):
            r = indep_cache.get(mk)
            if r is None:
                r = any(mk & b == mk for b in self.bases)
                indep_cache[mk] = r
            return r

        for size in range(1, self.d + 2):
            for s in itertools.combinations(range(1, self.n + 1), size):
                mk = to_mask(s)
                if independent(mk):
                    continue
                if all(independent(mk & ~(1 << (i - 1))) for i in s):
                    out.append(s)
        return out

    # polytope ---------------------------------------------------------------

    def polytope_dimension(self) -> int:
        pts = [[(b >> i) & 1 for i in range(self.n)] for b in self.bases]
        return matrix_rank(pts) - 1

    def is_connected(self) -> bool:
        """Connected iff the matroid polytope has dimension n - 1."""
        if self.n <= 1:
            return True
        return self.polytope_dimension() == self.n - 1

    def components(self) -> list:
        """Connected components from circuits (loops and coloops are singletons)."""
        parent = list(range(self.n + 1))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for c in self.circuits():
            for a, b in zip(c, c[1:]):
                parent[find(a)] = find(b)
        groups = {}
        for i in range(1, self.n + 1):
            groups.setdefault(find(i), []).append(i)
        return sorted(tuple(g) for g in groups.values())

    # minors -------------------------------------------------------------------

    def _relabel(self, keep: Sequence[int], bases_masks) -> "Matroid":
        pos = {e: k for k, e in enumerate(keep)}
        new = []
        for b in bases_masks:
            mk = 0
            for e in from_mask(b):
                mk |= 1 << pos[e]
            new.append(mk)
        d = popcount(next(iter(bases_masks)))
        return Matroid(d, len(keep), new, labels=[self.labels[e - 1] for e in keep], check=False)

    def delete(self, i: int) -> "Matroid":
        """M \\ i, ground set relabelled order-preservingly (see ``labels``)."""
        self._check_element(i)
        bit = 1 << (i - 1)
        keep = [e for e in range(1, self.n + 1) if e != i]
        avoid = [b for b in self.bases if not b & bit]
        if not avoid:
            raise EmptyResult(f"{i} is a coloop; no basis avoids it")
        return self._relabel(keep, avoid)

    def contract(self, i: int) -> "Matroid":
        """M / i, ground set relabelled order-preservingly (see ``labels``)."""
        self._check_element(i)
        bit = 1 << (i - 1)
        keep = [e for e in range(1, self.n + 1) if e != i]
        hit = [b & ~bit for b in self.bases if b & bit]
        if not hit:
            raise EmptyResult(f"{i} is a loop; no basis contains it")
        return self._relabel(keep, hit)

    def restrict(self, elements: Iterable[int]) -> "Matroid":
        keep = sorted(set(elements))
        mk = to_mask(keep)
        r = self.rank_of(mk)
        masks = {b & mk for b in self.bases if popcount(b & mk) == r}
        return self._relabel(keep, masks)

    def minor(self, contract: Iterable[int] = (), delete: Iterable[int] = ()) -> "Matroid":
        contract, delete = set(contract), set(delete)
        if contract & delete:
            raise InvalidInput("contract and delete sets overlap")
        c_mask = to_mask(contract)
        r_c = self.rank_of(c_mask)
        rest = [e for e in range(1, self.n + 1) if e not in contract and e not in delete]
        r_mask = to_mask(rest)
        # bases of M/C restricted to rest
        cand = {b & ~c_mask for b in self.bases if popcount(b & c_mask) == r_c}
        r = max(popcount(b & r_mask) for b in cand)
        masks = {b & r_mask for b in cand if popcount(b & r_mask) == r}
        return self._relabel(rest, masks)

    def _check_element(self, i):
        if not 1 <= i <= self.n:
            raise InvalidInput(f"element {i} not in 1..{self.n}")

    def dual(self) -> "Matroid":
        full = (1 << self.n) - 1
        return Matroid(self.n - self.d, self.n, [full & ~b for b in self.bases], labels=self.labels, check=False)

    # symmetry -------------------------------------------------------------------

    def indicator_vector(self) -> list:
        return [1 if to_mask(s) in self.bases else 0 for s in subsets(self.n, self.d)]

    def orbit_encoding(self):
        return ("matroid", self.d, self.n), self.indicator_vector(), subset_action(self.n, self.d)

    def isomorphisms_to(self, other: "Matroid", first_only: bool = False) -> list:
        """Bijections f (1-based image tuples) with f(bases of self) = bases of other."""
        if (self.d, self.n, len(self.bases)) != (other.d, other.n, len(other.bases)):
            return []
        n, d = self.n, self.d
        sets_by_max = {}
        for s in subsets(n, d):
            sets_by_max.setdefault(max(s) if s else 0, []).append(s)
        # invariant: number of bases through each element
        deg_a = [sum(1 for b in self.bases if b >> i & 1) for i in range(n)]
        deg_b = [sum(1 for b in other.bases if b >> i & 1) for i in range(n)]
        image = [0] * (n + 1)
        used = [False] * (n + 1)
        found = []

        def extend(k):
            if k > n:
                found.append(tuple(image[1:]))
                return first_only
            for t in range(1, n + 1):
                if used[t] or deg_a[k - 1] != deg_b[t - 1]:
                    continue
                image[k] = t
                ok = True
                for s in sets_by_max.get(k, ()):
                    img = 0
                    for e in s:
                        img |= 1 << (image[e] - 1)
                    if (to_mask(s) in self.bases) != (img in other.bases):
                        ok = False
                        break
                if ok:
                    used[t] = True
                    if extend(k + 1):
                        return True
                    used[t] = False
            image[k] = 0
            return False

        if d == 0:
            return [tuple(range(1, n + 1))]
        extend(1)
        return found

    def is_isomorphic(self, other: "Matroid") -> bool:
        return bool(self.isomorphisms_to(other, first_only=True))

    def automorphisms(self) -> list:
        return self.isomorphisms_to(self)

    def relabel(self, perm: Sequence[int]) -> "Matroid":
        """Image under the permutation sending element i to perm[i-1]."""
        new = []
        for b in self.bases:
            new.append(to_mask(perm[e - 1] for e in from_mask(b)))
        return Matroid(self.d, self.n, new, check=False)


def _bits(mask: int):
    i = 0
    while mask:
        if mask & 1:
            yield i
        mask >>= 1
        i += 1


def from_bases(n: int, d: int, bases: Iterable) -> Matroid:
    """Validated matroid; raises ExchangeAxiomViolation with a witness."""
    return Matroid(d, n, bases)


# ---------------------------------------------------------------------------
# named matroids

def uniform(d: int, n: int) -> Matroid:
    return Matroid(d, n, subsets(n, d), check=False)


FANO_LINES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))
PAPPUS_LINES = ((1, 2, 3), (1, 4, 8), (1, 5, 9), (2, 4, 7), (2, 6, 9), (3, 5, 7), (3, 6, 8),
                (4, 5, 6), (7, 8, 9))


def fano() -> Matroid:
    """PG(2,2), point i being the binary vector of i; lines are triples a ^ b ^ c = 0."""
    return Matroid.from_nonbases(3, 7, FANO_LINES, check=False)


def nonfano() -> Matroid:
    """The Fano configuration with the line 356 relaxed."""
    return Matroid.from_nonbases(3, 7, FANO_LINES[:-1], check=False)


def generalized_fano(r: int) -> Matroid:
    """Rank-3 matroid of PG(r-1,2): points are nonzero vectors of F_2^r, lines {a, b, a^b}."""
    if r < 2:
        raise InvalidInput("need r >= 2")
    n = 2 ** r - 1
    if n < 3:
        raise InvalidInput(f"F_{r} has {n} points, fewer than the rank 3")
    lines = {tuple(sorted((a, b, a ^ b))) for a in range(1, n + 1) for b in range(a + 1, n + 1)}
    return Matroid.from_nonbases(3, n, lines, check=False)


def pappus() -> Matroid:
    return Matroid.from_nonbases(3, 9, PAPPUS_LINES, check=False)


def hessian() -> Matroid:
    """AG(2,3): the nine points of F_3^2 with its twelve affine lines."""
    pts = [(x, y) for x in range(3) for y in range(3)]
    lines = set()
    for a, b in itertools.combinations(range(9), 2):
        (x1, y1), (x2, y2) = pts[a], pts[b]
        third = ((-x1 - x2) % 3, (-y1 - y2) % 3)
        c = pts.index(third)
        lines.add(tuple(sorted((a + 1, b + 1, c + 1))))
    return Matroid.from_nonbases(3, 9, lines, check=False)


def graphic(edges: Sequence[tuple], vertices: int | None = None) -> Matroid:
    """Cycle matroid of a connected graph; element k is edges[k-1]."""
    vs = sorted({v for e in edges for v in e})
    index = {v: k for k, v in enumerate(vs)}
    nv = len(vs) if vertices is None else vertices
    d = nv - 1
    bases = []
    for s in itertools.combinations(range(len(edges)), d):
        parent = list(range(nv))

        def find(x):
            while parent[x] != x:
                x = parent[x]
            return x

        ok = True
        for k in s:
            a, b = (index[v] for v in edges[k])
            ra, rb = find(a), find(b)
            if ra == rb:
                ok = False
                break
            parent[ra] = rb
        if ok:
            bases.append(tuple(k + 1 for k in s))
    return Matroid(d, len(edges), bases, check=False)


def complete_graph_k4() -> Matroid:
    return graphic([(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)])


def named(name: str) -> Matroid:
    """Look up 'fano', 'nonfano', 'pappus', 'hessian', 'k4', 'uniform(d,n)' or 'generalized_fano(r)'."""
    key = name.strip().lower().replace(" ", "")
    simple = {"fano": fano, "nonfano": nonfano, "pappus": pappus, "hessian": hessian, "k4": complete_graph_k4}
    if key in simple:
        return simple[key]()
    for prefix, nargs, fn in (("uniform(", 2, uniform), ("generalized_fano(", 1, generalized_fano)):
        if key.startswith(prefix) and key.endswith(")"):
            try:
                args = [int(x) for x in key[len(prefix):-1].split(",")]
            except ValueError:
                break
            if len(args) == nargs:
                return fn(*args)
    raise InvalidInput(f"unknown matroid name {name!r}")


# ---------------------------------------------------------------------------
# minors and series-parallel

def _independent_sets_of_size(m: Matroid, k: int):
    seen = set()
    for b in m.bases:
        for s in itertools.combinations(from_mask(b), k):
            if s not in seen:
                seen.add(s)
                yield s


def has_u24_minor(m: Matroid) -> bool:
    """True iff some minor is the four-point line U(2,4)."""
    if m.d < 2 or m.n < 4:
        return False
    for c in _independent_sets_of_size(m, m.d - 2):
        cm = to_mask(c)
        rest = [e for e in range(1, m.n + 1) if e not in c]
        # pairs {x, y} with C + x + y a basis
        good = set()
        for x, y in itertools.combinations(rest, 2):
            if (cm | (1 << (x - 1)) | (1 << (y - 1))) in m.bases:
                good.add((x, y))
        adj = {e: set() for e in rest}
        for x, y in good:
            adj[x].add(y)
            adj[y].add(x)
        for x in rest:
            for y in adj[x]:
                if y <= x:
                    continue
                common = sorted(z for z in adj[x] & adj[y] if z > y)
                for z, w in itertools.combinations(common, 2):
                    if w in adj[z]:
                        return True
    return False


def has_mk4_minor(m: Matroid) -> bool:
    """True iff some minor is the cycle matroid of K4."""
    if m.d < 3 or m.n < 6:
        return False
    for c in _independent_sets_of_size(m, m.d - 3):
        cm = to_mask(c)
        rest = [e for e in range(1, m.n + 1) if e not in c]

        def is_basis3(t):
            return (cm | to_mask(t)) in m.bases

        for x in itertools.combinations(rest, 6):
            nb = [t for t in itertools.combinations(x, 3) if not is_basis3(t)]
            if len(nb) != 4:
                continue
            if any(len(set(a) & set(b)) != 1 for a, b in itertools.combinations(nb, 2)):
                continue
            # each element on exactly two of the four triangles, and rank 3
            if all(sum(e in t for t in nb) == 2 for e in x):
                return True
    return False


def is_series_parallel(m: Matroid) -> bool:
    """Connected and free of U(2,4) and M(K4) minors (the graphic matroids of series-parallel networks)."""
    return m.is_connected() and not has_u24_minor(m) and not has_mk4_minor(m)


# ---------------------------------------------------------------------------
# labels for rank three matroids

@dataclass(frozen=True)
class MatroidLabel:
    kind: str  # "4-cycle", "two-triangles", "K4", "Fano", "NonFano", "Other"
    blocks: tuple
    text: str

    def __str__(self):
        return self.text


def _block(cls: tuple) -> str:
    return "".join(str(x) for x in cls)


def simple_lines(m: Matroid, reps: Sequence[int]) -> list:
    """Lines (rank-2 flats with at least three points) among the given representatives."""
    lines = set()
    for p, q in itertools.combinations(reps, 2):
        line = {p, q}
        for r in reps:
            if r not in line and m.rank_of(to_mask((p, q, r))) == 2:
                line.add(r)
        if len(line) >= 3:
            lines.add(tuple(sorted(line)))
    return sorted(lines)


def classify_label(m: Matroid) -> MatroidLabel:
    """Name a rank-3 matroid by the shape of its simplification.

    {A,B,C,D}       simplification U(3,4) with parallel classes A..D
    [A,B;C,D](E)    two three-point lines {A,B,E} and {C,D,E}
    <A;b;(c,d,e,f)> simplification M(K4): lines A c d, A e f, b c f, b d e
    Fano, NonFano   simple seven-point planes
    """
    if m.d != 3 or m.loops:
        return MatroidLabel("Other", (), "Other")
    classes = m.parallel_classes
    reps = [c[0] for c in classes]
    cls_of = {c[0]: c for c in classes}
    lines = simple_lines(m, reps)
    k = len(reps)
    if k == 4 and not lines:
        blocks = tuple(sorted(classes))
        return MatroidLabel("4-cycle", blocks, "{" + ",".join(_block(b) for b in blocks) + "}")
    if k == 5 and len(lines) == 2 and all(len(line) == 3 for line in lines):
        common = set(lines[0]) & set(lines[1])
        if len(common) == 1:
            e = common.pop()
            sides = []
            for line in lines:
                pair = sorted((cls_of[r] for r in line if r != e))
                sides.append(tuple(pair))
            sides.sort()
            (a, b), (c, d) = sides
            text = f"[{_block(a)},{_block(b)};{_block(c)},{_block(d)}]({_block(cls_of[e])})"
            return MatroidLabel("two-triangles", (a, b, c, d, cls_of[e]), text)
    if k == 6 and len(lines) == 4 and all(len(line) == 3 for line in lines):
        if all(len(set(x) & set(y)) == 1 for x, y in itertools.combinations(lines, 2)):
            big = [c for c in classes if len(c) > 1]
            a_rep = big[0][0] if len(big) == 1 else min(reps)
            on_a = [line for line in lines if a_rep in line]
            coll = {r for line in on_a for r in line}
            b_rep = next(r for r in reps if r not in coll)
            rest = sorted((r for r in reps if r not in (a_rep, b_rep)), key=lambda r: cls_of[r])
            c = rest[0]
            first = next(line for line in on_a if c in line)
            d = next(r for r in first if r not in (a_rep, c))
            b_lines = [line for line in lines if b_rep in line]
            e = next(r for line in b_lines if d in line for r in line if r not in (b_rep, d))
            f = next(r for r in rest if r not in (c, d, e))
            blocks = tuple(cls_of[r] for r in (a_rep, b_rep, c, d, e, f))
            text = "<{};{};({})>".format(_block(blocks[0]), _block(blocks[1]),
                                         ",".join(_block(x) for x in blocks[2:]))
            return MatroidLabel("K4", blocks, text)
    if k == 7 and len(classes) == m.n and all(len(line) == 3 for line in lines):
        if len(lines) == 7:
            return MatroidLabel("Fano", tuple(classes), "Fano")
        if len(lines) == 6:
            return MatroidLabel("NonFano", tuple(classes), "NonFano")
    return MatroidLabel("Other", tuple(classes), "Other")
