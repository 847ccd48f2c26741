"""Leaf-labelled trees stored as split systems, tree metrics and the notations used for them.

A tree on a leaf set L is recorded by its splits.  Each split is normalised
to the side avoiding min(L); trivial splits (pendant edges) only appear as
keys of the optional length map.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence

from .foundations import InvalidInput, rat


class FourPointViolation(InvalidInput):
    def __init__(self, quad):
        self.quad = quad
        super().__init__(f"four point condition fails on {quad}")


STAR = 3  # quartet code for an unresolved quartet


def quartet_code(quad: Sequence[int], pair: Iterable[int]) -> int:
    """0 for ab|cd, 1 for ac|bd, 2 for ad|bc where quad = (a<b<c<d) and pair is a's side."""
    a, b, c, d = quad
    side = set(pair)
    if a not in side:
        side = set(quad) - side
    if side == {a, b}:
        return 0
    if side == {a, c}:
        return 1
    if side == {a, d}:
        return 2
    raise InvalidInput(f"{pair} is not a 2|2 split of {quad}")


class LeafTree:
    """An unrooted tree with labelled leaves and no degree-two nodes."""

    __slots__ = ("leaves", "splits", "lengths", "_hash")

    def __init__(self, leaves: Iterable[int], splits: Iterable[Iterable[int]] = (),
                 lengths: Mapping | None = None):
        self.leaves = frozenset(leaves)
        if len(self.leaves) < 2:
            raise InvalidInput("a tree needs at least two leaves")
        norm = set()
        for s in splits:
            side = self._normalize(s)
            if 2 <= len(side) <= len(self.leaves) - 2:
                norm.add(side)
        for a, b in itertools.combinations(norm, 2):
            if a & b and not (a <= b or b <= a):
                raise InvalidInput(f"incompatible splits {sorted(a)} and {sorted(b)}")
        self.splits = frozenset(norm)
        self._hash = None
        if lengths is None:
            self.lengths = None
        else:
            ln = {}
            for key, v in lengths.items():
                side = self._normalize(key)
                ln[side] = ln.get(side, Fraction(0)) + rat(v)
            for side, v in ln.items():
                if v < 0:
                    raise InvalidInput("negative edge length")
                if 2 <= len(side) <= len(self.leaves) - 2 and side not in self.splits:
                    raise InvalidInput(f"length given for a split {sorted(side)} not in the tree")
            for side in self.edges():
                if side not in ln:
                    raise InvalidInput(f"missing length for edge {sorted(side)}")
            # zero internal edges are contracted so the topology is the combinatorial type
            zero = {s for s in self.splits if ln[s] == 0}
            if zero:
                self.splits = frozenset(self.splits - zero)
            self.lengths = {s: ln[s] for s in self.edges()}

    def _normalize(self, side) -> frozenset:
        side = frozenset(side)
        if not side <= self.leaves or not side or side == self.leaves:
            raise InvalidInput(f"{sorted(side)} is not a proper subset of the leaves")
        root = min(self.leaves)
        return self.leaves - side if root in side else side

    # structure ------------------------------------------------------------

    def edges(self) -> list:
        """All edges as normalised sides, pendant edges first (by leaf), then internal (sorted)."""
        root = min(self.leaves)
        pend = [frozenset({x}) for x in sorted(self.leaves) if x != root]
        pend.insert(0, self.leaves - {root})
        return pend + sorted(self.splits, key=lambda s: (len(s), sorted(s)))

    @property
    def is_metric(self) -> bool:
        return self.lengths is not None

    def is_trivalent(self) -> bool:
        return len(self.splits) == len(self.leaves) - 3

    def internal_nodes(self) -> list:
        """Internal nodes as the set of clades hanging below them (rooted at min leaf)."""
        return list(self._node_children().keys())

    def _node_children(self) -> dict:
        """Map each internal node (named by its clade) to its child clades."""
        root = min(self.leaves)
        clades = set(self.splits) | {frozenset({x}) for x in self.leaves if x != root}
        top = self.leaves - {root}
        children = {}
        ordered = sorted(clades, key=len)
        for c in ordered:
            # parent clade: smallest clade strictly containing c, or the top node
            parent = top
            for d in ordered:
                if len(d) > len(c) and c < d and len(d) < len(parent):
                    parent = d
            children.setdefault(parent, []).append(c)
        return children

    def graph(self) -> tuple:
        """(nodes, edges) with leaves as ints and internal nodes as their clades (frozensets).

        Nodes are listed leaves first in increasing order, then internal
        nodes by clade; each edge is (parent, child) with its length or None.
        """
        root = min(self.leaves)
        top = self.leaves - {root}
        children = self._node_children()

        def node(clade):
            return min(clade) if len(clade) == 1 and clade not in children else clade

        def length(side):
            return self.lengths.get(self._normalize(side)) if self.lengths is not None else None

        edges = [(top, root, length({root}))]
        for parent in sorted(children, key=lambda c: (-len(c), sorted(c))):
            for c in sorted(children[parent], key=sorted):
                edges.append((parent, node(c), length(c)))
        internal = sorted(children, key=lambda c: (-len(c), sorted(c)))
        return sorted(self.leaves) + internal, edges

    def node_degrees(self) -> list:
        ch = self._node_children()
        return sorted(len(v) + 1 for k, v in ch.items())

    def __eq__(self, other):
        return (isinstance(other, LeafTree) and self.leaves == other.leaves and self.splits == other.splits
                and self.lengths == other.lengths)

    def same_topology(self, other) -> bool:
        return self.leaves == other.leaves and self.splits == other.splits

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.leaves, self.splits))
        return self._hash

    def __repr__(self):
        return f"LeafTree({to_notation(self)})"

    def topology(self) -> "LeafTree":
        return LeafTree(self.leaves, self.splits)

    # queries ------------------------------------------------------------

    def quartet(self, quad: Iterable[int]) -> int:
        q = tuple(sorted(quad))
        if len(set(q)) != 4 or not set(q) <= self.leaves:
            raise InvalidInput(f"{q} are not four leaves of the tree")
        qs = set(q)
        for s in self.splits:
            inside = qs & s
            if len(inside) == 2:
                return quartet_code(q, inside)
        return STAR

    def distance(self, a: int, b: int) -> Fraction:
        if self.lengths is None:
            raise InvalidInput("tree has no edge lengths")
        if a == b:
            return Fraction(0)
        total = Fraction(0)
        for side, v in self.lengths.items():
            if (a in side) != (b in side):
                total += v
        return total

    # operations ---------------------------------------------------------

    def delete_leaf(self, i: int) -> "LeafTree":
        if i not in self.leaves:
            raise InvalidInput(f"{i} is not a leaf")
        rest = self.leaves - {i}
        if len(rest) < 2:
            raise InvalidInput("cannot delete from a two-leaf tree")
        new_splits = [s - {i} for s in self.splits]
        if self.lengths is None:
            return LeafTree(rest, [s for s in new_splits if s and s != rest])
        lengths = {}
        for side, v in self.lengths.items():
            s = side - {i}
            if not s or s == rest:
                continue  # the pendant edge of i
            key = s if min(rest) not in s else rest - s
            lengths[key] = lengths.get(key, Fraction(0)) + v
        return LeafTree(rest, [s for s in new_splits if s and s != rest], lengths)

    def restrict(self, keep: Iterable[int]) -> "LeafTree":
        t = self
        for x in sorted(self.leaves - set(keep)):
            t = t.delete_leaf(x)
        return t

    def contract_edge(self, side: Iterable[int]) -> "LeafTree":
        s = self._normalize(side)
        if s not in self.splits:
            if len(s) == 1 or len(s) == len(self.leaves) - 1:
                raise InvalidInput("cannot contract a pendant edge")
            raise InvalidInput(f"{sorted(s)} is not an edge of the tree")
        lengths = None
        if self.lengths is not None:
            lengths = {k: v for k, v in self.lengths.items() if k != s}
        return LeafTree(self.leaves, self.splits - {s}, lengths)

    def relabel(self, mapping: Mapping[int, int]) -> "LeafTree":
        leaves = [mapping[x] for x in self.leaves]
        splits = [[mapping[x] for x in s] for s in self.splits]
        lengths = None
        if self.lengths is not None:
            lengths = {frozenset(mapping[x] for x in k): v for k, v in self.lengths.items()}
        return LeafTree(leaves, splits, lengths)

    def canonical_encoding(self) -> str:
        """Sorted recursive bracket string, rooted at the smallest leaf."""
        ch = self._node_children()
        root = min(self.leaves)

        def enc(clade):
            if len(clade) == 1 and clade not in ch:
                return str(next(iter(clade)))
            parts = sorted(enc(c) for c in ch.get(clade, []))
            return "(" + ",".join(parts) + ")"

        return f"{root}:" + enc(self.leaves - {root})


# ---------------------------------------------------------------------------
# constructors

def star(leaves: Iterable[int]) -> LeafTree:
    return LeafTree(leaves)


def path_tree(groups: Sequence[Sequence[int]]) -> LeafTree:
    """Caterpillar-shaped tree: consecutive path nodes carrying the given leaf groups."""
    groups = [tuple(g) for g in groups]
    if not groups or any(not g for g in groups):
        raise InvalidInput("empty leaf group")
    if len(groups) > 1 and (len(groups[0]) < 2 or len(groups[-1]) < 2):
        raise InvalidInput("end nodes of a caterpillar need at least two leaves")
    leaves = [x for g in groups for x in g]
    if len(set(leaves)) != len(leaves):
        raise InvalidInput("repeated leaf")
    splits = []
    acc = []
    for g in groups[:-1]:
        acc.extend(g)
        splits.append(tuple(acc))
    return LeafTree(leaves, splits)


def caterpillar(spec) -> LeafTree:
    """C(ab,cd,ef) style: first and last tokens are cherries, inner tokens list pendant leaves in order."""
    tokens = _spec_tokens(spec, "C")
    if len(tokens) < 2 or len(tokens[0]) != 2 or len(tokens[-1]) != 2:
        raise InvalidInput(f"malformed caterpillar {spec!r}")
    groups = [tokens[0]] + [(x,) for t in tokens[1:-1] for x in t] + [tokens[-1]]
    return path_tree(groups)


def snowflake(spec) -> LeafTree:
    """S(ab,cd,ef): three cherries around a central node."""
    tokens = _spec_tokens(spec, "S")
    if len(tokens) != 3 or any(len(t) != 2 for t in tokens):
        raise InvalidInput(f"malformed snowflake {spec!r}")
    leaves = [x for t in tokens for x in t]
    return LeafTree(leaves, tokens)


def _spec_tokens(spec, letter):
    if isinstance(spec, str):
        m = re.fullmatch(rf"\s*{letter}?\s*\(?([^()]*)\)?\s*", spec)
        if not m:
            raise InvalidInput(f"malformed {letter}(...) specification {spec!r}")
        parts = [p.strip() for p in m.group(1).split(",")]
        return [tuple(int(ch) for ch in p) for p in parts if p]
    return [tuple(t) for t in spec]


# ---------------------------------------------------------------------------
# notation

def parse_tree(text: str, leaves: Iterable[int] | None = None) -> LeafTree:
    """Parse Newick, C(...), S(...) or the path notation 'ab c de' / 'ab (cde)'."""
    t = text.strip()
    if not t:
        raise InvalidInput("empty tree")
    if t.endswith(";") or t.startswith("(") and ("," in t):
        tree = parse_newick(t)
    elif t[0] in "Cc" and "(" in t:
        tree = caterpillar(t[1:])
    elif t[0] in "Ss" and "(" in t:
        tree = snowflake(t[1:])
    else:
        groups = []
        for tok in re.findall(r"\([^()]*\)|[^\s()]+", t):
            tok = tok.strip("()")
            if not tok.isdigit():
                raise InvalidInput(f"bad token {tok!r} in {text!r}")
            groups.append(tuple(int(ch) for ch in tok))
        tree = path_tree(groups)
    if leaves is not None and tree.leaves != frozenset(leaves):
        raise InvalidInput(f"tree {text!r} has leaves {sorted(tree.leaves)}, expected {sorted(leaves)}")
    return tree


def parse_newick(text: str) -> LeafTree:
    """Unrooted Newick with integer leaf names and optional rational ':length' annotations."""
    s = text.strip().rstrip(";").strip()
    pos = 0
    node_ids = itertools.count(-1, -1)
    adj = {}
    lengths = {}

    def add_edge(u, v, ln):
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
        lengths[frozenset((u, v))] = ln

    def parse_length():
        nonlocal pos
        if pos < len(s) and s[pos] == ":":
            pos += 1
            m = re.match(r"\s*([-+0-9/]+)", s[pos:])
            if not m:
                raise InvalidInput("bad branch length")
            pos += m.end()
            return rat(m.group(1))
        return None

    def parse_sub():
        nonlocal pos
        while pos < len(s) and s[pos].isspace():
            pos += 1
        if pos < len(s) and s[pos] == "(":
            pos += 1
            me = next(node_ids)
            adj.setdefault(me, [])
            while True:
                child = parse_sub()
                ln = parse_length()
                add_edge(me, child, ln)
                while pos < len(s) and s[pos].isspace():
                    pos += 1
                if pos >= len(s):
                    raise InvalidInput("unbalanced parentheses")
                if s[pos] == ",":
                    pos += 1
                    continue
                if s[pos] == ")":
                    pos += 1
                    break
                raise InvalidInput(f"unexpected {s[pos]!r} in Newick")
            m = re.match(r"[0-9]+", s[pos:])
            if m:
                raise InvalidInput("internal node labels are not supported")
            return me
        m = re.match(r"\s*([0-9]+)", s[pos:])
        if not m:
            raise InvalidInput(f"expected a leaf label at position {pos}")
        pos += m.end()
        label = int(m.group(1))
        if label in adj:
            raise InvalidInput(f"leaf {label} repeated")
        adj[label] = []
        return label

    parse_sub()
    if pos != len(s):
        raise InvalidInput(f"trailing text in Newick: {s[pos:]!r}")
    return tree_from_graph(adj, lengths if any(v is not None for v in lengths.values()) else None)


def tree_from_graph(adj: Mapping, edge_lengths: Mapping | None = None) -> LeafTree:
    """Leaves are positive labels; degree-two internal nodes are suppressed."""
    leaves = [v for v in adj if isinstance(v, int) and v > 0]
    if any(len(adj[v]) != 1 for v in leaves):
        raise InvalidInput("leaves must have degree one")
    leafset = frozenset(leaves)
    root = min(leafset)

    # clade below each directed edge (away from root)
    clades = {}

    def below(u, parent):
        if u in leafset and u != root:
            return frozenset({u})
        acc = frozenset()
        for w in adj[u]:
            if w != parent:
                c = below(w, u)
                clades[(u, w)] = c
                acc |= c
        return acc

    start = adj[root][0]
    clades[(root, start)] = below(start, root)
    lengths = {} if edge_lengths is not None else None
    splits = []
    for (u, w), c in clades.items():
        side = c
        if 2 <= len(side) <= len(leafset) - 2:
            splits.append(side)
        if lengths is not None:
            ln = edge_lengths.get(frozenset((u, w)))
            if ln is None:
                raise InvalidInput("missing branch length")
            key = side if root not in side else leafset - side
            lengths[key] = lengths.get(key, Fraction(0)) + ln
    return LeafTree(leafset, splits, lengths)


def to_newick(t: LeafTree) -> str:
    ch = t._node_children()
    root = min(t.leaves)

    def length(clade):
        if t.lengths is None:
            return ""
        return f":{t.lengths[clade]}"

    def enc(clade):
        if len(clade) == 1 and clade not in ch:
            return str(next(iter(clade))) + length(clade)
        parts = sorted((enc(c) for c in ch.get(clade, [])), key=_newick_key)
        return "(" + ",".join(parts) + ")" + length(clade)

    top = t.leaves - {root}
    inner = sorted((enc(c) for c in ch.get(top, [])), key=_newick_key)
    rl = f":{t.lengths[top]}" if t.lengths is not None else ""
    return "(" + f"{root}{rl}," + ",".join(inner) + ");"


def _newick_key(s):
    digits = re.findall(r"[0-9]+", s)
    return (int(digits[0]) if digits else 0, s)


def _caterpillar_groups(t: LeafTree):
    """Leaf groups along the spine if every internal node lies on one path, else None."""
    if not t.splits:
        return [sorted(t.leaves)]
    chain = sorted(t.splits, key=len)
    for a, b in zip(chain, chain[1:]):
        if not a < b:
            # splits may point in different directions; try flipping to a chain
            break
    else:
        groups = [sorted(chain[0])]
        for a, b in zip(chain, chain[1:]):
            groups.append(sorted(b - a))
        groups.append(sorted(t.leaves - chain[-1]))
        return groups
    # general case: orient splits so that they form a chain, if possible
    sides = [(s, t.leaves - s) for s in t.splits]
    for choice in itertools.product((0, 1), repeat=len(sides)):
        pick = sorted((sides[k][c] for k, c in enumerate(choice)), key=len)
        if all(a < b for a, b in zip(pick, pick[1:])):
            groups = [sorted(pick[0])]
            for a, b in zip(pick, pick[1:]):
                groups.append(sorted(b - a))
            groups.append(sorted(t.leaves - pick[-1]))
            return groups
        if len(sides) > 10:
            break
    return None


def to_notation(t: LeafTree) -> str:
    """Compact notation where it applies (single-digit labels), Newick otherwise."""
    if t.lengths is not None or any(x > 9 for x in t.leaves):
        return to_newick(t)
    m = len(t.leaves)
    groups = _caterpillar_groups(t)
    if m == 6 and len(t.splits) == 3 and groups is None:
        cherries = sorted(sorted(s) if len(s) == 2 else sorted(t.leaves - s) for s in t.splits)
        return "S(" + ",".join("".join(map(str, c)) for c in cherries) + ")"
    if groups is None:
        return to_newick(t)
    groups = _orient_groups(groups)
    if m >= 6 and t.is_trivalent():
        inner = "".join(str(g[0]) for g in groups[1:-1])
        return "C({},{},{})".format("".join(map(str, groups[0])), inner,
                                     "".join(map(str, groups[-1])))
    out = []
    for g in groups:
        tok = "".join(map(str, g))
        out.append(tok if len(g) <= 2 else f"({tok})")
    return " ".join(out)


def _orient_groups(groups):
    """Read a caterpillar from the end whose first group is lexicographically smaller."""
    if len(groups) > 1 and groups[-1] < groups[0]:
        return groups[::-1]
    return groups


# ---------------------------------------------------------------------------
# metrics

@dataclass(frozen=True)
class TreeMetric:
    leaves: tuple
    dist: Mapping  # frozenset({a, b}) -> Fraction

    def __call__(self, a, b):
        if a == b:
            return Fraction(0)
        return self.dist[frozenset((a, b))]

    @classmethod
    def from_function(cls, leaves, fn):
        leaves = tuple(sorted(leaves))
        return cls(leaves, {frozenset((a, b)): rat(fn(a, b)) for a, b in itertools.combinations(leaves, 2)})


def tree_metric(t: LeafTree) -> TreeMetric:
    if t.lengths is None:
        raise InvalidInput("tree has no edge lengths")
    return TreeMetric.from_function(t.leaves, t.distance)


def four_point_violation(m: TreeMetric):
    for q in itertools.combinations(m.leaves, 4):
        a, b, c, d = q
        sums = sorted((m(a, b) + m(c, d), m(a, c) + m(b, d), m(a, d) + m(b, c)))
        if sums[1] != sums[2]:
            return q
    return None


def four_point_check(m: TreeMetric) -> bool:
    return four_point_violation(m) is None


def isolation_index(m: TreeMetric, side: frozenset) -> Fraction:
    """Bandelt-Dress isolation index of the split side | complement."""
    other = [x for x in m.leaves if x not in side]
    a_side = sorted(side)
    best = None
    for a, a2 in itertools.combinations_with_replacement(a_side, 2):
        for b, b2 in itertools.combinations_with_replacement(other, 2):
            val = max(m(a, b) + m(a2, b2), m(a, b2) + m(a2, b)) - m(a, a2) - m(b, b2)
            if best is None or val < best:
                best = val
    return best / 2


def tree_from_metric(m: TreeMetric) -> LeafTree:
    """The metric tree realising m, with zero-length internal edges contracted."""
    bad = four_point_violation(m)
    if bad is not None:
        raise FourPointViolation(bad)
    leaves = list(m.leaves)
    root = leaves[0]
    others = leaves[1:]
    lengths = {}
    splits = []
    for r in range(1, len(others) + 1):
        for side in itertools.combinations(others, r):
            side = frozenset(side)
            alpha = isolation_index(m, side)
            if alpha > 0:
                lengths[side] = alpha
                if 2 <= len(side) <= len(leaves) - 2:
                    splits.append(side)
    leafset = frozenset(leaves)
    for x in leaves:
        key = frozenset({x}) if x != root else leafset - {root}
        lengths.setdefault(key, Fraction(0))
    return LeafTree(leaves, splits, lengths)


# ---------------------------------------------------------------------------
# generation

def quartets_of(t: LeafTree) -> dict:
    return {q: t.quartet(q) for q in itertools.combinations(sorted(t.leaves), 4)}


def tree_from_quartets(leaves: Iterable[int], quartets: Mapping) -> LeafTree:
    """The tree whose quartet profile is given; raises if no tree has it."""
    leaves = sorted(leaves)
    splits = []
    others = leaves[1:]
    for r in range(2, len(leaves) - 1):
        for side in itertools.combinations(others, r):
            sset = set(side)
            rest = [x for x in leaves if x not in sset]
            ok = True
            for a, a2 in itertools.combinations(side, 2):
                for b, b2 in itertools.combinations(rest, 2):
                    q = tuple(sorted((a, a2, b, b2)))
                    if quartets[q] != quartet_code(q, (a, a2)):
                        ok = False
                        break
                if not ok:
                    break
            if ok:
                splits.append(side)
    t = LeafTree(leaves, splits)
    if quartets_of(t) != {q: quartets[q] for q in itertools.combinations(leaves, 4)}:
        raise InvalidInput("quartet profile is not realised by a tree")
    return t


def insert_leaf(t: LeafTree, x: int, edge: frozenset) -> LeafTree:
    """Subdivide the given edge (a normalised side) and attach leaf x there."""
    if x in t.leaves:
        raise InvalidInput(f"{x} already a leaf")
    new_leaves = t.leaves | {x}
    splits = []
    for s in t.splits:
        splits.append(s | {x} if edge < s else s)
    splits.append(edge)
    splits.append(edge | {x})
    out = []
    for s in splits:
        if 2 <= len(s) <= len(new_leaves) - 2:
            out.append(s)
    return LeafTree(new_leaves, out)


@lru_cache(maxsize=None)
def trivalent_trees(leaves: tuple) -> tuple:
    """All trivalent trees on the given leaves, in a deterministic order."""
    leaves = tuple(sorted(leaves))
    if len(leaves) < 3:
        raise InvalidInput("need at least three leaves")
    if len(leaves) == 3:
        return (LeafTree(leaves),)
    out = []
    for t in trivalent_trees(leaves[:-1]):
        for e in t.edges():
            out.append(insert_leaf(t, leaves[-1], e))
    return tuple(out)


def double_factorial(k: int) -> int:
    r = 1
    while k > 1:
        r *= k
        k -= 2
    return r
