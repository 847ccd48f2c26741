"""Lozenge tilings of k*Delta_2, their tree arrangements, and arrangements of tropical lines.

Grid conventions.  Upward unit triangles U(i,j) (i, j >= 0, i + j <= k-1)
have corners (i,j), (i+1,j), (i,j+1); downward triangles D(i,j)
(i + j <= k-2) have corners (i+1,j), (i,j+1), (i+1,j+1).  D(i,j) shares its
diagonal edge with U(i,j) ('l'), its vertical edge with U(i+1,j) ('r') and
its horizontal edge with U(i,j+1) ('u').  A lozenge tiling pairs every D with
one neighbour; the k unpaired U are the upward triangles.

Edges come in three directions: a (horizontal), b (vertical), c (diagonal).
The side of the big triangle made of a-edges is side a (j = 0), b-edges
side b (i = 0), c-edges side c (i + j = k).  Starting from an upward
triangle, the strip of tiles glued along edges of one direction is the
branch of that tree which ends on the corresponding side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Mapping, Sequence

from .foundations import InvalidInput, rat
from .trees import LeafTree
from .arrangements import TreeArrangement


class InconsistentLabeling(InvalidInput):
    pass


U_NEIGHBOURS = {"l": (0, 0), "r": (1, 0), "u": (0, 1)}


@dataclass(frozen=True)
class MixedSubdivision:
    """A lozenge tiling of k*Delta_2, optionally coarsened by a partition of its tiles.

    match: for each D(i,j), one of 'l', 'r', 'u'.
    labels: upward triangle (i,j) -> tree label (may be empty for unlabelled tilings).
    cells: optional tile -> cell id; tiles are ('U', i, j) for upward triangles
    and ('L', i, j) for the lozenge containing D(i,j).
    """

    k: int
    match: tuple                 # ((i, j, code), ...) sorted
    labels: tuple = ()           # ((i, j, label), ...) sorted
    cells: tuple = ()            # ((tile, cell id), ...) sorted
    sides: tuple = (1, 2, 3)     # labels of the trees for sides a, b, c

    @property
    def fine(self) -> bool:
        return not self.cells or len({c for _, c in self.cells}) == len(self.tiles())

    def match_map(self) -> dict:
        return {(i, j): c for i, j, c in self.match}

    def label_map(self) -> dict:
        return {(i, j): lab for i, j, lab in self.labels}

    def upward_triangles(self) -> list:
        used = set()
        for (i, j), c in self.match_map().items():
            di, dj = U_NEIGHBOURS[c]
            used.add((i + di, j + dj))
        return sorted(u for u in upward_cells(self.k) if u not in used)

    def tiles(self) -> list:
        return [("U", i, j) for i, j in self.upward_triangles()] + [("L", i, j) for i, j, _ in self.match]

    def with_labels(self, labels: Mapping, sides: Sequence[int] = (1, 2, 3)) -> "MixedSubdivision":
        return MixedSubdivision(self.k, self.match, tuple(sorted((i, j, lab) for (i, j), lab in labels.items())),
                                self.cells, tuple(sides))

    def with_cells(self, cells: Mapping) -> "MixedSubdivision":
        return MixedSubdivision(self.k, self.match, self.labels, tuple(sorted(cells.items())), self.sides)

    # text format -------------------------------------------------------------

    def to_text(self) -> str:
        k = self.k
        mm, lm = self.match_map(), self.label_map()
        ups = set(self.upward_triangles())
        out = [str(k)]
        for j in range(k - 1, -1, -1):
            toks = []
            for i in range(k - j):
                if (i, j) in ups:
                    toks.append(str(lm[(i, j)]) if (i, j) in lm else "^")
                else:
                    toks.append(".")
                if i < k - 1 - j:
                    toks.append(mm[(i, j)])
            out.append(" ".join(toks))
        if self.cells:
            cm = dict(self.cells)
            out.append("[cells]")
            owner = self._tile_owner()
            for j in range(k - 1, -1, -1):
                toks = []
                for i in range(k - j):
                    toks.append(str(cm[owner[("U", i, j)]]))
                    if i < k - 1 - j:
                        toks.append(str(cm[("L", i, j)]))
                out.append(" ".join(toks))
        if tuple(self.sides) != (1, 2, 3):
            out.append("sides " + " ".join(map(str, self.sides)))
        return "\n".join(out) + "\n"

    @classmethod
    def from_text(cls, text: str) -> "MixedSubdivision":
        lines = [ln.split("#")[0].strip() for ln in text.splitlines()]
        lines = [ln for ln in lines if ln]
        if not lines:
            raise InvalidInput("empty tiling file")
        try:
            k = int(lines[0])
        except ValueError as exc:
            raise InvalidInput("first line must be k") from exc
        if k < 1 or len(lines) < 1 + k:
            raise InvalidInput("tiling file has too few rows")
        match, labels = [], []
        for row, j in zip(lines[1:1 + k], range(k - 1, -1, -1)):
            toks = row.split()
            if len(toks) != 2 * (k - j) - 1:
                raise InvalidInput(f"row {j} needs {2 * (k - j) - 1} tokens")
            for t, tok in enumerate(toks):
                i = t // 2
                if t % 2:
                    if tok not in U_NEIGHBOURS:
                        raise InvalidInput(f"bad downward token {tok!r}")
                    match.append((i, j, tok))
                elif tok not in (".", "^"):
                    try:
                        labels.append((i, j, int(tok)))
                    except ValueError as exc:
                        raise InvalidInput(f"bad upward token {tok!r}") from exc
        rest = lines[1 + k:]
        sides = (1, 2, 3)
        cells_rows = None
        pos = 0
        while pos < len(rest):
            if rest[pos] == "[cells]":
                cells_rows = rest[pos + 1:pos + 1 + k]
                if len(cells_rows) != k:
                    raise InvalidInput("truncated [cells] block")
                pos += 1 + k
            elif rest[pos].startswith("sides"):
                sides = tuple(int(x) for x in rest[pos].split()[1:])
                if len(sides) != 3:
                    raise InvalidInput("sides needs three labels")
                pos += 1
            else:
                raise InvalidInput(f"unexpected line {rest[pos]!r}")
        tiling = cls(k, tuple(sorted(match)), tuple(sorted(labels)), (), sides)
        tiling.validate()
        if cells_rows is not None:
            owner = tiling._tile_owner()
            cells = {}
            for row, j in zip(cells_rows, range(k - 1, -1, -1)):
                toks = row.split()
                if len(toks) != 2 * (k - j) - 1:
                    raise InvalidInput(f"[cells] row {j} has the wrong length")
                for t, tok in enumerate(toks):
                    i = t // 2
                    tile = ("L", i, j) if t % 2 else owner[("U", i, j)]
                    if cells.setdefault(tile, tok) != tok:
                        raise InvalidInput("the two halves of a lozenge lie in different cells")
            tiling = tiling.with_cells(cells)
        return tiling

    def validate(self):
        k = self.k
        mm = self.match_map()
        if set(mm) != set(downward_cells(k)):
            raise InvalidInput("every downward triangle needs exactly one partner")
        used = set()
        for (i, j), c in mm.items():
            di, dj = U_NEIGHBOURS[c]
            u = (i + di, j + dj)
            if u in used:
                raise InvalidInput(f"upward triangle {u} is used twice")
            used.add(u)
        ups = set(self.upward_triangles())
        lm = self.label_map()
        if not set(lm) <= ups:
            raise InvalidInput("a label sits on a lozenge")
        return self

    def _tile_owner(self) -> dict:
        """Map each grid triangle ('U', i, j) / ('D', i, j) to its tile."""
        owner = {}
        for (i, j), c in self.match_map().items():
            di, dj = U_NEIGHBOURS[c]
            owner[("D", i, j)] = ("L", i, j)
            owner[("U", i + di, j + dj)] = ("L", i, j)
        for u in self.upward_triangles():
            owner[("U",) + u] = ("U",) + u
        return owner


def upward_cells(k: int) -> list:
    return [(i, j) for j in range(k) for i in range(k - j)]


def downward_cells(k: int) -> list:
    return [(i, j) for j in range(k - 1) for i in range(k - 1 - j)]


def enumerate_lozenge_tilings(k: int) -> list:
    """All lozenge tilings of k*Delta_2 with k upward triangles, unlabelled, in a fixed order."""
    if k < 1:
        raise InvalidInput("k must be positive")
    downs = downward_cells(k)
    out = []
    used = set()
    choice = []

    def rec(t):
        if t == len(downs):
            out.append(MixedSubdivision(k, tuple(sorted(choice))))
            return
        i, j = downs[t]
        for code in ("l", "r", "u"):
            di, dj = U_NEIGHBOURS[code]
            u = (i + di, j + dj)
            if u in used:
                continue
            used.add(u)
            choice.append((i, j, code))
            rec(t + 1)
            choice.pop()
            used.discard(u)

    rec(0)
    return out


# ---------------------------------------------------------------------------
# strips

def _strip(tiling: MixedSubdivision, start, direction: str, mm: dict, owner: dict):
    """Walk from an upward triangle across edges of one direction.

    Yields the lozenges crossed, each with the grid edge entered through,
    and finally the boundary edge where the strip leaves the big triangle.
    Edges are keyed ('a'|'b'|'c', i, j) by their lower-left lattice point.
    """
    k = tiling.k
    cur = ("U",) + tuple(start)
    path = []
    while True:
        _, i, j = cur
        # leave the current upward triangle through its edge of the given direction
        if direction == "a":
            edge, nxt = ("a", i, j), ("D", i, j - 1)
        elif direction == "b":
            edge, nxt = ("b", i, j), ("D", i - 1, j)
        else:
            edge, nxt = ("c", i + 1, j), ("D", i, j)
        if nxt[1] < 0 or nxt[2] < 0 or nxt[1] + nxt[2] > k - 2:
            return path, edge
        _, di, dj = nxt
        code = mm[(di, dj)]
        path.append((("L", di, dj), edge))
        # the lozenge's other edge of this direction belongs to its upward half
        if direction == "a":
            if code == "u":
                raise AssertionError("strip re-entered its own upward triangle")
            cur = ("U", di + U_NEIGHBOURS[code][0], dj + U_NEIGHBOURS[code][1])
        elif direction == "b":
            if code == "r":
                raise AssertionError("strip re-entered its own upward triangle")
            cur = ("U", di + U_NEIGHBOURS[code][0], dj + U_NEIGHBOURS[code][1])
        else:
            if code == "l":
                raise AssertionError("strip re-entered its own upward triangle")
            cur = ("U", di + U_NEIGHBOURS[code][0], dj + U_NEIGHBOURS[code][1])


@dataclass
class StripData:
    """For every upward triangle: lozenges crossed per direction and the exit position per side."""

    crossings: dict        # (triangle, direction) -> list of (lozenge, entry edge)
    exits: dict            # (triangle, direction) -> boundary edge
    owner: dict            # (lozenge, direction) -> triangle whose strip crosses it in that direction


def strips(tiling: MixedSubdivision) -> StripData:
    mm = tiling.match_map()
    owner = tiling._tile_owner()
    crossings, exits, loz_owner = {}, {}, {}
    for u in tiling.upward_triangles():
        for direction in "abc":
            path, edge = _strip(tiling, u, direction, mm, owner)
            crossings[(u, direction)] = path
            exits[(u, direction)] = edge
            for loz, _ in path:
                loz_owner[(loz, direction)] = u
    return StripData(crossings, exits, loz_owner)


def side_position(edge, k: int) -> int:
    """Position of a boundary edge along its side: increasing i on a, increasing j on b, decreasing i on c."""
    kind, i, j = edge
    if kind == "a":
        return i
    if kind == "b":
        return j
    return k - i


def side_orders(tiling: MixedSubdivision) -> dict:
    """Side letter -> upward triangles in the order their strips reach that side."""
    data = strips(tiling)
    out = {}
    for direction in "abc":
        ups = tiling.upward_triangles()
        out[direction] = sorted(ups, key=lambda u: side_position(data.exits[(u, direction)], tiling.k))
    return out


# ---------------------------------------------------------------------------
# trees

SIDE_ENDS = {"a": ("b", "c"), "b": ("a", "c"), "c": ("a", "b")}


def _caterpillar_from_path(leaves_in_order: Sequence[int], full: frozenset) -> list:
    """Splits of the caterpillar with the given leaf order (first two and last two are cherries)."""
    splits = []
    for t in range(2, len(leaves_in_order) - 1):
        splits.append(frozenset(leaves_in_order[:t]))
    return splits


def _tiling_trees(tiling: MixedSubdivision):
    """Trees of a fine labelled tiling plus, for every internal edge, the grid feature it crosses."""
    k = tiling.k
    lm = tiling.label_map()
    ups = tiling.upward_triangles()
    if set(lm) != set(ups):
        raise InconsistentLabeling("every upward triangle needs a label")
    side_label = dict(zip("abc", tiling.sides))
    labels = list(lm.values()) + list(tiling.sides)
    n = k + 3
    if sorted(labels) != list(range(1, n + 1)):
        raise InconsistentLabeling(f"labels must be exactly 1..{n}")
    data = strips(tiling)
    full = frozenset(range(1, n + 1))
    trees = {}
    orders = side_orders(tiling)
    for side in "abc":
        me = side_label[side]
        first, last = (side_label[s] for s in SIDE_ENDS[side])
        seq = [first] + [lm[u] for u in orders[side]] + [last]
        splits = _caterpillar_from_path(seq, full - {me})
        feats = {}
        for t, sp in enumerate(splits):
            # between the t-th and (t+1)-th unit edge of the side: the lattice point after t+1 edges
            feats[sp] = ("point", side, t + 1)
        trees[me] = (splits, feats)
    for u in ups:
        me = lm[u]
        splits, feats = [], {}
        for direction in "abc":
            path = data.crossings[(u, direction)]
            others = [lm[data.owner[(loz, d2)]] for loz, _ in path for d2 in "abc"
                      if d2 != direction and (loz, d2) in data.owner]
            end = side_label[direction]
            # arm: center -> v1 (leaf others[0]) -> ... -> v_r (leaf others[-1], end)
            for t in range(len(others)):
                side = frozenset(others[t:]) | {end}
                splits.append(side)
                feats[side] = ("edge", path[t][1])
        trees[me] = (splits, feats)
    out = []
    featmap = {}
    for lab in range(1, n + 1):
        splits, feats = trees[lab]
        t = LeafTree(full - {lab}, splits)
        out.append(t)
        for sp, f in feats.items():
            norm = sp if min(full - {lab}) not in sp else (full - {lab}) - sp
            if norm in t.splits:
                featmap[(lab, norm)] = f
    return TreeArrangement(n, out), featmap


def _grid_edge_tiles(edge, owner, k):
    """The two tiles on either side of a grid edge (None outside the big triangle)."""
    kind, i, j = edge
    if kind == "a":
        tris = [("U", i, j), ("D", i, j - 1)]
    elif kind == "b":
        tris = [("U", i, j), ("D", i - 1, j)]
    else:
        tris = [("U", i - 1, j), ("D", i - 1, j)]
    return [owner.get(t) for t in tris]


def _point_tiles(side: str, t: int, k: int, owner) -> set:
    """Tiles touching the lattice point after t unit edges along a side."""
    if side == "a":
        p = (t, 0)
    elif side == "b":
        p = (0, t)
    else:
        p = (k - t, t)
    x, y = p
    tris = [("U", x, y), ("U", x - 1, y), ("U", x, y - 1), ("D", x - 1, y - 1), ("D", x, y - 1), ("D", x - 1, y)]
    return {owner[tr] for tr in tris if tr in owner}


def arrangement_from_tiling(tiling: MixedSubdivision) -> TreeArrangement:
    """The abstract arrangement of a labelled tiling; coarse cells contract the tree edges inside them."""
    tiling.validate()
    arr, features = _tiling_trees(tiling)
    if tiling.fine:
        return arr
    cm = dict(tiling.cells)
    owner = tiling._tile_owner()
    trees = list(arr.trees)
    for (lab, split), feat in features.items():
        if feat[0] == "edge":
            tiles = _grid_edge_tiles(feat[1], owner, tiling.k)
            inside = len(tiles) == 2 and None not in tiles and cm[tiles[0]] == cm[tiles[1]]
        else:
            tiles = _point_tiles(feat[1], feat[2], tiling.k, owner)
            inside = len({cm[t] for t in tiles}) == 1
        if inside:
            t = trees[lab - 1]
            trees[lab - 1] = t.contract_edge(split) if split in t.splits else t
    return TreeArrangement(arr.n, trees)


def refinement_dependence(tiling: MixedSubdivision) -> dict:
    """Arrangements obtained from every fine tiling refining the coarse cells.

    Tiles of an alternative refinement must each lie inside one coarse cell;
    upward triangles inherit the labels of their coarse cell (all orders
    are tried when a cell holds several).  Returns arrangement notation ->
    number of refinements producing it.
    """
    if tiling.fine:
        return {arrangement_from_tiling(tiling).notation(): 1}
    k = tiling.k
    cm = dict(tiling.cells)
    owner = tiling._tile_owner()
    tri_cell = {tr: cm[tile] for tr, tile in owner.items()}
    lm = tiling.label_map()
    cell_labels = {}
    for u, lab in lm.items():
        cell_labels.setdefault(tri_cell[("U",) + u], []).append(lab)
    out = {}
    for alt in enumerate_lozenge_tilings(k):
        ok = True
        for (i, j), c in alt.match_map().items():
            di, dj = U_NEIGHBOURS[c]
            if tri_cell[("D", i, j)] != tri_cell[("U", i + di, j + dj)]:
                ok = False
                break
        if not ok:
            continue
        groups = {}
        for u in alt.upward_triangles():
            groups.setdefault(tri_cell[("U",) + u], []).append(u)
        if {c: len(v) for c, v in groups.items()} != {c: len(v) for c, v in cell_labels.items()}:
            continue
        alt_owner = alt._tile_owner()
        alt_cells = {}
        for tr, tile in alt_owner.items():
            alt_cells[tile] = tri_cell[tr]
        cells_sorted = sorted(groups)
        for perms in itertools.product(*(itertools.permutations(cell_labels[c]) for c in cells_sorted)):
            labels = {}
            for c, p in zip(cells_sorted, perms):
                for u, lab in zip(groups[c], p):
                    labels[u] = lab
            cand = alt.with_labels(labels, tiling.sides).with_cells(alt_cells)
            note = arrangement_from_tiling(cand).notation()
            out[note] = out.get(note, 0) + 1
    return out


def labelled_tilings(k: int):
    """Every fine tiling with every labelling of its upward triangles by 4..k+3 (sides 1, 2, 3)."""
    for t in enumerate_lozenge_tilings(k):
        ups = t.upward_triangles()
        for perm in itertools.permutations(range(4, k + 4)):
            yield t.with_labels(dict(zip(ups, perm)))


# ---------------------------------------------------------------------------
# tropical lines

def arrangement_from_lines(vertices: Sequence[Sequence], labels: Sequence[int] | None = None,
                           sides: Sequence[int] = (1, 2, 3)) -> TreeArrangement:
    """Trees of an arrangement of tropical lines in the plane.

    Line j has its vertex at (a_j, b_j) and rays towards x = (-1, 0),
    y = (0, -1) and z = (1, 1).  The tree of line j branches off at each
    crossing in the order met along each ray and ends in the leaf of that
    ray's direction; the boundary trees list the lines in the order their
    rays reach that direction.
    """
    pts = [(rat(a), rat(b)) for a, b in vertices]
    m = len(pts)
    n = m + 3
    if labels is None:
        labels = list(range(4, n + 1))
    labels = list(labels)
    if sorted(labels + list(sides)) != list(range(1, n + 1)):
        raise InvalidInput(f"labels must cover 1..{n}")
    for (p, q) in itertools.combinations(pts, 2):
        if p[0] == q[0] or p[1] == q[1] or p[1] - p[0] == q[1] - q[0]:
            raise InvalidInput("lines are not in general position")
    x_lab, y_lab, z_lab = sides
    full = frozenset(range(1, n + 1))
    trees = {}
    # boundary trees
    by_b = [labels[t] for t in sorted(range(m), key=lambda t: pts[t][1])]
    by_a = [labels[t] for t in sorted(range(m), key=lambda t: pts[t][0])]
    by_diag = [labels[t] for t in sorted(range(m), key=lambda t: pts[t][1] - pts[t][0], reverse=True)]
    trees[x_lab] = _caterpillar_from_path([y_lab] + by_b + [z_lab], full - {x_lab})
    trees[y_lab] = _caterpillar_from_path([x_lab] + by_a + [z_lab], full - {y_lab})
    trees[z_lab] = _caterpillar_from_path([x_lab] + by_diag + [y_lab], full - {z_lab})
    for s in range(m):
        a, b = pts[s]
        arms = {"x": [], "y": [], "z": []}
        for t in range(m):
            if t == s:
                continue
            c, d = pts[t]
            arm, dist = _crossing(a, b, c, d)
            arms[arm].append((dist, labels[t]))
        splits = []
        for arm, end in (("x", x_lab), ("y", y_lab), ("z", z_lab)):
            dists = [dist for dist, _ in arms[arm]]
            if len(set(dists)) != len(dists):
                raise InvalidInput("three lines meet in a point")
            seq = [lab for _, lab in sorted(arms[arm])]
            for r in range(len(seq)):
                splits.append(frozenset(seq[r:]) | {end})
        trees[labels[s]] = splits
    out = [LeafTree(full - {lab}, trees[lab]) for lab in range(1, n + 1)]
    return TreeArrangement(n, out)


def _crossing(a, b, c, d):
    """Which ray of the line at (a, b) meets the line at (c, d), and how far from (a, b)."""
    hits = []
    if c <= a and b <= d:
        hits.append(("x", a - c))            # x-ray meets the y-ray of the other line
    if b >= d and c + (b - d) <= a:
        hits.append(("x", a - c - (b - d)))  # x-ray meets the z-ray
    if a <= c and d <= b:
        hits.append(("y", b - d))            # y-ray meets the x-ray
    if a >= c and d + (a - c) <= b:
        hits.append(("y", b - d - (a - c)))  # y-ray meets the z-ray
    if d >= b and a + (d - b) <= c:
        hits.append(("z", d - b))            # z-ray meets the x-ray
    if c >= a and b + (c - a) <= d:
        hits.append(("z", c - a))            # z-ray meets the y-ray
    if len(hits) != 1:
        raise InvalidInput("lines are not in general position")
    return hits[0]
