"""Random generators and oracles shared by the property and acceptance suites."""

from __future__ import annotations

import itertools
import random

from dressian.subdivision import regular_subdivision
from dressian.tropical import TropicalPluckerVector, cone_signature


def random_perm(rng: random.Random, n: int) -> list:
    perm = list(range(1, n + 1))
    rng.shuffle(perm)
    return perm


def scaled(pi: TropicalPluckerVector, k) -> TropicalPluckerVector:
    return TropicalPluckerVector.from_function(pi.d, pi.n, lambda s: k * pi[tuple(s)])


def summed(a: TropicalPluckerVector, b: TropicalPluckerVector) -> TropicalPluckerVector:
    return TropicalPluckerVector.from_function(a.d, a.n, lambda s: a[tuple(s)] + b[tuple(s)])


def membership_sample(rng: random.Random, census, n: int) -> TropicalPluckerVector:
    """A mix of uniform random vectors, points of census cones, and points pushed just off them."""
    if rng.random() < 0.4:
        return TropicalPluckerVector.from_function(3, n, lambda s: rng.randint(0, 3))
    cell = rng.choice(census.cells)
    pi = scaled(cell.interior.relabel(random_perm(rng, n)), rng.randint(1, 3))
    pi = pi.add_lineality([rng.randint(-4, 4) for _ in range(n)])
    if rng.random() < 0.5:
        hit = tuple(sorted(rng.sample(range(1, n + 1), 3)))
        bump = rng.choice((-1, 1))
        pi = TropicalPluckerVector.from_function(3, n, lambda s: pi[tuple(s)] + (bump if tuple(s) == hit else 0))
    return pi


def contains(face_sig, cone_sig) -> bool:
    """A face's signature agrees with the cone's wherever it is not a full tie."""
    return all(f == c or f == 3 for f, c in zip(face_sig, cone_sig))


def expanded_cells(census, n: int, rng: random.Random | None = None, sample: int | None = None) -> dict:
    """Signature -> interior point for every cone of the fan, or for a random sample of them."""
    out = {}
    reps = list(census.cells)
    if sample is None:
        for cell in reps:
            for perm in itertools.permutations(range(1, n + 1)):
                pi = cell.interior.relabel(list(perm))
                out.setdefault(cone_signature(pi).compact(), pi)
    else:
        while len(out) < sample:
            cell = rng.choice(reps)
            pi = cell.interior.relabel(random_perm(rng, n))
            out.setdefault(cone_signature(pi).compact(), pi)
    return out


def fan_points(cells: dict, rng: random.Random) -> list:
    """Two points per cone: its stored interior point, and a positive combination with a face point."""
    pts = []
    sigs = list(cells)
    for sig, pi in cells.items():
        faces = [f for f in sigs if f != sig and contains(f, sig)]
        pts.append(pi)
        other = scaled(pi, 3).add_lineality([rng.randint(-3, 3) for _ in range(pi.n)])
        if faces:
            other = summed(other, cells[rng.choice(faces)])
        pts.append(other)
    return pts


def fan_structures_agree(points) -> tuple:
    """(agree, number of cones): equal signatures if and only if equal subdivisions."""
    by_sig, by_sub = {}, {}
    for pi in points:
        sig = cone_signature(pi).compact()
        sub = frozenset(regular_subdivision(pi).cells)
        by_sig.setdefault(sig, set()).add(sub)
        by_sub.setdefault(sub, set()).add(sig)
    agree = all(len(v) == 1 for v in by_sig.values()) and all(len(v) == 1 for v in by_sub.values())
    return agree, len(by_sig)
