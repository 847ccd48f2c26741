import itertools
import random
from fractions import Fraction

import pytest

from dressian.foundations import (
    InvalidInput,
    LinearSystem,
    Unbounded,
    affine_rank,
    canonical_orbit_rep,
    canonical_vector,
    cone_rays,
    from_mask,
    hypersimplex_vertices,
    lp_solve,
    maximize,
    nullspace,
    primitive,
    rank,
    rat,
    to_mask,
    vertices_adjacent,
)
from dressian.matroid import fano, from_bases
from dressian.tropical import TropicalPluckerVector, indicator_vector, relation_action


def test_hypersimplex_vertex_counts():
    assert [tuple(v) for v in hypersimplex_vertices(3, 4)] == [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
    assert len(hypersimplex_vertices(3, 7)) == 35
    assert len(hypersimplex_vertices(2, 5)) == 10


def test_hypersimplex_rejects_bad_sizes():
    with pytest.raises(InvalidInput):
        hypersimplex_vertices(5, 3)


def test_vertex_adjacency():
    assert vertices_adjacent((1, 2, 3), (1, 2, 4))
    assert not vertices_adjacent((1, 2, 3), (1, 4, 5))
    assert not vertices_adjacent((1, 2, 3), (1, 2, 3))


def test_mask_round_trip():
    for s in itertools.combinations(range(1, 8), 3):
        assert from_mask(to_mask(s)) == s


def test_rat_parses_strings_and_rejects_floats():
    assert rat("3/4") == Fraction(3, 4)
    assert rat(2) == 2
    with pytest.raises(InvalidInput):
        rat(0.5)


def test_lp_infeasible_box():
    res = lp_solve(LinearSystem(1, weak=[((1,), 1), ((-1,), 0)]))
    assert not res.feasible


def test_lp_open_segment():
    sys = LinearSystem(2, equalities=[((1, 1), 1)], strict=[((1, 0), 0), ((0, 1), 0)])
    res = lp_solve(sys)
    assert res.feasible and res.dimension == 1
    assert sys.satisfied_by(res.witness)


def test_lp_empty_system_is_full_dimensional():
    res = lp_solve(LinearSystem(3))
    assert res.feasible and res.dimension == 3


def test_lp_strict_inequality_excludes_boundary():
    # x > 0 and x <= 0 has only the boundary point
    assert not lp_solve(LinearSystem(1, weak=[((-1,), 0)], strict=[((1,), 0)])).feasible


def test_maximize_known_optimum():
    # max x + y subject to x <= 2, y <= 3, x + 2y <= 6, written as rows >= rhs
    value, x = maximize([[-1, 0], [0, -1], [-1, -2]], [-2, -3, -6], [1, 1])
    assert value == 4 and tuple(x) == (2, 2)


def test_maximize_reports_infeasible():
    assert maximize([[1], [-1]], [1, 0], [1]) is None


def test_maximize_detects_unbounded():
    with pytest.raises(Unbounded):
        maximize([[1, -1]], [-1], [1, 0])


def test_lp_dimension_against_random_boxes():
    rng = random.Random(7)
    for _ in range(30):
        m = rng.randint(1, 4)
        fixed = rng.sample(range(m), rng.randint(0, m))
        eqs = [(tuple(int(i == j) for i in range(m)), rng.randint(-3, 3)) for j in fixed]
        weak = [(tuple(int(i == j) for i in range(m)), -5) for j in range(m)]
        weak += [(tuple(-int(i == j) for i in range(m)), -5) for j in range(m)]
        res = lp_solve(LinearSystem(m, equalities=eqs, weak=weak))
        assert res.feasible and res.dimension == m - len(fixed)


def test_rank_and_nullspace():
    rows = [[1, 2, 3], [2, 4, 6], [0, 1, 1]]
    assert rank(rows) == 2
    ns = nullspace(rows, 3)
    assert len(ns) == 1
    assert all(sum(a * b for a, b in zip(r, ns[0])) == 0 for r in rows)
    assert affine_rank([(0, 0), (1, 0), (2, 0)]) == 1
    assert primitive((Fraction(2, 3), Fraction(4, 3))) == (1, 2)


def test_cone_rays_of_positive_quadrant():
    rays = sorted(tuple(r) for r in cone_rays([[1, 0], [0, 1]]))
    assert rays == [(0, 1), (1, 0)]


def test_canonical_form_of_single_basis_matroid():
    m = from_bases(3, 3, [(1, 2, 3)])
    form = canonical_orbit_rep(m)
    assert form.stabilizer_order == 6


def test_canonical_form_is_orbit_invariant():
    rng = random.Random(3)
    action = relation_action(3, 6)
    pi = TropicalPluckerVector.from_function(3, 6, lambda s: rng.randint(0, 9))
    perm = [2, 1, 3, 4, 5, 6]
    a = canonical_orbit_rep(pi)
    b = canonical_orbit_rep(pi.relabel(perm))
    assert a.key == b.key
    sig = (0, 1, 2, 3, 0, 1) * 5
    images = action.apply(sig)
    assert len(images) == 720
    keys = {canonical_vector(tuple(int(v) for v in images[k]), action).key for k in (0, 7, 300)}
    assert keys == {canonical_vector(sig, action).key}


def test_fano_stabilizer_has_order_168():
    assert canonical_orbit_rep(indicator_vector(fano())).stabilizer_order == 168
    assert canonical_orbit_rep(fano()).stabilizer_order == 168
