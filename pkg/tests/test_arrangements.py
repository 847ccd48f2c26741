import random
from fractions import Fraction

import pytest

from dressian import golden
from dressian.arrangements import (
    InvalidArrangement,
    TreeArrangement,
    arrangement_from_signature,
    arrangement_from_subdivision,
    edge_length_system,
    enumerate_dressian,
    fano_membership_battery,
    is_abstract_arrangement,
    metric_consistency,
    metric_realizable,
    plucker_from_arrangement,
    realizability_cone,
)
from dressian.foundations import InvalidInput, canonical_vector, lp_solve
from dressian.matroid import FANO_LINES, fano
from dressian.subdivision import regular_subdivision
from dressian.trees import LeafTree, caterpillar, parse_tree, snowflake, star
from dressian.tropical import cone_signature, dressian_member, indicator_vector, relation_action


def unit(t):
    return LeafTree(t.leaves, t.splits, {e: 1 for e in t.edges()})


def stars(n):
    return TreeArrangement(n, [star(set(range(1, n + 1)) - {i}) for i in range(1, n + 1)])


def dr36_type(name):
    full = set(range(1, 7))
    rows = next(rows for nm, rows, _ in golden.DR36_TYPES if nm == name)
    return TreeArrangement(6, [parse_tree(r, full - {i}) for i, r in enumerate(rows, start=1)])


def nonregular_nine():
    return TreeArrangement(9, [caterpillar(spec) for spec in golden.NONREGULAR_NINE])


def test_star_arrangement_is_abstract():
    assert is_abstract_arrangement(stars(4))


def test_unit_stars_metric_and_plucker():
    arr = TreeArrangement(4, [unit(t) for t in stars(4).trees])
    assert metric_consistency(arr)
    pi = plucker_from_arrangement(arr)
    # pi(ijk) = -delta_i(j,k) = -2 everywhere, the lineality point
    assert set(pi.values) == {-2}


def test_perturbed_pendant_edge_breaks_consistency():
    trees = [unit(t) for t in stars(4).trees]
    t = trees[0]
    lengths = dict(t.lengths)
    lengths[frozenset({3})] = Fraction(3, 2)
    trees[0] = LeafTree(t.leaves, t.splits, lengths)
    arr = TreeArrangement(4, trees)
    assert not metric_consistency(arr)
    with pytest.raises(InvalidArrangement):
        plucker_from_arrangement(arr)


@pytest.mark.parametrize("name", [row[0] for row in golden.DR36_TYPES])
def test_dr36_type_rows_realizable_and_round_trip(name):
    arr = dr36_type(name)
    assert is_abstract_arrangement(arr)
    assert arr.is_trivalent()
    cell = realizability_cone(arr)
    assert cell is not None
    # maximal cones of Dr(3,6): dimension 4 modulo lineality, 3 as polytopal cells
    assert cell.cone_dimension == 4 and cell.dimension == 3
    sub = regular_subdivision(cell.interior)
    assert arrangement_from_subdivision(sub).topology().notation() == arr.notation()
    assert metric_realizable(arr)


def test_eeee_subdivision_gives_table_trees():
    arr = dr36_type("EEEE")
    sub = regular_subdivision(realizability_cone(arr).interior)
    got = arrangement_from_subdivision(sub).topology()
    assert got.notation() == "23 6 45 | 13 5 46 | 12 4 56 | 15 3 26 | 14 2 36 | 24 1 35"


def test_fano_arrangement_is_seven_snowflakes():
    arr = arrangement_from_subdivision(regular_subdivision(indicator_vector(fano())))
    for i, tree in enumerate(arr.trees, start=1):
        pairs = [tuple(x for x in line if x != i) for line in FANO_LINES if i in line]
        assert tree.same_topology(snowflake(pairs))


def test_fano_round_trip_keeps_signature():
    lam = indicator_vector(fano())
    arr = arrangement_from_subdivision(regular_subdivision(lam))
    pi = plucker_from_arrangement(arr)
    assert dressian_member(pi)
    assert cone_signature(pi) == cone_signature(lam)


def test_trivial_subdivision_gives_stars():
    from dressian.tropical import zero_vector
    arr = arrangement_from_subdivision(regular_subdivision(zero_vector(3, 6)))
    assert all(t.same_topology(star(t.leaves)) for t in arr.trees)


def test_nonregular_nine_is_abstract_but_not_regular():
    arr = nonregular_nine()
    assert is_abstract_arrangement(arr)
    assert realizability_cone(arr) is None
    assert not metric_realizable(arr)


def test_star_realizability_is_lineality_only():
    cell = realizability_cone(stars(4))
    assert cell is not None and cell.cone_dimension == 0


def test_non_arrangement_rejected():
    arr = dr36_type("FFFGG")
    trees = list(arr.trees)
    trees[0], trees[1] = trees[1], trees[0]
    with pytest.raises(InvalidArrangement):
        TreeArrangement(6, trees)


def test_inconsistent_arrangement_is_not_abstract():
    trees = list(dr36_type("FFFGG").trees)
    trees[0] = parse_tree("23 4 56", {2, 3, 4, 5, 6})
    assert not is_abstract_arrangement(TreeArrangement(6, trees))


def test_signature_round_trip():
    arr = dr36_type("EEFG")
    again = arrangement_from_signature(6, arr.signature())
    assert again.notation() == arr.notation()


def test_relabel_and_restrict():
    arr = dr36_type("EFFG")
    perm = [2, 3, 1, 5, 6, 4]
    moved = arr.relabel(perm)
    assert is_abstract_arrangement(moved)
    action = relation_action(3, 6)
    assert canonical_vector(moved.signature(), action).key == canonical_vector(arr.signature(), action).key
    small = arr.restrict([1, 2, 3, 4, 5])
    assert small.n == 5 and is_abstract_arrangement(small)


def test_text_round_trip():
    arr = nonregular_nine()
    assert TreeArrangement.from_text(arr.to_text()).notation() == arr.notation()


def test_edge_length_system_solution_is_metric():
    arr = dr36_type("FFFGG")
    system, _ = edge_length_system(arr)
    assert lp_solve(system).feasible


def test_census5_is_petersen(census5):
    assert census5.f_vector() == (10, 15)
    assert census5.f_vector(mod_symmetry=True) == (1, 1)


def test_census6_counts(census6):
    assert census6.f_vector() == (65, 535, 1350, 1005)
    assert census6.f_vector(mod_symmetry=True) == (3, 7, 8, 7)
    assert sorted(c.orbit_size for c in census6.maximal()) == sorted(s for _, _, s in golden.DR36_TYPES)


def test_census_lines_are_deterministic(census6):
    again = enumerate_dressian.__wrapped__(6)
    assert again.lines() == census6.lines()


def test_census_cells_have_member_interiors(census6):
    rng = random.Random(0)
    for cell in census6.cells:
        assert dressian_member(cell.interior)
        assert cell.orbit_size * cell.stabilizer_order == 720
        assert cell.cone.satisfied_by(cell.interior.values)
        lifted = cell.interior.add_lineality([rng.randint(-3, 3) for _ in range(6)])
        assert cone_signature(lifted).compact() == cell.signature


def test_fano_battery_r3():
    b = fano_membership_battery(3)
    assert (b.nu, b.beta) == (7, 28)
    assert b.stable and b.compatible and b.member


def test_fano_battery_rejects_r2():
    with pytest.raises(InvalidInput):
        fano_membership_battery(2)
