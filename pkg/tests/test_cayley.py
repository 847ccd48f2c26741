import random

import pytest

from dressian import golden
from dressian.arrangements import TreeArrangement, is_abstract_arrangement, realizability_cone
from dressian.cayley import (
    InconsistentLabeling,
    MixedSubdivision,
    arrangement_from_lines,
    arrangement_from_tiling,
    downward_cells,
    enumerate_lozenge_tilings,
    labelled_tilings,
    refinement_dependence,
    upward_cells,
)
from dressian.foundations import InvalidInput, canonical_vector
from dressian.planes import type_table
from dressian.trees import caterpillar
from dressian.tropical import relation_action


def matching_count(k):
    """Tilings as matchings of downward triangles to distinct adjacent upward triangles."""
    downs = [(i, j) for i in range(k) for j in range(k) if i + j <= k - 2]

    def rec(idx, used):
        if idx == len(downs):
            return 1
        i, j = downs[idx]
        return sum(rec(idx + 1, used | {u}) for u in ((i, j), (i + 1, j), (i, j + 1)) if u not in used)

    return rec(0, frozenset())


def load(data_dir, name):
    return MixedSubdivision.from_text((data_dir / name).read_text())


def test_cell_counts():
    for k in range(1, 6):
        assert len(upward_cells(k)) == k * (k + 1) // 2
        assert len(downward_cells(k)) == k * (k - 1) // 2


@pytest.mark.parametrize("k", [1, 2, 3, 4])
def test_tiling_counts_match_oracle(k):
    tilings = enumerate_lozenge_tilings(k)
    assert len(tilings) == matching_count(k) == golden.LOZENGE_TILINGS[k]
    assert len({t.to_text() for t in tilings}) == len(tilings)


def test_tilings_validate_and_round_trip():
    for t in enumerate_lozenge_tilings(3):
        t.validate()
        assert MixedSubdivision.from_text(t.to_text()) == t
        assert len(t.upward_triangles()) == 3


def test_ffggg_tiling_golden(data_dir):
    arr = arrangement_from_tiling(load(data_dir, "ffggg_k3.tiling"))
    assert arr.notation() == "34 2 56 | 34 1 56 | 12 4 56 | 12 3 56 | 12 6 34 | 12 5 34"
    assert is_abstract_arrangement(arr)
    assert type_table(6)[canonical_vector(arr.signature(), relation_action(3, 6)).key] == "FFFGG"


def test_coarse_tiling_golden(data_dir):
    tiling = load(data_dir, "coarse_k3.tiling")
    arr = arrangement_from_tiling(tiling)
    assert arr.notation() == "34 2 56 | 34 1 56 | 12 (456) | 12 (356) | 12 6 34 | 12 5 34"
    assert is_abstract_arrangement(arr)
    deps = refinement_dependence(tiling)
    assert arr.notation() in deps


def test_nonregular_tiling_golden(data_dir):
    arr = arrangement_from_tiling(load(data_dir, "nonregular_nine.tiling"))
    want = TreeArrangement(9, [caterpillar(spec) for spec in golden.NONREGULAR_NINE])
    assert arr.notation() == want.notation()
    assert realizability_cone(arr) is None


def test_tiling_arrangements_are_abstract():
    for t in labelled_tilings(3):
        assert is_abstract_arrangement(arrangement_from_tiling(t))


def test_labelled_tiling_count_k3():
    assert sum(1 for _ in labelled_tilings(3)) == 18 * 6


def test_bad_labels_rejected():
    t = enumerate_lozenge_tilings(2)[0]
    ups = t.upward_triangles()
    with pytest.raises(InconsistentLabeling):
        arrangement_from_tiling(t.with_labels({ups[0]: 4, ups[1]: 4}))
    with pytest.raises(InconsistentLabeling):
        arrangement_from_tiling(t)


def test_malformed_tiling_text():
    with pytest.raises(InvalidInput):
        MixedSubdivision.from_text("2\n^\n. x ^\n")


def test_one_line_gives_stars():
    arr = arrangement_from_lines([(0, 0)])
    assert arr.n == 4
    assert all(len(t.splits) == 0 and len(t.leaves) == 3 for t in arr.trees)


def test_two_lines_give_trivalent_five_leaf_type():
    arr = arrangement_from_lines([(0, 0), (1, 2)])
    assert arr.n == 5 and arr.is_trivalent() and is_abstract_arrangement(arr)


def test_three_lines_in_fffgg_position():
    arr = arrangement_from_lines([(0, 0), (-3, -2), (-2, -3)])
    assert type_table(6)[canonical_vector(arr.signature(), relation_action(3, 6)).key] == "FFFGG"


def test_concurrent_lines_rejected():
    with pytest.raises(InvalidInput):
        arrangement_from_lines([(0, 0), (1, 2), (2, 1)])


def test_random_line_arrangements_match_tilings():
    action = relation_action(3, 6)
    from_tilings = {canonical_vector(arrangement_from_tiling(t).signature(), action).key
                    for t in labelled_tilings(3)}
    rng = random.Random(8)
    checked = 0
    while checked < 40:
        pts = [(0, 0)] + [(rng.randint(-6, 6), rng.randint(-6, 6)) for _ in range(2)]
        try:
            arr = arrangement_from_lines(pts)
        except InvalidInput:
            continue
        if not arr.is_trivalent():
            continue
        assert is_abstract_arrangement(arr)
        assert canonical_vector(arr.signature(), action).key in from_tilings
        checked += 1
