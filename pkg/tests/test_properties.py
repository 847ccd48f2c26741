"""Randomised properties: tree metrics, symmetry invariance and the arrangement round trip."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from dressian.arrangements import (
    arrangement_from_subdivision,
    metric_consistency,
    plucker_from_arrangement,
)
from dressian.subdivision import has_long_edge, regular_subdivision
from dressian.trees import (
    LeafTree,
    four_point_check,
    insert_leaf,
    parse_tree,
    quartets_of,
    star,
    to_notation,
    tree_from_metric,
    tree_from_quartets,
    tree_metric,
)
from dressian.tropical import TropicalPluckerVector, cone_signature, dressian_member

lengths_st = st.fractions(min_value=Fraction(1, 10), max_value=10, max_denominator=12)


@st.composite
def metric_trees(draw, max_leaves=9):
    n = draw(st.integers(min_value=3, max_value=max_leaves))
    t = star([1, 2, 3])
    for x in range(4, n + 1):
        edges = t.edges()
        t = insert_leaf(t, x, edges[draw(st.integers(0, len(edges) - 1))])
    # optionally contract some internal edges to allow higher degree nodes
    for side in sorted(t.splits, key=sorted):
        if draw(st.booleans()) and draw(st.booleans()):
            t = t.contract_edge(side)
    lengths = {e: draw(lengths_st) for e in t.edges()}
    return LeafTree(t.leaves, t.splits, lengths)


@settings(max_examples=150, deadline=None)
@given(metric_trees())
def test_four_point_round_trip(t):
    m = tree_metric(t)
    assert four_point_check(m)
    back = tree_from_metric(m)
    assert back.same_topology(t)
    assert back.lengths == t.lengths


@settings(max_examples=100, deadline=None)
@given(metric_trees(max_leaves=8))
def test_quartets_determine_topology(t):
    assert tree_from_quartets(t.leaves, quartets_of(t)).same_topology(t)


@settings(max_examples=100, deadline=None)
@given(metric_trees(max_leaves=9))
def test_notation_round_trip(t):
    top = t.topology()
    assert parse_tree(to_notation(top), top.leaves).same_topology(top)


vector_values = st.integers(min_value=0, max_value=3)


@st.composite
def vectors_35(draw):
    vals = draw(st.lists(vector_values, min_size=10, max_size=10))
    return TropicalPluckerVector(3, 5, vals)


@settings(max_examples=200, deadline=None)
@given(vectors_35(), st.permutations([1, 2, 3, 4, 5]), st.lists(st.integers(-5, 5), min_size=5, max_size=5))
def test_membership_is_symmetric_and_lineality_invariant(pi, perm, shift):
    m = dressian_member(pi)
    assert dressian_member(pi.relabel(perm)) == m
    assert dressian_member(pi.add_lineality(shift)) == m
    assert has_long_edge(pi) == (not m)


@settings(max_examples=200, deadline=None)
@given(vectors_35())
def test_members_give_matroid_subdivisions(pi):
    if dressian_member(pi):
        assert regular_subdivision(pi).is_matroidal()


def round_trip_ok(cell) -> bool:
    pi = cell.interior
    sub = regular_subdivision(pi)
    arr = arrangement_from_subdivision(sub)
    back = plucker_from_arrangement(arr)
    return (metric_consistency(arr)
            and arr.signature() == cell.signature
            and cone_signature(back) == cone_signature(pi)
            and regular_subdivision(back) == sub)


def test_round_trip_on_small_censuses(census5, census6):
    assert all(round_trip_ok(c) for c in census5.cells)
    assert all(round_trip_ok(c) for c in census6.cells)
