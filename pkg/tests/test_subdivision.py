import itertools
import random

import networkx as nx
import pytest

from dressian.arrangements import arrangement_from_subdivision, plucker_from_arrangement
from dressian.foundations import InvalidInput, to_mask, vertices_adjacent
from dressian.matroid import FANO_LINES, fano
from dressian.subdivision import (
    MatroidSubdivision,
    affine_dimension,
    boundary_restriction,
    cell_weight_certificate,
    has_long_edge,
    hypersimplex_splits,
    refines,
    regular_subdivision,
    splits_compatible,
    vertex_split,
)
from dressian.tropical import TropicalPluckerVector, dressian_member, indicator_vector, zero_vector


def test_zero_vector_gives_trivial_subdivision():
    sub = regular_subdivision(zero_vector(3, 6))
    assert sub.spread == 1
    assert len(sub.cells[0]) == 20


def test_vertex_split_has_two_cells():
    split = vertex_split(3, 6, (1, 2, 3))
    sub = split.subdivision()
    assert sub.spread == 2
    small = min(sub.cells, key=len)
    # the cut-off cell holds 123 and its neighbours only
    assert small == frozenset({to_mask((1, 2, 3))} | {
        to_mask(b) for b in itertools.combinations(range(1, 7), 3) if vertices_adjacent(b, (1, 2, 3))})
    assert regular_subdivision(split.weight()).cells == sub.cells
    assert sub.is_matroidal()


def test_fano_subdivision_has_eight_cells():
    sub = regular_subdivision(indicator_vector(fano()))
    assert sub.spread == 8
    assert frozenset(fano().bases) in sub.cells
    assert sub.is_matroidal()


def test_fano_subdivision_is_generated_by_seven_vertex_splits():
    sub = regular_subdivision(indicator_vector(fano()))
    for line in FANO_LINES:
        split = vertex_split(3, 7, line).subdivision()
        assert refines(sub, split)


def test_split_compatibility_matches_adjacency():
    assert splits_compatible(vertex_split(3, 7, (1, 2, 3)), vertex_split(3, 7, (1, 4, 5)))
    assert not splits_compatible(vertex_split(3, 7, (1, 2, 3)), vertex_split(3, 7, (1, 2, 4)))
    rng = random.Random(4)
    triples = list(itertools.combinations(range(1, 7), 3))
    for _ in range(40):
        s, t = rng.sample(triples, 2)
        assert splits_compatible(vertex_split(3, 6, s), vertex_split(3, 6, t)) == (not vertices_adjacent(s, t))


def test_fano_nonbases_form_stable_set():
    splits = [vertex_split(3, 7, line) for line in FANO_LINES]
    assert all(splits_compatible(a, b) for a, b in itertools.combinations(splits, 2))


def test_split_complex_of_delta_25_is_petersen():
    splits = hypersimplex_splits(2, 5)
    assert len(splits) == 10
    g = nx.Graph()
    g.add_nodes_from(range(10))
    g.add_edges_from((i, j) for i, j in itertools.combinations(range(10), 2)
                     if splits_compatible(splits[i], splits[j]))
    assert nx.is_isomorphic(g, nx.petersen_graph())


def test_hypersimplex_splits_are_distinct_two_cell_subdivisions():
    splits = hypersimplex_splits(3, 6)
    assert all(s.subdivision().spread == 2 for s in splits)
    assert len({s.key() for s in splits}) == len(splits)


def test_trivial_subdivision_is_refined_by_everything():
    triv = regular_subdivision(zero_vector(3, 6))
    for s in hypersimplex_splits(3, 6)[:5]:
        assert refines(s.subdivision(), triv)
        assert not refines(triv, s.subdivision())


def test_restriction_of_fano_subdivision_is_dual_to_a_tree():
    sub = regular_subdivision(indicator_vector(fano()))
    arr = arrangement_from_subdivision(sub)
    for i in range(1, 8):
        res = boundary_restriction(sub, ("contract", i))
        assert (res.d, res.n) == (2, 6)
        assert res.is_matroidal()
        tree = arr.trees[i - 1]
        assert res.spread == len(tree.internal_nodes())


def test_restriction_rejects_bad_facet():
    sub = regular_subdivision(indicator_vector(fano()))
    with pytest.raises(InvalidInput):
        boundary_restriction(sub, ("flip", 1))


def test_boundary_determines_subdivision(census6):
    """Vectors with the same boundary trees induce the same subdivision."""
    for cell in census6.cells:
        sub = regular_subdivision(cell.interior)
        other = plucker_from_arrangement(arrangement_from_subdivision(sub))
        assert regular_subdivision(other) == sub


def test_spread_of_rays(census6):
    spreads = {regular_subdivision(c.interior).spread for c in census6.cells if c.dimension == 0}
    assert spreads == {2, 3}


@pytest.mark.slow
def test_spread_of_rays_n7(census7):
    spreads = {regular_subdivision(c.interior).spread for c in census7.cells if c.dimension == 0}
    assert spreads == {2, 3, 4}


def test_long_edge_detects_non_members():
    rng = random.Random(9)
    for _ in range(100):
        pi = TropicalPluckerVector.from_function(3, 5, lambda s: rng.randint(0, 3))
        assert has_long_edge(pi) == (not dressian_member(pi))


def test_cell_weight_certificate_for_fano_cell():
    lam = indicator_vector(fano())
    cert = cell_weight_certificate(lam, frozenset(fano().bases))
    assert cert is not None


def test_text_round_trip():
    sub = regular_subdivision(indicator_vector(fano()))
    assert MatroidSubdivision.from_text(sub.to_text()) == sub


def test_non_matroidal_cell_detected():
    # a triangle of three vertices with a long edge is not a matroid polytope
    cells = [[to_mask((1, 2, 3)), to_mask((1, 4, 5)), to_mask((1, 2, 4))]]
    sub = MatroidSubdivision(3, 5, cells)
    assert not sub.is_matroidal()


def test_affine_dimension_of_hypersimplex():
    masks = [to_mask(b) for b in itertools.combinations(range(1, 7), 3)]
    assert affine_dimension(masks, 6) == 5
