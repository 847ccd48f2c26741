import itertools
import json

import networkx as nx
import pytest

from dressian.complexes import (
    HOMOLOGY_FACE_LIMIT,
    CellComplex,
    betti_numbers,
    census_crosscut,
    connector_classes,
    crosscut_complex,
    full_simplex,
    graves_adjacent,
    graves_triads,
    homology,
    merged_matroid,
    ray_containment,
    simplex_boundary,
    smith_invariants,
    triad_name,
    weight_from_cells,
)
from dressian.foundations import TooLarge
from dressian.matroid import pappus
from dressian.subdivision import regular_subdivision
from dressian.tropical import matroid_dressian_member

RP2 = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
       (2, 3, 5), (3, 4, 6), (2, 4, 5), (3, 5, 6), (2, 4, 6)]


def triad(text):
    return frozenset(frozenset(int(c) for c in part) for part in text.split(","))


def find_triad(text):
    want = triad(text)
    return next(t for t in graves_triads() if frozenset(frozenset(x) for x in t) == want)


def test_single_cone_is_triangle():
    cx = crosscut_complex([{0, 1, 2}])
    assert cx.f_vector() == (3, 3, 1)
    assert homology(cx) == [(1, ())] + [(0, ())] * 2


def test_tetrahedron_boundary():
    cx = simplex_boundary(3)
    assert cx.f_vector() == (4, 6, 4)
    assert homology(cx) == [(1, ()), (0, ()), (1, ())]
    assert cx.euler_characteristic() == 2


def test_six_simplex_is_contractible():
    cx = full_simplex(6)
    assert betti_numbers(cx) == (1, 0, 0, 0, 0, 0, 0)
    assert all(t == () for _, t in homology(cx))


def test_projective_plane_torsion():
    cx = CellComplex.from_facets(RP2)
    cx.validate()
    assert cx.f_vector() == (6, 15, 10)
    assert homology(cx) == [(1, ()), (0, (2,)), (0, ())]


def test_circle_homology():
    cx = CellComplex.from_facets([(0, 1), (1, 2), (0, 2)])
    assert homology(cx) == [(1, ()), (1, ())]


def test_smith_invariants_of_diagonal():
    assert smith_invariants([{0: 2}, {1: 3}]) == (2, (6,))
    assert smith_invariants([{0: 2, 1: 4}, {0: 4, 1: 2}]) == (2, (2, 6))


def test_size_guard():
    facets = list(itertools.combinations(range(40), 5))
    with pytest.raises(TooLarge):
        homology(CellComplex.from_facets(facets))
    assert HOMOLOGY_FACE_LIMIT == 100_000


def test_dr35_crosscut_is_petersen(census5):
    cx = census_crosscut(census5)
    assert cx.f_vector() == (10, 15)
    nodes, edges = cx.graph()
    g = nx.Graph(edges)
    g.add_nodes_from(nodes)
    assert nx.is_isomorphic(g, nx.petersen_graph())
    assert all(d == 3 for _, d in g.degree())
    assert nx.girth(g) == 5
    assert homology(cx) == [(1, ()), (6, ())]


def test_ray_containment_of_dr36(census6):
    rays, cells = ray_containment(census6)
    assert len(rays) == 65
    assert all(len(c) >= 1 for c in cells)


def test_dr36_crosscut_pinned(census6):
    cx = census_crosscut(census6)
    assert cx.f_vector() == (65, 550, 1410, 1065, 15)
    assert homology(cx) == [(1, ()), (0, ()), (0, ()), (126, ()), (0, ())]


def test_graves_triads():
    triads = graves_triads()
    assert len(triads) == 6
    lines = {frozenset(line) for line in [(1, 2, 3), (1, 4, 8), (1, 5, 9), (2, 4, 7), (2, 6, 9),
                                          (3, 5, 7), (3, 6, 8), (4, 5, 6), (7, 8, 9)]}
    for t in triads:
        assert sorted(x for part in t for x in part) == list(range(1, 10))
        assert all(frozenset(part) not in lines for part in t)
    assert triad_name(find_triad("145,237,689")) == "{145,237,689}"


def test_graves_cells_have_52_bases():
    t = find_triad("145,237,689")
    assert [len(merged_matroid([part]).bases) for part in t] == [52, 52, 52]


def test_connector_at_named_pair():
    t1, t2 = find_triad("145,237,689"), find_triad("189,236,457")
    assert graves_adjacent(t1, t2)
    cells, split = connector_classes(t1, t2)
    assert split == frozenset({1, 6, 7})
    counts = sorted((len(merged_matroid(c).bases) for c in cells), reverse=True)
    assert counts == [51, 40, 40, 40, 36, 36, 36]


def test_graves_adjacency_count():
    triads = graves_triads()
    assert sum(graves_adjacent(a, b) for a, b in itertools.combinations(triads, 2)) == 9


def test_weight_from_graves_cells_is_member():
    host = pappus()
    cells = [merged_matroid([part]) for part in find_triad("145,237,689")]
    w = weight_from_cells(host, cells)
    assert matroid_dressian_member(w, host)
    sub = regular_subdivision(w, check=False)
    assert sorted(len(c) for c in sub.cells) == [52, 52, 52]


def test_pappus_census_structure(pappus_census):
    res = pappus_census
    assert res.counts == (18, 30, 1)
    assert (len(res.split_nodes), len(res.graves_nodes), len(res.connector_nodes)) == (3, 6, 9)
    names = {node.name for node in res.nodes}
    assert len(names) == 18
    tri = res.triangles[0]
    assert sorted(tri) == ["167", "258", "349"]
    data = json.loads(res.to_json())
    assert data["edges"] == 30 and len(data["edge_list"]) == 30
    g = nx.Graph(res.edges)
    # each triangle edge is an edge of the graph, and no 4-clique exists
    assert all(g.has_edge(a, b) for a, b in itertools.combinations(tri, 2))
    assert max(len(c) for c in nx.find_cliques(g)) == 3
