import random
from fractions import Fraction

import pytest

from dressian import golden
from dressian.arrangements import TreeArrangement, realizability_cone
from dressian.matroid import fano
from dressian.planes import (
    NotGeneric,
    classify_type,
    f_vector,
    plane_from_plucker,
    point_in_plane,
    plane_f_vector_bounds,
    random_plane_point,
    trivalent_unbounded_counts,
    type_table,
)
from dressian.trees import parse_tree
from dressian.tropical import indicator_vector, zero_vector


def dr36_type_point(name):
    full = set(range(1, 7))
    rows = next(rows for nm, rows, _ in golden.DR36_TYPES if nm == name)
    arr = TreeArrangement(6, [parse_tree(r, full - {i}) for i, r in enumerate(rows, start=1)])
    return realizability_cone(arr).interior


def test_n4_plane_is_cone_over_k4():
    plane = plane_from_plucker(zero_vector(3, 4))
    assert f_vector(plane) == (1, 0, 4, 0, 6)
    assert sorted(r.directions for r in plane.rays) == [(1,), (2,), (3,), (4,)]


def test_generic_dr35_plane(census5):
    plane = plane_from_plucker(census5.maximal()[0].interior)
    assert plane.f_vector() == (3, 2, 10, 0, 15)
    assert plane.f_vector()[2] == 5 * (5 - 3)


@pytest.mark.parametrize("name", [row[0] for row in golden.DR36_TYPES])
def test_dr36_type_plane_types(name):
    plane = plane_from_plucker(dr36_type_point(name))
    assert classify_type(plane) == name
    if name == "EEEE":
        assert not plane.is_series_parallel()
        fv = plane.f_vector()
        assert (fv[0], fv[1]) == (5, 4)
        assert fv[3] == 0
    else:
        assert plane.is_series_parallel()
        assert plane.f_vector() == (6, 6, 18, 1, 27)


def test_eeee_vertex_labels_include_k4():
    plane = plane_from_plucker(dr36_type_point("EEEE"))
    kinds = sorted(v.label.kind for v in plane.vertices)
    assert "K4" in kinds


def test_census6_has_seven_generic_types(census6):
    names = {classify_type(plane_from_plucker(c.interior), census6) for c in census6.maximal()}
    assert names == {row[0] for row in golden.DR36_TYPES}
    assert len(type_table(6)) == 7


def test_non_generic_plane_is_rejected(census6):
    ray = next(c for c in census6.cells if c.dimension == 0)
    with pytest.raises(NotGeneric):
        classify_type(plane_from_plucker(ray.interior))


def test_vertices_and_edge_midpoints_lie_on_plane():
    pi = dr36_type_point("FFFGG")
    plane = plane_from_plucker(pi)
    for v in plane.vertices:
        assert point_in_plane(pi, v.coords)
    for e in plane.edges:
        a, b = (plane.vertices[k].coords for k in e.vertices)
        assert point_in_plane(pi, [(x + y) / 2 for x, y in zip(a, b)])


def test_perturbed_vertex_leaves_plane():
    pi = dr36_type_point("EEFG")
    plane = plane_from_plucker(pi)
    rng = random.Random(1)
    for v in plane.vertices:
        moved = [x + Fraction(rng.randint(1, 97), 1000) * (k + 1) for k, x in enumerate(v.coords)]
        assert not point_in_plane(pi, moved)


def test_random_points_lie_on_plane():
    pi = dr36_type_point("EEFF(b)")
    plane = plane_from_plucker(pi)
    rng = random.Random(2)
    for _ in range(40):
        assert point_in_plane(pi, random_plane_point(plane, rng))


def test_plane_f_vector_bounds():
    assert plane_f_vector_bounds(6) == (6, 6, 18, 1)
    n = 7
    assert plane_f_vector_bounds(n) == ((n - 2) * (n - 3) // 2, (n - 3) * (n - 4), n * (n - 3), (n - 4) * (n - 5) // 2)
    assert trivalent_unbounded_counts(6) == (18, 27)


def test_fano_plane_has_fano_node():
    plane = plane_from_plucker(indicator_vector(fano()))
    assert "Fano" in [v.label.text for v in plane.vertices]
    assert plane.f_vector() == (8, 7, 28, 0, 42)


@pytest.mark.slow
def test_fano_plane_is_one_of_the_generic_n7_types():
    plane = plane_from_plucker(indicator_vector(fano()))
    table = type_table(7)
    assert len(table) == 94
    assert classify_type(plane) in set(table.values())
