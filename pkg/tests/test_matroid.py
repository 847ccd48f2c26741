import itertools

import pytest

from dressian.foundations import InvalidInput, to_mask
from dressian.matroid import (
    FANO_LINES,
    ExchangeAxiomViolation,
    Matroid,
    classify_label,
    complete_graph_k4,
    fano,
    from_bases,
    generalized_fano,
    graphic,
    has_mk4_minor,
    has_u24_minor,
    hessian,
    is_series_parallel,
    named,
    nonfano,
    pappus,
    uniform,
)


def brute_force_bases(d, n, lines):
    """Triples of points not contained in any given line."""
    return [b for b in itertools.combinations(range(1, n + 1), d)
            if not any(set(b) <= set(line) for line in lines)]


def test_uniform_from_all_pairs():
    m = from_bases(4, 2, itertools.combinations(range(1, 5), 2))
    assert m == uniform(2, 4)


def test_exchange_axiom_violation():
    with pytest.raises(ExchangeAxiomViolation):
        from_bases(4, 2, [(1, 2), (3, 4)])


def test_fano_from_noncollinear_triples():
    m = from_bases(7, 3, brute_force_bases(3, 7, FANO_LINES))
    assert m == fano()
    assert len(m.bases) == 28 and len(m.nonbases()) == 7


def test_named_counts():
    assert len(named("pappus").bases) == 75
    assert len(named("fano").bases) == 28
    assert len(nonfano().bases) == 29
    g4 = named("generalized_fano(4)")
    assert g4.n == 15 and len(g4.nonbases()) == 35
    assert named("uniform(3,6)") == uniform(3, 6)
    assert len(hessian().bases) == 84 - 12


def test_named_rejects_unknown():
    with pytest.raises(InvalidInput):
        named("octonion")


def test_generalized_fano_formulas():
    for r in (3, 4):
        n = 2 ** r - 1
        beta = (2 ** r - 1) * (2 ** r - 2) * (2 ** r - 4) // 6
        nu = (2 ** r - 1) * (2 ** r - 2) // 6
        m = generalized_fano(r)
        assert (m.n, len(m.bases), len(m.nonbases())) == (n, beta, nu)


def test_deletion_and_contraction_of_uniform():
    assert uniform(3, 7).delete(7) == uniform(3, 6)
    c = uniform(3, 7).contract(7)
    assert (c.d, c.n, len(c.bases)) == (2, 6, 15)


def test_fano_contraction_has_three_parallel_pairs():
    for p in range(1, 8):
        c = fano().contract(p)
        assert (c.d, c.n) == (2, 6)
        assert sorted(len(k) for k in c.parallel_classes) == [2, 2, 2]


def test_connectivity():
    assert uniform(3, 6).is_connected()
    coloop_sum = from_bases(6, 3, [(1,) + b for b in itertools.combinations(range(2, 7), 2)])
    assert not coloop_sum.is_connected()
    assert coloop_sum.coloops == (1,)
    assert pappus().is_connected()
    assert pappus().polytope_dimension() == 8


def test_dual_and_rank():
    m = fano()
    dual = m.dual()
    assert (dual.d, dual.n) == (4, 7)
    assert len(dual.bases) == 28
    assert m.rank_of((1, 2, 3)) == 2 and m.rank_of((1, 2, 4)) == 3


def test_circuits_of_fano_contain_lines():
    circuits = {tuple(sorted(c)) for c in fano().circuits()}
    assert all(tuple(line) in circuits for line in FANO_LINES)


def test_isomorphism_and_automorphisms():
    assert fano().is_isomorphic(fano().relabel([7, 6, 5, 4, 3, 2, 1]))
    assert not fano().is_isomorphic(nonfano())
    assert len(fano().automorphisms()) == 168


def test_text_round_trip():
    m = pappus()
    assert Matroid.from_text(m.to_text()) == m


def label_four_cycle():
    """{1,2,3,456}: points 4, 5, 6 parallel, no other dependencies."""
    bases = [b for b in itertools.combinations(range(1, 7), 3) if len(set(b) & {4, 5, 6}) <= 1]
    return from_bases(6, 3, bases)


def test_series_parallel_labels():
    assert is_series_parallel(label_four_cycle())
    assert classify_label(label_four_cycle()).kind == "4-cycle"
    assert classify_label(label_four_cycle()).text == "{1,2,3,456}"


def test_k4_label_is_not_series_parallel():
    k4 = complete_graph_k4()
    assert classify_label(k4).kind == "K4"
    assert has_mk4_minor(k4)
    assert not is_series_parallel(k4)


def test_u24_is_not_series_parallel():
    assert has_u24_minor(uniform(2, 4))
    assert not is_series_parallel(uniform(2, 4))


def test_graphic_cycle_is_series_parallel():
    triangle_with_chord = graphic([(1, 2), (2, 3), (3, 1), (1, 4), (4, 3)])
    assert is_series_parallel(triangle_with_chord)


def test_classify_named_planes():
    assert classify_label(fano()).text == "Fano"
    assert classify_label(nonfano()).text == "NonFano"
    assert classify_label(uniform(3, 7)).kind == "Other"


def test_two_triangles_label():
    lines = [(1, 2, 5), (3, 4, 5)]
    m = from_bases(5, 3, [b for b in itertools.combinations(range(1, 6), 3) if b not in lines])
    lab = classify_label(m)
    assert lab.kind == "two-triangles" and lab.text == "[1,2;3,4](5)"


def test_basis_indicator_vector():
    m = fano()
    vec = m.indicator_vector()
    assert len(vec) == 35 and sum(1 for v in vec if v) == 28
    assert to_mask((1, 2, 3)) not in m.bases
