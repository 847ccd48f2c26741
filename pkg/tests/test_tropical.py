import itertools
import random
from fractions import Fraction

import pytest

from dressian.foundations import InvalidInput, canonical_vector, to_mask
from dressian.matroid import fano, from_bases, pappus, uniform
from dressian.tropical import (
    INF,
    DisconnectedMatroid,
    TropicalPluckerVector,
    cone_signature,
    dressian_member,
    failing_relation,
    indicator_vector,
    matroid_dressian_member,
    parse_value,
    relation_action,
    three_term_min_attained_twice,
    trinomial_excludes,
    valuated_matroid_check,
    zero_vector,
)


def brute_three_term(pi):
    """Direct evaluation of every three-term relation from its definition."""
    d, n = pi.d, pi.n
    for s in itertools.combinations(range(1, n + 1), d - 2):
        rest = [x for x in range(1, n + 1) if x not in s]
        for i, j, k, l in itertools.combinations(rest, 4):
            def p(*xs):
                return pi[tuple(sorted(s + xs))]
            terms = sorted([p(i, j) + p(k, l), p(i, k) + p(j, l), p(i, l) + p(j, k)])
            if terms[0] != INF and terms[0] != terms[1]:
                return False
    return True


def single_drop(value=-1):
    return TropicalPluckerVector.from_function(2, 4, lambda s: value if tuple(s) == (1, 2) else 0)


def test_zero_vector_attains_minimum_three_times():
    z = zero_vector(2, 4)
    assert three_term_min_attained_twice(z, (), (1, 2, 3, 4))
    assert set(cone_signature(z).compact()) == {3}


def test_single_drop_fails():
    p = single_drop()
    assert not three_term_min_attained_twice(p, (), (1, 2, 3, 4))
    assert not dressian_member(p)
    assert failing_relation(p).quad == (1, 2, 3, 4)


def test_fano_indicator_is_member():
    lam = indicator_vector(fano())
    assert sum(1 for v in lam.values if v == 1) == 7
    for s in range(1, 8):
        rest = [x for x in range(1, 8) if x != s]
        for quad in itertools.combinations(rest, 4):
            assert three_term_min_attained_twice(lam, (s,), quad)
    assert dressian_member(lam)
    assert valuated_matroid_check(lam)


def test_indicator_of_uniform_is_zero():
    assert indicator_vector(uniform(3, 6)).values == zero_vector(3, 6).values


def test_pappus_indicator_has_nine_ones():
    lam = indicator_vector(pappus())
    assert len(lam.values) == 84
    assert sum(1 for v in lam.values if v == 1) == 9
    assert dressian_member(lam)


def test_member_agrees_with_direct_evaluation():
    rng = random.Random(11)
    for _ in range(300):
        pi = TropicalPluckerVector.from_function(3, 6, lambda s: rng.choice((0, 0, 1, 2)))
        assert dressian_member(pi) == brute_three_term(pi)
    for _ in range(300):
        pi = TropicalPluckerVector.from_function(2, 5, lambda s: rng.randint(0, 2))
        assert dressian_member(pi) == brute_three_term(pi)


def test_valuated_matroid_exchange_agrees_with_three_terms():
    rng = random.Random(5)
    for _ in range(100):
        pi = TropicalPluckerVector.from_function(3, 5, lambda s: rng.randint(0, 2))
        assert valuated_matroid_check(pi) == dressian_member(pi)


def test_signature_is_equivariant():
    lam = indicator_vector(fano())
    perm = [3, 1, 2, 7, 5, 6, 4]
    a = cone_signature(lam).compact()
    b = cone_signature(lam.relabel(perm)).compact()
    action = relation_action(3, 7)
    assert canonical_vector(a, action).key == canonical_vector(b, action).key


def test_lineality_leaves_signature_unchanged():
    lam = indicator_vector(fano())
    moved = lam.add_lineality([1, -2, 3, 0, 5, 1, -1])
    assert cone_signature(moved) == cone_signature(lam)
    assert dressian_member(moved)


def test_trinomial_at_core_triangle():
    base = indicator_vector(pappus())

    def core_point(a, b, c):
        extra = {to_mask((1, 6, 7)): a, to_mask((2, 5, 8)): b, to_mask((3, 4, 9)): c}
        return TropicalPluckerVector.from_function(
            3, 9, lambda s: base[tuple(s)] + extra.get(to_mask(s), 0))

    assert trinomial_excludes(core_point(1, 2, 4))
    assert trinomial_excludes(core_point(3, 1, 2))
    assert not trinomial_excludes(core_point(1, 1, 1))
    assert not trinomial_excludes(base)


def test_matroid_dressian_on_support():
    m = fano()
    vec = TropicalPluckerVector.from_mapping(3, 7, {b: 0 for b in m.sorted_bases()})
    assert vec.support_matroid() == m
    assert matroid_dressian_member(vec, m)


def test_indicator_of_disconnected_matroid_is_rejected():
    m = from_bases(6, 3, [(1,) + b for b in itertools.combinations(range(2, 7), 2)])
    with pytest.raises(DisconnectedMatroid):
        indicator_vector(m)


def test_text_round_trip_and_formats():
    rng = random.Random(2)
    pi = TropicalPluckerVector.from_function(3, 6, lambda s: Fraction(rng.randint(-9, 9), rng.randint(1, 4)))
    assert TropicalPluckerVector.from_text(pi.to_text()).values == pi.values
    spaced = "2 4\n1 2 0\n1 3 0\n1 4 0\n2 3 0\n2 4 0\n3 4 1/2\n"
    assert TropicalPluckerVector.from_text(spaced)[(3, 4)] == Fraction(1, 2)
    missing = TropicalPluckerVector.from_text("2 4\n12 0\n13 0\n")
    assert missing[(3, 4)] == INF


def test_parse_errors():
    assert parse_value("inf") == INF
    assert parse_value("-3/2") == Fraction(-3, 2)
    assert parse_value("1.5") == Fraction(3, 2)
    with pytest.raises(InvalidInput):
        parse_value("x")
    with pytest.raises(InvalidInput):
        TropicalPluckerVector.from_text("3 5\n12 0\n")
