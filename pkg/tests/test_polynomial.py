from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from khspan.polynomial import LaurentPoly

polys = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=5).map(lambda t: LaurentPoly(t, "A"))


def test_zero_terms_dropped():
    p = LaurentPoly({1: 0, 2: 3}, "A")
    assert p.items() == [(2, 3)]
    assert not LaurentPoly.zero("A")


def test_str_and_pairs():
    p = LaurentPoly({-8: 1, -4: -1, 0: 1}, "A")
    assert str(p) == "A^-8 - A^-4 + 1"
    assert LaurentPoly.from_pairs(p.to_pairs(), "A") == p


def test_substitute_half_integer_exponents():
    p = LaurentPoly({2: 1}, "A").substitute(Fraction(-1, 4), "t")
    assert p.items() == [(Fraction(-1, 2), 1)]
    assert p.to_pairs() == [["-1/2", 1]]


def test_variables_must_match():
    with pytest.raises(ValueError):
        LaurentPoly({1: 1}, "A") + LaurentPoly({1: 1}, "q")


@given(polys, polys, polys)
def test_ring_axioms(a, b, c):
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == LaurentPoly.zero("A")


@given(polys)
def test_power_matches_repeated_product(a):
    assert a ** 3 == a * a * a
