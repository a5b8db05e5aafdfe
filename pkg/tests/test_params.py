import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from mixednorm import INF, SpaceParams, as_param, is_inf, reciprocal


def test_parse_rational_strings():
    assert as_param("3/2") == Fraction(3, 2)
    assert as_param("2") == Fraction(2)
    assert is_inf(as_param("inf"))
    assert is_inf(as_param(math.inf))


def test_decimal_strings_rejected_with_hint():
    with pytest.raises(ValueError, match="fraction"):
        as_param("0.5")
    with pytest.raises(TypeError, match="exact rational"):
        as_param(0.5)


def test_space_params_validation():
    s = SpaceParams(1, 2, 1)
    assert s.p == 1 and s.q == 2 and s.alpha == 1
    with pytest.raises(ValueError):
        SpaceParams(0, 2, 1)
    with pytest.raises(ValueError):
        SpaceParams(1, 2, 0)
    with pytest.raises(ValueError):
        SpaceParams(1, 2, "inf")  # alpha must be finite


def test_parse_triple():
    s = SpaceParams.parse("3/2,inf,1/4")
    assert s.p == Fraction(3, 2)
    assert is_inf(s.q)
    assert s.alpha == Fraction(1, 4)
    assert str(s) == "(3/2,inf,1/4)"


def test_reciprocal_convention():
    assert reciprocal(INF) == 0
    assert reciprocal(Fraction(1, 2)) == 2
    assert isinstance(reciprocal(INF), Fraction)


def test_growth_exponent_bound_exact():
    assert SpaceParams(2, 2, 1).growth_exponent_bound == Fraction(3, 2)
    assert SpaceParams("inf", 1, 1).growth_exponent_bound == 1


rationals = st.fractions(min_value=Fraction(1, 100), max_value=Fraction(100))


@given(rationals, rationals)
def test_comparisons_are_exact(a, b):
    # no float round-trip: ordering of parameters matches Fraction ordering
    pa, pb = as_param(a), as_param(b)
    assert (pa < pb) == (a < b)
    assert (pa == pb) == (a == b)
    assert pa < INF


@given(rationals)
def test_param_roundtrip_through_strings(a):
    assert as_param(str(a)) == a
