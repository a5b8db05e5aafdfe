import math
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mixednorm import (
    DomainError,
    Kernel,
    Lacunary,
    MemberStatus,
    Monomial,
    Power,
    Series,
    SpaceParams,
    ToleranceNotReached,
    beta,
    constant,
    growth_exponent,
    growth_fit,
    integral_mean,
    known_membership,
    mixed_norm,
    point_evaluation_bound,
    pointwise_constant,
)

F = Fraction


# --------------------------------------------------------------------------
# Closed-form norm values


def test_constant_norm_is_one_across_branches():
    spaces = [
        SpaceParams(1, 2, 1),
        SpaceParams(2, 1, F(1, 4)),
        SpaceParams(F(1, 2), F(1, 2), F(1, 2)),
        SpaceParams("inf", 2, 1),
        SpaceParams(2, "inf", 1),
        SpaceParams("inf", "inf", F(3, 4)),
    ]
    for s in spaces:
        res = mixed_norm(constant(1), s, 1e-9)
        assert res.is_finite
        assert res.value == pytest.approx(1.0, abs=1e-8), str(s)


def test_monomial_norm_beta_closed_form():
    # ||z||^q = alpha q int (1-r)^(alpha q - 1) r^q dr = alpha q B(alpha q, q+1)
    res = mixed_norm(Monomial(1), SpaceParams(2, 2, 1), 1e-9)
    assert res.is_finite
    assert res.value == pytest.approx(math.sqrt(2.0 * beta(2.0, 3.0)), rel=1e-8)
    assert res.value == pytest.approx(1.0 / math.sqrt(6.0), rel=1e-8)
    res = mixed_norm(Monomial(2), SpaceParams(4, 3, F(1, 2)), 1e-8)
    expected = (1.5 * beta(1.5, 7.0)) ** (1.0 / 3.0)
    assert res.value == pytest.approx(expected, rel=1e-7)


def test_scaled_power_norm_value():
    # ||(1-z)^(-1)|| in (2,2,1): M_2^2 = 1/(1-r^2), so the square of the
    # norm is 2 int (1-r)/(1-r^2) dr = 2 int dr/(1+r) = 2 ln 2
    res = mixed_norm(Power(1), SpaceParams(2, 2, 1), 1e-9)
    assert res.value == pytest.approx(math.sqrt(2.0 * math.log(2.0)), rel=1e-8)


def test_homogeneity_exact_scaling():
    s = SpaceParams(2, 2, 1)
    base = mixed_norm(Power(1), s, 1e-8).value
    scaled = mixed_norm(Power(1, scale=5.0), s, 1e-8).value
    assert scaled == pytest.approx(5.0 * base, rel=1e-7)


@settings(max_examples=12, deadline=None)
@given(
    c=st.floats(min_value=0.01, max_value=100.0),
    coeffs=st.lists(
        st.floats(min_value=-2.0, max_value=2.0), min_size=1, max_size=4
    ),
)
def test_homogeneity_property(c, coeffs):
    if all(abs(x) < 1e-3 for x in coeffs):
        coeffs = [1.0] + coeffs
    s = SpaceParams(2, 2, F(1, 2))
    f = Series(tuple(coeffs))
    g = Series(tuple(coeffs), scale=c)
    nf = mixed_norm(f, s, 1e-7).value
    ng = mixed_norm(g, s, 1e-7).value
    assert ng == pytest.approx(c * nf, rel=1e-5)


def test_zero_function():
    assert mixed_norm(constant(0), SpaceParams(2, 2, 1)).value == 0.0


# --------------------------------------------------------------------------
# Divergence classification at the membership boundary


def test_power_boundary_classification():
    s = SpaceParams(1, 2, 1)
    assert mixed_norm(Power(F(19, 10)), s, 1e-9).is_finite
    assert mixed_norm(Power(F(21, 10)), s, 1e-9).kind == "divergent"
    assert mixed_norm(Power(2), s, 1e-9).kind == "divergent"
    assert mixed_norm(Power(2), SpaceParams(1, "inf", 1), 1e-9).is_finite


def test_sup_norm_of_critical_power():
    # (1-r)^alpha M_1(r, (1-z)^-2) = (1-r)/(1-r^2) = 1/(1+r), maximal at r=0
    res = mixed_norm(Power(2), SpaceParams(1, "inf", 1), 1e-9)
    assert res.value == pytest.approx(1.0, rel=1e-8)


def test_lacunary_classification():
    s = SpaceParams(2, 2, 1)
    assert mixed_norm(Lacunary(), s, 1e-4).is_finite
    assert mixed_norm(Lacunary(rate=F(1, 2)), s, 1e-2).is_finite
    assert mixed_norm(Lacunary(rate=2), s, 1e-2).kind == "divergent"
    at_boundary = mixed_norm(Lacunary(rate=1), s, 1e-2)
    assert at_boundary.kind in ("divergent", "inconclusive")
    if at_boundary.kind == "inconclusive":
        assert at_boundary.gamma_hat == pytest.approx(1.0, abs=0.05)


def test_membership_agreement_away_from_critical():
    # Finite/Divergent matches the analytic criteria at distance >= 0.05
    cases = [
        (Power(F(1, 2)), SpaceParams(2, 2, 1)),
        (Power(F(5, 4)), SpaceParams(2, 2, 1)),
        (Power(F(7, 4)), SpaceParams(2, 2, 1)),
        (Power(F(5, 2)), SpaceParams(1, 2, 1)),
        (Lacunary(rate=F(1, 2)), SpaceParams(2, 1, 1)),
        (Lacunary(rate=F(3, 2)), SpaceParams(2, 1, 1)),
    ]
    for f, s in cases:
        member = known_membership(f, s).status is MemberStatus.MEMBER
        res = mixed_norm(f, s, 1e-2)
        if member:
            assert res.is_finite, f"{f.label()} in {s}"
        else:
            assert res.kind == "divergent", f"{f.label()} in {s}"


def test_tolerance_not_reached_for_unresolvable_tolerance():
    # polynomial-decay shell sums cannot certify 1e-9 within the budget
    with pytest.raises(ToleranceNotReached):
        mixed_norm(Lacunary(rate=1, power=1), SpaceParams(2, 2, 1), 1e-9)


# --------------------------------------------------------------------------
# Norm-mean consistency invariants


@pytest.mark.parametrize(
    "f,s",
    [
        (constant(1), SpaceParams(2, 2, 1)),
        (Power(1), SpaceParams(1, 2, 1)),
        (Monomial(1), SpaceParams(2, 1, F(1, 2))),
        (Kernel(0.6, 1, 2), SpaceParams(2, 2, 1)),
    ],
    ids=["const", "power", "monomial", "kernel"],
)
def test_weighted_mean_below_norm(f, s):
    # (1-r)^alpha M_p(r,f) <= ||f|| and the sup-weighted norm <= the norm
    tol = 1e-8
    norm = mixed_norm(f, s, tol)
    assert norm.is_finite
    sup = mixed_norm(f, SpaceParams(s.p, "inf", s.alpha), tol)
    assert sup.value <= norm.value * (1 + 2 * tol)
    alpha = float(s.alpha)
    for r in [0.1, 0.5, 0.9, 0.99, 1 - 2.0**-10]:
        weighted = (1 - r) ** alpha * integral_mean(f, s.p, r, tol)
        assert weighted <= norm.value * (1 + 2 * tol)


# --------------------------------------------------------------------------
# Growth exponent


def test_growth_exponents():
    assert growth_exponent(Power(F(3, 2)), "inf") == pytest.approx(1.5, abs=1e-6)
    assert growth_exponent(Power(1), 2) == pytest.approx(0.5, abs=1e-3)
    assert growth_exponent(Monomial(5), 4) == pytest.approx(0.0, abs=1e-2)
    assert growth_exponent(Power(F(5, 2)), 1) == pytest.approx(1.5, abs=1e-3)


def test_growth_fit_metadata():
    fit = growth_fit(Lacunary(rate=1), 3)
    assert fit.gamma_hat == pytest.approx(1.0, abs=0.05)
    assert fit.source == "coefficient profile"
    fit = growth_fit(Power(1), "inf")
    assert fit.residual < 1e-6
    assert float(fit) == fit.gamma_hat


# --------------------------------------------------------------------------
# Point evaluation bound


def test_pointwise_constant_values():
    assert pointwise_constant(SpaceParams(1, 1, 1)) == pytest.approx(4.0, rel=1e-10)
    assert pointwise_constant(SpaceParams("inf", 3, 2)) == 1.0
    with pytest.raises(DomainError):
        pointwise_constant(SpaceParams(2, "inf", 1))


def test_point_evaluation_bound_values():
    s = SpaceParams(1, 1, 1)
    assert point_evaluation_bound(s, 0.0) == pytest.approx(4.0, rel=1e-10)
    assert point_evaluation_bound(s, 0.5) == pytest.approx(16.0, rel=1e-10)
    assert point_evaluation_bound(s, 0.5j) == pytest.approx(16.0, rel=1e-10)
    with pytest.raises(DomainError):
        point_evaluation_bound(s, 1.0)


def test_point_evaluation_bound_dominates_members():
    s = SpaceParams(1, 2, 1)
    f = Power(1)
    norm = mixed_norm(f, s, 1e-8).value
    for z in [0.0, 0.5, 0.9, 0.9j, -0.7]:
        assert abs(f.eval(z)) <= point_evaluation_bound(s, z) * norm * (1 + 1e-6)


def test_kernel_norm_rotation_invariant():
    # composing with a rotation leaves every integral mean unchanged, so
    # the norm can only depend on |z0|; this exercises the graded angular
    # scheme with an off-axis singular direction
    import cmath

    s = SpaceParams(2, 2, 1)
    base = mixed_norm(Kernel(0.7, 1, 2), s, 1e-6).value
    for phi in [0.5, 2.0, 4.0]:
        rotated = Kernel(0.7 * cmath.exp(1j * phi), 1, 2)
        assert mixed_norm(rotated, s, 1e-6).value == pytest.approx(base, rel=1e-7)


def test_critical_power_in_sup_sup_space():
    # (1-r)^alpha M_inf(r, (1-z)^-alpha) = 1 identically
    res = mixed_norm(Power(1), SpaceParams("inf", "inf", 1), 1e-9)
    assert res.is_finite and res.value == pytest.approx(1.0, abs=1e-9)


def test_norm_result_json():
    fin = mixed_norm(constant(1), SpaceParams(1, 1, 1), 1e-8)
    payload = fin.to_json()
    assert payload["kind"] == "finite" and payload["value"] == pytest.approx(1.0)
    div = mixed_norm(Power(3), SpaceParams(1, 2, 1), 1e-6)
    assert div.to_json()["kind"] == "divergent"
