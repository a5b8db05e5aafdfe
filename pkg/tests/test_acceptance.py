"""Acceptance suite: every criterion at its stated tolerance and budget.

Each test prints one pass/fail line (run with ``pytest -s`` to see them
inline).  Norm results are shared through a module-scoped cache so the
characterization cross-check stays inside its runtime budget.
"""

import itertools
import math
import time
from fractions import Fraction

import pytest

from mixednorm import (
    Lacunary,
    Monomial,
    Power,
    SpaceParams,
    check_beta_identity,
    beta_identity_grid,
    constant,
    decide_inclusion,
    inclusion_pair_grid,
    integral_mean,
    mixed_norm,
    parseval_mean,
    run_suite,
    standard_battery,
    verify_embedding,
    witness_soundness,
)

F = Fraction


def _report(name: str, passed: bool, elapsed: float, extra: str = "") -> None:
    from conftest import acceptance_lines

    status = "PASS" if passed else "FAIL"
    tail = f" -- {extra}" if extra else ""
    line = f"{status} {name} ({elapsed:.1f}s){tail}"
    print(line)
    acceptance_lines.append(line)


@pytest.fixture(scope="module")
def norm_cache():
    return {}


@pytest.fixture(scope="module")
def pair_grid():
    return inclusion_pair_grid()


def test_criterion_1_normalization():
    """mixed_norm(1, s) = 1 within 1e-7 over 50 spaces, all branches."""
    start = time.monotonic()
    pool = list(itertools.product(
        (F(1, 2), F(1), F(2), F(4), "inf"),
        (F(1, 2), F(1), F(2), F(4), "inf"),
        (F(1, 4), F(1), F(2)),
    ))
    sample = [pool[i] for i in range(len(pool)) if i % 3 != 0][:50]
    spaces = [SpaceParams(p, q, a) for p, q, a in sample]
    assert len(spaces) == 50
    assert any(s.p == math.inf for s in spaces)
    assert any(s.q == math.inf for s in spaces)
    assert any(s.p != math.inf and s.q != math.inf for s in spaces)
    one = constant(1)
    worst = 0.0
    for s in spaces:
        res = mixed_norm(one, s, 1e-8)
        assert res.is_finite, str(s)
        worst = max(worst, abs(res.value - 1.0))
    elapsed = time.monotonic() - start
    ok = worst <= 1e-7 and elapsed < 10.0
    _report("criterion 1: normalization over 50 spaces", ok, elapsed,
            f"max |norm-1| = {worst:.2e}")
    assert worst <= 1e-7
    assert elapsed < 10.0


def test_criterion_2_parseval_oracle():
    """integral_mean at p=2 vs the coefficient oracle, 1e-8 relative."""
    start = time.monotonic()
    functions = [Power(F(1, 2)), Power(F(1)), Power(F(3, 2))]
    functions += [Monomial(k) for k in range(9)]
    functions.append(Lacunary())
    radii = [round(0.1 * k, 1) for k in range(1, 10)] + [0.99]
    worst = 0.0
    for f in functions:
        for r in radii:
            oracle = parseval_mean(f, r)
            if oracle == 0.0:
                continue
            value = integral_mean(f, 2, r, 1e-9)
            worst = max(worst, abs(value - oracle) / oracle)
    elapsed = time.monotonic() - start
    ok = worst <= 1e-8 and elapsed < 30.0
    _report("criterion 2: p=2 quadrature vs coefficient oracle", ok, elapsed,
            f"max rel diff = {worst:.2e}")
    assert worst <= 1e-8
    assert elapsed < 30.0


def test_criterion_3_beta_identity():
    """Weighted-moment identity: quadrature vs closed form at 1e-8."""
    start = time.monotonic()
    worst = 0.0
    for aq, qp, z in beta_identity_grid():
        rep = check_beta_identity(aq, qp, z, tol=1e-8)
        assert rep.passed, rep.instance
        worst = max(worst, rep.max_violation)
    elapsed = time.monotonic() - start
    ok = elapsed < 10.0
    _report("criterion 3: Beta identity on the 75-point grid", ok, elapsed,
            f"max rel diff = {worst:.2e}")
    assert elapsed < 10.0


def test_criterion_4_membership_boundary():
    """Finite/Divergent split around the critical exponent at (1,2,1)."""
    start = time.monotonic()
    s = SpaceParams(1, 2, 1)
    finite = mixed_norm(Power(F(19, 10)), s, 1e-9)
    divergent = mixed_norm(Power(F(21, 10)), s, 1e-9)
    critical_sup = mixed_norm(Power(2), SpaceParams(1, "inf", 1), 1e-9)
    elapsed = time.monotonic() - start
    ok = (
        finite.is_finite
        and divergent.kind == "divergent"
        and critical_sup.is_finite
        and elapsed < 60.0
    )
    _report("criterion 4: membership boundary classification", ok, elapsed,
            f"1.9 -> {finite.kind}, 2.1 -> {divergent.kind}, "
            f"2.0 @ q=inf -> {critical_sup.kind}")
    assert finite.is_finite
    assert divergent.kind == "divergent"
    assert critical_sup.is_finite
    assert elapsed < 60.0


def test_criterion_5_characterization_cross_check(pair_grid, norm_cache):
    """Embedding bounds and witness soundness across the 200-pair grid."""
    start = time.monotonic()
    tol = 1e-2
    battery = standard_battery()
    n_verified = n_witnessed = 0
    for src, dst in pair_grid:
        verdict = decide_inclusion(src, dst)
        if verdict.included:
            if not verdict.constant.is_explicit:
                continue
            report = verify_embedding(src, dst, battery, tol, norm_cache)
            assert report.passed, (
                f"{src} -> {dst} [{report.branch.value}]: "
                + "; ".join(r.note for r in report.rows if r.status == "violation")
            )
            assert report.checked_count() >= 1, f"{src} -> {dst}: nothing checked"
            n_verified += 1
        else:
            sound = witness_soundness(verdict, tol=0.2, norm_cache=norm_cache)
            assert sound.exact_ok, f"{src} -> {dst}: exact membership failed"
            assert sound.ok, f"{src} -> {dst} [{sound.witness_label}]: {sound.note}"
            n_witnessed += 1
    elapsed = time.monotonic() - start
    ok = elapsed < 900.0
    _report("criterion 5: characterization cross-check on 200 pairs", ok, elapsed,
            f"{n_verified} embeddings verified, {n_witnessed} witnesses checked")
    assert n_verified >= 40
    assert n_witnessed >= 90
    assert elapsed < 900.0


def test_criterion_6_estimate_suite():
    """All estimate checks pass; the sup-weight sharpness rows fail as expected."""
    start = time.monotonic()
    reports = run_suite("*", tol=1e-5)
    bad = [r for r in reports if not r.ok]
    expected_fail = [r for r in reports if r.expected_fail]
    elapsed = time.monotonic() - start
    ok = not bad and len(expected_fail) == 2 and elapsed < 600.0
    _report("criterion 6: estimate suite over the standard battery", ok, elapsed,
            f"{len(reports)} checks, {len(expected_fail)} expected-fail rows")
    assert not bad, "\n".join(r.row() for r in bad)
    assert len(expected_fail) == 2
    assert all(not r.passed for r in expected_fail)
    assert all("sup-weighted" in r.metadata.get("reason", "") for r in expected_fail)
    assert elapsed < 600.0


def test_criterion_7_decision_invariants(pair_grid):
    """Reflexivity, transitivity, monotonicity of the pure decision logic."""
    start = time.monotonic()
    spaces = sorted(
        {s for pair in pair_grid for s in pair},
        key=lambda s: (float(s.p), float(s.q), float(s.alpha)),
    )
    for s in spaces:
        v = decide_inclusion(s, s)
        assert v.included and v.constant.value == 1.0
    verdicts = {}
    for a in spaces:
        for b in spaces:
            verdicts[(a, b)] = decide_inclusion(a, b).included
    for a in spaces:
        for b in spaces:
            if not verdicts[(a, b)]:
                continue
            for c in spaces:
                if verdicts[(b, c)]:
                    assert verdicts[(a, c)], f"transitivity broke: {a}, {b}, {c}"
    for src, dst in pair_grid:
        if verdicts.get((src, dst), decide_inclusion(src, dst).included):
            bigger = SpaceParams(dst.p, dst.q, dst.alpha + F(1, 2))
            assert decide_inclusion(src, bigger).included
    elapsed = time.monotonic() - start
    ok = elapsed < 1.0
    _report("criterion 7: decision-logic invariants", ok, elapsed,
            f"{len(spaces)} spaces, {len(verdicts)} ordered pairs")
    assert elapsed < 1.0
