"""Complete decision procedure for H(p,q,alpha) vs H(u,v,beta) inclusions.

The characterization splits on p >= u versus p < u.  For p >= u the spaces
compare through alpha (then q vs v at equality); for p < u through the
growth exponents alpha + 1/p vs beta + 1/u (then q vs v at equality).  All
comparisons are exact on rationals, with 1/inf = 0.  Included verdicts
carry the embedding constant extracted from the norm estimates; NotIncluded
verdicts carry an explicit witness function that is a member of the source
and not of the target, checked against the analytic criteria at
construction time.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import BranchMismatchError, ToleranceNotReached
from .functions import (
    AnalyticFunction,
    Lacunary,
    LogPower,
    MemberStatus,
    Power,
    known_membership,
    membership_margin,
)
from .norms import NormResult, mixed_norm, pointwise_constant
from .params import SpaceParams, is_inf, reciprocal


class Branch(str, Enum):
    T1_STRICT = "T1-strict"
    T1_EQUAL = "T1-equal"
    T2_STRICT = "T2-strict"
    T2_EQUAL = "T2-equal"
    T1_FAIL_ALPHA = "T1-fail-alpha"
    T1_FAIL_Q = "T1-fail-q"
    T2_FAIL_STRICT = "T2-fail-strict"
    T2_FAIL_EQUAL = "T2-fail-equal"


_INCLUDED_BRANCHES = {Branch.T1_STRICT, Branch.T1_EQUAL, Branch.T2_STRICT, Branch.T2_EQUAL}


@dataclass(frozen=True)
class ConstantInfo:
    """Embedding constant: exact closed form, possibly up to an unspecified
    mean-comparison factor that the equality case of the p < u regime
    inherits from the literature."""

    kind: str  # "explicit" | "up-to-unknown-factor"
    value: float
    formula: str

    @property
    def is_explicit(self) -> bool:
        return self.kind == "explicit"

    def to_json(self) -> dict:
        return {"kind": self.kind, "value": self.value, "formula": self.formula}


@dataclass(frozen=True)
class InclusionVerdict:
    included: bool
    branch: Branch
    src: SpaceParams
    dst: SpaceParams
    constant: Optional[ConstantInfo] = None
    witness: Optional[AnalyticFunction] = None

    def to_json(self) -> dict:
        out = {
            "included": self.included,
            "branch": self.branch.value,
            "src": str(self.src),
            "dst": str(self.dst),
        }
        if self.constant is not None:
            out["constant"] = self.constant.to_json()
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        return out


def _classify(src: SpaceParams, dst: SpaceParams) -> Branch:
    p, q, alpha = src.p, src.q, src.alpha
    u, v, beta_ = dst.p, dst.q, dst.alpha
    if p >= u:
        if alpha < beta_:
            return Branch.T1_STRICT
        if alpha == beta_:
            return Branch.T1_EQUAL if q <= v else Branch.T1_FAIL_Q
        return Branch.T1_FAIL_ALPHA
    a_src = alpha + reciprocal(p)
    a_dst = beta_ + reciprocal(u)
    if a_src < a_dst:
        return Branch.T2_STRICT
    if a_src == a_dst:
        return Branch.T2_EQUAL if q <= v else Branch.T2_FAIL_EQUAL
    return Branch.T2_FAIL_STRICT


def embedding_constant(src: SpaceParams, dst: SpaceParams, branch: Branch) -> ConstantInfo:
    """Constant C with ||f||_dst <= C ||f||_src, from the inclusion proofs.

    The equality case of the p < u regime carries an unresolved
    mean-comparison factor, reported symbolically; the same happens to the
    strict case when the source has q = inf, where the pointwise-bound
    constant has no closed form.
    """
    if branch not in _INCLUDED_BRANCHES:
        raise BranchMismatchError(f"{branch.value} is not an inclusion branch")
    q, alpha = src.q, src.alpha
    v, beta_ = dst.q, dst.alpha
    if branch is Branch.T1_STRICT:
        if is_inf(v):
            return ConstantInfo("explicit", 1.0, "sup-weighted norms compare directly")
        value = float(beta_ / (beta_ - alpha)) ** (1.0 / float(v))
        return ConstantInfo("explicit", value, "(beta/(beta-alpha))^(1/v)")
    if branch is Branch.T1_EQUAL:
        if is_inf(v):
            return ConstantInfo("explicit", 1.0, "sup-weighted norms compare directly")
        value = float(v / q) ** (1.0 / float(v))
        return ConstantInfo("explicit", value, "(v/q)^(1/v)")
    if branch is Branch.T2_STRICT:
        gap = (beta_ + reciprocal(dst.p)) - (alpha + reciprocal(src.p))
        if is_inf(v):
            power_part = 1.0
            power_formula = "1"
        else:
            power_part = float(beta_ / gap) ** (1.0 / float(v))
            power_formula = "(beta/(beta-alpha+1/u-1/p))^(1/v)"
        exponent = 1.0 - float(reciprocal(dst.p) * src.p)
        if is_inf(q):
            return ConstantInfo(
                "up-to-unknown-factor",
                power_part,
                f"m^({exponent:g}) * {power_formula}, pointwise constant m "
                f"unknown in closed form for q=inf",
            )
        m = pointwise_constant(src)
        return ConstantInfo(
            "explicit", m**exponent * power_part, f"m^(1-p/u) * {power_formula}"
        )
    # T2-equal: the mean-comparison constant is not specified
    if is_inf(v):
        return ConstantInfo(
            "up-to-unknown-factor", 1.0, "C, mean-comparison factor unspecified"
        )
    value = float(beta_ * v / (alpha * q)) ** (1.0 / float(v))
    return ConstantInfo(
        "up-to-unknown-factor",
        value,
        "(beta*v/(alpha*q))^(1/v) * C, mean-comparison factor unspecified",
    )


def witness(src: SpaceParams, dst: SpaceParams, branch: Branch) -> AnalyticFunction:
    """Explicit member of the source lying outside the target.

    Both membership assertions are re-checked against the analytic
    criteria before the witness is returned.  Targets with v = inf need
    adjusted parameters: a bounded weighted coefficient sequence or a
    critical power exponent would slip back into the sup-weighted target,
    so the lacunary witness gains a linear factor and the power witness
    moves to the midpoint exponent.
    """
    p, q, alpha = src.p, src.q, src.alpha
    u, v, beta_ = dst.p, dst.q, dst.alpha
    if branch is Branch.T1_FAIL_ALPHA:
        # v = inf: {1} is bounded, so the weighted target sequence must grow;
        # a quarter power keeps the source geometric decay numerically clean
        w: AnalyticFunction = Lacunary(
            rate=beta_, power=Fraction(-1, 4) if is_inf(v) else Fraction(0)
        )
    elif branch is Branch.T1_FAIL_Q:
        w = Lacunary(rate=alpha, power=reciprocal(v))
    elif branch is Branch.T2_FAIL_STRICT:
        a_src = alpha + reciprocal(p)
        a_dst = beta_ + reciprocal(u)
        w = Power((a_src + a_dst) / 2 if is_inf(v) else a_dst)
    elif branch is Branch.T2_FAIL_EQUAL:
        w = LogPower(alpha + reciprocal(p), reciprocal(v))
    else:
        raise BranchMismatchError(f"{branch.value} is not a non-inclusion branch")
    in_src = known_membership(w, src)
    in_dst = known_membership(w, dst)
    if in_src.status is not MemberStatus.MEMBER or in_dst.status is not MemberStatus.NOT_MEMBER:
        raise AssertionError(
            f"witness construction broke its membership contract: "
            f"{w.label()} src={in_src.status} dst={in_dst.status}"
        )
    return w


def decide_inclusion(src: SpaceParams, dst: SpaceParams) -> InclusionVerdict:
    """Decide H(src) subset of H(dst), with constant or witness attached."""
    branch = _classify(src, dst)
    if branch in _INCLUDED_BRANCHES:
        return InclusionVerdict(
            True, branch, src, dst, constant=embedding_constant(src, dst, branch)
        )
    return InclusionVerdict(
        False, branch, src, dst, witness=witness(src, dst, branch)
    )


# --------------------------------------------------------------------------
# Numerical cross-checks


NormCache = Dict[Tuple[AnalyticFunction, SpaceParams, float], NormResult]


def _cached_norm(f, s, tol, cache: Optional[NormCache]):
    if cache is None:
        return mixed_norm(f, s, tol)
    key = (f, s, tol)
    if key not in cache:
        cache[key] = mixed_norm(f, s, tol)
    return cache[key]


@dataclass(frozen=True)
class EmbeddingRow:
    label: str
    status: str  # ok | violation | skipped-src | skipped-dst | failed
    ratio: Optional[float] = None
    src_norm: Optional[float] = None
    dst_norm: Optional[float] = None
    note: str = ""


@dataclass(frozen=True)
class EmbeddingReport:
    src: SpaceParams
    dst: SpaceParams
    branch: Branch
    bound: float
    rows: Tuple[EmbeddingRow, ...]
    max_ratio: Optional[float]
    passed: bool

    def checked_count(self) -> int:
        return sum(1 for row in self.rows if row.status in ("ok", "violation"))


def verify_embedding(
    src: SpaceParams,
    dst: SpaceParams,
    battery: Sequence[AnalyticFunction],
    tol: float = 1e-2,
    norm_cache: Optional[NormCache] = None,
) -> EmbeddingReport:
    """Check ||f||_dst <= C ||f||_src (1 + 4 tol) over a battery of functions.

    Functions whose source norm is Divergent, Inconclusive or out of
    quadrature budget are recorded and skipped; the embedding assertion
    applies to the pairs with both norms Finite.
    """
    verdict = decide_inclusion(src, dst)
    if not verdict.included or not verdict.constant.is_explicit:
        raise BranchMismatchError(
            "verify_embedding needs an Included pair with an explicit constant"
        )
    bound = verdict.constant.value * (1.0 + 4.0 * tol)
    rows: List[EmbeddingRow] = []
    max_ratio = None
    passed = True
    for f in battery:
        label = f.label()
        try:
            ns = _cached_norm(f, src, tol, norm_cache)
        except ToleranceNotReached as exc:
            rows.append(EmbeddingRow(label, "failed", note=f"src: {exc}"))
            continue
        if not ns.is_finite:
            rows.append(EmbeddingRow(label, "skipped-src", note=f"src norm {ns.kind}"))
            continue
        if ns.value == 0.0:
            rows.append(EmbeddingRow(label, "skipped-src", note="src norm is zero"))
            continue
        try:
            nd = _cached_norm(f, dst, tol, norm_cache)
        except ToleranceNotReached as exc:
            rows.append(EmbeddingRow(label, "failed", note=f"dst: {exc}"))
            continue
        if not nd.is_finite:
            rows.append(
                EmbeddingRow(
                    label,
                    "skipped-dst",
                    src_norm=ns.value,
                    note=f"dst norm {nd.kind} on an included pair",
                )
            )
            continue
        ratio = nd.value / ns.value
        max_ratio = ratio if max_ratio is None else max(max_ratio, ratio)
        if ratio <= bound:
            rows.append(EmbeddingRow(label, "ok", ratio, ns.value, nd.value))
        else:
            rows.append(
                EmbeddingRow(
                    label, "violation", ratio, ns.value, nd.value,
                    note=f"ratio exceeds bound {bound:g}",
                )
            )
            passed = False
    return EmbeddingReport(
        src, dst, verdict.branch, bound, tuple(rows), max_ratio, passed
    )


@dataclass(frozen=True)
class WitnessSoundness:
    """Outcome of the exact and numerical witness checks for one verdict."""

    branch: Branch
    witness_label: str
    exact_ok: bool
    numeric_checked: bool
    numeric_ok: bool
    src_kind: Optional[str] = None
    dst_kind: Optional[str] = None
    dst_gamma_hat: Optional[float] = None
    note: str = ""

    @property
    def ok(self) -> bool:
        return self.exact_ok and (self.numeric_ok or not self.numeric_checked)


def witness_soundness(
    verdict: InclusionVerdict,
    tol: float = 0.2,
    margin: Fraction = Fraction(1, 20),
    norm_cache: Optional[NormCache] = None,
    boundary_window: float = 0.05,
) -> WitnessSoundness:
    """Validate a NotIncluded verdict's witness.

    The membership assertions are always checked exactly.  The numerical
    Finite/Divergent split runs only when the witness sits at least
    ``margin`` inside the source space on the exponent scale; witnesses
    decided by log or polynomial factors live exactly at the critical
    exponent, where quadrature cannot resolve the split and the analytic
    criteria already decide it.
    """
    if verdict.included:
        raise BranchMismatchError("witness soundness applies to NotIncluded verdicts")
    w = verdict.witness
    in_src = known_membership(w, verdict.src)
    in_dst = known_membership(w, verdict.dst)
    exact_ok = (
        in_src.status is MemberStatus.MEMBER
        and in_dst.status is MemberStatus.NOT_MEMBER
    )
    gap = membership_margin(w, verdict.src)
    if gap is None or gap < margin:
        return WitnessSoundness(
            verdict.branch, w.label(), exact_ok, False, True,
            note=f"exponent margin {gap} below {margin}; decided analytically",
        )
    try:
        ns = _cached_norm(w, verdict.src, tol, norm_cache)
        nd = _cached_norm(w, verdict.dst, tol, norm_cache)
    except ToleranceNotReached as exc:
        return WitnessSoundness(
            verdict.branch, w.label(), exact_ok, True, False, note=f"budget: {exc}"
        )
    src_ok = ns.is_finite
    beta_f = float(verdict.dst.alpha)
    dst_ok = nd.kind == "divergent" or (
        nd.kind == "inconclusive"
        and nd.gamma_hat is not None
        and nd.gamma_hat >= beta_f - boundary_window
    )
    return WitnessSoundness(
        verdict.branch,
        w.label(),
        exact_ok,
        True,
        src_ok and dst_ok,
        src_kind=ns.kind,
        dst_kind=nd.kind,
        dst_gamma_hat=nd.gamma_hat,
        note="" if src_ok and dst_ok else f"src={ns.kind} dst={nd.kind}",
    )
