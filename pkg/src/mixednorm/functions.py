"""Analytic test-function families on the unit disk.

Each family evaluates pointwise (scalar or numpy array), exposes a stable
log-modulus on circles |z| = 1-t for the quadrature layer, and carries an
exact membership criterion against a mixed norm space where one is known.
Family exponents are exact rationals so that critical cases are decided
without floating error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Optional, Tuple

import numpy as np

from .errors import DomainError, UnsupportedFamilyError
from .params import SpaceParams, as_param, is_inf, reciprocal

_EVAL_EPS = 1e-17
# Circle radii below 1-2^-52 collapse onto 1.0 in double precision; families
# without a stable boundary-gap form are evaluated at the clamped radius.
_MIN_GAP = 2.0**-52


def _one_minus_z_on_circle(t: float, thetas: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Real and imaginary parts of 1 - (1-t) e^(i theta), cancellation-free."""
    one_minus_cos = 2.0 * np.sin(0.5 * thetas) ** 2
    re = one_minus_cos + t * np.cos(thetas)
    im = -(1.0 - t) * np.sin(thetas)
    return re, im


def _check_disk(z: np.ndarray) -> None:
    if np.any(np.abs(z) >= 1.0):
        raise DomainError("evaluation point lies outside the open unit disk")


class AnalyticFunction:
    """Base class for the closed-form function families."""

    scale: complex = 1.0

    def _eval_array(self, z: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def eval(self, z):
        """Evaluate f(z) for |z| < 1; accepts scalars or numpy arrays."""
        arr = np.asarray(z, dtype=complex)
        _check_disk(arr)
        out = self._eval_array(arr)
        if np.isscalar(z) or np.ndim(z) == 0:
            return complex(out)
        return out

    __call__ = eval

    def log_abs_on_circle(self, t, thetas: np.ndarray) -> np.ndarray:
        """ln|f((1-t) e^(i theta))| for gaps 0 < t <= 1, stable for tiny t.

        Broadcasts: t may be a scalar or a column of gaps.  The default
        goes through pointwise evaluation at a radius clamped to 1-2^-52;
        families singular at the boundary override this with a form written
        directly in the gap t.
        """
        t_eff = np.maximum(t, _MIN_GAP)
        z = (1.0 - t_eff) * np.exp(1j * thetas)
        vals = np.abs(self._eval_array(np.asarray(z, dtype=complex)))
        with np.errstate(divide="ignore"):
            return np.log(vals)

    def log_max_modulus(self, t):
        """ln M_inf(1-t, f) where the peak location is provable, else None."""
        return None

    def singular_direction(self) -> Optional[float]:
        """Angle of the dominant boundary singularity, if the family has one."""
        return None

    def taylor_coefficients(self, n_max: int) -> list:
        """Coefficients c_0..c_n_max of the expansion at the origin."""
        raise UnsupportedFamilyError(
            f"{type(self).__name__} has no closed-form Taylor coefficients"
        )

    def label(self) -> str:
        return type(self).__name__.lower()

    def to_json(self) -> dict:
        raise NotImplementedError

    def _scale_json(self, params: dict) -> dict:
        s = complex(self.scale)
        if s != 1.0:
            params["scale"] = [s.real, s.imag]
        return params


def _exp_float(x: Fraction) -> float:
    return float(x)


@dataclass(frozen=True)
class Power(AnalyticFunction):
    """f(z) = scale * (1-z)^(-gamma), principal branch."""

    gamma: Fraction
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_param(self.gamma, allow_inf=False))

    def _eval_array(self, z):
        return self.scale * (1.0 - z) ** (-_exp_float(self.gamma))

    def log_abs_on_circle(self, t, thetas):
        re, im = _one_minus_z_on_circle(t, thetas)
        log_gap = 0.5 * np.log(re * re + im * im)
        return math.log(abs(self.scale)) - _exp_float(self.gamma) * log_gap

    def log_max_modulus(self, t):
        # |1 - z| on the circle of radius 1-t ranges over [t, 2-t]
        g = _exp_float(self.gamma)
        t = np.asarray(t, dtype=float)
        gap = t if g >= 0 else 2.0 - t
        return math.log(abs(self.scale)) - g * np.log(gap)

    def singular_direction(self):
        return 0.0 if self.gamma > 0 else None

    def taylor_coefficients(self, n_max):
        g = _exp_float(self.gamma)
        coeffs = [complex(self.scale)]
        for n in range(1, n_max + 1):
            coeffs.append(coeffs[-1] * (n - 1 + g) / n)
        return coeffs

    def label(self):
        return f"power(gamma={self.gamma})"

    def to_json(self):
        return {"family": "power", "params": self._scale_json({"gamma": str(self.gamma)})}


@dataclass(frozen=True)
class LogPower(AnalyticFunction):
    """f(z) = scale * (1-z)^(-gamma) * (log(e/(1-z)))^(-c).

    On the disk Re(1-z) > 0, so both the inner and outer principal
    branches are unambiguous.
    """

    gamma: Fraction
    c: Fraction
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "gamma", as_param(self.gamma, allow_inf=False))
        object.__setattr__(self, "c", as_param(self.c, allow_inf=False))

    def _eval_array(self, z):
        w = 1.0 - z
        log_factor = 1.0 - np.log(w)
        return self.scale * w ** (-_exp_float(self.gamma)) * log_factor ** (-_exp_float(self.c))

    def log_abs_on_circle(self, t, thetas):
        re, im = _one_minus_z_on_circle(t, thetas)
        log_gap = 0.5 * np.log(re * re + im * im)
        arg = np.arctan2(im, re)
        # |1 - Log(1-z)|: real part 1 - ln|1-z| > 1 - ln 2 on the disk
        mod2 = (1.0 - log_gap) ** 2 + arg * arg
        return (
            math.log(abs(self.scale))
            - _exp_float(self.gamma) * log_gap
            - _exp_float(self.c) * 0.5 * np.log(mod2)
        )

    def singular_direction(self):
        return 0.0

    def label(self):
        return f"logpower(gamma={self.gamma},c={self.c})"

    def to_json(self):
        return {
            "family": "logpower",
            "params": self._scale_json({"gamma": str(self.gamma), "c": str(self.c)}),
        }


@dataclass(frozen=True)
class Lacunary(AnalyticFunction):
    """f(z) = scale * sum_{n>=1} a_n z^(2^(n-1)).

    Structured instances use a_n = 2^(n*rate) * n^(-power), the shape every
    coefficient rule in scope takes; membership is then decided exactly.
    A general rule can be supplied as ``coeff_fn``, in which case membership
    falls back to a numeric tail test.  The gap exponents make truncation
    benign: at radius 1-t every term beyond n ~ log2(1/t) + 7 underflows,
    so ``budget`` terms cover all radii down to 1-2^-52.
    """

    rate: Fraction = Fraction(0)
    power: Fraction = Fraction(0)
    coeff_fn: Optional[Callable[[int], complex]] = field(default=None, compare=False)
    scale: complex = 1.0
    budget: int = 64

    def __post_init__(self):
        object.__setattr__(self, "rate", as_param(self.rate, allow_inf=False))
        object.__setattr__(self, "power", as_param(self.power, allow_inf=False))

    @property
    def is_structured(self) -> bool:
        return self.coeff_fn is None

    def coefficient(self, n: int) -> complex:
        if self.coeff_fn is not None:
            return complex(self.coeff_fn(n))
        la = self.log2_abs_coefficient(n)
        if la > 1023.0:
            raise DomainError(
                f"lacunary coefficient 2^{la:.0f} overflows; reduce rate or budget"
            )
        return 2.0**la

    def log2_abs_coefficient(self, n: int) -> float:
        if self.coeff_fn is not None:
            a = abs(complex(self.coeff_fn(n)))
            return math.log2(a) if a > 0 else -math.inf
        return float(n * self.rate) - float(self.power) * math.log2(n)

    def _eval_array(self, z):
        total = np.zeros(z.shape, dtype=complex)
        w = z.astype(complex)  # z^(2^(n-1))
        for n in range(1, self.budget + 1):
            if n > 1:
                w = w * w
            a = self.coefficient(n)
            term = a * w
            total = total + term
            floor = np.maximum(np.abs(total), 1e-300)
            if np.all(np.abs(term) <= _EVAL_EPS * floor):
                break
        return self.scale * total

    def truncation_tail_bound(self, r: float) -> float:
        """Geometric bound on the modulus of the dropped tail at radius r."""
        n = self.budget + 1
        lt = self.log2_abs_coefficient(n) + 2.0 ** (n - 1) * math.log2(max(r, 1e-300))
        return abs(self.scale) * 2.0 ** min(lt + 1.0, 1023.0)

    def log_max_modulus(self, t):
        if not self.is_structured:
            return None
        # structured coefficients are positive, so the maximum modulus is
        # attained on the positive axis: M_inf(r) = sum a_n r^(2^(n-1))
        t = np.atleast_1d(np.asarray(t, dtype=float))
        log2_r = np.log1p(-np.minimum(t, 1.0)) / math.log(2.0)
        rows = []
        for n in range(1, self.budget + 1):
            rows.append(self.log2_abs_coefficient(n) + 2.0 ** (n - 1) * log2_r)
            if np.all(rows[-1] < np.max(rows, axis=0) - 80.0):
                break
        stack = np.asarray(rows)
        shift = np.max(stack, axis=0)
        total = shift + np.log2(np.sum(np.exp2(stack - shift), axis=0))
        return total * math.log(2.0) + math.log(abs(self.scale))

    def taylor_coefficients(self, n_max):
        coeffs = [0j] * (n_max + 1)
        n = 1
        while 2 ** (n - 1) <= n_max:
            coeffs[2 ** (n - 1)] = self.scale * self.coefficient(n)
            n += 1
        return coeffs

    def label(self):
        if not self.is_structured:
            return "lacunary(custom rule)"
        return f"lacunary(rate={self.rate},power={self.power})"

    def to_json(self):
        if not self.is_structured:
            raise UnsupportedFamilyError("custom lacunary rules are not serializable")
        return {
            "family": "lacunary",
            "params": self._scale_json({"rate": str(self.rate), "power": str(self.power)}),
        }


@dataclass(frozen=True)
class Kernel(AnalyticFunction):
    """f(z) = scale * (1-|z0|^2)^s / (1 - conj(z0) z)^e.

    The only singularity sits at z = 1/conj(z0), outside the closed disk,
    so the kernel is bounded on the disk for every parameter choice.
    """

    center: complex
    s_exp: Fraction
    exponent: Fraction
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "s_exp", as_param(self.s_exp, allow_inf=False))
        object.__setattr__(self, "exponent", as_param(self.exponent, allow_inf=False))
        if abs(self.center) >= 1.0:
            raise DomainError("kernel center must lie inside the unit disk")
        if self.s_exp <= 0:
            raise ValueError("kernel smoothing exponent must be positive")

    def _front_factor(self) -> float:
        return (1.0 - abs(self.center) ** 2) ** _exp_float(self.s_exp)

    def _eval_array(self, z):
        base = 1.0 - np.conj(self.center) * z
        return self.scale * self._front_factor() * base ** (-_exp_float(self.exponent))

    def log_abs_on_circle(self, t, thetas):
        t_eff = np.maximum(t, _MIN_GAP)
        z = (1.0 - t_eff) * np.exp(1j * thetas)
        base = np.abs(1.0 - np.conj(self.center) * z)
        return (
            math.log(abs(self.scale))
            + math.log(self._front_factor())
            - _exp_float(self.exponent) * np.log(base)
        )

    def log_max_modulus(self, t):
        # |1 - conj(z0) w| over the circle of radius 1-t spans
        # [(1-|z0|) + |z0| t, 1 + |z0|(1-t)]
        e = _exp_float(self.exponent)
        mod = abs(self.center)
        t = np.asarray(t, dtype=float)
        base = ((1.0 - mod) + mod * t) if e >= 0 else (1.0 + mod * (1.0 - t))
        return (
            math.log(abs(self.scale))
            + math.log(self._front_factor())
            - e * np.log(base)
        )

    def singular_direction(self):
        if self.center == 0 or self.exponent <= 0:
            return None
        return math.atan2(self.center.imag, self.center.real)

    def taylor_coefficients(self, n_max):
        if self.center.imag != 0.0:
            raise UnsupportedFamilyError(
                "Taylor coefficients require a real kernel center"
            )
        x0 = self.center.real
        e = _exp_float(self.exponent)
        front = self.scale * self._front_factor()
        coeffs = [complex(front)]
        binom = 1.0
        for n in range(1, n_max + 1):
            binom *= (n - 1 + e) / n
            coeffs.append(front * binom * x0**n)
        return coeffs

    def label(self):
        return f"kernel(z0={self.center},s={self.s_exp},e={self.exponent})"

    def to_json(self):
        params = {
            "z0": [self.center.real, self.center.imag],
            "s": str(self.s_exp),
            "e": str(self.exponent),
        }
        return {"family": "kernel", "params": self._scale_json(params)}


@dataclass(frozen=True)
class Monomial(AnalyticFunction):
    """f(z) = scale * z^k."""

    k: int
    scale: complex = 1.0

    def __post_init__(self):
        if self.k < 0 or self.k != int(self.k):
            raise ValueError("monomial degree must be a nonnegative integer")

    def _eval_array(self, z):
        return self.scale * z ** self.k

    def log_abs_on_circle(self, t, thetas):
        with np.errstate(divide="ignore"):
            val = math.log(abs(self.scale)) + self.k * np.log1p(-np.minimum(t, 1.0))
        return val + 0.0 * np.asarray(thetas, dtype=float)

    def log_max_modulus(self, t):
        t = np.asarray(t, dtype=float)
        with np.errstate(divide="ignore"):
            return math.log(abs(self.scale)) + self.k * np.log1p(-np.minimum(t, 1.0))

    def taylor_coefficients(self, n_max):
        coeffs = [0j] * (n_max + 1)
        if self.k <= n_max:
            coeffs[self.k] = complex(self.scale)
        return coeffs

    def label(self):
        return f"monomial(k={self.k})"

    def to_json(self):
        return {"family": "monomial", "params": self._scale_json({"k": self.k})}


@dataclass(frozen=True)
class Series(AnalyticFunction):
    """Finite coefficient list: f(z) = scale * sum_j c_j z^j."""

    coeffs: Tuple[complex, ...]
    scale: complex = 1.0

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))
        if not self.coeffs:
            raise ValueError("series needs at least one coefficient")

    def _eval_array(self, z):
        total = np.zeros(z.shape, dtype=complex)
        for c in reversed(self.coeffs):
            total = total * z + c
        return self.scale * total

    def log_max_modulus(self, t):
        if len(self.coeffs) > 1:
            return None
        t = np.asarray(t, dtype=float)
        mod = abs(self.scale * self.coeffs[0])
        with np.errstate(divide="ignore"):
            return np.log(mod) + 0.0 * t

    def taylor_coefficients(self, n_max):
        out = list(self.coeffs[: n_max + 1])
        out += [0j] * (n_max + 1 - len(out))
        return [self.scale * c for c in out]

    def label(self):
        if len(self.coeffs) == 1:
            return f"constant({_fmt_complex(self.scale * self.coeffs[0])})"
        return f"series(deg={len(self.coeffs) - 1})"

    def to_json(self):
        cs = [[c.real, c.imag] if c.imag else c.real for c in self.coeffs]
        return {"family": "series", "params": self._scale_json({"coeffs": cs})}


def constant(value) -> Series:
    """The constant function f(z) = value."""
    return Series((complex(value),))


def _fmt_complex(c: complex) -> str:
    return repr(c.real) if c.imag == 0 else repr(c)


# --------------------------------------------------------------------------
# Membership criteria


class MemberStatus(Enum):
    MEMBER = "member"
    NOT_MEMBER = "not-member"
    UNKNOWN = "unknown"


@dataclass(frozen=True)
class Membership:
    """Verdict of an analytic membership criterion.

    ``derived`` marks verdicts that extend the critical-exponent criteria
    (off-critical log factors, numeric tail tests) rather than applying one
    of them verbatim.
    """

    status: MemberStatus
    criterion: str
    derived: bool = False

    def __bool__(self):
        return self.status is MemberStatus.MEMBER


def known_membership(f: AnalyticFunction, s: SpaceParams) -> Membership:
    """Decide membership of f in H(p,q,alpha) by the exact criteria.

    Power functions are decided by comparing the growth exponent with
    alpha + 1/p (weak inequality when q = inf); log-power functions at the
    critical exponent by comparing c with 1/q; lacunary series by the l^q
    status of the weighted coefficients 2^(-n alpha) a_n.  Polynomials and
    kernels are bounded, hence members of every space.
    """
    a_crit = s.growth_exponent_bound
    if isinstance(f, Power):
        if is_inf(s.q):
            ok = f.gamma <= a_crit
            crit = f"gamma={f.gamma} <= alpha+1/p={a_crit} (weak, q=inf)"
        else:
            ok = f.gamma < a_crit
            crit = f"gamma={f.gamma} < alpha+1/p={a_crit} (strict, q<inf)"
        return Membership(MemberStatus.MEMBER if ok else MemberStatus.NOT_MEMBER, crit)
    if isinstance(f, LogPower):
        if f.gamma == a_crit:
            if is_inf(s.q):
                ok = f.c >= 0
                crit = f"critical exponent, c={f.c} >= 0 (q=inf)"
            else:
                inv_q = reciprocal(s.q)
                ok = f.c > inv_q
                crit = f"critical exponent, c={f.c} > 1/q={inv_q}"
            return Membership(
                MemberStatus.MEMBER if ok else MemberStatus.NOT_MEMBER, crit
            )
        if f.gamma < a_crit:
            return Membership(
                MemberStatus.MEMBER,
                f"gamma={f.gamma} < alpha+1/p={a_crit}; log factor subdominant",
                derived=True,
            )
        return Membership(
            MemberStatus.NOT_MEMBER,
            f"gamma={f.gamma} > alpha+1/p={a_crit}; log factor subdominant",
            derived=True,
        )
    if isinstance(f, Lacunary):
        if f.is_structured:
            return _structured_lacunary_membership(f, s)
        return _numeric_lacunary_membership(f, s)
    if isinstance(f, (Monomial, Series)):
        return Membership(MemberStatus.MEMBER, "polynomial, bounded on the disk")
    if isinstance(f, Kernel):
        return Membership(
            MemberStatus.MEMBER, "bounded on the disk (singularity outside)"
        )
    return Membership(MemberStatus.UNKNOWN, "no analytic criterion for this family")


def _structured_lacunary_membership(f: Lacunary, s: SpaceParams) -> Membership:
    # weighted coefficients 2^(-n alpha) a_n = 2^(n(rate-alpha)) n^(-power)
    gap = s.alpha - f.rate
    base = f"weighted coefficients 2^(n({f.rate}-{s.alpha})) n^(-{f.power})"
    if gap > 0:
        return Membership(MemberStatus.MEMBER, base + " decay geometrically")
    if gap < 0:
        return Membership(MemberStatus.NOT_MEMBER, base + " grow geometrically")
    if is_inf(s.q):
        ok = f.power >= 0
        return Membership(
            MemberStatus.MEMBER if ok else MemberStatus.NOT_MEMBER,
            base + f"; boundedness of n^(-{f.power})",
        )
    ok = f.power * s.q > 1
    return Membership(
        MemberStatus.MEMBER if ok else MemberStatus.NOT_MEMBER,
        base + f"; sum n^(-{f.power}*{s.q}) vs harmonic threshold",
    )


def _numeric_lacunary_membership(
    f: Lacunary, s: SpaceParams, budget: int = 400
) -> Membership:
    """l^q tail test for coefficient rules with no closed form."""
    alpha = float(s.alpha)
    log2w = np.array(
        [f.log2_abs_coefficient(n) - n * alpha for n in range(1, budget + 1)]
    )
    lead, tail = log2w[: budget // 2], log2w[budget // 2 :]
    if is_inf(s.q):
        if np.max(tail) > max(np.max(lead), 0.0) + 1.0:
            return Membership(
                MemberStatus.NOT_MEMBER, "numeric tail test: weights grow", derived=True
            )
        if np.max(tail) < np.max(lead) - 1.0 or np.max(log2w) < 40.0:
            return Membership(
                MemberStatus.MEMBER, "numeric tail test: weights bounded", derived=True
            )
        return Membership(
            MemberStatus.UNKNOWN, "numeric tail test did not stabilize", derived=True
        )
    qf = float(s.q)
    with np.errstate(over="ignore"):
        terms = np.exp2(np.clip(qf * log2w, -700.0, 700.0))
    total = float(np.sum(terms))
    tail_sum = float(np.sum(terms[budget // 2 :]))
    if not math.isfinite(total) or np.max(tail) > np.max(lead) + 1.0:
        return Membership(
            MemberStatus.NOT_MEMBER, "numeric tail test: weights diverge", derived=True
        )
    if tail_sum <= 1e-12 * max(total, 1e-300):
        return Membership(
            MemberStatus.MEMBER, "numeric tail test: partial sums stabilized", derived=True
        )
    return Membership(
        MemberStatus.UNKNOWN, "numeric tail test did not stabilize", derived=True
    )


def membership_margin(f: AnalyticFunction, s: SpaceParams) -> Optional[Fraction]:
    """Exponent distance from the critical growth value, when one applies.

    Positive inside the space, negative outside, zero at criticality.
    None for families whose membership is not exponent-limited (bounded
    families, custom lacunary rules).
    """
    a_crit = s.growth_exponent_bound
    if isinstance(f, (Power, LogPower)):
        return a_crit - f.gamma
    if isinstance(f, Lacunary) and f.is_structured:
        return s.alpha - f.rate
    return None


# --------------------------------------------------------------------------
# Serialization


def function_from_json(obj: dict) -> AnalyticFunction:
    """Rebuild a family from its {"family": ..., "params": {...}} form."""
    try:
        family = obj["family"]
        params = dict(obj.get("params", {}))
    except (TypeError, KeyError) as exc:
        raise ValueError(f"malformed function spec {obj!r}") from exc
    scale = params.pop("scale", None)
    kwargs = {}
    if scale is not None:
        kwargs["scale"] = complex(scale[0], scale[1]) if isinstance(scale, list) else complex(scale)
    if family == "power":
        return Power(as_param(params["gamma"]), **kwargs)
    if family == "logpower":
        return LogPower(as_param(params["gamma"]), as_param(params["c"]), **kwargs)
    if family == "lacunary":
        return Lacunary(
            as_param(params.get("rate", 0)), as_param(params.get("power", 0)), **kwargs
        )
    if family == "kernel":
        z0 = params["z0"]
        center = complex(z0[0], z0[1]) if isinstance(z0, list) else complex(z0)
        return Kernel(center, as_param(params["s"]), as_param(params["e"]), **kwargs)
    if family == "monomial":
        return Monomial(int(params["k"]), **kwargs)
    if family == "series":
        coeffs = tuple(
            complex(c[0], c[1]) if isinstance(c, list) else complex(c)
            for c in params["coeffs"]
        )
        return Series(coeffs, **kwargs)
    raise ValueError(f"unknown function family {family!r}")


def parse_function_spec(text: str) -> AnalyticFunction:
    """Parse the CLI shorthand, e.g. 'power:3/2' or 'lacunary:rate=1,power=1/2'.

    Forms: const:C, series:C0,C1,..., monomial:K, power:GAMMA,
    logpower:GAMMA,C, lacunary:ones | lacunary:rate=R,power=P,
    kernel:z0=X,s=S,e=E.  Exponents are exact rationals; kernel centers
    and series coefficients may be floats or complex.
    """
    head, sep, rest = text.partition(":")
    head = head.strip().lower()
    if not sep:
        raise ValueError(f"function spec {text!r} needs the form family:params")
    if head == "const":
        return constant(complex(rest))
    if head == "series":
        return Series(tuple(_parse_coeff(c) for c in rest.split(",")))
    if head == "monomial":
        return Monomial(int(rest))
    if head == "power":
        return Power(as_param(rest))
    if head == "logpower":
        gamma, c = rest.split(",")
        return LogPower(as_param(gamma), as_param(c))
    if head == "lacunary":
        if rest.strip().lower() == "ones":
            return Lacunary()
        kv = _parse_kv(rest)
        return Lacunary(as_param(kv.get("rate", "0")), as_param(kv.get("power", "0")))
    if head == "kernel":
        kv = _parse_kv(rest)
        return Kernel(complex(kv["z0"]), as_param(kv["s"]), as_param(kv["e"]))
    raise ValueError(f"unknown function family {head!r}")


def _parse_coeff(text: str):
    text = text.strip()
    try:
        return float(Fraction(text))
    except ValueError:
        return complex(text)


def _parse_kv(text: str) -> dict:
    out = {}
    for part in text.split(","):
        key, sep, value = part.partition("=")
        if not sep:
            raise ValueError(f"expected key=value, got {part!r}")
        out[key.strip().lower()] = value.strip()
    return out
