"""Exact space parameters (p, q, alpha) with an infinity sentinel.

All branch decisions downstream (inclusion regimes, membership criteria,
critical exponents) compare these values exactly, so finite parameters are
stored as ``fractions.Fraction`` and infinity as ``math.inf``.  Floats other
than ``inf`` are rejected: a decimal like 0.333333 is not 1/3 and would
silently move a boundary case onto the wrong branch.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

INF = math.inf

#: A finite exact rational, or ``math.inf``.
ExtendedRational = Union[Fraction, float]


def as_param(value, *, allow_inf: bool = True) -> ExtendedRational:
    """Coerce ``value`` to an exact parameter.

    Accepts Fraction, int, strings like ``"3/2"`` or ``"inf"``, and
    ``math.inf`` itself.  Non-infinite floats and decimal strings are
    rejected with a hint, since they cannot be trusted to hit exact
    boundary values.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("boolean is not a valid parameter")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if math.isinf(value) and value > 0:
            if not allow_inf:
                raise ValueError("parameter must be finite")
            return INF
        raise TypeError(
            f"got float {value!r}; pass an exact rational instead "
            f"(e.g. Fraction(1, 3) or the string '1/3')"
        )
    if isinstance(value, str):
        text = value.strip().lower()
        if text in ("inf", "infinity", "oo"):
            if not allow_inf:
                raise ValueError("parameter must be finite")
            return INF
        if "." in text or "e" in text:
            raise ValueError(
                f"decimal parameter {value!r} rejected; write it as a "
                f"fraction like '1/3' so boundary comparisons stay exact"
            )
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot parse parameter {value!r}") from exc
    raise TypeError(f"cannot interpret {value!r} as an exact parameter")


def is_inf(x: ExtendedRational) -> bool:
    return isinstance(x, float) and math.isinf(x)


def reciprocal(x: ExtendedRational) -> Fraction:
    """1/x with the convention 1/inf = 0.  Result is always exact."""
    if is_inf(x):
        return Fraction(0)
    return Fraction(1) / x


def param_str(x: ExtendedRational) -> str:
    """Canonical text form, round-trippable through :func:`as_param`."""
    return "inf" if is_inf(x) else str(x)


@dataclass(frozen=True)
class SpaceParams:
    """The triple (p, q, alpha) naming a mixed norm space.

    p and q lie in (0, inf]; alpha is finite and positive.  Instances are
    immutable and hashable, and all comparisons between stored parameters
    are exact.
    """

    p: ExtendedRational
    q: ExtendedRational
    alpha: Fraction

    def __post_init__(self):
        object.__setattr__(self, "p", as_param(self.p))
        object.__setattr__(self, "q", as_param(self.q))
        object.__setattr__(self, "alpha", as_param(self.alpha, allow_inf=False))
        if not is_inf(self.p) and self.p <= 0:
            raise ValueError(f"p must be positive, got {self.p}")
        if not is_inf(self.q) and self.q <= 0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    @classmethod
    def parse(cls, text: str) -> "SpaceParams":
        """Parse ``"p,q,alpha"`` with rational components, e.g. ``"3/2,inf,1"``."""
        parts = [s for s in text.split(",") if s.strip()]
        if len(parts) != 3:
            raise ValueError(f"expected 'p,q,alpha', got {text!r}")
        return cls(*parts)

    @property
    def growth_exponent_bound(self) -> Fraction:
        """alpha + 1/p, the critical pointwise-growth exponent of the space."""
        return self.alpha + reciprocal(self.p)

    def __str__(self) -> str:
        return f"({param_str(self.p)},{param_str(self.q)},{param_str(self.alpha)})"
