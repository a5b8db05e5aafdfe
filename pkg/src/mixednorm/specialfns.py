"""Log-gamma and Beta via the Lanczos approximation.

Self-contained so that Beta-based constants can be cross-checked against
independent quadrature.  The g=7, n=9 coefficient set gives better than
1e-13 relative accuracy on the positive real axis.
"""

from __future__ import annotations

import math

from .errors import DomainError

_LANCZOS_G = 7.0
_LANCZOS_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_TWO_PI = 0.5 * math.log(2.0 * math.pi)


def log_gamma(x: float) -> float:
    """ln Gamma(x) for x > 0."""
    if not x > 0:
        raise DomainError(f"log_gamma requires a positive argument, got {x}")
    z = x - 1.0
    acc = _LANCZOS_COEFFS[0]
    for i, c in enumerate(_LANCZOS_COEFFS[1:], start=1):
        acc += c / (z + i)
    base = z + _LANCZOS_G + 0.5
    return _HALF_LOG_TWO_PI + (z + 0.5) * math.log(base) - base + math.log(acc)


def log_beta(a: float, b: float) -> float:
    """ln B(a,b) for a, b > 0."""
    if not (a > 0 and b > 0):
        raise DomainError(f"log_beta requires positive arguments, got ({a}, {b})")
    return log_gamma(a) + log_gamma(b) - log_gamma(a + b)


def beta(a: float, b: float) -> float:
    """Beta function B(a,b) = integral_0^1 (1-x)^(a-1) x^(b-1) dx, a, b > 0."""
    return math.exp(log_beta(float(a), float(b)))
