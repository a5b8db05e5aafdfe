"""Standard test batteries and the deterministic inclusion-pair grid."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Dict, List, Tuple

from .functions import AnalyticFunction, Kernel, Lacunary, LogPower, Monomial, Power, Series, constant
from .inclusion import Branch, _classify
from .params import INF, SpaceParams

F = Fraction


def standard_battery() -> Tuple[AnalyticFunction, ...]:
    """Ten functions spanning every family, with mild growth exponents.

    Used by the embedding verifier: battery members whose norms a given
    space cannot resolve are skipped there, so growth exponents stay small
    enough that most of the grid keeps them finite.
    """
    return (
        constant(1),
        Monomial(1),
        Monomial(5),
        Series((1.0, 0.5, 0.25)),
        Power(F(1, 2)),
        Power(1),
        Power(F(3, 2)),
        LogPower(1, 1),
        Lacunary(),
        Kernel(0.6, 1, 2),
    )


_PS = (F(1, 2), F(1), F(2), F(4), INF)
_QS = (F(1, 2), F(1), F(2), F(4), INF)
_ALPHAS = (F(1, 4), F(1, 2), F(1), F(2))


def space_pool() -> Tuple[SpaceParams, ...]:
    """The deterministic pool of exact-rational spaces behind the pair grid."""
    return tuple(
        SpaceParams(p, q, a) for p, q, a in itertools.product(_PS, _QS, _ALPHAS)
    )


def inclusion_pair_grid(size: int = 200, per_branch: int = 25):
    """Deterministic grid of (src, dst) pairs covering all eight branches.

    Pairs are enumerated in a fixed product order, bucketed by branch, and
    interleaved branch by branch so every branch contributes up to
    ``per_branch`` pairs before the remainder is filled in enumeration
    order.
    """
    pool = space_pool()
    buckets: Dict[Branch, List[Tuple[SpaceParams, SpaceParams]]] = {
        b: [] for b in Branch
    }
    for src, dst in itertools.product(pool, pool):
        buckets[_classify(src, dst)].append((src, dst))
    chosen: List[Tuple[SpaceParams, SpaceParams]] = []
    seen = set()
    for branch in Branch:
        for pair in buckets[branch][:per_branch]:
            chosen.append(pair)
            seen.add(pair)
    for src, dst in itertools.product(pool, pool):
        if len(chosen) >= size:
            break
        pair = (src, dst)
        if pair not in seen:
            chosen.append(pair)
            seen.add(pair)
    return tuple(chosen[:size])
