"""Separations at which a relative deviation crosses a threshold."""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from .exceptions import NoStraddleError
from .force import (
    DEFAULT_CONFIG,
    NumericsConfig,
    delta_vs_ideal,
    l0_vs_full,
    ratio_to_asymptotic,
)
from .kinematics import GrapheneParams, Scenario
from .materials import SubstrateModel

QUANTITIES = ("delta-vs-ideal", "asym-vs-numeric", "l0-vs-full")
SEPARATION_RTOL = 1e-3


@dataclass(frozen=True)
class CrossoverQuery:
    """What to compare, at which level, over which separations (m)."""

    quantity: str
    threshold: float
    bracket: Tuple[float, float]

    def __post_init__(self):
        if self.quantity not in QUANTITIES:
            raise ValueError(f"quantity must be one of {QUANTITIES}, got {self.quantity!r}")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")
        lo, hi = self.bracket
        if not 0 < lo < hi:
            raise ValueError("bracket must satisfy 0 < a_low < a_high")


def deviation(quantity, scenario: Scenario, graphene: Optional[GrapheneParams],
              substrate: SubstrateModel, config: NumericsConfig = DEFAULT_CONFIG):
    """Absolute relative deviation named by ``quantity`` at one separation."""
    if quantity == "delta-vs-ideal":
        return abs(delta_vs_ideal(scenario, graphene, substrate, config))
    if quantity == "asym-vs-numeric":
        if graphene is None:
            raise ValueError("asym-vs-numeric needs graphene parameters")
        return abs(ratio_to_asymptotic(scenario, graphene, substrate, config) - 1.0)
    if quantity == "l0-vs-full":
        return l0_vs_full(scenario, graphene, substrate, config)
    raise ValueError(f"unknown quantity {quantity!r}")


def find_crossover(query: CrossoverQuery, scenario_template: Scenario,
                   graphene: Optional[GrapheneParams], substrate: SubstrateModel,
                   config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """Separation (m) where the deviation equals ``query.threshold``.

    Bisects in ``log(a)`` down to 0.1% relative width and returns the
    geometric midpoint of the final bracket.  The deviation is assumed to be
    monotone over the bracket; with several crossings one of them is found.
    Raises :class:`NoStraddleError` when both ends lie on the same side.
    """
    def excess(a):
        return deviation(query.quantity, scenario_template.with_separation(a),
                         graphene, substrate, config) - query.threshold

    lo, hi = query.bracket
    f_lo, f_hi = excess(lo), excess(hi)
    if f_lo == 0.0:
        return lo
    if f_hi == 0.0:
        return hi
    if (f_lo > 0) == (f_hi > 0):
        side = "above" if f_lo > 0 else "below"
        raise NoStraddleError(
            f"{query.quantity} stays {side} {query.threshold} on "
            f"[{lo:.6g}, {hi:.6g}] m", side,
            (f_lo + query.threshold, f_hi + query.threshold))
    log_lo, log_hi = math.log(lo), math.log(hi)
    while log_hi - log_lo > math.log1p(SEPARATION_RTOL):
        mid = 0.5 * (log_lo + log_hi)
        f_mid = excess(math.exp(mid))
        if f_mid == 0.0:
            return math.exp(mid)
        if (f_mid > 0) == (f_lo > 0):
            log_lo, f_lo = mid, f_mid
        else:
            log_hi = mid
    return math.exp(0.5 * (log_lo + log_hi))
