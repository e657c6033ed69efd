"""Casimir-Polder force from the finite-temperature Lifshitz formula.

Forces are accumulated in units of ``kB T alpha0 / a^4`` and converted to
newtons at the end, so ratios between forces at the same ``(a, T)`` do not
depend on ``alpha0``.  Negative values are attractive.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from typing import Optional

from scipy.special import gammaincc

from ._validation import check_integer, check_positive
from .exceptions import TruncationError
from .graphene import (
    check_asymptotic_regime,
    pi00_asymptotic_reduced,
    pi00_reduced,
    pi_te_reduced,
)
from .kinematics import (
    CM3,
    CONSTANTS,
    GrapheneParams,
    ReducedParams,
    Scenario,
    matsubara_energy_ev,
)
from .materials import IDEAL_METAL, IdealMetal, SubstrateModel
from .quadrature import integrate
from .reflection import r_tm_zero, reflection_coeffs

MODES = ("full", "l0-only", "asymptotic", "ideal-metal")


@dataclass(frozen=True)
class NumericsConfig:
    rel_tol: float = 1e-8
    abs_tol_dimensionless: float = 1e-10
    matsubara_rel_cutoff: float = 1e-10
    max_l: int = 2000
    y_tail_efolds: float = 40.0

    def __post_init__(self):
        check_positive(self.rel_tol, "rel_tol")
        check_positive(self.abs_tol_dimensionless, "abs_tol_dimensionless")
        check_positive(self.matsubara_rel_cutoff, "matsubara_rel_cutoff")
        check_positive(self.y_tail_efolds, "y_tail_efolds")
        check_integer(self.max_l, "max_l", minimum=1)

    def tightened(self, factor):
        """Copy with every tolerance divided by ``factor``."""
        return replace(self, rel_tol=self.rel_tol / factor,
                       abs_tol_dimensionless=self.abs_tol_dimensionless / factor,
                       matsubara_rel_cutoff=self.matsubara_rel_cutoff / factor)


DEFAULT_CONFIG = NumericsConfig()


@dataclass(frozen=True)
class ForceResult:
    """Force in newtons with its breakdown.

    ``reduced`` is ``total`` in units of ``kB T alpha0 / a^4``.
    """

    total: float
    l0_term: float
    tail_l_ge_1: float
    l_max_used: int
    quad_error_estimate: float
    mode: str
    reduced: float


def force_unit(scenario: Scenario):
    """``kB T alpha0 / a^4`` in newtons."""
    a = scenario.separation_a
    return scenario.kT * scenario.particle.alpha0 * CM3 / a ** 4


def _upper_gamma4(s):
    # int_s^inf y^3 e^{-y} dy
    return 6.0 * gammaincc(4, s)


def _quad(func, lo, hi, config):
    return integrate(func, lo, hi, epsabs=config.abs_tol_dimensionless, epsrel=config.rel_tol)


def _static_reflectivity(substrate, graphene, r, config):
    """R_TM at zero frequency as a function of y (or a constant)."""
    if isinstance(substrate, IdealMetal):
        return 1.0
    eps0 = substrate.static
    if graphene is None:
        return r_tm_zero(1.0, eps0, 0.0)
    ea, er = config.abs_tol_dimensionless, config.rel_tol

    def refl(y):
        return r_tm_zero(y, eps0, pi00_reduced(0.0, y, r, ea, er)[0])
    return refl


def _l0_integral(substrate, graphene, r, config):
    """``int_0^inf y^3 e^-y R_TM,0(y) dy`` and its error estimate.

    The part beyond ``y_tail_efolds`` is added analytically with ``R``
    frozen at the cutoff; since ``0 <= R <= 1`` its error is at most the
    tail itself, which goes into the estimate.
    """
    refl = _static_reflectivity(substrate, graphene, r, config)
    top = config.y_tail_efolds
    tail = _upper_gamma4(top)
    if callable(refl):
        value, err = _quad(lambda y: y ** 3 * math.exp(-y) * refl(y), 0.0, top, config)
        return value + refl(top) * tail, err + tail
    value, err = _quad(lambda y: y ** 3 * math.exp(-y), 0.0, top, config)
    return refl * (value + tail), abs(refl) * err


def _matsubara_term(l, scenario, substrate, graphene, r, config):
    """Unhalved ``l >= 1`` term ``alpha_l/alpha0 * int y e^-y [...] dy``."""
    zeta = r.zeta(l)
    xi = zeta * CONSTANTS.speed_of_light / (2.0 * scenario.separation_a)
    eps = substrate.epsilon(xi)
    ratio = scenario.particle.polarizability(matsubara_energy_ev(zeta, scenario)) \
        / scenario.particle.alpha0
    ea, er = config.abs_tol_dimensionless, config.rel_tol

    def integrand(t):
        y = zeta + t
        if graphene is None or eps is IDEAL_METAL:
            p00 = pte = 0.0
        else:
            p00 = pi00_reduced(zeta, y, r, ea, er)[0]
            pte = pi_te_reduced(zeta, y, r, ea, er)[0]
        rr = reflection_coeffs(zeta, y, eps, p00, pte)
        return y * math.exp(-t) * ((2.0 * y * y - zeta * zeta) * rr.r_tm - zeta * zeta * rr.r_te)

    top = config.y_tail_efolds
    value, err = _quad(integrand, 0.0, top, config)
    scale = ratio * math.exp(-zeta)
    tail = 2.0 * _upper_gamma4(zeta + top)
    return scale * value, scale * err + ratio * tail


def _term_bound(l, scenario, r):
    # |R| <= 1 gives |term| <= 2 alpha_l/alpha0 * Gamma(4, zeta_l)
    zeta = r.zeta(l)
    ratio = scenario.particle.polarizability(matsubara_energy_ev(zeta, scenario)) \
        / scenario.particle.alpha0
    return 2.0 * ratio * _upper_gamma4(zeta)


def force_l0(scenario: Scenario, graphene: Optional[GrapheneParams], substrate: SubstrateModel,
             config: NumericsConfig = DEFAULT_CONFIG) -> ForceResult:
    """Zero-frequency (classical) term of the Lifshitz formula alone."""
    r = ReducedParams.build(scenario, graphene)
    value, err = _l0_integral(substrate, graphene, r, config)
    unit = force_unit(scenario)
    reduced = -value / 8.0
    return ForceResult(total=reduced * unit, l0_term=reduced * unit, tail_l_ge_1=0.0,
                       l_max_used=0, quad_error_estimate=err / 8.0 * unit,
                       mode="l0-only", reduced=reduced)


def force_full(scenario: Scenario, graphene: Optional[GrapheneParams], substrate: SubstrateModel,
               config: NumericsConfig = DEFAULT_CONFIG) -> ForceResult:
    """Full Matsubara sum.

    Terms are added in ascending ``l``; the sum stops after two consecutive
    terms fall below ``matsubara_rel_cutoff`` times the running total.  A
    term whose a-priori bound (|R| <= 1) is already below the cutoff is not
    integrated.
    """
    r = ReducedParams.build(scenario, graphene)
    l0_value, err = _l0_integral(substrate, graphene, r, config)
    running = l0_value
    tail = 0.0
    small = 0
    l = 0
    for l in range(1, config.max_l + 1):
        bound = _term_bound(l, scenario, r)
        if bound < config.matsubara_rel_cutoff * abs(running):
            err += bound
            small += 1
        else:
            term, term_err = _matsubara_term(l, scenario, substrate, graphene, r, config)
            tail += term
            running += term
            err += term_err
            small = small + 1 if abs(term) < config.matsubara_rel_cutoff * abs(running) else 0
        if small >= 2:
            break
    else:
        raise TruncationError(
            f"Matsubara sum not converged after max_l={config.max_l} terms")
    # remaining terms decay at least geometrically with ratio e^{-zeta_1}
    err += _term_bound(l + 1, scenario, r) / max(1.0 - math.exp(-r.zeta1), 1e-300)
    unit = force_unit(scenario)
    l0_red = -l0_value / 8.0
    tail_red = -tail / 8.0
    l0_n, tail_n = l0_red * unit, tail_red * unit
    return ForceResult(total=l0_n + tail_n, l0_term=l0_n,
                       tail_l_ge_1=tail_n, l_max_used=l,
                       quad_error_estimate=err / 8.0 * unit, mode="full",
                       reduced=l0_red + tail_red)


def force_ideal_metal_classical(scenario: Scenario) -> float:
    """``-(3/4) kB T alpha0 / a^4`` in newtons."""
    return -0.75 * force_unit(scenario)


def asymptotic_factor(scenario: Scenario, graphene: GrapheneParams):
    """``1 - 8 / Pi00_as(1)``, the large-separation force over the ideal-metal force."""
    r = ReducedParams.build(scenario, graphene)
    check_asymptotic_regime(r, stacklevel=4)
    return 1.0 - 8.0 / pi00_asymptotic_reduced(r)


def force_asymptotic(scenario: Scenario, graphene: GrapheneParams) -> float:
    """Analytic large-separation force; the same for any substrate."""
    return force_ideal_metal_classical(scenario) * asymptotic_factor(scenario, graphene)


def delta_vs_ideal(scenario: Scenario, graphene: Optional[GrapheneParams],
                   substrate: SubstrateModel, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """Relative deviation of the zero-frequency force from the ideal-metal one."""
    if isinstance(substrate, IdealMetal):
        # R = 1 identically, whatever the coating
        return 0.0
    res = force_l0(scenario, graphene, substrate, config)
    return (res.reduced + 0.75) / -0.75


def ratio_to_asymptotic(scenario: Scenario, graphene: GrapheneParams,
                        substrate: SubstrateModel, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """Zero-frequency force divided by the analytic large-separation force."""
    res = force_l0(scenario, graphene, substrate, config)
    return res.reduced / (-0.75 * asymptotic_factor(scenario, graphene))


def l0_vs_full(scenario: Scenario, graphene: Optional[GrapheneParams],
               substrate: SubstrateModel, config: NumericsConfig = DEFAULT_CONFIG) -> float:
    """``|F_full - F_l0| / |F_full|``."""
    res = force_full(scenario, graphene, substrate, config)
    return abs(res.tail_l_ge_1) / abs(res.total)
