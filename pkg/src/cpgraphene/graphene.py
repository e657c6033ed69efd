"""Polarization tensor of gapped, doped graphene at imaginary frequencies.

Two components enter the reflection coefficients: the 00 component
``pi00`` and the combination ``pi_te`` that drives TE reflection.  Both are
dimensionless (scaled by ``2a / hbar``).

For ``l >= 1`` the thermal log term is folded into the ``u`` integral using

    16 alpha a kT / (vF^2 hbar c) * ln[...] = 4 alpha p / vF^2 * int_D^inf w(u) du,

which holds because ``B * D = Delta / 2kT`` for every ``y``.  The two pieces
are each of order ``a kT / (vF^2 hbar c)`` (~1e4 at a few microns) while
their difference can be of order one, so combining them keeps full relative
precision; at ``y = zeta`` both components then vanish identically.

The ``l = 0`` integral has a square-root endpoint singularity at
``u = sqrt(1 + D^2)``; the substitution ``u = sqrt(1 + D^2) cos(phi)``
turns it into a smooth integrand on ``[0, arctan(1/D)]``.
"""
from __future__ import annotations

import cmath
import math
import warnings
from typing import Optional

import numpy as np
from scipy.special import expit

from .exceptions import AsymptoticRegimeWarning
from .kinematics import (
    CONSTANTS,
    GrapheneParams,
    ReducedParams,
    Scenario,
    matsubara_zeta,
)
from .quadrature import integrate

# e-folds of the Fermi weight kept in the semi-infinite u integral
U_TAIL_EFOLDS = 40.0
# above this D the closed form of psi loses digits; use the 1/D series
_PSI_SERIES_MIN = 10.0
_PSI_SERIES = tuple(
    (-1) ** k * (4 * k + 4) / ((2 * k + 1) * (2 * k + 3)) for k in range(20)
)
ASYMPTOTIC_MIN_PARAMETER = 10.0
_STATIC_RESCALE_MIN = 1e100


def _psi_scalar(d):
    if d == 0.0:
        return math.pi
    if d < _PSI_SERIES_MIN:
        return 2.0 * (d + (1.0 - d * d) * math.atan(1.0 / d))
    inv2 = 1.0 / (d * d)
    total = 0.0
    power = 1.0 / d
    for coeff in _PSI_SERIES:
        total += coeff * power
        power *= inv2
    return 2.0 * total


def psi(d):
    """``2 [d + (1 - d^2) arctan(1/d)]``, with ``psi(0) = pi``.

    Accepts scalars or arrays; negative input raises ``ValueError``.
    """
    arr = np.asarray(d, dtype=float)
    if np.any(arr < 0) or np.any(np.isnan(arr)):
        raise ValueError("psi is defined for d >= 0 only")
    if arr.ndim == 0:
        return _psi_scalar(float(arr))
    return np.vectorize(_psi_scalar, otypes=[float])(arr)


def _weight(t, m):
    # w as a function of t = B*u and m = mu/kT
    return expit(-(t + m)) + expit(-(t - m))


def _weight_scalar(t, m):
    return _expit(-(t + m)) + _expit(-(t - m))


def _expit(z):
    if z >= 0:
        return 1.0 / (1.0 + math.exp(-z))
    e = math.exp(z)
    return e / (1.0 + e)


def fermi_weight(u, b_l, mu, temperature):
    """Occupation weight ``w_l(u)`` of electrons and holes.

    Parameters
    ----------
    u : float or array
        Integration variable (>= 0).
    b_l : float
        Thermal parameter ``B_l`` (> 0).
    mu : float
        Chemical potential in eV (either sign).
    temperature : float
        Temperature in K.
    """
    m = mu * CONSTANTS.electronvolt / (CONSTANTS.boltzmann_constant * temperature)
    return _weight(b_l * np.asarray(u, dtype=float), m)


def log_bracket(x, m):
    """``ln[(e^-x + e^m)(e^-x + e^-m)]`` evaluated without overflow.

    The product is ``1 + e^-2x + e^(|m|-x) + e^(-|m|-x)``; the largest
    exponential is factored out and the rest goes through ``log1p``, so all
    summands stay positive and nothing cancels.
    """
    m = abs(m)
    if m <= x:
        return math.log1p(math.exp(-2.0 * x) + math.exp(m - x) + math.exp(-m - x))
    return (m - x) + math.log1p(math.exp(x - m) + math.exp(-x - m) + math.exp(-2.0 * m))


def asymptotic_bracket(x, m):
    """Bracket of the large-separation ``pi00(0, 1)`` in overflow-safe form.

    ``ln(4 cosh((x+m)/2) cosh((x-m)/2)) - (x/2)(tanh((x+m)/2) + tanh((x-m)/2))``
    equals ``log_bracket(x, m) + x * w`` with ``w`` the Fermi weight at
    ``B u = x``.  The second form has no cancellation at large gap.
    """
    return log_bracket(x, m) + x * float(expit(-(x + m)) + expit(-(x - m)))


def _u_limits(d, b, m):
    return d, max(d, m / b) + U_TAIL_EFOLDS / b


def _tail_bound(umax, b, m):
    # int_umax^inf 2 e^{-(Bu - m)} (2 + u) du, generous bound on the dropped tail
    e = math.exp(-(b * umax - m))
    return 2.0 * e / b * (2.0 + umax + 1.0 / b)


def _large_d_limit(y, r: ReducedParams):
    # With D > 1e100 the phi interval is below 1e-100, so sin(phi) = phi,
    # cos(phi) = 1 and B R = x hold to double precision and the integrals are
    # elementary: k * int = -w(x) for pi00, and pi_te = O(p^4 / d_scale),
    # which underflows.  p may itself underflow to 0 here, D is never formed.
    p = r.vf * y
    return p == 0.0 or r.d_scale / p > _STATIC_RESCALE_MIN


def _pi00_static(y, r: ReducedParams, epsabs, epsrel):
    m = abs(r.m)  # every piece is even in m; fixing the sign makes that exact
    if r.d_scale and _large_d_limit(y, r):
        value = (r.log_prefactor * log_bracket(r.x, m)
                 + 4.0 * r.fine_alpha * r.d_scale / r.vf ** 2 * _weight_scalar(r.x, m))
        return value, 0.0
    p = r.vf * y
    d = r.d_scale / p if r.d_scale else 0.0
    b = r.b_scale * p
    big_r2 = 1.0 + d * d
    big_r = math.sqrt(big_r2)
    phimax = math.atan2(1.0, d)
    d2 = d * d

    def f(phi):
        s = math.sin(phi)
        return (big_r2 * s * s - d2) * _weight_scalar(b * big_r * math.cos(phi), m)

    integral, err = integrate(f, 0.0, phimax, epsabs=epsabs, epsrel=epsrel)
    pref = 4.0 * r.fine_alpha * y / r.vf
    value = (r.fine_alpha * y / r.vf * _psi_scalar(d)
             + r.log_prefactor * log_bracket(r.x, m)
             - pref * integral)
    return value, pref * err


def _pi_te_static(y, r: ReducedParams, epsabs, epsrel):
    if r.d_scale and _large_d_limit(y, r):
        return 0.0, 0.0
    p = r.vf * y
    d = r.d_scale / p if r.d_scale else 0.0
    b = r.b_scale * p
    big_r2 = 1.0 + d * d
    big_r = math.sqrt(big_r2)
    phimax = math.atan2(1.0, d)
    m = abs(r.m)

    def f(phi):
        s = math.sin(phi)
        return (big_r2 * s * s - 1.0) * _weight_scalar(b * big_r * math.cos(phi), m)

    integral, err = integrate(f, 0.0, phimax, epsabs=epsabs, epsrel=epsrel)
    pref = 4.0 * r.fine_alpha * p ** 3 / r.vf ** 2
    value = r.fine_alpha * y * y * p * _psi_scalar(d) + pref * integral
    return value, pref * err


def _dynamic_integral(zeta, y, r: ReducedParams, kernel, epsabs, epsrel):
    """Integrate ``w(u) * kernel(S, p, q2)`` over ``u`` from ``D`` to the tail cut.

    ``S`` is the principal square root of the radicand
    ``p^2 (k^2 - u^2) + 2i zeta p u`` where ``k^2 = 1 + D^2 (1 - zeta^2/p^2)``
    is where its real part vanishes.  Substituting ``u = k cos(phi)`` below
    ``k`` and ``u = k cosh(t)`` above it keeps ``k^2 - u^2`` free of
    cancellation when ``D`` is large.
    """
    p = r.p(zeta, y)
    d = r.d_scale / p if r.d_scale else 0.0
    b = r.b_scale * p
    m = abs(r.m)
    p2 = p * p
    q2 = r.vf ** 2 * (y * y - zeta * zeta) * d * d
    ratio = d * zeta / p
    k2 = 1.0 + d * d - ratio * ratio
    k = math.sqrt(k2)
    lo, hi = _u_limits(d, b, m)
    two_zp = 2.0 * zeta * p
    value = err = 0.0

    if ratio < 1.0:
        def left(phi):
            sn = math.sin(phi)
            u = k * math.cos(phi)
            s_ = cmath.sqrt(complex(p2 * k2 * sn * sn, two_zp * u))
            return _weight_scalar(b * u, m) * kernel(s_, p, q2) * k * sn
        phi_d = math.atan2(math.sqrt(1.0 - ratio * ratio), d)
        v, e = integrate(left, 0.0, phi_d, epsabs=epsabs, epsrel=epsrel)
        value += v
        err += e
        t_lo = 0.0
    else:
        t_lo = math.acosh(d / k)

    def right(t):
        sh = math.sinh(t)
        u = k * math.cosh(t)
        s_ = cmath.sqrt(complex(-p2 * k2 * sh * sh, two_zp * u))
        return _weight_scalar(b * u, m) * kernel(s_, p, q2) * k * sh

    v, e = integrate(right, t_lo, math.acosh(max(hi, k) / k), epsabs=epsabs, epsrel=epsrel)
    value += v
    err += e
    return p, d, b, hi, value, err


def _kernel00(s_, p, q2):
    # 1 - Re[N/S] with N = (S^2 - q2)/p
    return 1.0 - (s_ - q2 / s_).real / p


def _pi00_dynamic(zeta, y, r: ReducedParams, epsabs, epsrel):
    p, d, b, hi, integral, err = _dynamic_integral(zeta, y, r, _kernel00, epsabs, epsrel)
    pref = 4.0 * r.fine_alpha * p / r.vf ** 2
    value = r.fine_alpha * (y * y - zeta * zeta) / p * _psi_scalar(d) + pref * integral
    err += _tail_bound(hi, b, r.m) * (1.0 + zeta / p)
    return value, pref * err


def _pi_te_dynamic(zeta, y, r: ReducedParams, epsabs, epsrel):
    z2 = zeta * zeta

    def kernel(s_, p, q2):
        # Re[N'/S] - zeta^2/p with N' = (zeta^2 - p^2) + S^2
        return ((z2 - p * p) / s_ + s_).real - z2 / p

    p, d, b, hi, integral, err = _dynamic_integral(zeta, y, r, kernel, epsabs, epsrel)
    pref = 4.0 * r.fine_alpha * p * p / r.vf ** 2
    value = r.fine_alpha * (y * y - z2) * p * _psi_scalar(d) + pref * integral
    err += _tail_bound(hi, b, r.m) * (p + z2 / p)
    return value, pref * err


def pi00_reduced(zeta, y, r: ReducedParams, epsabs=1e-10, epsrel=1e-8):
    """``(pi00, error_estimate)`` at dimensionless frequency ``zeta``.

    ``zeta == 0`` selects the static form; any ``zeta > 0`` uses the general
    expression, so tiny positive values probe the ``l -> 0`` limit.
    """
    if y < zeta:
        raise ValueError(f"y={y!r} lies below zeta={zeta!r}")
    if zeta == 0.0:
        return _pi00_static(y, r, epsabs, epsrel)
    return _pi00_dynamic(zeta, y, r, epsabs, epsrel)


def pi_te_reduced(zeta, y, r: ReducedParams, epsabs=1e-10, epsrel=1e-8):
    """``(pi_te, error_estimate)``; same conventions as :func:`pi00_reduced`."""
    if y < zeta:
        raise ValueError(f"y={y!r} lies below zeta={zeta!r}")
    if zeta == 0.0:
        return _pi_te_static(y, r, epsabs, epsrel)
    return _pi_te_dynamic(zeta, y, r, epsabs, epsrel)


def pi00(l, y, scenario: Scenario, graphene: GrapheneParams, epsabs=1e-10, epsrel=1e-8):
    """Dimensionless 00 component of the polarization tensor at ``(l, y)``."""
    r = ReducedParams.build(scenario, graphene)
    return pi00_reduced(matsubara_zeta(l, scenario), y, r, epsabs, epsrel)[0]


def pi_te(l, y, scenario: Scenario, graphene: GrapheneParams, epsabs=1e-10, epsrel=1e-8):
    """Dimensionless TE combination of the polarization tensor at ``(l, y)``."""
    r = ReducedParams.build(scenario, graphene)
    return pi_te_reduced(matsubara_zeta(l, scenario), y, r, epsabs, epsrel)[0]


def check_asymptotic_regime(r: ReducedParams, stacklevel=3):
    """Warn when ``2 a kT / (vF hbar c)`` is not large."""
    if r.asymptotic_parameter <= ASYMPTOTIC_MIN_PARAMETER:
        warnings.warn(
            f"large-separation parameter 2akT/(vF hbar c) = {r.asymptotic_parameter:.3g} "
            f"is not >> 1; the asymptotic expressions are unreliable",
            AsymptoticRegimeWarning, stacklevel=stacklevel)
        return False
    return True


def pi00_asymptotic_reduced(r: ReducedParams):
    return r.log_prefactor * asymptotic_bracket(r.x, r.m)


def pi00_asymptotic(scenario: Scenario, graphene: Optional[GrapheneParams] = None):
    """Closed-form large-separation value of ``pi00`` at ``l = 0, y = 1``."""
    r = ReducedParams.build(scenario, graphene)
    check_asymptotic_regime(r)
    return pi00_asymptotic_reduced(r)
