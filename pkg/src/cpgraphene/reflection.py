"""TM/TE reflection coefficients of a graphene-coated half-space."""
from __future__ import annotations

import math
import warnings
from typing import NamedTuple

from .exceptions import AsymptoticRegimeWarning
from .materials import IDEAL_METAL


class ReflectionPair(NamedTuple):
    r_tm: float
    r_te: float
    zeta: float
    y: float


def reflection_coeffs(zeta, y, epsilon, pi00=0.0, pi_te=0.0):
    """Reflection coefficients at dimensionless frequency ``zeta`` and ``y``.

    ``epsilon`` is the substrate permittivity at that frequency or
    :data:`~cpgraphene.materials.IDEAL_METAL`.  With ``epsilon = 1`` the
    result is that of a freestanding sheet; with ``pi00 = pi_te = 0`` it is
    the bare substrate.

    Numerator and denominator are divided by ``y^2`` (TM) and ``y^3`` (TE),
    and ``eps - rho`` is written as ``(eps - 1)(eps + 1 - s^2)/(eps + rho)``
    with ``s = zeta/y`` and ``rho = sqrt(1 + (eps - 1) s^2)``, so nothing
    underflows or cancels for small ``y``, ``eps`` near 1 or small ``pi``.
    On the light cone ``y = zeta`` with vanishing ``pi`` the bare limit is
    returned.
    """
    if y < zeta:
        raise ValueError(f"y={y!r} lies below zeta={zeta!r}")
    if not y > 0:
        raise ValueError("y must be > 0")
    if epsilon is IDEAL_METAL:
        return ReflectionPair(1.0, -1.0, zeta, y)
    if epsilon < 1.0:
        raise ValueError(f"permittivity must be >= 1, got {epsilon!r}")
    s = zeta / y
    s2 = s * s
    # y - zeta is exact near the light cone, 1 - zeta/y is not
    c = ((y - zeta) / y) * ((y + zeta) / y)
    em1 = epsilon - 1.0
    rho = math.sqrt(1.0 + em1 * s2)

    yc = y * c
    tm_num = yc * em1 * (epsilon + 1.0 - s2) / (epsilon + rho) + rho * pi00
    tm_den = yc * (epsilon + rho) + rho * pi00
    if tm_den == 0.0:
        r_tm = (epsilon - rho) / (epsilon + rho)
    else:
        r_tm = tm_num / tm_den

    q = pi_te / y / y / y
    if math.isinf(q):
        r_te = -1.0
    else:
        te_num = -c * em1 * s2 / (1.0 + rho) - q
        te_den = c * (1.0 + rho) + q
        r_te = (1.0 - rho) / (1.0 + rho) if te_den == 0.0 else te_num / te_den
    return ReflectionPair(r_tm, r_te, zeta, y)


def r_tm_zero(y, epsilon0, pi00_zero=0.0):
    """Zero-frequency TM coefficient ``(eps0 y + Pi - y) / (eps0 y + Pi + y)``."""
    if epsilon0 is IDEAL_METAL:
        return 1.0
    return (epsilon0 * y + pi00_zero - y) / (epsilon0 * y + pi00_zero + y)


def r_tm_zero_approx(y, pi00_at_one, epsilon0=1.0):
    """Large-separation form ``1 - 2y / Pi00(1)``.

    Warns when ``pi00_at_one`` is not much larger than ``epsilon0 + 1``.
    """
    if pi00_at_one <= 0:
        raise ValueError("pi00_at_one must be > 0")
    if pi00_at_one < 10.0 * (epsilon0 + 1.0):
        warnings.warn(
            f"pi00(1) = {pi00_at_one:.3g} is not >> eps0 + 1 = {epsilon0 + 1:.3g}",
            AsymptoticRegimeWarning, stacklevel=2)
    return 1.0 - 2.0 * y / pi00_at_one
