"""Adaptive quadrature with a retry ladder.

Thin layer over QUADPACK (``scipy.integrate.quad``): the subdivision limit is
doubled twice before giving up, and a failure is reported as
:class:`~cpgraphene.exceptions.QuadratureError` instead of a warning.
"""
from scipy.integrate import quad

from .exceptions import QuadratureError

BASE_LIMIT = 100
RETRIES = 2


def integrate(func, lower, upper, epsabs=1e-10, epsrel=1e-8, points=None):
    """Return ``(value, error_estimate)`` of ``func`` over ``[lower, upper]``."""
    if upper == lower:
        return 0.0, 0.0
    limit = BASE_LIMIT
    pts = None
    if points:
        pts = sorted(p for p in points if lower < p < upper) or None
    for _ in range(RETRIES + 1):
        value, err, info = quad(func, lower, upper, epsabs=epsabs, epsrel=epsrel,
                                limit=limit, points=pts, full_output=1)[:3]
        tol = max(epsabs, epsrel * abs(value))
        if err <= tol:
            return value, err
        limit *= 2
    raise QuadratureError(
        f"integral over [{lower:.6g}, {upper:.6g}] did not converge: "
        f"error estimate {err:.3g} exceeds tolerance {tol:.3g}")
