"""Closed-form extremal values over the admissible class at a point.

For a point ``x`` of the strip, the admissible class consists of all
functions on (0,1) whose mean is ``x1``, whose exponential mean is ``x2``,
and whose exponential has characteristic at most ``C``.  The functions here
evaluate, in closed form, the extreme values over that class of

* the p-th absolute moment (minimal), ``1 <= p <= 2``,
* the second moment (maximal),
* the mean of ``exp(delta * phi)`` (maximal), and
* the relative measure of ``{phi >= lam}`` (maximal),

together with the vertical envelope of the last one.
"""

from __future__ import annotations

import math
import warnings

from .constants import DomainParams, bp_threshold
from .domain import (
    FourRegion,
    Point,
    ThreeRegion,
    abs_mean_region,
    on_lower_boundary,
    solve_u,
    solve_v,
    tail_region,
)
from .errors import BelowThresholdWarning, DomainError
from .integrals import tail_signed
from .rootfind import DEFAULT_TOL, Tolerance

__all__ = [
    "min_power_mean",
    "min_abs_mean",
    "max_square_mean",
    "max_exp_mean",
    "max_tail_measure",
    "tail_measure_envelope",
    "slope_gradient",
]


def min_power_mean(
    x: Point, p: float, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Minimal p-th absolute moment over the admissible class at ``x``.

    Exact for ``1 < p <= 2`` once ``C >= e^(p-2)/(p-1)``; below that
    threshold the same formula is returned but a ``BelowThresholdWarning``
    is issued, since extremality is then unproven.
    """
    if not (1.0 < p <= 2.0):
        raise DomainError(f"p must lie in (1, 2], got {p}")
    if params.C < bp_threshold(p):
        warnings.warn(
            f"C={params.C} below e^(p-2)/(p-1)={bp_threshold(p):.6g} for p={p}; "
            "value returned but extremality is unproven there",
            BelowThresholdWarning,
            stacklevel=2,
        )
    if on_lower_boundary(x, tol):
        return abs(x.x1) ** p
    u = solve_u(x, params, "plus", tol)
    xi = params.xi_plus
    if p == 2.0:
        return 2.0 * u * x.x1 - u * u + 2.0 * xi * (x.x1 - u)
    return (p / xi) * math.exp(u / xi) * tail_signed(u, xi, p) * (x.x1 - u) + abs(u) ** p


def min_abs_mean(x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """Minimal absolute mean over the admissible class at ``x``."""
    if on_lower_boundary(x, tol):
        return abs(x.x1)
    region = abs_mean_region(x, params, tol)
    if region is ThreeRegion.LEFT:
        return -x.x1
    if region is ThreeRegion.RIGHT:
        return x.x1
    xm, xp = params.xi_minus, params.xi_plus
    return (
        2.0 * (1.0 - xm) * (1.0 - xp) / (xp - xm) * (x.x2 - 1.0)
        + (xp + xm - 2.0) / (xp - xm) * x.x1
    )


def max_square_mean(x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL) -> float:
    """Maximal second moment over the admissible class at ``x``."""
    if on_lower_boundary(x, tol):
        return x.x1 * x.x1
    u = solve_u(x, params, "minus", tol)
    xi = params.xi_minus
    return 2.0 * u * x.x1 - u * u + 2.0 * xi * (x.x1 - u)


def max_exp_mean(
    x: Point, delta: float, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Maximal mean of ``exp(delta * phi)`` over the admissible class at ``x``.

    Finite exactly when ``delta < 1/xi+``; otherwise the value is
    ``exp(delta * x1)`` on the lower boundary and ``math.inf`` above it.
    """
    if delta < 1.0:
        raise DomainError(f"delta must be >= 1, got {delta}")
    xi = params.xi_plus
    if xi > 0.0 and delta >= 1.0 / xi:
        if on_lower_boundary(x, tol):
            return math.exp(delta * x.x1)
        return math.inf
    if on_lower_boundary(x, tol):
        return math.exp(delta * x.x1)
    u = solve_u(x, params, "plus", tol)
    return math.exp(delta * u) * (delta * (x.x1 - u) / (1.0 - delta * xi) + 1.0)


def max_tail_measure(
    x: Point, lam: float, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Maximal relative measure of ``{phi >= lam}`` over the admissible class.

    Values lie in [0, 1] up to rounding.  The function is discontinuous at
    the corner ``(lam, e^lam)``, which evaluates to 1.
    """
    region = tail_region(x, lam, params, tol)
    xm, xp = params.xi_minus, params.xi_plus
    if region is FourRegion.PLATEAU:
        return 1.0
    if region is FourRegion.AFFINE_STRIP:
        return (
            (1.0 - xm) / (xp - xm) ** 2
            * (x.x1 - lam + (1.0 - x.x2 * math.exp(-lam)) * (1.0 - xp))
            + 1.0
        )
    if region is FourRegion.SECANT_FAN:
        if on_lower_boundary(x, tol):
            return 0.0
        v = solve_v(x, lam, params, tol)
        return (x.x1 - v) / (lam - v)
    # Exponential decay to the far left of the corner.
    if on_lower_boundary(x, tol):
        return 0.0
    u = solve_u(x, params, "plus", tol)
    return math.exp((xp - xm + u - lam) / xp) / (xp - xm) * (x.x1 - u)


def tail_measure_envelope(lam: float, params: DomainParams) -> tuple[float, float]:
    """Largest tail measure over a vertical slice, and its convenient bound.

    Returns ``(envelope, simple)`` where ``envelope`` is the three-case
    sharp value (1 for ``lam <= 0``, affine for ``0 <= lam <= -xi-``,
    exponential beyond) and ``simple`` is the single-formula upper bound
    ``exp(-xi-/xi+) / (1 - xi-/xi+) * exp(-lam/xi+)``, valid for
    ``lam >= 0``.
    """
    xm, xp = params.xi_minus, params.xi_plus
    if params.C == 1.0:
        exact = 1.0 if lam <= 0.0 else 0.0
        return exact, exact
    if lam <= 0.0:
        exact = 1.0
    elif lam <= -xm:
        exact = 1.0 - lam / (xp - xm)
    else:
        exact = xp * math.exp(-xm / xp) / (xp - xm) * math.exp(-lam / xp)
    simple = math.exp(-xm / xp) / (1.0 - xm / xp) * math.exp(-lam / xp)
    return exact, simple


def slope_gradient(
    x: Point,
    params: DomainParams,
    kind: str,
    p: float = 2.0,
    delta: float = 1.0,
    lam: float = 0.0,
    tol: Tolerance = DEFAULT_TOL,
) -> tuple[float, float]:
    """Analytic gradient of the tangent-coordinate candidates.

    Each of these candidates has the form ``m(u) (x1 - u) + f(u)`` with
    ``xi m'(u) = m(u) - f'(u)``, whence the gradient is
    ``(m - m', m' e^(-u) (1 - xi))``.  ``kind`` selects the candidate:
    ``"min_power"``, ``"max_square"``, ``"max_exp"``, or ``"tail_left"``
    (the exponential region of the tail-measure function).
    """
    xm, xp = params.xi_minus, params.xi_plus
    if kind == "min_power":
        xi = xp
        u = solve_u(x, params, "plus", tol)
        m = (p / xi) * math.exp(u / xi) * tail_signed(u, xi, p)
        fprime = p * abs(u) ** (p - 1.0) * math.copysign(1.0, u) if u != 0.0 else 0.0
    elif kind == "max_square":
        xi = xm
        u = solve_u(x, params, "minus", tol)
        m = 2.0 * (u + xi)
        fprime = 2.0 * u
    elif kind == "max_exp":
        xi = xp
        u = solve_u(x, params, "plus", tol)
        m = delta * math.exp(delta * u) / (1.0 - delta * xi)
        fprime = delta * math.exp(delta * u)
    elif kind == "tail_left":
        xi = xp
        u = solve_u(x, params, "plus", tol)
        m = math.exp((xp - xm - lam + u) / xp) / (xp - xm)
        fprime = 0.0
    else:
        raise ValueError(f"unknown slope-form kind {kind!r}")
    mprime = (m - fprime) / xi
    return m - mprime, mprime * math.exp(-u) * (1.0 - xi)
