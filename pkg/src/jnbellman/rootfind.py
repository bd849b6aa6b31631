"""Safeguarded scalar root finding: Newton iteration inside a guaranteed bracket.

Every implicit equation in the package (the tangency roots, tangent
abscissae, secant coordinates, inverse of the oscillation bound) is solved
with the same hybrid: a sign-changing bracket is maintained at all times,
Newton steps are taken when they stay inside the bracket and shrink it
fast enough, and bisection is used otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import ConvergenceError

__all__ = ["Tolerance", "DEFAULT_TOL", "newton_bisect", "expand_bracket_left"]


@dataclass(frozen=True)
class Tolerance:
    """Stopping control for iterative solvers.

    ``abs``/``rel`` bound the accepted step size (and residual scale),
    ``max_iter`` caps the iteration count.
    """

    abs: float = 1e-14
    rel: float = 4e-16
    max_iter: int = 120

    def __post_init__(self):
        if not (math.isfinite(self.abs) and self.abs > 0):
            raise ValueError(f"abs tolerance must be finite and positive, got {self.abs}")
        if not (math.isfinite(self.rel) and self.rel > 0):
            raise ValueError(f"rel tolerance must be finite and positive, got {self.rel}")
        if self.max_iter <= 0:
            raise ValueError(f"max_iter must be positive, got {self.max_iter}")


DEFAULT_TOL = Tolerance()


def newton_bisect(
    f: Callable[[float], float],
    df: Callable[[float], float],
    lo: float,
    hi: float,
    tol: Tolerance = DEFAULT_TOL,
    flo: float | None = None,
    fhi: float | None = None,
) -> float:
    """Root of ``f`` in ``[lo, hi]``, which must bracket a sign change.

    Newton steps (seeded at the bracket midpoint) are clipped to the current
    bracket; whenever a step leaves the bracket or stalls, the method falls
    back to bisection, so convergence is guaranteed for continuous ``f``.
    """
    if lo > hi:
        lo, hi = hi, lo
    a, b = lo, hi
    fa = f(a) if flo is None else flo
    fb = f(b) if fhi is None else fhi
    if fa == 0.0:
        return a
    if fb == 0.0:
        return b
    if math.copysign(1.0, fa) == math.copysign(1.0, fb):
        raise ConvergenceError(
            f"no sign change on [{a!r}, {b!r}]: f(a)={fa!r}, f(b)={fb!r}", bracket=(a, b)
        )

    x = 0.5 * (a + b)
    for _ in range(tol.max_iter):
        fx = f(x)
        if fx == 0.0:
            return x
        # Maintain the bracket.
        if math.copysign(1.0, fx) == math.copysign(1.0, fa):
            a, fa = x, fx
        else:
            b, fb = x, fx
        width = b - a
        if width <= tol.abs + tol.rel * max(abs(a), abs(b)):
            return 0.5 * (a + b)
        dfx = df(x)
        if dfx != 0.0 and math.isfinite(dfx):
            step = fx / dfx
            xn = x - step
        else:
            xn = math.nan
        if not (a < xn < b):
            xn = 0.5 * (a + b)  # bisect
        elif abs(x - xn) <= tol.abs + tol.rel * abs(x):
            return xn
        x = xn
    raise ConvergenceError(
        f"no convergence after {tol.max_iter} iterations", bracket=(a, b)
    )


def expand_bracket_left(
    f: Callable[[float], float], lo: float, hi: float, max_doublings: int = 200
) -> tuple[float, float, float, float]:
    """Double ``lo`` away from ``hi`` until ``[lo, hi]`` brackets a sign change.

    Returns ``(lo, hi, f(lo), f(hi))``.
    """
    fhi = f(hi)
    flo = f(lo)
    for _ in range(max_doublings):
        if flo == 0.0 or math.copysign(1.0, flo) != math.copysign(1.0, fhi):
            return lo, hi, flo, fhi
        lo = hi + 2.0 * (lo - hi)
        flo = f(lo)
    raise ConvergenceError(
        f"no sign change found after {max_doublings} doublings", bracket=(lo, hi)
    )
