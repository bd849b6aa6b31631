"""Geometry of the exponential strip ``{exp(x1) <= x2 <= C exp(x1)}``.

The strip is bounded below by the graph of ``exp`` (constants live there)
and above by ``C exp``.  Through every interior point run two tangent lines
to the upper boundary; their lower-boundary abscissae ``u+`` and ``u-`` are
the coordinates in which all closed-form evaluations are written.  This
module solves for those coordinates, for the secant coordinate used by the
tail-measure function, and classifies points into the piecewise regions.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .constants import DomainParams
from .errors import DegenerateSecantError, DomainError
from .rootfind import DEFAULT_TOL, Tolerance, newton_bisect

__all__ = [
    "Point",
    "ThreeRegion",
    "FourRegion",
    "in_domain",
    "on_lower_boundary",
    "solve_u",
    "solve_v",
    "abs_mean_region",
    "tail_region",
    "segment_in_domain",
]


@dataclass(frozen=True)
class Point:
    """A point ``(x1, x2)`` of the plane with ``x2 > 0``."""

    x1: float
    x2: float

    def __post_init__(self):
        if not (math.isfinite(self.x1) and math.isfinite(self.x2) and self.x2 > 0):
            raise DomainError(f"point must be finite with x2 > 0, got ({self.x1}, {self.x2})")

    def shifted(self, c: float) -> "Point":
        """Translate along the strip: ``(x1 + c, x2 e^c)``."""
        return Point(self.x1 + c, self.x2 * math.exp(c))


class ThreeRegion(enum.Enum):
    """Regions of the three-piece splitting used by the minimal absolute mean.

    LEFT and RIGHT are cut off by the two tangents through (0, 1);
    MIDDLE is the wedge above them.  Boundary points resolve to MIDDLE.
    """

    LEFT = "left"
    MIDDLE = "middle"
    RIGHT = "right"


class FourRegion(enum.Enum):
    """Regions of the four-piece splitting used by the tail-measure function.

    PLATEAU is where the function is identically 1, AFFINE_STRIP where it is
    affine, SECANT_FAN where it is computed from a secant through the corner
    ``(lam, e^lam)``, and LEFT_EXP where it decays exponentially.
    """

    LEFT_EXP = "left_exp"
    SECANT_FAN = "secant_fan"
    AFFINE_STRIP = "affine_strip"
    PLATEAU = "plateau"


def in_domain(x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether ``exp(x1) <= x2 <= C exp(x1)`` holds within relative tolerance.

    The slack scales with ``C exp(x1)`` so membership stays meaningful for
    large ``|x1|``.
    """
    lower = math.exp(x.x1)
    upper = params.C * lower
    slack = max(tol.rel, 1e-12) * upper
    return (x.x2 >= lower - slack) and (x.x2 <= upper + slack)


def on_lower_boundary(x: Point, tol: Tolerance = DEFAULT_TOL) -> bool:
    """Whether ``x`` sits on the lower boundary ``x2 = exp(x1)`` within tolerance."""
    lower = math.exp(x.x1)
    return x.x2 - lower <= max(tol.rel, 1e-12) * lower


def _require_in_domain(x: Point, params: DomainParams, tol: Tolerance) -> None:
    if not in_domain(x, params, tol):
        raise DomainError(
            f"point ({x.x1}, {x.x2}) outside the strip for C={params.C}"
        )


def solve_u(
    x: Point, params: DomainParams, branch: str, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Abscissa where the tangent line through ``x`` meets the lower boundary.

    ``branch`` is ``"plus"`` (tangency to the right, root in
    ``[x1 - xi+, x1]``) or ``"minus"`` (tangency to the left, root in
    ``[x1, x1 - xi-]``).  Solves ``x2 = e^u ((x1-u)/(1-xi) + 1)``.
    """
    _require_in_domain(x, params, tol)
    if branch == "plus":
        xi = params.xi_plus
        lo, hi = x.x1 - xi, x.x1
    elif branch == "minus":
        xi = params.xi_minus
        lo, hi = x.x1, x.x1 - xi
    else:
        raise ValueError(f"branch must be 'plus' or 'minus', got {branch!r}")
    if on_lower_boundary(x, tol) or lo == hi:
        return x.x1

    one_m_xi = 1.0 - xi

    def f(u: float) -> float:
        return math.exp(u) * ((x.x1 - u) / one_m_xi + 1.0) - x.x2

    def df(u: float) -> float:
        return math.exp(u) * (x.x1 - u - xi) / one_m_xi

    # One endpoint sits at C e^{x1} - x2 >= 0 (on the upper boundary the root
    # is that endpoint), the other at e^{x1} - x2 <= 0; rounding can push
    # either past zero, in which case the endpoint is the root.
    upper_end, lower_end = (lo, hi) if branch == "plus" else (hi, lo)
    f_upper, f_lower = f(upper_end), f(lower_end)
    if f_upper <= 0.0:
        return upper_end
    if f_lower >= 0.0:
        return lower_end
    if branch == "plus":
        return newton_bisect(f, df, lo, hi, tol, flo=f_upper, fhi=f_lower)
    return newton_bisect(f, df, lo, hi, tol, flo=f_lower, fhi=f_upper)


def solve_v(
    x: Point, lam: float, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> float:
    """Second abscissa where the line through ``(lam, e^lam)`` and ``x``
    meets the lower boundary.

    Defined for ``x`` in the secant fan of ``lam``; the root lies in
    ``[lam + xi- - xi+, x1]``.
    """
    _require_in_domain(x, params, tol)
    if x.x1 == lam:
        raise DegenerateSecantError(f"x1 == lam == {lam}: secant is vertical")
    if x.x1 > lam:
        raise DomainError(f"secant coordinate needs x1 < lam, got x1={x.x1} > lam={lam}")
    if on_lower_boundary(x, tol):
        return x.x1
    elam = math.exp(lam)
    slope = (x.x2 - elam) / (x.x1 - lam)

    def f(v: float) -> float:
        return math.exp(v) - (elam + (v - lam) * slope)

    def df(v: float) -> float:
        return math.exp(v) - slope

    lo = lam + params.xi_minus - params.xi_plus
    hi = x.x1
    flo, fhi = f(lo), f(hi)
    if fhi >= 0.0:
        return hi  # x numerically on the lower boundary
    if flo < 0.0:
        # x is (numerically) on the steepest admissible secant.
        if flo > -1e-9 * max(1.0, math.exp(lo), abs(slope)):
            return lo
        raise DomainError(
            f"point ({x.x1}, {x.x2}) lies above the secant fan of lam={lam}"
        )
    return newton_bisect(f, df, lo, hi, tol, flo=flo, fhi=fhi)


def abs_mean_region(x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL) -> ThreeRegion:
    """Classify ``x`` for the three-piece minimal-absolute-mean formula.

    Shared boundaries resolve to MIDDLE; the formula is continuous across
    them, so the tie-break is value-safe.
    """
    _require_in_domain(x, params, tol)
    C, xm, xp = params.C, params.xi_minus, params.xi_plus
    if xm <= x.x1 <= 0.0 and x.x2 >= C * math.exp(xm) * x.x1 + 1.0:
        return ThreeRegion.MIDDLE
    if 0.0 <= x.x1 <= xp and x.x2 >= C * math.exp(xp) * x.x1 + 1.0:
        return ThreeRegion.MIDDLE
    return ThreeRegion.LEFT if x.x1 < 0.0 else ThreeRegion.RIGHT


def tail_region(
    x: Point, lam: float, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> FourRegion:
    """Classify ``x`` for the four-piece tail-measure formula at level ``lam``.

    The corner ``(lam, e^lam)`` itself reports PLATEAU (value 1); other
    shared boundaries resolve in the order LEFT_EXP, SECANT_FAN,
    AFFINE_STRIP, PLATEAU, which is value-safe by continuity.
    """
    _require_in_domain(x, params, tol)
    C, xm, xp = params.C, params.xi_minus, params.xi_plus
    elam = math.exp(lam)
    if abs(x.x1 - lam) <= 1e-15 * max(1.0, abs(lam)) and abs(x.x2 - elam) <= 1e-14 * elam:
        return FourRegion.PLATEAU
    # Left boundary line: the tangent of slope C e^{xi-} through the corner.
    left_line = elam * (C * math.exp(xm) * (x.x1 - lam) + 1.0)
    if x.x1 <= lam + xm - xp:
        return FourRegion.LEFT_EXP
    if x.x1 <= lam + xm and x.x2 >= left_line:
        return FourRegion.LEFT_EXP
    if x.x1 < lam and x.x2 <= left_line:
        return FourRegion.SECANT_FAN
    if x.x1 <= lam and x.x2 >= left_line:
        return FourRegion.AFFINE_STRIP
    right_line = elam * (C * math.exp(xp) * (x.x1 - lam) + 1.0)
    if x.x1 <= lam + xp and x.x2 >= right_line:
        return FourRegion.AFFINE_STRIP
    return FourRegion.PLATEAU


def segment_in_domain(
    a: Point, b: Point, C1: float, tol: Tolerance = DEFAULT_TOL
) -> bool:
    """Whether the whole segment ``[a, b]`` stays inside the strip of ``C1``.

    Both endpoints must lie in the strip.  Below, the segment cannot exit:
    ``x2(s) - exp(x1(s))`` is concave and nonnegative at the endpoints.
    Above, ``x2(s) - C1 exp(x1(s))`` is concave with at most one interior
    stationary point, solvable in closed form; only that point is tested.
    """
    if C1 < 1.0:
        raise DomainError(f"C1 must be >= 1, got {C1}")
    for pt in (a, b):
        lower = math.exp(pt.x1)
        slack = max(tol.rel, 1e-12) * C1 * lower
        if not (lower - slack <= pt.x2 <= C1 * lower + slack):
            raise DomainError(
                f"endpoint ({pt.x1}, {pt.x2}) outside the strip for C1={C1}"
            )
    dx1 = b.x1 - a.x1
    dx2 = b.x2 - a.x2
    if dx1 == 0.0:
        return True  # vertical segment: upper gap is affine in s
    ratio = dx2 / (C1 * dx1)
    if ratio <= 0.0:
        return True  # stationary point of the upper gap does not exist
    x1_star = math.log(ratio)
    s = (x1_star - a.x1) / dx1
    if not (0.0 < s < 1.0):
        return True
    x2_star = a.x2 + s * dx2
    upper = C1 * math.exp(x1_star)
    return x2_star <= upper + max(tol.rel, 1e-12) * upper
