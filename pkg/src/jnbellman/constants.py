"""Scalar constants of the sharp John-Nirenberg problem on (0,1).

The central objects are the two tangency roots ``xi-(C) <= 0 <= xi+(C) < 1``
of ``exp(-xi) = C (1 - xi)``, the increasing function ``k(C)`` they induce,
the sharp integral-form constant ``eps0(p)`` for ``1 <= p <= 2``, and the
bounds it yields for the exponential-integrability constant ``C(eps, p)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, RangeError
from .integrals import quad_hi
from .rootfind import DEFAULT_TOL, Tolerance, expand_bracket_left, newton_bisect

__all__ = [
    "DomainParams",
    "Tolerance",
    "DEFAULT_TOL",
    "solve_xi",
    "k_of_C",
    "k_inverse",
    "K_SUP",
    "omega",
    "eps0",
    "bp_threshold",
    "jn_sharp_C",
    "jn_bound_p1",
    "weak_type_bound",
    "dist_lower_bound",
    "hilbert_lower_bound",
]

#: Supremum of k over [1, inf); k maps [1, inf) onto [0, 2/e).
K_SUP = 2.0 / math.e

# Residual guard for DomainParams; the natural scale of exp(-xi) - C(1-xi)
# is C because a one-ulp perturbation of xi moves it by about C * eps.
_PARAMS_GUARD = 1e-11


@dataclass(frozen=True)
class DomainParams:
    """A characteristic bound ``C >= 1`` with its cached tangency roots.

    ``xi_minus <= 0 <= xi_plus < 1`` solve ``exp(-xi) = C (1 - xi)``;
    both are 0 exactly when ``C == 1``.  Instances are immutable and safe
    to share across threads.
    """

    C: float
    xi_minus: float
    xi_plus: float

    def __post_init__(self):
        if not (math.isfinite(self.C) and self.C >= 1.0):
            raise DomainError(f"C must be finite and >= 1, got {self.C}")
        if not (self.xi_minus <= 0.0 <= self.xi_plus < 1.0):
            raise DomainError(
                f"roots must satisfy xi_minus <= 0 <= xi_plus < 1, "
                f"got ({self.xi_minus}, {self.xi_plus})"
            )
        scale = max(1.0, self.C)
        for root in (self.xi_minus, self.xi_plus):
            res = abs(math.exp(-root) - self.C * (1.0 - root))
            if res > _PARAMS_GUARD * scale:
                raise DomainError(
                    f"{root} does not solve exp(-xi) = C(1-xi) for C={self.C} "
                    f"(residual {res:.3e})"
                )
        if self.C == 1.0 and not (self.xi_minus == 0.0 == self.xi_plus):
            raise DomainError("C == 1 forces xi_minus == xi_plus == 0")


def _xi_equation(C: float):
    def f(xi: float) -> float:
        return math.exp(-xi) - C * (1.0 - xi)

    def df(xi: float) -> float:
        return C - math.exp(-xi)

    return f, df


def solve_xi(C: float, tol: Tolerance = DEFAULT_TOL) -> DomainParams:
    """Solve ``exp(-xi) = C (1 - xi)`` for both roots.

    The positive root is found by safeguarded Newton/bisection on [0, 1);
    the negative root on a bracket grown leftwards from [-1, 0].
    """
    if not math.isfinite(C) or C < 1.0:
        raise DomainError(f"C must be finite and >= 1, got {C}")
    if C == 1.0:
        return DomainParams(C=1.0, xi_minus=0.0, xi_plus=0.0)
    f, df = _xi_equation(C)
    xi_plus = newton_bisect(f, df, 0.0, 1.0, tol, flo=1.0 - C, fhi=math.exp(-1.0))
    lo, hi, flo, fhi = expand_bracket_left(f, -1.0, 0.0)
    xi_minus = newton_bisect(f, df, lo, hi, tol, flo=flo, fhi=fhi)
    return DomainParams(C=C, xi_minus=xi_minus, xi_plus=min(xi_plus, math.nextafter(1.0, 0.0)))


def k_of_C(params: DomainParams) -> float:
    """``2 (1-xi-)(1-xi+)(C-1) / (xi+ - xi-)``, extended by 0 at ``C == 1``.

    Continuous and strictly increasing on [1, inf) with limit 2/e.
    """
    if params.C == 1.0:
        return 0.0
    xm, xp = params.xi_minus, params.xi_plus
    return 2.0 * (1.0 - xm) * (1.0 - xp) * (params.C - 1.0) / (xp - xm)


def k_inverse(eps: float, tol: Tolerance = DEFAULT_TOL) -> float:
    """The unique ``C >= 1`` with ``k(C) == eps``, for ``0 <= eps < 2/e``.

    Uses the a-priori upper bound ``C <= 1 / (1 - (e/2) eps)`` to bracket.
    """
    if not (0.0 <= eps < K_SUP):
        raise RangeError(f"eps must lie in [0, 2/e) = [0, {K_SUP}), got {eps}")
    if eps == 0.0:
        return 1.0
    hi = 1.0 / (1.0 - eps / K_SUP)
    if hi <= 1.0 + 4e-16:
        # Near C = 1 the inverse behaves like 1 + 2 eps^2, below resolution.
        return 1.0

    def f(C: float) -> float:
        return k_of_C(solve_xi(C, tol)) - eps

    # Derivative-free: the bracket is tight, bisection converges quickly.
    return newton_bisect(f, lambda _: math.nan, 1.0, hi, tol, flo=-eps)


def omega(p: float) -> float:
    """``[(p/e) (Gamma(p) - int_0^1 t^(p-1) e^t dt) + 1]^(1/p)`` for ``p >= 1``.

    Equals the p-oscillation of ``log(1/t)`` over (0,1).
    """
    if not (math.isfinite(p) and p >= 1.0):
        raise DomainError(f"p must be >= 1, got {p}")
    integral = quad_hi(lambda t: t ** (p - 1.0) * math.exp(t), 0.0, 1.0)
    return ((p / math.e) * (math.gamma(p) - integral) + 1.0) ** (1.0 / p)


def eps0(p: float) -> float:
    """Sharp integral-form John-Nirenberg constant of the p-oscillation norm.

    Known exactly for ``1 <= p <= 2``; other ``p`` raise ``DomainError``.
    """
    if not (1.0 <= p <= 2.0):
        raise DomainError(f"eps0 is only known for p in [1, 2], got {p}")
    return omega(p)


def bp_threshold(p: float) -> float:
    """``e^(p-2) / (p-1)``: characteristic bound above which the explicit
    minimal p-th moment formula is proven extremal (``1 < p <= 2``)."""
    if not (1.0 < p <= 2.0):
        raise DomainError(f"threshold defined for p in (1, 2], got {p}")
    return math.exp(p - 2.0) / (p - 1.0)


def jn_sharp_C(eps: float, p: float) -> float:
    """Sharp ``C(eps, p) = exp(-eps/eps0(p)) / (1 - eps/eps0(p))``.

    Valid for ``1 < p <= 2`` on the window ``(2-p) eps0(p) <= eps < eps0(p)``.
    """
    if not (1.0 < p <= 2.0):
        raise DomainError(f"p must lie in (1, 2], got {p}")
    e0 = eps0(p)
    lo_win, hi_win = (2.0 - p) * e0, e0
    if not (lo_win <= eps < hi_win):
        raise RangeError(
            f"eps={eps} outside validity window [{lo_win}, {hi_win}) "
            f"= [(2-p)*eps0(p), eps0(p)) for p={p}"
        )
    r = eps / e0
    return math.exp(-r) / (1.0 - r)


def jn_bound_p1(eps: float) -> tuple[float, float]:
    """Two-sided bracket for ``C(eps, 1)`` on ``0 <= eps < 2/e``.

    Lower: ``exp(-(e/2) eps) / (1 - (e/2) eps)``.  Upper: ``k_inverse(eps)``.
    Whether the upper bound is attained as equality is not known; callers
    must treat the pair as a bracket, never as a value.
    """
    if not (0.0 <= eps < K_SUP):
        raise RangeError(f"eps must lie in [0, 2/e), got {eps}")
    r = eps * math.e / 2.0
    lower = math.exp(-r) / (1.0 - r)
    upper = k_inverse(eps)
    return lower, upper


def weak_type_bound(p: float, lam: float, norm: float) -> float:
    """``(p-1)^(-1/(2-p)) exp(-eps0(p) lam / norm)`` for ``1 < p <= 2``.

    At ``p == 2`` the prefactor is taken as its limit value ``e``.
    """
    if not (1.0 < p <= 2.0):
        raise DomainError(f"p must lie in (1, 2], got {p}")
    if lam < 0:
        raise DomainError(f"lambda must be >= 0, got {lam}")
    if not norm > 0:
        raise DomainError(f"norm must be positive, got {norm}")
    prefactor = math.e if p == 2.0 else (p - 1.0) ** (-1.0 / (2.0 - p))
    return prefactor * math.exp(-eps0(p) * lam / norm)


def dist_lower_bound(p: float, eps_phi: float, eps_minus_phi: float) -> float:
    """``eps0(p) / min(eps_phi, eps_minus_phi)``; 0 when both are infinite."""
    if not (eps_phi > 0 and eps_minus_phi > 0):
        raise DomainError("both growth exponents must be positive (possibly inf)")
    denom = min(eps_phi, eps_minus_phi)
    if math.isinf(denom):
        return 0.0
    return eps0(p) / denom


def hilbert_lower_bound(p: float) -> float:
    """``(2/pi) eps0(p)``: lower bound for the L-infinity to BMO^p norm of
    the Hilbert transform."""
    return 2.0 / math.pi * eps0(p)
