"""Explicit extremal functions on (0,1) and their closed-form integrals.

Every extremizer in this package is a concatenation of constant plateaus
and logarithmic ramps ``t -> u + xi * log(alpha / t)``, so a single
representation (``PiecewiseLogStep``) supports construction, truncation,
exact integration of means, exponential means, absolute powers and level-set
measures, JSON round-tripping, and an independent quadrature path for every
closed form.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Union

import numpy as np

from .constants import DomainParams
from .domain import Point, ThreeRegion, abs_mean_region, on_lower_boundary, solve_u, solve_v
from .domain import FourRegion, tail_region
from .errors import DomainError
from .integrals import quad_hi, tail_abs
from .rootfind import DEFAULT_TOL, Tolerance

__all__ = [
    "ConstantPiece",
    "LogRampPiece",
    "Piece",
    "PiecewiseLogStep",
    "AbsPower",
    "ExpScale",
    "Indicator",
    "FunctionKind",
    "AverageTriple",
    "scaled_log",
    "optimizer_plus",
    "optimizer_minus",
    "step_optimizer",
    "indicator_optimizer",
    "cutoff",
    "averages",
    "measure_above",
    "measure_below",
    "abs_power_integral",
]

_GAP_TOL = 1e-14
_WIDTH_TOL = 1e-15
_EXP_CLIP = 700.0  # exponent clip keeping exp() finite


# ---------------------------------------------------------------------------
# pieces

@dataclass(frozen=True)
class ConstantPiece:
    lo: float
    hi: float
    value: float

    def __call__(self, t):
        return np.full_like(np.asarray(t, dtype=float), self.value) if np.ndim(t) else self.value


@dataclass(frozen=True)
class LogRampPiece:
    """``t -> u + xi * log(alpha / t)`` on ``(lo, hi)``; ``xi != 0``, ``alpha > 0``."""

    lo: float
    hi: float
    u: float
    xi: float
    alpha: float

    def __post_init__(self):
        if self.xi == 0.0:
            raise ValueError("xi must be nonzero for a log ramp; use ConstantPiece")
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        val = self.u + self.xi * np.log(self.alpha / t)
        return val if val.ndim else float(val)

    def crossing(self, level: float) -> float:
        """The t at which the ramp equals ``level`` (may fall outside (lo, hi))."""
        expo = (self.u - level) / self.xi
        return self.alpha * math.exp(min(expo, _EXP_CLIP))


Piece = Union[ConstantPiece, LogRampPiece]


def _piece_int_mean(piece: Piece, s: float, t: float) -> float:
    """Exact ``int_s^t phi``."""
    if isinstance(piece, ConstantPiece):
        return piece.value * (t - s)

    def anti(tau: float) -> float:
        if tau == 0.0:
            return 0.0
        return piece.u * tau + piece.xi * tau * (math.log(piece.alpha / tau) + 1.0)

    return anti(t) - anti(s)


def _ramp_int_exp(u: float, xi: float, alpha: float, s: float, t: float) -> float:
    """Exact ``int_s^t exp(u + xi log(alpha/tau)) dtau``; ``inf`` if divergent."""
    if xi == 0.0:
        return math.exp(u) * (t - s)
    if xi == 1.0:
        if s == 0.0:
            return math.inf
        return math.exp(u) * alpha * math.log(t / s)
    pw = 1.0 - xi
    if xi > 1.0 and s == 0.0:
        return math.inf
    s_pw = 0.0 if s == 0.0 else s ** pw
    return math.exp(u) * alpha ** xi * (t ** pw - s_pw) / pw


def _piece_int_exp(piece: Piece, s: float, t: float) -> float:
    if isinstance(piece, ConstantPiece):
        return math.exp(piece.value) * (t - s)
    return _ramp_int_exp(piece.u, piece.xi, piece.alpha, s, t)


def _piece_int_exp_scale(piece: Piece, delta: float, s: float, t: float) -> float:
    """Exact ``int_s^t exp(delta * phi)``."""
    if isinstance(piece, ConstantPiece):
        return math.exp(delta * piece.value) * (t - s)
    return _ramp_int_exp(delta * piece.u, delta * piece.xi, piece.alpha, s, t)


def _ramp_int_abs_power(
    u: float, xi: float, alpha: float, p: float, s: float, t: float
) -> float:
    """Exact ``int_s^t |u + xi log(alpha/tau)|^p dtau`` via the exponential
    substitution ``z = u + xi log(alpha/tau)``."""
    if xi > 0.0:
        factor = (alpha / xi) * math.exp(u / xi)
        z_hi = math.inf if s == 0.0 else u + xi * math.log(alpha / s)
        z_lo = u + xi * math.log(alpha / t)
        upper = 0.0 if math.isinf(z_hi) else tail_abs(z_hi, xi, p)
        return factor * (tail_abs(z_lo, xi, p) - upper)
    factor = (alpha / -xi) * math.exp(u / xi)
    z_lo = -math.inf if s == 0.0 else u + xi * math.log(alpha / s)
    z_hi = u + xi * math.log(alpha / t)
    lower = 0.0 if math.isinf(z_lo) else tail_abs(-z_lo, -xi, p)
    return factor * (tail_abs(-z_hi, -xi, p) - lower)


def _piece_int_abs_power(piece: Piece, p: float, s: float, t: float) -> float:
    """Exact ``int_s^t |phi|^p``."""
    if isinstance(piece, ConstantPiece):
        return abs(piece.value) ** p * (t - s)
    return _ramp_int_abs_power(piece.u, piece.xi, piece.alpha, p, s, t)


def abs_power_integral(
    phi: "PiecewiseLogStep",
    p: float,
    a: float = 0.0,
    b: float = 1.0,
    center: float = 0.0,
) -> float:
    """Exact ``int_a^b |phi - center|^p``."""
    total = 0.0
    for pc, s, t in phi._overlaps(a, b):
        if isinstance(pc, ConstantPiece):
            total += abs(pc.value - center) ** p * (t - s)
        else:
            total += _ramp_int_abs_power(pc.u - center, pc.xi, pc.alpha, p, s, t)
    return total


def _piece_measure_above(piece: Piece, level: float, s: float, t: float) -> float:
    if isinstance(piece, ConstantPiece):
        return (t - s) if piece.value >= level else 0.0
    tc = piece.crossing(level)
    if piece.xi > 0.0:  # decreasing ramp: above the level to the left of tc
        return min(max(tc, s), t) - s
    return t - min(max(tc, s), t)


# ---------------------------------------------------------------------------
# the piecewise function

@dataclass(frozen=True)
class PiecewiseLogStep:
    """Ordered constant/log-ramp pieces covering (0,1) up to endpoints."""

    pieces: tuple[Piece, ...]

    def __post_init__(self):
        if not self.pieces:
            raise ValueError("at least one piece is required")
        prev = 0.0
        for pc in self.pieces:
            if not pc.lo < pc.hi:
                raise ValueError(f"empty piece ({pc.lo}, {pc.hi})")
            if abs(pc.lo - prev) > _GAP_TOL:
                raise ValueError(f"gap at {prev}: next piece starts at {pc.lo}")
            prev = pc.hi
        if abs(prev - 1.0) > _GAP_TOL:
            raise ValueError(f"pieces end at {prev}, not 1")

    # -- basic queries ------------------------------------------------------

    def __call__(self, t):
        scalar = np.ndim(t) == 0
        ts = np.atleast_1d(np.asarray(t, dtype=float))
        out = np.empty_like(ts)
        his = np.array([pc.hi for pc in self.pieces])
        idx = np.searchsorted(his, ts, side="left")
        idx = np.clip(idx, 0, len(self.pieces) - 1)
        for i, pc in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] = pc(ts[mask])
        return float(out[0]) if scalar else out

    def breakpoints(self) -> list[float]:
        pts = [self.pieces[0].lo] + [pc.hi for pc in self.pieces]
        return pts

    def value_range(self) -> tuple[float, float]:
        """Essential (inf, sup) over (0,1); log ramps reaching 0 are unbounded."""
        lo_val, hi_val = math.inf, -math.inf
        for pc in self.pieces:
            if isinstance(pc, ConstantPiece):
                vals = (pc.value, pc.value)
            else:
                ends = []
                for endpoint in (pc.lo, pc.hi):
                    if endpoint == 0.0:
                        ends.append(math.inf if pc.xi > 0 else -math.inf)
                    else:
                        ends.append(pc(endpoint))
                vals = (min(ends), max(ends))
            lo_val = min(lo_val, vals[0])
            hi_val = max(hi_val, vals[1])
        return lo_val, hi_val

    def shift(self, c: float) -> "PiecewiseLogStep":
        """The function ``phi + c``."""
        out: list[Piece] = []
        for pc in self.pieces:
            if isinstance(pc, ConstantPiece):
                out.append(ConstantPiece(pc.lo, pc.hi, pc.value + c))
            else:
                out.append(LogRampPiece(pc.lo, pc.hi, pc.u + c, pc.xi, pc.alpha))
        return PiecewiseLogStep(tuple(out))

    def negate(self) -> "PiecewiseLogStep":
        """The function ``-phi``."""
        out: list[Piece] = []
        for pc in self.pieces:
            if isinstance(pc, ConstantPiece):
                out.append(ConstantPiece(pc.lo, pc.hi, -pc.value))
            else:
                out.append(LogRampPiece(pc.lo, pc.hi, -pc.u, -pc.xi, pc.alpha))
        return PiecewiseLogStep(tuple(out))

    def exp_integrable_from_zero(self) -> bool:
        first = self.pieces[0]
        return not (
            isinstance(first, LogRampPiece) and first.lo == 0.0 and first.xi >= 1.0
        )

    # -- exact integrals ----------------------------------------------------

    def _overlaps(self, a: float, b: float) -> Iterable[tuple[Piece, float, float]]:
        for pc in self.pieces:
            s, t = max(pc.lo, a), min(pc.hi, b)
            if s < t:
                yield pc, s, t

    def integral_mean(self, a: float = 0.0, b: float = 1.0) -> float:
        return sum(_piece_int_mean(pc, s, t) for pc, s, t in self._overlaps(a, b))

    def integral_exp(self, a: float = 0.0, b: float = 1.0) -> float:
        return sum(_piece_int_exp(pc, s, t) for pc, s, t in self._overlaps(a, b))

    def mean_exp(self, a: float = 0.0, b: float = 1.0) -> tuple[float, float]:
        """Closed-form ``(<phi>, <exp(phi)>)`` over ``(a, b)``."""
        w = b - a
        return self.integral_mean(a, b) / w, self.integral_exp(a, b) / w

    # -- vectorized cumulative integrals (for scanning) ---------------------

    def _cumulative(self, ts: np.ndarray, piece_partial) -> np.ndarray:
        ts = np.asarray(ts, dtype=float)
        his = np.array([pc.hi for pc in self.pieces])
        totals = np.array([piece_partial(pc, pc.hi) for pc in self.pieces])
        prefix = np.concatenate([[0.0], np.cumsum(totals)])
        idx = np.clip(np.searchsorted(his, ts, side="left"), 0, len(self.pieces) - 1)
        out = prefix[idx].copy()
        for i, pc in enumerate(self.pieces):
            mask = idx == i
            if mask.any():
                out[mask] += piece_partial(pc, ts[mask])
        return out

    def cum_mean(self, ts: np.ndarray) -> np.ndarray:
        """``int_0^t phi`` at each t (vectorized, exact antiderivatives)."""

        def partial(pc: Piece, t):
            t = np.asarray(t, dtype=float)
            if isinstance(pc, ConstantPiece):
                return pc.value * (t - pc.lo)
            with np.errstate(divide="ignore", invalid="ignore"):
                anti_t = np.where(
                    t > 0.0, pc.u * t + pc.xi * t * (np.log(pc.alpha / np.maximum(t, 1e-300)) + 1.0), 0.0
                )
            anti_lo = 0.0 if pc.lo == 0.0 else (
                pc.u * pc.lo + pc.xi * pc.lo * (math.log(pc.alpha / pc.lo) + 1.0)
            )
            return anti_t - anti_lo

        return self._cumulative(ts, partial)

    def cum_exp(self, ts: np.ndarray) -> np.ndarray:
        """``int_0^t exp(phi)`` at each t; requires integrability from 0."""
        if not self.exp_integrable_from_zero():
            raise ValueError("exp(phi) is not integrable near 0 (ramp with xi >= 1)")

        def partial(pc: Piece, t):
            t = np.asarray(t, dtype=float)
            if isinstance(pc, ConstantPiece):
                return math.exp(pc.value) * (t - pc.lo)
            pw = 1.0 - pc.xi
            if pc.xi == 1.0:
                return math.exp(pc.u) * pc.alpha * (np.log(t) - math.log(pc.lo))
            scale = math.exp(pc.u) * pc.alpha ** pc.xi / pw
            lo_pw = 0.0 if pc.lo == 0.0 else pc.lo ** pw
            return scale * (t ** pw - lo_pw)

        return self._cumulative(ts, partial)

    def cum_square(self, ts: np.ndarray) -> np.ndarray:
        """``int_0^t phi^2`` at each t (used by the quadratic-oscillation scan)."""

        def partial(pc: Piece, t):
            t = np.asarray(t, dtype=float)
            if isinstance(pc, ConstantPiece):
                return pc.value ** 2 * (t - pc.lo)

            def anti(tau):
                tau = np.asarray(tau, dtype=float)
                with np.errstate(divide="ignore", invalid="ignore"):
                    val = pc.u + pc.xi * np.log(pc.alpha / np.maximum(tau, 1e-300))
                    res = tau * (val * val + 2.0 * pc.xi * val + 2.0 * pc.xi * pc.xi)
                return np.where(tau > 0.0, res, 0.0)

            return anti(t) - anti(pc.lo)

        return self._cumulative(ts, partial)

    # -- serialization -------------------------------------------------------

    def to_json(self) -> str:
        """JSON with full-precision decimal fields and stable key order."""
        pieces = []
        for pc in self.pieces:
            if isinstance(pc, ConstantPiece):
                pieces.append(
                    {"kind": "constant", "lo": pc.lo, "hi": pc.hi, "value": pc.value}
                )
            else:
                pieces.append(
                    {
                        "kind": "log_ramp",
                        "lo": pc.lo,
                        "hi": pc.hi,
                        "u": pc.u,
                        "xi": pc.xi,
                        "alpha": pc.alpha,
                    }
                )
        return json.dumps({"pieces": pieces}, indent=2)

    @staticmethod
    def from_json(text: str) -> "PiecewiseLogStep":
        data = json.loads(text)
        out: list[Piece] = []
        for rec in data["pieces"]:
            if rec["kind"] == "constant":
                out.append(ConstantPiece(rec["lo"], rec["hi"], rec["value"]))
            elif rec["kind"] == "log_ramp":
                out.append(
                    LogRampPiece(rec["lo"], rec["hi"], rec["u"], rec["xi"], rec["alpha"])
                )
            else:
                raise ValueError(f"unknown piece kind {rec['kind']!r}")
        return PiecewiseLogStep(tuple(out))


def _build(pieces: Sequence[Piece]) -> PiecewiseLogStep:
    """Drop empty pieces and seal the remainder into a function on (0,1)."""
    kept = tuple(pc for pc in pieces if pc.hi - pc.lo > _WIDTH_TOL)
    return PiecewiseLogStep(kept)


# ---------------------------------------------------------------------------
# requested integrands

@dataclass(frozen=True)
class AbsPower:
    """``f(z) = |z|^p``."""

    p: float


@dataclass(frozen=True)
class ExpScale:
    """``f(z) = exp(delta z)``."""

    delta: float


@dataclass(frozen=True)
class Indicator:
    """``f(z) = 1 if z >= level else 0``."""

    level: float


FunctionKind = Union[AbsPower, ExpScale, Indicator]


@dataclass(frozen=True)
class AverageTriple:
    """``(<phi>, <exp(phi)>, <f(phi)>)`` over an interval, with provenance."""

    mean: float
    exp_mean: float
    f_mean: float
    method: str  # "closed_form" | "quadrature"


# ---------------------------------------------------------------------------
# constructors

def scaled_log(eps: float) -> PiecewiseLogStep:
    """The function ``eps * log(1/t)`` on (0,1)."""
    if eps == 0.0:
        return _build([ConstantPiece(0.0, 1.0, 0.0)])
    return _build([LogRampPiece(0.0, 1.0, 0.0, eps, 1.0)])


def optimizer_plus(
    x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> PiecewiseLogStep:
    """Extremizer along the right tangent: a log ramp landing on a plateau.

    Attains the minimal p-th moment (``1 < p <= 2``) and the maximal
    ``exp(delta phi)`` mean at ``x``.
    """
    if on_lower_boundary(x, tol) or params.C == 1.0:
        return _build([ConstantPiece(0.0, 1.0, x.x1)])
    u = solve_u(x, params, "plus", tol)
    alpha = min((x.x1 - u) / params.xi_plus, 1.0)
    return _build(
        [
            LogRampPiece(0.0, alpha, u, params.xi_plus, alpha),
            ConstantPiece(alpha, 1.0, u),
        ]
    )


def optimizer_minus(
    x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> PiecewiseLogStep:
    """Extremizer along the left tangent: a downward ramp, then a plateau.

    Attains the maximal second moment at ``x``.
    """
    if on_lower_boundary(x, tol) or params.C == 1.0:
        return _build([ConstantPiece(0.0, 1.0, x.x1)])
    u = solve_u(x, params, "minus", tol)
    alpha = min((x.x1 - u) / params.xi_minus, 1.0)
    return _build(
        [
            LogRampPiece(0.0, alpha, u, params.xi_minus, alpha),
            ConstantPiece(alpha, 1.0, u),
        ]
    )


def step_optimizer(
    x: Point, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> PiecewiseLogStep:
    """Extremizer for the minimal absolute mean: a two- or three-level step."""
    if on_lower_boundary(x, tol) or params.C == 1.0:
        return _build([ConstantPiece(0.0, 1.0, x.x1)])
    xm, xp = params.xi_minus, params.xi_plus
    gap = xp - xm
    region = abs_mean_region(x, params, tol)
    if region is ThreeRegion.RIGHT:
        u = solve_u(x, params, "plus", tol)
        beta = (x.x1 - u) / gap
        return _build(
            [ConstantPiece(0.0, beta, u + gap), ConstantPiece(beta, 1.0, u)]
        )
    if region is ThreeRegion.LEFT:
        u = solve_u(x, params, "minus", tol)
        beta = (u - x.x1) / gap
        return _build(
            [ConstantPiece(0.0, 1.0 - beta, u), ConstantPiece(1.0 - beta, 1.0, u - gap)]
        )
    scale = (x.x2 - 1.0) * (1.0 - xm) * (1.0 - xp)
    gamma_p = (scale - x.x1 * (1.0 - xp)) / gap ** 2
    gamma_m = (scale - x.x1 * (1.0 - xm)) / gap ** 2
    return _build(
        [
            ConstantPiece(0.0, gamma_p, gap),
            ConstantPiece(gamma_p, 1.0 - gamma_m, 0.0),
            ConstantPiece(1.0 - gamma_m, 1.0, -gap),
        ]
    )


def indicator_optimizer(
    x: Point, lam: float, params: DomainParams, tol: Tolerance = DEFAULT_TOL
) -> PiecewiseLogStep:
    """Extremizer for the maximal measure of ``{phi >= lam}`` at ``x``."""
    if on_lower_boundary(x, tol) or params.C == 1.0:
        return _build([ConstantPiece(0.0, 1.0, x.x1)])
    region = tail_region(x, lam, params, tol)
    if region in (FourRegion.PLATEAU, FourRegion.AFFINE_STRIP):
        recentred = Point(x.x1 - lam, x.x2 * math.exp(-lam))
        return step_optimizer(recentred, params, tol).shift(lam)
    xm, xp = params.xi_minus, params.xi_plus
    if region is FourRegion.SECANT_FAN:
        v = solve_v(x, lam, params, tol)
        mu = (x.x1 - v) / (lam - v)
        return _build(
            [ConstantPiece(0.0, mu, lam), ConstantPiece(mu, 1.0, v)]
        )
    # Exponential region: plateau at lam, dip, ramp, final plateau.
    u = solve_u(x, params, "plus", tol)
    alpha = min((x.x1 - u) / xp, 1.0)
    beta = (x.x1 - u) / (xp - xm)
    tau = math.exp(min((u + xp - xm - lam) / xp, _EXP_CLIP))
    return _build(
        [
            ConstantPiece(0.0, tau * beta, lam),
            ConstantPiece(tau * beta, tau * alpha, lam + xm - xp),
            LogRampPiece(tau * alpha, alpha, u, xp, alpha),
            ConstantPiece(alpha, 1.0, u),
        ]
    )


# ---------------------------------------------------------------------------
# truncation

def cutoff(phi: PiecewiseLogStep, c: float, d: float) -> PiecewiseLogStep:
    """``min(max(phi, c), d)`` as a piecewise function; requires ``c < d``.

    Ramp pieces split at the closed-form level crossings.
    """
    if not c < d:
        raise DomainError(f"cutoff needs c < d, got c={c}, d={d}")
    out: list[Piece] = []
    for pc in phi.pieces:
        if isinstance(pc, ConstantPiece):
            out.append(ConstantPiece(pc.lo, pc.hi, min(max(pc.value, c), d)))
            continue
        t_c = pc.crossing(c)
        t_d = pc.crossing(d)
        if pc.xi > 0.0:
            # Decreasing: clipped at d near lo, at c near hi.
            hi_d = min(max(t_d, pc.lo), pc.hi)
            lo_c = min(max(t_c, pc.lo), pc.hi)
            if hi_d > pc.lo:
                out.append(ConstantPiece(pc.lo, hi_d, d))
            if lo_c > hi_d:
                out.append(LogRampPiece(hi_d, lo_c, pc.u, pc.xi, pc.alpha))
            if pc.hi > lo_c:
                out.append(ConstantPiece(lo_c, pc.hi, c))
        else:
            # Increasing: clipped at c near lo, at d near hi.
            hi_c = min(max(t_c, pc.lo), pc.hi)
            lo_d = min(max(t_d, pc.lo), pc.hi)
            if hi_c > pc.lo:
                out.append(ConstantPiece(pc.lo, hi_c, c))
            if lo_d > hi_c:
                out.append(LogRampPiece(hi_c, lo_d, pc.u, pc.xi, pc.alpha))
            if pc.hi > lo_d:
                out.append(ConstantPiece(lo_d, pc.hi, d))
    return _build(out)


# ---------------------------------------------------------------------------
# averages and measures

def measure_above(
    phi: PiecewiseLogStep, level: float, interval: tuple[float, float] = (0.0, 1.0)
) -> float:
    """Exact Lebesgue measure of ``{t in (a,b): phi(t) >= level}``."""
    a, b = interval
    return sum(
        _piece_measure_above(pc, level, s, t) for pc, s, t in phi._overlaps(a, b)
    )


def measure_below(
    phi: PiecewiseLogStep, level: float, interval: tuple[float, float] = (0.0, 1.0)
) -> float:
    """Exact Lebesgue measure of ``{t in (a,b): phi(t) <= level}``."""
    return measure_above(phi.negate(), -level, interval)


def _closed_form_f(phi: PiecewiseLogStep, f: FunctionKind, a: float, b: float) -> float:
    if isinstance(f, AbsPower):
        return sum(_piece_int_abs_power(pc, f.p, s, t) for pc, s, t in phi._overlaps(a, b))
    if isinstance(f, ExpScale):
        return sum(
            _piece_int_exp_scale(pc, f.delta, s, t) for pc, s, t in phi._overlaps(a, b)
        )
    if isinstance(f, Indicator):
        return measure_above(phi, f.level, (a, b))
    raise TypeError(f"unsupported function kind {f!r}")


def _quad_piece(pc: Piece, g, s: float, t: float) -> float:
    """Adaptive quadrature of ``g(phi)`` over one piece; ``s == 0`` is handled
    by the exponential substitution ``tau = t * exp(-r)``.

    ``g`` must grow at most polynomially; exponential integrands go through
    ``_quad_piece_exp`` so the decay factor is folded into one exponent.
    """
    if isinstance(pc, ConstantPiece):
        return g(pc.value) * (t - s)
    if s > 0.0:
        return quad_hi(lambda tau: g(pc(tau)), s, t)
    base = pc.u + pc.xi * math.log(pc.alpha / t)
    return quad_hi(lambda r: g(base + pc.xi * r) * t * math.exp(-r), 0.0, np.inf)


def _quad_piece_exp(pc: Piece, delta: float, s: float, t: float) -> float:
    """Adaptive quadrature of ``exp(delta * phi)`` over one piece."""
    if isinstance(pc, ConstantPiece):
        return math.exp(delta * pc.value) * (t - s)
    if s > 0.0:
        return quad_hi(lambda tau: math.exp(delta * pc(tau)), s, t)
    base = pc.u + pc.xi * math.log(pc.alpha / t)
    rate = delta * pc.xi - 1.0  # < 0 when the integral converges
    return quad_hi(lambda r: t * math.exp(delta * base + rate * r), 0.0, np.inf)


def _quad_measure(phi: PiecewiseLogStep, level: float, a: float, b: float) -> float:
    """Measure of ``{phi >= level}`` located by bisection on each monotone piece.

    Independent of the closed-form crossing formula.
    """
    total = 0.0
    for pc, s, t in phi._overlaps(a, b):
        if isinstance(pc, ConstantPiece):
            total += (t - s) if pc.value >= level else 0.0
            continue
        v_s = pc(s) if s > 0.0 else (math.inf if pc.xi > 0 else -math.inf)
        v_t = pc(t)
        above_s, above_t = v_s >= level, v_t >= level
        if above_s and above_t:
            total += t - s
            continue
        if not above_s and not above_t:
            continue
        lo, hi = s, t
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            if (pc(mid) >= level) == above_s:
                lo = mid
            else:
                hi = mid
            if hi - lo <= 1e-16 * max(1.0, hi):
                break
        crossing = 0.5 * (lo + hi)
        total += (crossing - s) if above_s else (t - crossing)
    return total


def averages(
    phi: PiecewiseLogStep,
    f: FunctionKind,
    interval: tuple[float, float] = (0.0, 1.0),
    method: str = "closed_form",
) -> AverageTriple:
    """``(<phi>, <exp phi>, <f(phi)>)`` over ``interval``.

    ``method="closed_form"`` uses the exact per-piece antiderivatives;
    ``method="quadrature"`` re-derives every component by adaptive
    quadrature (bisection for indicator measures) as an independent check.
    Non-integrable exponentials yield ``inf``.
    """
    a, b = interval
    if not (0.0 <= a < b <= 1.0):
        raise DomainError(f"interval must satisfy 0 <= a < b <= 1, got ({a}, {b})")
    w = b - a
    if method == "closed_form":
        mean = phi.integral_mean(a, b) / w
        exp_mean = phi.integral_exp(a, b) / w
        f_val = _closed_form_f(phi, f, a, b) / w
        return AverageTriple(mean, exp_mean, f_val, "closed_form")
    if method != "quadrature":
        raise ValueError(f"unknown method {method!r}")
    mean = sum(_quad_piece(pc, lambda z: z, s, t) for pc, s, t in phi._overlaps(a, b)) / w
    if not phi.exp_integrable_from_zero() and a == 0.0:
        exp_mean = math.inf
    else:
        exp_mean = (
            sum(_quad_piece_exp(pc, 1.0, s, t) for pc, s, t in phi._overlaps(a, b)) / w
        )
    if isinstance(f, AbsPower):
        p = f.p
        f_val = (
            sum(
                _quad_piece(pc, lambda z: abs(z) ** p, s, t)
                for pc, s, t in phi._overlaps(a, b)
            )
            / w
        )
    elif isinstance(f, ExpScale):
        delta = f.delta
        first = phi.pieces[0]
        divergent = (
            a == 0.0
            and isinstance(first, LogRampPiece)
            and first.lo == 0.0
            and delta * first.xi >= 1.0
        )
        if divergent:
            f_val = math.inf
        else:
            f_val = (
                sum(_quad_piece_exp(pc, delta, s, t) for pc, s, t in phi._overlaps(a, b))
                / w
            )
    elif isinstance(f, Indicator):
        f_val = _quad_measure(phi, f.level, a, b) / w
    else:
        raise TypeError(f"unsupported function kind {f!r}")
    return AverageTriple(mean, exp_mean, f_val, "quadrature")
