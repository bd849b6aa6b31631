"""Independent verification engine.

Everything the library states in closed form is re-derived here by a
second route: characteristic and oscillation scanners over dyadic plus
geometric interval families, quadrature cross-checks, convexity and
Monge-Ampere certification of the candidate surfaces, a replay of the
splitting induction on step functions, and end-to-end checks of the
headline inequalities.  Results are returned as structured reports.
"""

from __future__ import annotations

import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .candidates import (
    max_exp_mean,
    max_square_mean,
    max_tail_measure,
    min_abs_mean,
    min_power_mean,
    slope_gradient,
    tail_measure_envelope,
)
from .constants import (
    DomainParams,
    bp_threshold,
    eps0,
    jn_sharp_C,
    k_of_C,
    solve_xi,
    weak_type_bound,
)
from .domain import Point, in_domain, segment_in_domain, solve_u
from .errors import BelowThresholdWarning, ConvergenceError, DomainError
from .optimizers import (
    AbsPower,
    ConstantPiece,
    ExpScale,
    Indicator,
    LogRampPiece,
    PiecewiseLogStep,
    abs_power_integral,
    averages,
    cutoff,
    indicator_optimizer,
    measure_above,
    measure_below,
    optimizer_minus,
    optimizer_plus,
    scaled_log,
    step_optimizer,
)
from .rootfind import DEFAULT_TOL, Tolerance

__all__ = [
    "ScanConfig",
    "VerificationReport",
    "StepFunction2",
    "sample_point",
    "sample_optimizer",
    "scan_ainfty",
    "scan_bmo_norm",
    "oscillation",
    "find_split",
    "bellman_induct",
    "check_boundary_values",
    "check_optimizers",
    "check_admissibility",
    "check_cutoff",
    "check_convexity",
    "check_monge_ampere",
    "check_gradients",
    "check_norm_bounds",
    "check_self_improvement",
    "check_tail_envelope",
    "check_weak_jn",
    "check_asymptotics",
    "check_induction",
    "SUITES",
    "run_suite",
]


# ---------------------------------------------------------------------------
# configuration and reports

@dataclass(frozen=True)
class ScanConfig:
    """Controls the interval families and sampling volume of all checks."""

    grid_depth: int = 12
    geometric_refine_at_zero: bool = True
    tol: Tolerance = DEFAULT_TOL
    samples: int = 200

    def __post_init__(self):
        if self.grid_depth < 1:
            raise ValueError(f"grid_depth must be >= 1, got {self.grid_depth}")


@dataclass
class VerificationReport:
    """Structured pass/fail record of one check."""

    name: str
    passed: bool
    worst_residual: float
    worst_witness: str
    tolerance_used: float
    flags: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "worst_residual": self.worst_residual,
            "worst_witness": self.worst_witness,
            "tolerance_used": self.tolerance_used,
            "flags": list(self.flags),
        }

    def to_text(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        line = (
            f"[{status}] {self.name}: worst residual {self.worst_residual:.3e} "
            f"(tolerance {self.tolerance_used:.3e})"
        )
        if self.worst_witness:
            line += f" at {self.worst_witness}"
        if self.flags:
            line += f" flags={','.join(self.flags)}"
        return line


class _Worst:
    """Accumulates the largest residual and its witness."""

    def __init__(self):
        self.residual = 0.0
        self.witness = ""

    def update(self, residual: float, witness: str):
        if residual > self.residual:
            self.residual = residual
            self.witness = witness

    def report(self, name: str, tolerance: float, flags: list[str] | None = None) -> VerificationReport:
        return VerificationReport(
            name=name,
            passed=self.residual <= tolerance,
            worst_residual=self.residual,
            worst_witness=self.witness,
            tolerance_used=tolerance,
            flags=flags or [],
        )


def reports_to_json(reports: list[VerificationReport]) -> str:
    return json.dumps([r.to_dict() for r in reports], indent=2)


# ---------------------------------------------------------------------------
# random admissible samples

def sample_point(
    params: DomainParams,
    rng: np.random.Generator,
    x1_range: tuple[float, float] = (-3.0, 3.0),
    margin: float = 1e-4,
) -> Point:
    """A random point of the strip, log-uniform in height, off the boundaries."""
    x1 = rng.uniform(*x1_range)
    log_r = rng.uniform(math.log1p(margin), math.log(params.C) - margin)
    return Point(x1, math.exp(x1) * math.exp(log_r))


_FAMILIES = ("plus", "minus", "step", "indicator")


def sample_optimizer(
    params: DomainParams,
    rng: np.random.Generator,
    family: str | None = None,
) -> PiecewiseLogStep:
    """A random extremal function for a random point of the strip."""
    x = sample_point(params, rng)
    family = family or _FAMILIES[rng.integers(len(_FAMILIES))]
    if family == "plus":
        return optimizer_plus(x, params)
    if family == "minus":
        return optimizer_minus(x, params)
    if family == "step":
        return step_optimizer(x, params)
    if family == "indicator":
        lam = x.x1 + _level_offset(params, rng)
        return indicator_optimizer(x, lam, params)
    raise ValueError(f"unknown optimizer family {family!r}")


def _level_offset(params: DomainParams, rng: np.random.Generator) -> float:
    """Random level offset wide enough to reach all four tail regions."""
    gap = max(params.xi_plus - params.xi_minus, 0.5)
    return rng.uniform(-1.0, 1.5 * gap)


# ---------------------------------------------------------------------------
# scanners

def _geometric_points(max_k: int = 50) -> np.ndarray:
    return 0.5 ** np.arange(1, max_k + 1)


def scan_ainfty(
    phi: PiecewiseLogStep, cfg: ScanConfig
) -> tuple[float, tuple[float, float]]:
    """Supremum of ``<exp(phi)>_J exp(-<phi>_J)`` over the scanned family.

    The family consists of all dyadic subintervals of (0,1) down to
    ``grid_depth`` plus, optionally, the geometric family ``(0, 2^-k)``
    accumulating at the left endpoint.  Returns the maximum and the
    maximizing interval; non-integrable exponentials give ``inf``.
    """
    if not phi.exp_integrable_from_zero():
        return math.inf, (0.0, phi.pieces[0].hi)
    n = 1 << cfg.grid_depth
    ts = np.arange(n + 1) / n
    cm = phi.cum_mean(ts)
    ce = phi.cum_exp(ts)
    best = -math.inf
    witness = (0.0, 1.0)
    for level in range(cfg.grid_depth + 1):
        stride = 1 << (cfg.grid_depth - level)
        width = stride / n
        sub_m = cm[::stride]
        sub_e = ce[::stride]
        means = np.diff(sub_m) / width
        exps = np.diff(sub_e) / width
        chars = exps * np.exp(-means)
        i = int(np.argmax(chars))
        if chars[i] > best:
            best = float(chars[i])
            witness = (i * width, (i + 1) * width)
    if cfg.geometric_refine_at_zero:
        bs = _geometric_points()
        means = phi.cum_mean(bs) / bs
        exps = phi.cum_exp(bs) / bs
        chars = exps * np.exp(-means)
        i = int(np.argmax(chars))
        if chars[i] > best:
            best = float(chars[i])
            witness = (0.0, float(bs[i]))
    return best, witness


def oscillation(
    phi: PiecewiseLogStep, p: float, a: float = 0.0, b: float = 1.0
) -> float:
    """``<|phi - <phi>_J|^p>_J^(1/p)`` over ``J = (a, b)``, in closed form."""
    w = b - a
    m = phi.integral_mean(a, b) / w
    return (abs_power_integral(phi, p, a, b, center=m) / w) ** (1.0 / p)


def _interval_family(cfg: ScanConfig) -> list[tuple[float, float]]:
    out: list[tuple[float, float]] = []
    for level in range(cfg.grid_depth + 1):
        n = 1 << level
        width = 1.0 / n
        out.extend(((i * width, (i + 1) * width) for i in range(n)))
    if cfg.geometric_refine_at_zero:
        out.extend(((0.0, float(b)) for b in _geometric_points()))
    return out


def scan_bmo_norm(
    phi: PiecewiseLogStep, p: float, cfg: ScanConfig
) -> tuple[float, tuple[float, float]]:
    """Supremum of the p-oscillation over the scanned interval family."""
    best = -math.inf
    witness = (0.0, 1.0)
    for a, b in _interval_family(cfg):
        val = oscillation(phi, p, a, b)
        if val > best:
            best = val
            witness = (a, b)
    return best, witness


# ---------------------------------------------------------------------------
# step functions and the splitting induction

@dataclass(frozen=True)
class StepFunction2:
    """A finite step function on (0,1) with exact mean/exp-mean arithmetic.

    ``breaks`` has one more entry than ``values``; the derived point of an
    interval is the pair of its mean and exponential mean, which both follow
    from prefix sums with no quadrature error.
    """

    breaks: tuple[float, ...]
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.breaks) != len(self.values) + 1:
            raise ValueError("breaks must have exactly one more entry than values")
        if abs(self.breaks[0]) > 1e-15 or abs(self.breaks[-1] - 1.0) > 1e-15:
            raise ValueError("breaks must run from 0 to 1")
        if any(b >= c for b, c in zip(self.breaks, self.breaks[1:])):
            raise ValueError("breaks must be strictly increasing")
        if not all(math.isfinite(v) for v in self.values):
            raise ValueError("values must be finite")

    @staticmethod
    def from_piecewise(phi: PiecewiseLogStep, n: int) -> "StepFunction2":
        """Discretize by exact cell means on a uniform n-cell grid."""
        edges = np.arange(n + 1) / n
        vals = [
            phi.integral_mean(edges[i], edges[i + 1]) * n for i in range(n)
        ]
        return StepFunction2(tuple(float(e) for e in edges), tuple(vals))

    def to_piecewise(self) -> PiecewiseLogStep:
        pieces = tuple(
            ConstantPiece(self.breaks[i], self.breaks[i + 1], self.values[i])
            for i in range(len(self.values))
        )
        return PiecewiseLogStep(pieces)

    def _partial(self, weights: tuple[float, ...], t: float) -> float:
        total = 0.0
        for i, v in enumerate(weights):
            lo, hi = self.breaks[i], self.breaks[i + 1]
            if t <= lo:
                break
            total += v * (min(t, hi) - lo)
        return total

    def mean_exp(self, a: float, b: float) -> tuple[float, float]:
        """Exact ``(<phi>, <exp phi>)`` over ``(a, b)``."""
        w = b - a
        exps = tuple(math.exp(v) for v in self.values)
        return (
            (self._partial(self.values, b) - self._partial(self.values, a)) / w,
            (self._partial(exps, b) - self._partial(exps, a)) / w,
        )

    def abs_power_mean(self, p: float, a: float, b: float) -> float:
        """Exact ``<|phi|^p>`` over ``(a, b)``."""
        pw = tuple(abs(v) ** p for v in self.values)
        return (self._partial(pw, b) - self._partial(pw, a)) / (b - a)

    def point_over(self, a: float, b: float) -> Point:
        m, e = self.mean_exp(a, b)
        return Point(m, e)

    def constant_on(self, a: float, b: float) -> bool:
        """Whether (a, b) lies inside a single step."""
        import bisect

        i = bisect.bisect_right(self.breaks, a)
        return i < len(self.breaks) and b <= self.breaks[i] + 1e-15


def find_split(
    phi: StepFunction2,
    interval: tuple[float, float],
    C1: float,
    cfg: ScanConfig,
) -> float:
    """A split point of ``interval`` whose child points join inside the strip
    of ``C1``.

    Ratios are searched outward from 1/2 on grids of increasing resolution;
    existence is guaranteed when the characteristic of the function is below
    ``C1``, so exhaustion indicates a tolerance problem and raises.
    """
    a, b = interval
    grid = 8
    while grid <= 512:
        ratios = [0.5]
        for j in range(1, grid):
            ratios.append(0.5 + j / (2.0 * grid))
            ratios.append(0.5 - j / (2.0 * grid))
        for r in ratios:
            s = a + r * (b - a)
            left = phi.point_over(a, s)
            right = phi.point_over(s, b)
            try:
                ok = segment_in_domain(left, right, C1, cfg.tol)
            except DomainError:
                continue
            if ok:
                return s
        grid *= 2
    raise ConvergenceError(
        f"no admissible split of ({a}, {b}) found for C1={C1}", bracket=(a, b)
    )


def bellman_induct(
    phi: StepFunction2,
    p: float,
    C1: float,
    depth: int,
    cfg: ScanConfig,
) -> VerificationReport:
    """Replay the splitting induction for the minimal p-th moment.

    Splits recursively via :func:`find_split`, checks the convexity
    inequality at every node, closes each leaf with the exact step-function
    moment, and finally checks the global inequality at the root.  The
    report's residual is the most negative slack seen (as a positive
    number); nonnegative slack everywhere is a pass.
    """
    if p != 1.0 and C1 < bp_threshold(p):
        raise DomainError(
            f"C1={C1} below e^(p-2)/(p-1)={bp_threshold(p):.6g}: "
            "the candidate is not locally convex there"
        )
    params1 = solve_xi(C1, cfg.tol)

    def bval(pt: Point) -> float:
        if p == 1.0:
            return min_abs_mean(pt, params1, cfg.tol)
        return min_power_mean(pt, p, params1, cfg.tol)

    worst = _Worst()
    stats = {"nodes": 0, "theta_min": 0.5}

    def recurse(a: float, b: float, level: int) -> None:
        stats["nodes"] += 1
        x_node = phi.point_over(a, b)
        v_node = bval(x_node)
        if phi.constant_on(a, b) or level >= depth:
            exact = phi.abs_power_mean(p, a, b)
            worst.update(v_node - exact, f"leaf ({a:.6g}, {b:.6g})")
            return
        s = find_split(phi, (a, b), C1, cfg)
        theta = (s - a) / (b - a)
        stats["theta_min"] = min(stats["theta_min"], theta, 1.0 - theta)
        v_left = bval(phi.point_over(a, s))
        v_right = bval(phi.point_over(s, b))
        slack = theta * v_left + (1.0 - theta) * v_right - v_node
        worst.update(-slack, f"node ({a:.6g}, {b:.6g}) split {s:.6g}")
        recurse(a, s, level + 1)
        recurse(s, b, level + 1)

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        recurse(0.0, 1.0, 0)
        root_slack = phi.abs_power_mean(p, 0.0, 1.0) - bval(phi.point_over(0.0, 1.0))
    worst.update(-root_slack, "root (0, 1)")
    flags = [f"nodes={stats['nodes']}", f"theta_min={stats['theta_min']:.4g}"]
    return worst.report(f"induction p={p} C1={C1:.6g}", 1e-9, flags)


def random_step_function(
    params: DomainParams,
    rng: np.random.Generator,
    max_steps: int = 32,
) -> StepFunction2:
    """A random admissible step function: a discretized random extremizer."""
    n = int(rng.integers(4, max_steps + 1))
    phi = sample_optimizer(params, rng)
    return StepFunction2.from_piecewise(phi, n)


# ---------------------------------------------------------------------------
# theorem-level checks

def _relative_gap(value: float, target: float, scale: float = 1.0) -> float:
    return abs(value - target) / max(scale, abs(target))


def check_boundary_values(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Every candidate agrees with its generator on the lower boundary."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        for _ in range(cfg.samples):
            t = rng.uniform(-3.0, 3.0)
            x = Point(t, math.exp(t))
            p = rng.uniform(1.01, 2.0)
            delta = rng.uniform(1.0, 0.99 / max(params.xi_plus, 1e-12)) if params.xi_plus > 0 else 1.0
            lam = t + rng.uniform(-1.0, 1.0)
            checks = [
                (min_power_mean(x, p, params, cfg.tol), abs(t) ** p, f"p-moment t={t:.4g}"),
                (min_abs_mean(x, params, cfg.tol), abs(t), f"abs-moment t={t:.4g}"),
                (max_square_mean(x, params, cfg.tol), t * t, f"square t={t:.4g}"),
                (max_exp_mean(x, delta, params, cfg.tol), math.exp(delta * t), f"exp t={t:.4g}"),
                (
                    max_tail_measure(x, lam, params, cfg.tol),
                    1.0 if t >= lam else 0.0,
                    f"tail t={t:.4g} lam={lam:.4g}",
                ),
            ]
            for got, want, label in checks:
                worst.update(abs(got - want) / max(1.0, abs(want)), label)
    return worst.report(f"boundary values C={C:.6g}", 1e-10)


def check_optimizers(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Constraint reproduction, optimality, and closed-form/quadrature agreement."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        for _ in range(cfg.samples):
            x = sample_point(params, rng)
            p = rng.uniform(1.01, 2.0)
            lam = x.x1 + _level_offset(params, rng)
            cases = [
                ("plus", optimizer_plus(x, params, cfg.tol), AbsPower(p),
                 min_power_mean(x, p, params, cfg.tol)),
                ("minus", optimizer_minus(x, params, cfg.tol), AbsPower(2.0),
                 max_square_mean(x, params, cfg.tol)),
                ("step", step_optimizer(x, params, cfg.tol), AbsPower(1.0),
                 min_abs_mean(x, params, cfg.tol)),
                ("indicator", indicator_optimizer(x, lam, params, cfg.tol),
                 Indicator(lam), max_tail_measure(x, lam, params, cfg.tol)),
            ]
            for name, phi, f, target in cases:
                closed = averages(phi, f)
                worst.update(abs(closed.mean - x.x1) / max(1.0, abs(x.x1)),
                             f"{name} mean at x=({x.x1:.4g},{x.x2:.4g})")
                worst.update(abs(closed.exp_mean - x.x2) / x.x2,
                             f"{name} exp mean at x=({x.x1:.4g},{x.x2:.4g})")
                worst.update(_relative_gap(closed.f_mean, target),
                             f"{name} value at x=({x.x1:.4g},{x.x2:.4g})")
                quad = averages(phi, f, method="quadrature")
                worst.update(_relative_gap(quad.f_mean, closed.f_mean),
                             f"{name} oracle at x=({x.x1:.4g},{x.x2:.4g})")
                worst.update(abs(quad.mean - closed.mean), f"{name} oracle mean")
                worst.update(_relative_gap(quad.exp_mean, closed.exp_mean),
                             f"{name} oracle exp mean")
    return worst.report(f"optimizer optimality C={C:.6g}", 1e-8)


def check_admissibility(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Scanned characteristic of every constructed extremizer stays <= C,
    and the ramp extremizer attains it."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    for _ in range(cfg.samples):
        x = sample_point(params, rng)
        lam = x.x1 + _level_offset(params, rng)
        functions = [
            ("plus", optimizer_plus(x, params, cfg.tol)),
            ("minus", optimizer_minus(x, params, cfg.tol)),
            ("step", step_optimizer(x, params, cfg.tol)),
            ("indicator", indicator_optimizer(x, lam, params, cfg.tol)),
        ]
        for name, phi in functions:
            char, witness = scan_ainfty(phi, cfg)
            worst.update((char - C) / C,
                         f"{name} char at x=({x.x1:.4g},{x.x2:.4g}) J={witness}")
    top = optimizer_plus(Point(0.0, C), params, cfg.tol)
    char, witness = scan_ainfty(top, cfg)
    attain = abs(char - C) / C
    report = worst.report(f"admissibility C={C:.6g}", 1e-6)
    report.flags.append(f"attainment_residual={attain:.3e}")
    if attain > 1e-4:
        report.passed = False
        report.worst_residual = max(report.worst_residual, attain)
        report.worst_witness = f"attainment at (0,C) J={witness}"
    return report


def check_cutoff(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Truncation never increases the characteristic, on every scanned interval."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    small_cfg = ScanConfig(grid_depth=min(cfg.grid_depth, 8),
                           geometric_refine_at_zero=cfg.geometric_refine_at_zero,
                           tol=cfg.tol, samples=cfg.samples)
    for _ in range(max(10, cfg.samples // 10)):
        phi = sample_optimizer(params, rng)
        lo, hi = phi.value_range()
        base = lo if math.isfinite(lo) else -5.0
        top = hi if math.isfinite(hi) else 5.0
        c = base + rng.uniform(0.0, 0.5) * (top - base)
        d = c + rng.uniform(0.1, 1.0) * (top - c) + 1e-6
        phic = cutoff(phi, c, d)
        for a, b in _interval_family(small_cfg):
            m0, e0_ = phi.mean_exp(a, b)
            m1, e1 = phic.mean_exp(a, b)
            # per-interval inequality for the normalized exponential means
            worst.update(e1 * math.exp(-m1) - e0_ * math.exp(-m0),
                         f"cutoff ({c:.4g},{d:.4g}) J=({a:.4g},{b:.4g})")
        char0, _ = scan_ainfty(phi, small_cfg)
        char1, _ = scan_ainfty(phic, small_cfg)
        worst.update(char1 - char0, f"cutoff char ({c:.4g},{d:.4g})")
    return worst.report(f"cutoff monotonicity C={C:.6g}", 1e-10)


_CONVEX_KINDS = ("min_power", "abs", "square", "exp", "tail")


def _candidate_value(kind: str, x: Point, params: DomainParams, extra: float,
                     tol: Tolerance) -> float:
    if kind == "min_power":
        return min_power_mean(x, extra, params, tol)
    if kind == "abs":
        return min_abs_mean(x, params, tol)
    if kind == "square":
        return max_square_mean(x, params, tol)
    if kind == "exp":
        return max_exp_mean(x, extra, params, tol)
    if kind == "tail":
        return max_tail_measure(x, extra, params, tol)
    raise ValueError(kind)


def check_convexity(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Midpoint inequality along random certified segments, per candidate.

    The minimal moments must be locally convex; the maximal ones locally
    concave.  Residual is the signed violation of the inequality.
    """
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    convex = {"min_power": True, "abs": True, "square": False, "exp": False, "tail": False}
    p = rng.uniform(1.1, 2.0)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        for kind in _CONVEX_KINDS:
            if kind == "min_power" and C < bp_threshold(p):
                continue
            if kind == "exp" and params.xi_plus > 0:
                extra = rng.uniform(1.0, 0.95 / params.xi_plus)
            elif kind == "min_power":
                extra = p
            elif kind == "tail":
                extra = rng.uniform(-1.0, 1.0)
            else:
                extra = 0.0
            count = 0
            while count < cfg.samples:
                a = sample_point(params, rng)
                b = sample_point(params, rng)
                if not segment_in_domain(a, b, C, cfg.tol):
                    continue
                count += 1
                alpha = rng.uniform(0.0, 1.0)
                mid = Point(alpha * a.x1 + (1 - alpha) * b.x1,
                            alpha * a.x2 + (1 - alpha) * b.x2)
                va = _candidate_value(kind, a, params, extra, cfg.tol)
                vb = _candidate_value(kind, b, params, extra, cfg.tol)
                vm = _candidate_value(kind, mid, params, extra, cfg.tol)
                chord = alpha * va + (1 - alpha) * vb
                violation = (vm - chord) if convex[kind] else (chord - vm)
                scale = max(1.0, abs(va), abs(vb))
                worst.update(violation / scale, f"{kind} segment near ({mid.x1:.4g},{mid.x2:.4g})")
    return worst.report(f"local convexity/concavity C={C:.6g}", 1e-9)


def _interior_point(
    params: DomainParams, rng: np.random.Generator, branch: str,
    u_range: tuple[float, float], s_range: tuple[float, float] = (0.15, 0.8),
) -> Point:
    """A point on a tangent line, parametrized by base abscissa and fraction."""
    xi = params.xi_plus if branch == "plus" else params.xi_minus
    u = rng.uniform(*u_range)
    s = rng.uniform(*s_range)
    x1 = u + s * xi
    x2 = math.exp(u) * (1.0 + s * xi / (1.0 - xi))
    return Point(x1, x2)


def _fd_steps(x: Point, params: DomainParams, rel: float) -> tuple[float, float]:
    """Finite-difference steps kept well inside the strip around ``x``."""
    gap_up = params.C * math.exp(x.x1) - x.x2
    gap_down = x.x2 - math.exp(x.x1)
    k = min(rel * x.x2, 0.25 * gap_up, 0.25 * gap_down)
    h = min(rel * (1.0 + abs(x.x1)), 0.25 * min(gap_up, gap_down) / x.x2)
    return max(h, 1e-9), max(k, 1e-9 * x.x2)


def check_monge_ampere(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Finite-difference Hessian determinant vanishes in each smooth region."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    n = max(50, cfg.samples // 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        p = 1.5 if C >= bp_threshold(1.5) else 2.0
        delta = 0.9 / params.xi_plus if params.xi_plus > 0 else 1.0
        delta = max(delta, 1.0)
        cases = [
            ("min_power right-of-tangent", "plus", (0.1, 1.5),
             lambda x: min_power_mean(x, p, params, cfg.tol)),
            ("min_power left-of-tangent", "plus", (-1.5, -0.1),
             lambda x: min_power_mean(x, p, params, cfg.tol)),
            ("square", "minus", (-1.0, 1.0),
             lambda x: max_square_mean(x, params, cfg.tol)),
            ("exp", "plus", (-1.0, 1.0),
             lambda x: max_exp_mean(x, delta, params, cfg.tol)),
        ]
        for label, branch, u_range, func in cases:
            for _ in range(n):
                x = _interior_point(params, rng, branch, u_range)
                h, k = _fd_steps(x, params, 1e-4)
                g = func
                g11 = (g(Point(x.x1 + h, x.x2)) - 2 * g(x) + g(Point(x.x1 - h, x.x2))) / h**2
                g22 = (g(Point(x.x1, x.x2 + k)) - 2 * g(x) + g(Point(x.x1, x.x2 - k))) / k**2
                g12 = (
                    g(Point(x.x1 + h, x.x2 + k))
                    - g(Point(x.x1 + h, x.x2 - k))
                    - g(Point(x.x1 - h, x.x2 + k))
                    + g(Point(x.x1 - h, x.x2 - k))
                ) / (4 * h * k)
                det = g11 * g22 - g12 * g12
                scale = abs(g11 * g22) + g12 * g12 + 1e-8
                worst.update(abs(det) / scale, f"{label} at ({x.x1:.4g},{x.x2:.4g})")
    return worst.report(f"Monge-Ampere residual C={C:.6g}", 1e-4)


def check_gradients(C: float, cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Analytic gradients of the tangent-coordinate candidates match central
    finite differences."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    n = max(50, cfg.samples // 4)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BelowThresholdWarning)
        delta = max(1.0, 0.9 / params.xi_plus) if params.xi_plus > 0 else 1.0
        cases = [
            ("min_power", "plus", dict(p=1.7), lambda x: min_power_mean(x, 1.7, params, cfg.tol)),
            ("max_square", "minus", dict(), lambda x: max_square_mean(x, params, cfg.tol)),
            ("max_exp", "plus", dict(delta=delta), lambda x: max_exp_mean(x, delta, params, cfg.tol)),
        ]
        for kind, branch, extra, func in cases:
            for _ in range(n):
                x = _interior_point(params, rng, branch, (0.05, 1.0))
                gx1, gx2 = slope_gradient(x, params, kind, tol=cfg.tol, **extra)
                h, k = _fd_steps(x, params, 1e-6)
                fd1 = (func(Point(x.x1 + h, x.x2)) - func(Point(x.x1 - h, x.x2))) / (2 * h)
                fd2 = (func(Point(x.x1, x.x2 + k)) - func(Point(x.x1, x.x2 - k))) / (2 * k)
                scale = max(1.0, abs(gx1), abs(gx2) * x.x2)
                worst.update(abs(fd1 - gx1) / scale, f"{kind} d/dx1 at ({x.x1:.4g},{x.x2:.4g})")
                worst.update(abs(fd2 - gx2) * x.x2 / scale, f"{kind} d/dx2 at ({x.x1:.4g},{x.x2:.4g})")
    return worst.report(f"slope-form gradients C={C:.6g}", 1e-7)


def check_norm_bounds(C: float, cfg: ScanConfig, seed: int = 0,
                      p_values: tuple[float, ...] = (1.0, 1.5, 2.0)) -> VerificationReport:
    """Oscillation bounds for logarithms of weights with characteristic C.

    The scaled logarithm attains the sharp p-oscillation and the sharp
    characteristic; random ramp extremizers respect the two-sided quadratic
    bound; the step extremizer at (0, C) realizes the absolute-mean bound on
    the full interval.
    """
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    flags: list[str] = []
    norm_cfg = ScanConfig(grid_depth=min(cfg.grid_depth, 8),
                          geometric_refine_at_zero=True, tol=cfg.tol,
                          samples=cfg.samples)
    top = scaled_log(params.xi_plus)
    char, _ = scan_ainfty(top, cfg)
    worst.update(abs(char - C) / C, "char of scaled log")
    for p in p_values:
        if p <= 1.0:
            continue
        if C < bp_threshold(p):
            flags.append(f"p={p}:below-threshold-skipped")
            continue
        target = eps0(p) * params.xi_plus
        norm, _ = scan_bmo_norm(top, p, norm_cfg)
        worst.update(abs(norm - target) / max(target, 1e-12), f"norm p={p} of scaled log")
    # Two-sided quadratic bound for random ramp extremizers.
    xm, xp = params.xi_minus, params.xi_plus
    for _ in range(max(5, cfg.samples // 20)):
        fam = "plus" if rng.uniform() < 0.5 else "minus"
        phi = sample_optimizer(params, rng, family=fam)
        norm2, _ = scan_bmo_norm(phi, 2.0, norm_cfg)
        worst.update((xp - norm2) / max(xp, 1e-12), f"{fam} lower quad bound")
        worst.update((norm2 - abs(xm)) / max(abs(xm), 1e-12), f"{fam} upper quad bound")
    # Absolute-mean bound realized by the step extremizer at (0, C).
    psi = step_optimizer(Point(0.0, C), params, cfg.tol)
    full_osc = oscillation(psi, 1.0, 0.0, 1.0)
    kC = k_of_C(params)
    worst.update(abs(full_osc - kC) / max(kC, 1e-12), "full-interval abs oscillation at (0,C)")
    norm1, _ = scan_bmo_norm(psi, 1.0, norm_cfg)
    worst.update((kC - norm1) / max(kC, 1e-12), "scanned abs norm >= k(C)")
    return worst.report(f"oscillation bounds C={C:.6g}", 1e-4, flags)


def check_self_improvement(C: float, delta_grid: list[float],
                           cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """Scanned characteristic of the delta-th power matches its sharp bound."""
    params = solve_xi(C, cfg.tol)
    worst = _Worst()
    xp = params.xi_plus
    if xp == 0.0:
        return worst.report(f"self-improvement C={C:.6g}", 1e-3, ["C=1:trivial"])
    for delta in delta_grid:
        if not (1.0 <= delta < 1.0 / xp):
            continue
        eps = delta * xp
        bound = math.exp(-eps) / (1.0 - eps)
        char, witness = scan_ainfty(scaled_log(eps), cfg)
        worst.update(abs(char - bound) / bound, f"delta={delta:.6g} J={witness}")
    return worst.report(f"self-improvement C={C:.6g}", 1e-3)


def _envelope_maximizer(lam: float, params: DomainParams) -> Point:
    """The vertical-slice point at which the tail envelope is attained."""
    C, xm, xp = params.C, params.xi_minus, params.xi_plus
    if lam >= -xm:
        return Point(0.0, C)
    if lam >= 0.0:
        return Point(0.0, math.exp(lam) * (-C * math.exp(xm) * lam + 1.0))
    y = math.exp(lam) * (1.0 - lam * C * math.exp(xp))
    return Point(0.0, min(C, y))


def check_tail_envelope(C: float, lambda_grid: list[float],
                        cfg: ScanConfig, seed: int = 0) -> VerificationReport:
    """The distribution envelope is attained by the indicator extremizer at
    the maximizing point and never exceeded by random admissible samples."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    for lam in lambda_grid:
        envelope, simple = tail_measure_envelope(lam, params)
        if lam >= 0.0:
            worst.update(envelope - simple, f"envelope>simple lam={lam:.4g}")
        x_star = _envelope_maximizer(lam, params)
        eta = indicator_optimizer(x_star, lam, params, cfg.tol)
        mean = eta.integral_mean(0.0, 1.0)  # 0 at the maximizing points
        attained = measure_above(eta, mean + lam, (0.0, 1.0))
        worst.update(abs(attained - envelope), f"attainment lam={lam:.4g}")
    # dominance over random samples and subintervals
    n = cfg.samples
    for _ in range(n):
        phi = sample_optimizer(params, rng)
        a = rng.uniform(0.0, 0.9)
        b = rng.uniform(a + 0.05, 1.0)
        m, _e = phi.mean_exp(a, b)
        lam = rng.uniform(-1.0, 3.0)
        envelope, _s = tail_measure_envelope(lam, params)
        meas = measure_above(phi, m + lam, (a, b)) / (b - a)
        worst.update(meas - envelope - 0.0, f"dominance lam={lam:.4g} J=({a:.4g},{b:.4g})")
    return worst.report(f"tail envelope C={C:.6g}", 1e-6)


def check_weak_jn(p: float, phi: PiecewiseLogStep, lambda_grid: list[float],
                  cfg: ScanConfig) -> VerificationReport:
    """Weak-type exponential decay at the sharp rate for the scanned norm."""
    norm_cfg = ScanConfig(grid_depth=min(cfg.grid_depth, 8),
                          geometric_refine_at_zero=True, tol=cfg.tol,
                          samples=cfg.samples)
    norm, _ = scan_bmo_norm(phi, p, norm_cfg)
    if not norm > 0.0:
        raise DomainError("weak-type check needs a non-constant function")
    worst = _Worst()
    family = [(0.0, 1.0)] + _interval_family(
        ScanConfig(grid_depth=min(cfg.grid_depth, 6),
                   geometric_refine_at_zero=True, tol=cfg.tol, samples=cfg.samples)
    )
    for a, b in family:
        w = b - a
        m = phi.integral_mean(a, b) / w
        for lam in lambda_grid:
            if lam < 0:
                continue
            meas = measure_above(phi, m + lam, (a, b)) + measure_below(phi, m - lam, (a, b))
            meas = min(meas, w) / w
            bound = weak_type_bound(p, lam, norm)
            worst.update(meas - bound, f"J=({a:.4g},{b:.4g}) lam={lam:.4g}")
    return worst.report(f"weak-type decay p={p}", 1e-9)


def check_asymptotics(p: float, C_grid: list[float], cfg: ScanConfig) -> VerificationReport:
    """Growth of the extremal value at (0, C): monotone past the threshold
    and converging to the sharp constant, with inverse matching the sharp
    exponential-integrability bound."""
    worst = _Worst()
    flags: list[str] = []
    C0 = 1.0 if p == 1.0 else bp_threshold(p)
    target = eps0(p)

    def G(C: float) -> float:
        params = solve_xi(C, cfg.tol)
        x = Point(0.0, C)
        if p == 1.0:
            return min_abs_mean(x, params, cfg.tol)
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BelowThresholdWarning)
            return min_power_mean(x, p, params, cfg.tol) ** (1.0 / p)

    values = [(C, G(C)) for C in C_grid]
    prev = None
    for C, g in values:
        if C < C0:
            continue
        if prev is not None:
            worst.update(prev[1] - g, f"monotonicity at C={C:.6g}")
        prev = (C, g)
        worst.update(max(0.0, g - target), f"upper bound at C={C:.6g}")
    c_max, g_max = values[-1]
    worst.update(abs(g_max - target), f"limit at C={c_max:.6g}")
    if p > 1.0:
        # numeric inverse of G matches the sharp bound on the proven window
        for frac in (0.3, 0.6, 0.9):
            eps = ((2.0 - p) + frac * (p - 1.0)) * target
            eps = min(eps, target * (1.0 - 1e-6))
            direct = jn_sharp_C(eps, p)
            lo, hi = C0, c_max
            glo, ghi = G(lo), G(hi)
            if not (glo <= eps <= ghi):
                flags.append(f"eps={eps:.4g}:outside-grid")
                continue
            for _ in range(200):
                mid = 0.5 * (lo + hi)
                if G(mid) < eps:
                    lo = mid
                else:
                    hi = mid
                if hi - lo <= 1e-12 * hi:
                    break
            worst.update(abs(0.5 * (lo + hi) - direct) / direct, f"inverse at eps={eps:.4g}")
    else:
        flags.append("p=1:inverse-equals-k-inverse")
    return worst.report(f"asymptotics p={p}", 1e-3, flags)


def check_induction(C: float, cfg: ScanConfig, seed: int = 0,
                    count: int = 20, depth: int = 10) -> VerificationReport:
    """Induction replay over random admissible step functions."""
    params = solve_xi(C, cfg.tol)
    rng = np.random.default_rng(seed)
    worst = _Worst()
    scan_cfg = ScanConfig(grid_depth=min(cfg.grid_depth, 10),
                          geometric_refine_at_zero=False, tol=cfg.tol,
                          samples=cfg.samples)
    for i in range(count):
        step = random_step_function(params, rng)
        char, _ = scan_ainfty(step.to_piecewise(), scan_cfg)
        C1 = 1.05 * max(char, 1.0 + 1e-9)
        p = 2.0 if i % 2 == 0 else 1.0
        rep = bellman_induct(step, p, C1, depth, cfg)
        worst.update(rep.worst_residual, f"{rep.name} ({rep.worst_witness})")
    return worst.report(f"induction sweep C={C:.6g}", 1e-9)


# ---------------------------------------------------------------------------
# suites

SUITES = {
    "boundary": lambda cfg, seed: [check_boundary_values(2.0, cfg, seed),
                                   check_boundary_values(10.0, cfg, seed + 1)],
    "optimizers": lambda cfg, seed: [check_optimizers(1.5, cfg, seed),
                                     check_optimizers(4.0, cfg, seed + 1)],
    "admissibility": lambda cfg, seed: [check_admissibility(2.0, cfg, seed),
                                        check_admissibility(25.0, cfg, seed + 1)],
    "cutoff": lambda cfg, seed: [check_cutoff(3.0, cfg, seed)],
    "convexity": lambda cfg, seed: [check_convexity(2.0, cfg, seed),
                                    check_convexity(8.0, cfg, seed + 1)],
    "monge-ampere": lambda cfg, seed: [check_monge_ampere(2.0, cfg, seed)],
    "gradients": lambda cfg, seed: [check_gradients(2.0, cfg, seed)],
    "norms": lambda cfg, seed: [check_norm_bounds(2.0, cfg, seed),
                                check_norm_bounds(10.0, cfg, seed + 1)],
    "self-improvement": lambda cfg, seed: [
        check_self_improvement(2.0, list(np.linspace(1.0, 0.999 / solve_xi(2.0).xi_plus, 12)), cfg, seed)
    ],
    "envelope": lambda cfg, seed: [
        check_tail_envelope(2.0, list(np.linspace(-1.0, 4.0, 21)), cfg, seed)
    ],
    "weak-type": lambda cfg, seed: [
        check_weak_jn(p, scaled_log(1.0 - 1e-9), list(np.linspace(0.0, 5.0, 11)), cfg)
        for p in (1.5, 2.0)
    ],
    "induction": lambda cfg, seed: [check_induction(2.0, cfg, seed)],
    "asymptotics": lambda cfg, seed: [
        check_asymptotics(p, list(np.geomspace(1.2, 1e6, 25)), cfg) for p in (1.0, 1.5, 2.0)
    ],
}


def run_suite(name: str, cfg: ScanConfig, seed: int = 0) -> list[VerificationReport]:
    """Run one named suite (or ``"all"``) and return its reports."""
    if name == "all":
        out: list[VerificationReport] = []
        for key in sorted(SUITES):
            out.extend(SUITES[key](cfg, seed))
        return out
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; known: {', '.join(sorted(SUITES))}, all")
    return SUITES[name](cfg, seed)
