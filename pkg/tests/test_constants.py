import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad
from scipy.special import lambertw

from jnbellman import (
    DomainError,
    DomainParams,
    K_SUP,
    RangeError,
    Tolerance,
    bp_threshold,
    dist_lower_bound,
    eps0,
    hilbert_lower_bound,
    jn_bound_p1,
    jn_sharp_C,
    k_inverse,
    k_of_C,
    omega,
    solve_xi,
    weak_type_bound,
)


def xi_by_lambertw(C: float) -> tuple[float, float]:
    """Independent root oracle: exp(-xi) = C(1-xi) rewritten as
    w e^{-w} = 1/(e C) with w = 1 - xi gives both Lambert-W branches."""
    arg = -1.0 / (math.e * C)
    w_plus = -lambertw(arg, 0).real
    w_minus = -lambertw(arg, -1).real
    return 1.0 - w_minus, 1.0 - w_plus


class TestSolveXi:
    def test_unit_characteristic(self):
        p = solve_xi(1.0)
        assert p.xi_minus == 0.0 and p.xi_plus == 0.0

    def test_forward_evaluated_plus_root(self):
        # C chosen so that xi+ = 0.5 exactly: C = e^{-1/2} / (1 - 1/2)
        C = math.exp(-0.5) / 0.5
        assert solve_xi(C).xi_plus == pytest.approx(0.5, abs=1e-14)

    def test_forward_evaluated_minus_root(self):
        # C chosen so that xi- = -1 exactly: C = e / 2
        assert solve_xi(math.e / 2.0).xi_minus == pytest.approx(-1.0, abs=1e-14)

    def test_rejects_C_below_one(self):
        with pytest.raises(DomainError):
            solve_xi(0.999)
        with pytest.raises(DomainError):
            solve_xi(math.nan)

    def test_residuals_on_log_grid(self):
        for C in np.geomspace(1.0, 1e6, 200):
            p = solve_xi(float(C))
            for root in (p.xi_minus, p.xi_plus):
                assert abs(math.exp(-root) - C * (1.0 - root)) <= 1e-10 * C

    def test_monotone_roots_with_limits(self):
        grid = np.geomspace(1.0, 1e6, 200)
        roots = [solve_xi(float(C)) for C in grid]
        plus = [r.xi_plus for r in roots]
        minus = [r.xi_minus for r in roots]
        assert all(a < b for a, b in zip(plus, plus[1:]))
        assert all(a > b for a, b in zip(minus, minus[1:]))
        assert plus[-1] < 1.0 and plus[-1] > 0.999
        assert minus[-1] < -10.0

    def test_matches_lambertw_oracle(self):
        for C in (1.0001, 1.5, 2.0, 17.0, 3184.0, 1e6):
            p = solve_xi(C)
            xm, xp = xi_by_lambertw(C)
            assert p.xi_plus == pytest.approx(xp, rel=1e-12, abs=1e-13)
            assert p.xi_minus == pytest.approx(xm, rel=1e-12, abs=1e-13)

    def test_params_guard_rejects_junk(self):
        with pytest.raises(DomainError):
            DomainParams(C=2.0, xi_minus=-1.0, xi_plus=0.5)

    def test_tangency_estimate(self):
        # (1 - xi-)^(1/xi+) <= (e/2)(1 - xi-/xi+) for C > 1
        for C in np.geomspace(1.001, 1e5, 60):
            p = solve_xi(float(C))
            lhs = (1.0 - p.xi_minus) ** (1.0 / p.xi_plus)
            rhs = 0.5 * math.e * (1.0 - p.xi_minus / p.xi_plus)
            assert lhs <= rhs * (1.0 + 1e-12)


class TestK:
    def test_value_at_one(self):
        assert k_of_C(solve_xi(1.0)) == 0.0

    def test_limit_two_over_e(self):
        assert k_of_C(solve_xi(1e8)) == pytest.approx(2.0 / math.e, abs=1e-3)

    def test_alternate_form(self):
        # k(C) = 2 (1 - 1/C) / (e^{xi+} - e^{xi-})
        for C in (math.exp(-0.5) / 0.5, 2.0, 7.7, 123.0):
            p = solve_xi(C)
            alt = 2.0 * (1.0 - 1.0 / C) / (math.exp(p.xi_plus) - math.exp(p.xi_minus))
            assert k_of_C(p) == pytest.approx(alt, rel=1e-12)

    def test_strictly_increasing(self):
        grid = np.geomspace(1.0, 1e6, 150)
        vals = [k_of_C(solve_xi(float(C))) for C in grid]
        assert all(a < b for a, b in zip(vals, vals[1:]))
        assert all(0.0 <= v < K_SUP for v in vals)

    def test_inverse_endpoints(self):
        assert k_inverse(0.0) == 1.0
        with pytest.raises(RangeError):
            k_inverse(K_SUP)

    def test_inverse_round_trip(self):
        assert k_inverse(k_of_C(solve_xi(2.0))) == pytest.approx(2.0, rel=1e-10)

    @given(st.floats(min_value=0.0, max_value=K_SUP * 0.999))
    @settings(max_examples=30, deadline=None)
    def test_inverse_round_trip_and_bound(self, eps):
        C = k_inverse(eps)
        assert C >= 1.0
        assert k_of_C(solve_xi(C)) == pytest.approx(eps, abs=1e-10)
        assert C <= 1.0 / (1.0 - eps / K_SUP) * (1.0 + 1e-10)


class TestOmegaAndEps0:
    def test_p1_analytic(self):
        assert omega(1.0) == pytest.approx(2.0 / math.e, abs=1e-13)

    def test_p2_analytic(self):
        assert omega(2.0) == pytest.approx(1.0, abs=1e-13)

    def test_oscillation_integral_identity(self):
        # omega(p)^p equals the oscillation integral of log(1/t) on (0,1)
        for p in (1.0, 1.25, 1.5, 1.75, 2.0):
            integral, _ = quad(
                lambda t: abs(math.log(t) + 1.0) ** p, 0.0, 1.0,
                points=[1.0 / math.e], limit=200, epsabs=1e-12, epsrel=1e-12,
            )
            assert omega(p) ** p == pytest.approx(integral, abs=1e-8)

    def test_eps0_endpoints(self):
        assert eps0(1.0) == pytest.approx(2.0 / math.e, abs=1e-12)
        assert eps0(2.0) == pytest.approx(1.0, abs=1e-12)

    def test_eps0_strictly_increasing(self):
        vals = [eps0(p) for p in (1.0, 1.25, 1.5, 1.75, 2.0)]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_eps0_domain(self):
        for p in (0.5, 2.5):
            with pytest.raises(DomainError):
                eps0(p)
        with pytest.raises(DomainError):
            omega(0.9)


class TestSharpBounds:
    def test_p2_formula(self):
        assert jn_sharp_C(0.0, 2.0) == pytest.approx(1.0, abs=1e-12)
        assert jn_sharp_C(0.5, 2.0) == pytest.approx(math.exp(-0.5) / 0.5, abs=1e-12)

    def test_window_left_edge(self):
        p = 1.5
        eps = (2.0 - p) * eps0(p)
        assert jn_sharp_C(eps, p) == pytest.approx(math.exp(-(2.0 - p)) / (p - 1.0), rel=1e-12)

    def test_window_enforced(self):
        with pytest.raises(RangeError):
            jn_sharp_C(0.01, 1.5)  # below (2-p) eps0(p)
        with pytest.raises(RangeError):
            jn_sharp_C(eps0(1.5), 1.5)  # at the sup
        with pytest.raises(DomainError):
            jn_sharp_C(0.5, 1.0)

    def test_strictly_increasing_in_eps_for_p2(self):
        grid = np.linspace(0.0, 0.99, 100)
        vals = [jn_sharp_C(float(e), 2.0) for e in grid]
        assert all(a < b for a, b in zip(vals, vals[1:]))

    def test_bracket_p1(self):
        lo, hi = jn_bound_p1(0.0)
        assert lo == pytest.approx(1.0) and hi == pytest.approx(1.0)
        lo, hi = jn_bound_p1(0.5)
        r = 0.5 * math.e / 2.0
        assert lo == pytest.approx(math.exp(-r) / (1.0 - r), rel=1e-12)
        assert lo <= hi <= 1.0 / (1.0 - r) * (1.0 + 1e-12)
        with pytest.raises(RangeError):
            jn_bound_p1(K_SUP)


class TestWeakTypeAndCorollaries:
    def test_p2_prefactor_is_limit(self):
        assert weak_type_bound(2.0, 0.0, 1.0) == pytest.approx(math.e, rel=1e-12)
        # the limit is approached from p below 2
        near = weak_type_bound(2.0 - 1e-7, 0.0, 1.0)
        assert near == pytest.approx(math.e, rel=1e-5)

    def test_decays_to_zero(self):
        vals = [weak_type_bound(1.5, lam, 1.0) for lam in (0.0, 1.0, 5.0, 50.0)]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert vals[-1] < 1e-10

    def test_p15_value(self):
        assert weak_type_bound(1.5, 1.0, 1.0) == pytest.approx(
            4.0 * math.exp(-eps0(1.5)), rel=1e-12
        )

    def test_domain(self):
        with pytest.raises(DomainError):
            weak_type_bound(1.0, 1.0, 1.0)
        with pytest.raises(DomainError):
            weak_type_bound(2.5, 1.0, 1.0)

    def test_distance_bound(self):
        assert dist_lower_bound(2.0, 1.0, math.inf) == pytest.approx(1.0, abs=1e-12)
        assert dist_lower_bound(1.0, 1.0, math.inf) == pytest.approx(2.0 / math.e, abs=1e-12)
        assert dist_lower_bound(1.5, math.inf, math.inf) == 0.0
        with pytest.raises(DomainError):
            dist_lower_bound(1.5, -1.0, 1.0)

    def test_hilbert_bound(self):
        assert hilbert_lower_bound(2.0) == pytest.approx(2.0 / math.pi, abs=1e-12)
        assert hilbert_lower_bound(1.0) == pytest.approx(4.0 / (math.pi * math.e), abs=1e-12)
        assert hilbert_lower_bound(1.5) == pytest.approx(2.0 / math.pi * eps0(1.5), rel=1e-12)


class TestThreshold:
    def test_endpoint_values(self):
        assert bp_threshold(2.0) == pytest.approx(1.0)
        assert bp_threshold(1.5) == pytest.approx(math.exp(-0.5) / 0.5)

    def test_tolerance_validation(self):
        with pytest.raises(ValueError):
            Tolerance(abs=-1.0)
        with pytest.raises(ValueError):
            Tolerance(max_iter=0)
