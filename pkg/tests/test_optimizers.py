import math
import warnings

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jnbellman import (
    AbsPower,
    BelowThresholdWarning,
    ConstantPiece,
    DomainError,
    ExpScale,
    Indicator,
    LogRampPiece,
    PiecewiseLogStep,
    Point,
    averages,
    cutoff,
    indicator_optimizer,
    k_of_C,
    max_exp_mean,
    max_square_mean,
    max_tail_measure,
    measure_above,
    measure_below,
    min_abs_mean,
    min_power_mean,
    optimizer_minus,
    optimizer_plus,
    scaled_log,
    solve_u,
    solve_v,
    solve_xi,
    step_optimizer,
    tail_region,
)
from jnbellman.domain import FourRegion
from conftest import random_C, random_point


class TestConstruction:
    def test_plus_on_lower_boundary_is_constant(self, params2):
        phi = optimizer_plus(Point(0.4, math.exp(0.4)), params2)
        assert len(phi.pieces) == 1
        assert isinstance(phi.pieces[0], ConstantPiece)
        assert phi.pieces[0].value == pytest.approx(0.4)

    def test_plus_at_upper_corner_is_pure_ramp(self, params2):
        phi = optimizer_plus(Point(0.0, 2.0), params2)
        assert len(phi.pieces) == 1
        ramp = phi.pieces[0]
        assert isinstance(ramp, LogRampPiece)
        assert ramp.alpha == pytest.approx(1.0)
        assert ramp.u == pytest.approx(-params2.xi_plus, abs=1e-12)
        assert ramp.xi == pytest.approx(params2.xi_plus)
        # phi(t) = xi+ (log(1/t) - 1)
        assert phi(0.5) == pytest.approx(params2.xi_plus * (math.log(2.0) - 1.0), rel=1e-10)

    def test_minus_at_upper_corner(self, params2):
        phi = optimizer_minus(Point(0.0, 2.0), params2)
        ramp = phi.pieces[0]
        assert ramp.u == pytest.approx(-params2.xi_minus, abs=1e-12)
        assert ramp.alpha == pytest.approx(1.0)

    def test_step_at_origin_is_zero(self, params2):
        phi = step_optimizer(Point(0.0, 1.0), params2)
        assert len(phi.pieces) == 1
        assert phi.pieces[0].value == pytest.approx(0.0, abs=1e-12)

    def test_step_widths_partition(self, params2, rng):
        for _ in range(100):
            x = random_point(params2, rng)
            phi = step_optimizer(x, params2)
            assert phi.breakpoints()[0] == 0.0
            assert phi.breakpoints()[-1] == pytest.approx(1.0)
            assert all(isinstance(pc, ConstantPiece) for pc in phi.pieces)

    def test_indicator_shapes_by_region(self, params2, rng):
        shapes = set()
        for _ in range(300):
            x = random_point(params2, rng)
            lam = x.x1 + rng.uniform(-1.0, 3.0)
            phi = indicator_optimizer(x, lam, params2)
            kinds = tuple(type(pc).__name__ for pc in phi.pieces)
            shapes.add(kinds)
        assert any("LogRampPiece" in s for s in shapes)
        assert any(s == ("ConstantPiece", "ConstantPiece") for s in shapes)

    def test_gap_validation(self):
        with pytest.raises(ValueError):
            PiecewiseLogStep((ConstantPiece(0.0, 0.4, 1.0), ConstantPiece(0.5, 1.0, 0.0)))
        with pytest.raises(ValueError):
            PiecewiseLogStep((ConstantPiece(0.0, 0.4, 1.0),))


class TestAverages:
    def test_plus_reproduces_constraints_and_value(self, params10, rng):
        for _ in range(200):
            x = random_point(params10, rng)
            p = rng.uniform(1.01, 2.0)
            phi = optimizer_plus(x, params10)
            with warnings.catch_warnings():
                warnings.simplefilter("ignore", BelowThresholdWarning)
                want = min_power_mean(x, p, params10)
            tr = averages(phi, AbsPower(p))
            assert tr.mean == pytest.approx(x.x1, abs=1e-9 * max(1, abs(x.x1)))
            assert tr.exp_mean == pytest.approx(x.x2, rel=1e-9)
            assert tr.f_mean == pytest.approx(want, rel=1e-9, abs=1e-11)

    def test_plus_exp_scale_attains_max(self, params2, rng):
        for _ in range(100):
            x = random_point(params2, rng)
            delta = rng.uniform(1.0, 0.95 / params2.xi_plus)
            phi = optimizer_plus(x, params2)
            tr = averages(phi, ExpScale(delta))
            assert tr.f_mean == pytest.approx(max_exp_mean(x, delta, params2), rel=1e-9)

    def test_plus_exp_scale_divergence(self, params2):
        phi = optimizer_plus(Point(0.0, 2.0), params2)
        delta = 1.0 / params2.xi_plus
        assert math.isinf(averages(phi, ExpScale(delta)).f_mean)
        assert math.isinf(averages(phi, ExpScale(delta), method="quadrature").f_mean)

    def test_minus_second_moment(self, params2, rng):
        for _ in range(200):
            x = random_point(params2, rng)
            phi = optimizer_minus(x, params2)
            tr = averages(phi, AbsPower(2.0))
            assert tr.f_mean == pytest.approx(max_square_mean(x, params2), rel=1e-9)

    def test_step_absolute_mean(self, params10, rng):
        for _ in range(200):
            x = random_point(params10, rng)
            phi = step_optimizer(x, params10)
            tr = averages(phi, AbsPower(1.0))
            assert tr.mean == pytest.approx(x.x1, abs=1e-9 * max(1, abs(x.x1)))
            assert tr.exp_mean == pytest.approx(x.x2, rel=1e-9)
            assert tr.f_mean == pytest.approx(min_abs_mean(x, params10), rel=1e-9, abs=1e-11)

    def test_step_at_upper_corner_attains_k(self, params2):
        tr = averages(step_optimizer(Point(0.0, 2.0), params2), AbsPower(1.0))
        assert tr.f_mean == pytest.approx(k_of_C(params2), rel=1e-12)

    def test_exp_gap_identity(self, params2):
        # e^{xi+ - xi-} = (1 - xi-)/(1 - xi+)
        xm, xp = params2.xi_minus, params2.xi_plus
        assert math.exp(xp - xm) == pytest.approx((1.0 - xm) / (1.0 - xp), rel=1e-12)

    def test_indicator_measures(self, params2, rng):
        for _ in range(200):
            x = random_point(params2, rng)
            lam = x.x1 + rng.uniform(-1.0, 1.0)
            phi = indicator_optimizer(x, lam, params2)
            tr = averages(phi, Indicator(lam))
            assert tr.mean == pytest.approx(x.x1, abs=1e-9 * max(1, abs(x.x1)))
            assert tr.exp_mean == pytest.approx(x.x2, rel=1e-9)
            assert tr.f_mean == pytest.approx(
                max_tail_measure(x, lam, params2), rel=1e-9, abs=1e-11
            )

    def test_quadrature_oracle_agreement(self, rng):
        for _ in range(40):
            params = solve_xi(random_C(rng))
            x = random_point(params, rng)
            p = rng.uniform(1.01, 2.0)
            lam = x.x1 + rng.uniform(-1.0, 1.0)
            cases = [
                (optimizer_plus(x, params), AbsPower(p)),
                (optimizer_minus(x, params), AbsPower(2.0)),
                (step_optimizer(x, params), AbsPower(1.0)),
                (indicator_optimizer(x, lam, params), Indicator(lam)),
            ]
            for phi, f in cases:
                closed = averages(phi, f)
                quad = averages(phi, f, method="quadrature")
                assert quad.mean == pytest.approx(closed.mean, abs=1e-8)
                assert quad.exp_mean == pytest.approx(closed.exp_mean, rel=1e-8)
                assert quad.f_mean == pytest.approx(closed.f_mean, rel=1e-8, abs=1e-10)

    def test_interval_restriction(self, params2):
        phi = optimizer_plus(Point(0.0, 2.0), params2)
        tr = averages(phi, AbsPower(2.0), interval=(0.25, 0.75))
        quad = averages(phi, AbsPower(2.0), interval=(0.25, 0.75), method="quadrature")
        assert tr.mean == pytest.approx(quad.mean, abs=1e-10)
        assert tr.f_mean == pytest.approx(quad.f_mean, rel=1e-10)

    def test_invalid_interval(self, params2):
        phi = optimizer_plus(Point(0.0, 2.0), params2)
        with pytest.raises(DomainError):
            averages(phi, AbsPower(2.0), interval=(0.5, 0.4))


class TestRegionFormulas:
    def test_secant_fan_measure(self, params2, rng):
        # measure{eta >= 0} = mu = 1 - x1/v in the fan of level 0
        count = 0
        while count < 50:
            x = random_point(params2, rng, x1_range=(-2.0, -0.05))
            if tail_region(x, 0.0, params2) is not FourRegion.SECANT_FAN:
                continue
            count += 1
            v = solve_v(x, 0.0, params2)
            eta = indicator_optimizer(x, 0.0, params2)
            assert measure_above(eta, 0.0) == pytest.approx(1.0 - x.x1 / v, rel=1e-9)

    def test_left_exponential_measure(self, params2, rng):
        # measure{eta >= 0} = (x1-u)/(xi+-xi-) e^{(u+xi+-xi-)/xi+} far left
        xm, xp = params2.xi_minus, params2.xi_plus
        count = 0
        while count < 50:
            x = random_point(params2, rng, x1_range=(-4.0, -1.0))
            if tail_region(x, 0.0, params2) is not FourRegion.LEFT_EXP:
                continue
            count += 1
            u = solve_u(x, params2, "plus")
            want = (x.x1 - u) / (xp - xm) * math.exp((u + xp - xm) / xp)
            eta = indicator_optimizer(x, 0.0, params2)
            assert measure_above(eta, 0.0) == pytest.approx(want, rel=1e-9)


class TestMeasure:
    def test_constant_whole_interval(self):
        phi = PiecewiseLogStep((ConstantPiece(0.0, 1.0, 0.7),))
        assert measure_above(phi, 0.5, (0.2, 0.9)) == pytest.approx(0.7)
        assert measure_above(phi, 0.7) == pytest.approx(1.0)
        assert measure_above(phi, 0.71) == 0.0

    def test_ramp_crossing_formula(self, params2):
        phi = optimizer_plus(Point(0.0, 2.0), params2)
        u, xi = -params2.xi_plus, params2.xi_plus
        for lam in (0.1, 0.5, 1.3):
            want = math.exp((u - lam) / xi)  # alpha = 1
            assert measure_above(phi, lam) == pytest.approx(want, rel=1e-12)

    def test_measure_below_complement(self, params2, rng):
        for _ in range(50):
            x = random_point(params2, rng)
            phi = step_optimizer(x, params2)
            lam = rng.uniform(-1.0, 1.0)
            above = measure_above(phi, lam)
            below = measure_below(phi, lam)
            # steps make the level set {phi == lam} have measure 0 or full
            assert above + below >= 1.0 - 1e-12

    def test_bisection_oracle(self, params2, rng):
        from jnbellman.optimizers import _quad_measure

        for _ in range(50):
            x = random_point(params2, rng)
            lam = x.x1 + rng.uniform(-1.0, 1.0)
            phi = indicator_optimizer(x, lam, params2)
            level = rng.uniform(-1.0, 1.0)
            assert _quad_measure(phi, level, 0.0, 1.0) == pytest.approx(
                measure_above(phi, level), abs=1e-10
            )


class TestCutoff:
    def test_identity_when_levels_envelop(self, params2):
        phi = step_optimizer(Point(0.0, 2.0), params2)
        lo, hi = phi.value_range()
        cut = cutoff(phi, lo - 1.0, hi + 1.0)
        for t in np.linspace(0.01, 0.99, 37):
            assert cut(float(t)) == pytest.approx(phi(float(t)))

    def test_plus_already_bounded_below(self, params2):
        phi = optimizer_plus(Point(0.3, 1.7), params2)
        u = solve_u(Point(0.3, 1.7), params2, "plus")
        cut = cutoff(phi, u, 100.0)
        for t in np.linspace(0.01, 0.99, 37):
            assert cut(float(t)) == pytest.approx(phi(float(t)), rel=1e-12)

    def test_clamps_pointwise(self, params2, rng):
        for _ in range(50):
            x = random_point(params2, rng)
            phi = indicator_optimizer(x, x.x1 + rng.uniform(-1, 1), params2)
            c = rng.uniform(-1.0, 0.0)
            d = c + rng.uniform(0.2, 2.0)
            cut = cutoff(phi, c, d)
            ts = rng.uniform(1e-6, 1.0 - 1e-6, size=64)
            np.testing.assert_allclose(
                cut(ts), np.clip(phi(ts), c, d), rtol=1e-12, atol=1e-12
            )

    def test_requires_ordered_levels(self, params2):
        phi = optimizer_plus(Point(0.0, 2.0), params2)
        with pytest.raises(DomainError):
            cutoff(phi, 1.0, 1.0)

    def test_exp_mean_never_increases(self, params2, rng):
        # truncation lowers the normalized exponential mean on any interval
        for _ in range(30):
            x = random_point(params2, rng)
            phi = optimizer_plus(x, params2)
            lo, _hi = phi.value_range()
            c = lo + rng.uniform(0.05, 0.5)
            d = c + rng.uniform(0.5, 2.0)
            cut = cutoff(phi, c, d)
            for a, b in ((0.0, 1.0), (0.0, 0.25), (0.1, 0.9), (0.5, 0.625)):
                m0, e0 = phi.mean_exp(a, b)
                m1, e1 = cut.mean_exp(a, b)
                assert e1 * math.exp(-m1) <= e0 * math.exp(-m0) + 1e-12


class TestSerialization:
    def test_round_trip(self, params2, rng):
        for _ in range(20):
            x = random_point(params2, rng)
            lam = x.x1 + rng.uniform(-1.0, 1.0)
            phi = indicator_optimizer(x, lam, params2)
            clone = PiecewiseLogStep.from_json(phi.to_json())
            assert clone == phi

    def test_json_has_full_precision(self, params2):
        phi = optimizer_plus(Point(0.1234567890123456, 1.7), params2)
        text = phi.to_json()
        clone = PiecewiseLogStep.from_json(text)
        ramp = clone.pieces[0]
        assert ramp.u == phi.pieces[0].u  # bit-exact round trip

    def test_unknown_kind_rejected(self):
        with pytest.raises(ValueError):
            PiecewiseLogStep.from_json('{"pieces": [{"kind": "spline", "lo": 0, "hi": 1}]}')


class TestScaledLog:
    def test_values(self):
        phi = scaled_log(0.5)
        assert phi(0.25) == pytest.approx(0.5 * math.log(4.0))
        assert scaled_log(0.0)(0.3) == 0.0

    def test_exp_integrability_threshold(self):
        assert scaled_log(0.999).exp_integrable_from_zero()
        assert not scaled_log(1.0).exp_integrable_from_zero()


@given(
    eps=st.floats(min_value=0.05, max_value=0.95),
    a=st.floats(min_value=0.0, max_value=0.6),
    w=st.floats(min_value=0.05, max_value=0.4),
)
@settings(max_examples=60, deadline=None)
def test_jensen_inequality_property(eps, a, w):
    phi = scaled_log(eps)
    tr = averages(phi, AbsPower(1.0), interval=(a, a + w))
    assert tr.exp_mean >= math.exp(tr.mean) - 1e-12


@given(st.floats(min_value=1.0001, max_value=500.0))
@settings(max_examples=40, deadline=None)
def test_constraint_reproduction_property(C):
    params = solve_xi(C)
    x = Point(0.3, 0.5 * (math.exp(0.3) + C * math.exp(0.3)))
    phi = optimizer_plus(x, params)
    tr = averages(phi, AbsPower(2.0))
    assert tr.mean == pytest.approx(x.x1, abs=1e-9)
    assert tr.exp_mean == pytest.approx(x.x2, rel=1e-9)
