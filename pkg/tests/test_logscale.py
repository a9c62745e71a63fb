"""Log-scale derivative series: identities, monotonicity scans, FD oracles."""

import math
import random

import pytest

from torusdet import (
    DomainError,
    ThetaKind,
    TruncationPolicy,
    UnsupportedKind,
    UnsupportedOrder,
    finite_difference_check,
    log_deriv,
    psi_derivatives,
    theta_series,
    xddx_log_theta,
)
from torusdet.logscale import log_deriv_series_part
from torusdet.scans import log_grid, scan_curve, xweighted_logderiv_monotone

POLICY = TruncationPolicy(1e-12, 100_000)

# frozen from mpmath.diff of log(theta3) at x = 1, dps 40
PSI1_AT_1 = 0.7236584936865761402070201727
PSI2_AT_1 = -1.9209754810597284206210605181
PSI3_AT_1 = 4.1418584749268639645689031323


def test_log_deriv_theta3_at_one_is_quarter():
    b = log_deriv(ThetaKind.THETA3, 1.0, POLICY)
    assert abs(b.value - (-0.25)) <= 1e-12


def test_log_deriv_pair_sums_to_minus_half_at_one():
    b2 = log_deriv(ThetaKind.THETA2, 1.0, POLICY)
    b4 = log_deriv(ThetaKind.THETA4, 1.0, POLICY)
    assert abs(b2.value + b4.value - (-0.5)) <= 2e-12


def test_log_deriv_signs():
    assert log_deriv(ThetaKind.THETA4, 2.0, POLICY).value > 0.0
    assert log_deriv(ThetaKind.THETA2, 2.0, POLICY).value < 0.0


def test_log_deriv_rejects_theta1plus():
    with pytest.raises(UnsupportedKind):
        log_deriv(ThetaKind.THETA1_PLUS, 1.0)


def test_psi_derivatives_at_one():
    p = psi_derivatives(1.0, POLICY)
    assert abs(p.psi - (-0.25)) <= 1e-12
    assert abs(p.psi + 3.0 * p.psi1 + p.psi2) <= 1e-10
    assert abs(p.psi1 - PSI1_AT_1) <= p.psi1_bound + 1e-15
    assert abs(p.psi2 - PSI2_AT_1) <= p.psi2_bound + 1e-15
    assert abs(p.psi3 - PSI3_AT_1) <= p.psi3_bound + 1e-14


def test_psi_derivative_envelopes_at_two():
    p = psi_derivatives(2.0, POLICY)
    env = math.exp(-2.0 * math.pi)
    assert p.psi1 < 24.0 * env
    assert p.psi2 < -60.0 * env


def test_psi_negative_on_grid():
    for x in log_grid(0.05, 20.0, 50):
        assert psi_derivatives(x, POLICY).psi < 0.0


def test_xddx_third_order_zero_at_one():
    b = xddx_log_theta(ThetaKind.THETA3, 3, 1.0, POLICY)
    assert abs(b.value) <= 1e-10


def test_xddx_third_order_signs_and_antisymmetry():
    up = xddx_log_theta(ThetaKind.THETA3, 3, 2.0, POLICY)
    dn = xddx_log_theta(ThetaKind.THETA3, 3, 0.5, POLICY)
    assert up.value < 0.0
    assert dn.value > 0.0
    assert abs(up.value + dn.value) <= 1e-10


def test_xddx_order_zero_is_log_theta():
    for kind in (ThetaKind.THETA2, ThetaKind.THETA3, ThetaKind.THETA4):
        for x in (0.3, 1.0, 4.0):
            b = xddx_log_theta(kind, 0, x, POLICY)
            ref = math.log(theta_series(kind, x, POLICY).value)
            assert abs(b.value - ref) <= b.error_bound + 1e-14


def test_xddx_order_one_is_weighted_log_deriv():
    for x in (0.2, 1.3, 6.0):
        a = xddx_log_theta(ThetaKind.THETA4, 1, x, POLICY)
        b = log_deriv(ThetaKind.THETA4, x, POLICY)
        assert abs(a.value - x * b.value) <= a.error_bound + x * b.error_bound


def test_unsupported_orders():
    with pytest.raises(UnsupportedOrder):
        xddx_log_theta(ThetaKind.THETA2, 3, 1.0)
    with pytest.raises(UnsupportedOrder):
        xddx_log_theta(ThetaKind.THETA4, 4, 1.0)
    with pytest.raises(UnsupportedOrder):
        xddx_log_theta(ThetaKind.THETA3, 5, 1.0)
    with pytest.raises(UnsupportedOrder):
        xddx_log_theta(ThetaKind.THETA3, -1, 1.0)
    with pytest.raises(UnsupportedKind):
        xddx_log_theta(ThetaKind.THETA1_PLUS, 1, 1.0)


def test_finite_difference_examples():
    fd = finite_difference_check(ThetaKind.THETA3, 1, 1.5, 1e-4)
    an = xddx_log_theta(ThetaKind.THETA3, 1, 1.5, POLICY)
    assert abs(fd - an.value) / abs(an.value) <= 1e-6

    fd = finite_difference_check(ThetaKind.THETA4, 2, 2.0, 1e-3)
    an = xddx_log_theta(ThetaKind.THETA4, 2, 2.0, POLICY)
    assert abs(fd - an.value) / abs(an.value) <= 1e-4

    fd = finite_difference_check(ThetaKind.THETA3, 3, 1.3, 1e-2)
    an = xddx_log_theta(ThetaKind.THETA3, 3, 1.3, POLICY)
    assert math.copysign(1.0, fd) == math.copysign(1.0, an.value)


def test_finite_difference_preconditions():
    with pytest.raises(DomainError):
        finite_difference_check(ThetaKind.THETA3, 1, 1.0, 0.2)  # h >= x/10
    with pytest.raises(DomainError):
        finite_difference_check(ThetaKind.THETA3, 1, 1.0, 0.0)
    with pytest.raises(DomainError):
        finite_difference_check(ThetaKind.THETA3, 0, 1.0, 1e-4)


def test_monotonicity_scans():
    xs = log_grid(0.05, 20.0, 200)

    def weighted(kind):
        def f(x):
            b = log_deriv(kind, x, POLICY)
            return x * b.value, x * b.error_bound

        return f

    def weighted2(kind):
        def f(x):
            b = log_deriv(kind, x, POLICY)
            return x * x * b.value, x * x * b.error_bound

        return f

    assert scan_curve(weighted(ThetaKind.THETA4), xs).strictly_decreasing
    assert xweighted_logderiv_monotone(ThetaKind.THETA2, xs, POLICY)[1]
    assert xweighted_logderiv_monotone(ThetaKind.THETA3, xs, POLICY)[0]
    assert scan_curve(weighted2(ThetaKind.THETA2), xs).strictly_decreasing
    assert scan_curve(weighted2(ThetaKind.THETA4), xs).strictly_decreasing

    # plain log-derivative monotonicity; the theta2 curve is scanned with its
    # constant -pi/4 offset removed so the far tail stays resolvable
    def plain4(x):
        b = log_deriv(ThetaKind.THETA4, x, POLICY)
        return b.value, b.error_bound

    def shifted2(x):
        b = log_deriv_series_part(ThetaKind.THETA2, x, POLICY)
        return b.value, b.error_bound

    assert scan_curve(plain4, xs).strictly_decreasing
    assert scan_curve(shifted2, xs).strictly_increasing


def test_third_order_sign_pattern():
    below = log_grid(0.05, 0.99, 60)
    above = log_grid(1.01, 20.0, 60)
    for x in below:
        b = xddx_log_theta(ThetaKind.THETA3, 3, x, POLICY)
        assert b.value - b.error_bound > 0.0, x
    for x in above:
        b = xddx_log_theta(ThetaKind.THETA3, 3, x, POLICY)
        assert b.value + b.error_bound < 0.0, x
    assert abs(xddx_log_theta(ThetaKind.THETA3, 3, 1.0, POLICY).value) <= 1e-10


def test_theta2_curvature_sandwich():
    # 0 < x^2 (d/dx)^2 log(theta2) < 1/2.  The quantity is x^2 psi_2 of
    # theta2, taken straight from the factor series (the equivalent
    # difference D^2 - D^1 would cancel catastrophically at large x); for
    # x < 1/2 the gap to 1/2 is the transported-frame quantity
    # D^2 log theta4(1/x) + D^1 log theta4(1/x) < 0.
    from torusdet.logscale import _plain_direct

    for x in log_grid(0.5, 20.0, 80):
        p, e, _ = _plain_direct(ThetaKind.THETA2, x, 1e-12, 100_000)
        s = x * x * p[1]
        err = x * x * e[1]
        assert s - err > 0.0, x
        assert s + err < 0.5, x
    for x in log_grid(0.05, 0.5, 40):
        y = 1.0 / x
        g1 = xddx_log_theta(ThetaKind.THETA4, 1, y, POLICY)
        g2 = xddx_log_theta(ThetaKind.THETA4, 2, y, POLICY)
        gap = g1.value + g2.value
        err = g1.error_bound + g2.error_bound
        assert gap + err < 0.0, x  # equivalent to s < 1/2
        assert 0.5 + gap - err > 0.0, x  # equivalent to s > 0


def test_antisymmetry_under_inversion():
    pairs = [(x, 1.0 / x) for x in log_grid(0.07, 0.97, 25)]
    for x, y in pairs:
        for n in (2, 3, 4):
            a = xddx_log_theta(ThetaKind.THETA3, n, x, POLICY)
            b = xddx_log_theta(ThetaKind.THETA3, n, y, POLICY)
            assert abs(a.value - (-1.0) ** n * b.value) <= 1e-9, (n, x)
        a = xddx_log_theta(ThetaKind.THETA2, 2, x, POLICY)
        b = xddx_log_theta(ThetaKind.THETA4, 2, y, POLICY)
        assert abs(a.value - b.value) <= 1e-9, x


def test_derivatives_match_finite_differences_at_random_points():
    rng = random.Random(482)
    for _ in range(12):
        x = math.exp(rng.uniform(math.log(0.2), math.log(5.0)))
        fd = finite_difference_check(ThetaKind.THETA3, 1, x, 1e-4)
        an = xddx_log_theta(ThetaKind.THETA3, 1, x, POLICY)
        assert abs(fd - an.value) / max(abs(an.value), 1e-12) <= 1e-6
        fd = finite_difference_check(ThetaKind.THETA4, 2, x, 1e-3)
        an = xddx_log_theta(ThetaKind.THETA4, 2, x, POLICY)
        assert abs(fd - an.value) / max(abs(an.value), 1e-12) <= 1e-4


def test_psi_matches_log_deriv_route():
    for x in (0.1, 0.7, 1.0, 3.0, 15.0):
        p = psi_derivatives(x, POLICY)
        b = log_deriv(ThetaKind.THETA3, x, POLICY)
        assert abs(p.psi - b.value) <= p.psi_bound + b.error_bound
