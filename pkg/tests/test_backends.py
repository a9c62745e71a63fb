"""Parity between the compiled kernels and the pure-Python fallback."""

import math

import pytest

from torusdet import _kernels_py as kpy

try:
    from torusdet import _kernels_cy as kcy
except ImportError:
    kcy = None

needs_compiled = pytest.mark.skipif(kcy is None, reason="compiled kernels not built")

XS = [0.05, 0.11, 0.5, 0.73, 1.0, 1.9, 4.4, 12.0, 20.0]
TOL = 1e-13
KMAX = 100_000


def close(a, b, rel=1e-13):
    return abs(a - b) <= rel * max(abs(a), abs(b), 1e-300)


def assert_tuples_close(t1, t2):
    assert len(t1) == len(t2)
    for a, b in zip(t1, t2):
        if isinstance(a, int) or isinstance(b, int):
            assert a == b, (t1, t2)
        else:
            assert close(a, b), (t1, t2)


@needs_compiled
def test_series_kernels_match():
    for x in XS:
        assert_tuples_close(kpy.theta2_series(x, TOL, KMAX), kcy.theta2_series(x, TOL, KMAX))
        assert_tuples_close(kpy.theta3_series(x, TOL, KMAX), kcy.theta3_series(x, TOL, KMAX))
        assert_tuples_close(kpy.theta4_series(x, TOL, KMAX), kcy.theta4_series(x, TOL, KMAX))
        assert_tuples_close(kpy.theta1p_series(x, TOL, KMAX), kcy.theta1p_series(x, TOL, KMAX))
        for z in (0.0, 0.23, 0.5):
            assert_tuples_close(
                kpy.big_theta_series(z, x, TOL, KMAX), kcy.big_theta_series(z, x, TOL, KMAX)
            )


@needs_compiled
def test_product_kernels_match():
    for x in XS:
        for kind in (1, 2, 3, 4):
            assert_tuples_close(
                kpy.theta_log_product(kind, x, TOL, KMAX),
                kcy.theta_log_product(kind, x, TOL, KMAX),
            )
        for z in (0.0, 0.37, 0.5):
            assert_tuples_close(
                kpy.big_theta_log_product(z, x, TOL, KMAX),
                kcy.big_theta_log_product(z, x, TOL, KMAX),
            )


@needs_compiled
def test_derivative_kernels_match():
    for x in (0.5, 0.8, 1.0, 2.7, 9.0, 20.0):
        for kind in (1, 2, 3, 4):
            assert_tuples_close(
                kpy.psi_family(kind, x, 1e-14, KMAX), kcy.psi_family(kind, x, 1e-14, KMAX)
            )
        assert_tuples_close(
            kpy.psi1_logderiv_sum(x, TOL, KMAX), kcy.psi1_logderiv_sum(x, TOL, KMAX)
        )
        assert_tuples_close(
            kpy.eta_log_product(x, TOL, KMAX), kcy.eta_log_product(x, TOL, KMAX)
        )


@needs_compiled
def test_lattice_kernels_match():
    for alpha in (0.5, 1.0, 2.0):
        a2 = alpha * alpha
        assert_tuples_close(
            kpy.lattice_zeta_sum(1.0 / a2, a2, 2.0, 40),
            kcy.lattice_zeta_sum(1.0 / a2, a2, 2.0, 40),
        )
        for t in (0.05, 0.8):
            cm = 4.0 * math.pi**2 * t / a2
            cn = 4.0 * math.pi**2 * t * a2
            assert_tuples_close(kpy.heat_box_sum(cm, cn, 15), kcy.heat_box_sum(cm, cn, 15))


@needs_compiled
def test_unknown_kind_codes_raise_in_both():
    with pytest.raises(ValueError):
        kpy.psi_family(7, 1.0, 1e-12, 100)
    with pytest.raises(ValueError):
        kcy.psi_family(7, 1.0, 1e-12, 100)
