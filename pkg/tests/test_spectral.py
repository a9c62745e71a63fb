"""Spectral route: eigenvalues, heat traces, lattice zeta, regularized det."""

import math

import mpmath
import numpy as np
import pytest

from torusdet import (
    DomainError,
    LatticeCutoff,
    QuadratureFailure,
    ThetaKind,
    TorusShape,
    TruncationPolicy,
    determinant,
    eigenvalue,
    eisenstein,
    heat_trace_direct,
    heat_trace_theta,
    lattice_zeta,
    theta3_minus_one,
    theta_series,
    zeta_det,
)

POLICY = TruncationPolicy(1e-13, 100_000)
PI = math.pi


def brute_lattice_sum(alpha: float, s: float, radius: int) -> float:
    """Independent oracle: dense numpy evaluation of the primed lattice sum."""
    idx = np.arange(-radius, radius + 1, dtype=float)
    m2 = (idx**2)[:, None] / alpha**2
    n2 = (idx**2)[None, :] * alpha**2
    r2 = m2 + n2
    r2[radius, radius] = 1.0  # origin placeholder, zeroed below
    vals = r2 ** (-s)
    vals[radius, radius] = 0.0
    return float(vals.sum())


def test_eigenvalue_examples():
    assert eigenvalue(0, 0, 1.0) == 0.0
    assert abs(eigenvalue(1, 0, 1.0) - 4.0 * PI**2) <= 1e-12
    assert abs(eigenvalue(1, 2, 2.0) - 65.0 * PI**2) <= 1e-10


def test_eigenvalue_inversion_symmetry():
    for m, n in [(1, 2), (3, 0), (2, 5)]:
        for alpha in (0.4, 1.7, 3.0):
            a = eigenvalue(m, n, alpha)
            b = eigenvalue(n, m, 1.0 / alpha)
            assert abs(a - b) <= 1e-9 * max(a, 1.0)


def test_heat_trace_direct_square_torus():
    ht = heat_trace_direct(1.0, 0.1, LatticeCutoff(10))
    t3 = theta_series(ThetaKind.THETA3, 0.4 * PI, POLICY)
    assert abs(ht.value - t3.value**2) <= 1e-12
    assert ht.value >= 1.0


def test_heat_trace_direct_alpha_two():
    ht = heat_trace_direct(2.0, 0.05, 20)
    a = theta_series(ThetaKind.THETA3, 4.0 * PI * 0.05 / 4.0, POLICY)
    b = theta_series(ThetaKind.THETA3, 4.0 * PI * 0.05 * 4.0, POLICY)
    assert abs(ht.value - a.value * b.value) <= ht.tail_bound + 1e-12


def test_heat_trace_large_time_only_zero_mode():
    ht = heat_trace_direct(1.0, 5.0, 3)
    assert abs(ht.value - 1.0) <= 1e-12


def test_heat_trace_rejects_bad_time():
    with pytest.raises(DomainError):
        heat_trace_direct(1.0, 0.0, 5)
    with pytest.raises(DomainError):
        heat_trace_theta(1.0, -2.0)


def test_heat_trace_factorization_matrix():
    for alpha in (0.5, 1.0, 2.0, 3.0):
        for t in (0.02, 0.1, 0.5, 2.0):
            c = min(alpha**2, 1.0 / alpha**2)
            radius = max(3, int(math.ceil(math.sqrt(30.0 / (4.0 * PI**2 * t * c)))) + 2)
            ht = heat_trace_direct(alpha, t, radius)
            tt = heat_trace_theta(alpha, t, POLICY)
            assert abs(ht.value - tt.value) <= ht.tail_bound + tt.error_bound, (alpha, t)
            assert abs(ht.value - tt.value) <= 1e-10, (alpha, t)


def test_heat_trace_theta_inversion_invariance():
    for t in (0.05, 0.7):
        a = heat_trace_theta(2.0, t, POLICY)
        b = heat_trace_theta(0.5, t, POLICY)
        assert a.value == b.value


def test_lattice_zeta_against_brute_force():
    lz = lattice_zeta(1.0, 2.0, LatticeCutoff(200))
    oracle = (2.0 * PI) ** -4.0 * brute_lattice_sum(1.0, 2.0, 2000)
    # the brute sum at R=2000 still misses its own tail ~ pi/2000^2
    assert abs(lz.value - oracle) <= lz.error_bound + 1e-9
    closed = float(4 * mpmath.zeta(2) * mpmath.catalan * (2 * mpmath.pi) ** -4)
    assert abs(lz.value - closed) <= lz.error_bound


def test_lattice_zeta_relabeling_symmetry():
    a = lattice_zeta(2.0, 3.0, 200)
    b = lattice_zeta(0.5, 3.0, 200)
    assert abs(a.value - b.value) <= 1e-12


def test_lattice_zeta_domain():
    with pytest.raises(DomainError):
        lattice_zeta(1.0, 1.0, 10)
    with pytest.raises(DomainError):
        lattice_zeta(1.0, 0.5, 10)


def test_eisenstein_normalization():
    for alpha in (0.5, 1.3):
        for s in (1.5, 2.5):
            z = lattice_zeta(alpha, s, 100)
            e = eisenstein(alpha, s, 100)
            assert abs(e.value - (2.0 * PI) ** (2.0 * s) * z.value) <= 1e-9 * e.value
            inv = eisenstein(1.0 / alpha, s, 100)
            assert abs(e.value - inv.value) <= 1e-12 * e.value


def test_small_time_weyl_remainder():
    # t * (Tr(t) - 1/(4 pi t)) -> 0 exponentially; via the reflected form the
    # remainder is (p + q + pq)/(4 pi) with huge theta arguments
    for t in (1e-3, 1e-4):
        p = theta3_minus_one(1.0 / (4.0 * PI * t), POLICY).value
        rem = (2.0 * p + p * p) / (4.0 * PI)
        assert abs(rem) < 1e-50


def test_zeta_det_matches_eta_route():
    dz = zeta_det(1.0, quad_tol=1e-8)
    assert abs(dz.det_value - 0.34830) <= 1e-4
    assert abs(dz.det_value - determinant(1.0).det_value) <= 1e-6
    d2 = zeta_det(2.0, quad_tol=1e-8)
    assert abs(d2.det_value - determinant(2.0).det_value) <= 1e-6
    dh = zeta_det(0.5, quad_tol=1e-8)
    assert abs(dh.det_value - d2.det_value) <= 1e-8
    assert dz.route.value == "zeta"


def test_zeta_det_accepts_shape():
    d = zeta_det(TorusShape(1.0), quad_tol=1e-6)
    assert abs(d.det_value - 0.34830098242145097) <= 1e-6


def test_zeta_det_unreachable_tolerance():
    with pytest.raises(QuadratureFailure):
        zeta_det(1.0, quad_tol=1e-30)
