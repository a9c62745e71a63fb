"""Proof certificates: micro-constants, series envelopes, polynomial roots."""

import math
from fractions import Fraction

import pytest

from torusdet import (
    DomainError,
    certify_conclusion,
    certify_constants,
    certify_polynomials,
    certify_series_bounds,
    quartic_negativity_reaches_cutoff,
    quartic_upper_root,
)
from torusdet.scans import log_grid


def test_constants_all_pass():
    certs = certify_constants()
    assert len(certs) >= 13
    for c in certs:
        assert c.passed, (c.name, c.min_margin)
        assert c.min_margin > 0.0


def test_specific_constant_margins():
    by_name = {c.name: c for c in certify_constants()}
    # 1.05 - (1 + e^{-pi}) ~= 0.0068
    assert abs(by_name["one_plus_exp"].min_margin - (1.05 - 1.0 - math.exp(-math.pi))) < 1e-9
    assert by_name["three_term_lower"].passed
    assert by_name["inv_cubed_2pi"].passed
    # the final psi''' constant squeaks through with margin ~ 0.066
    assert 0.0 < by_name["psi3_final"].min_margin < 0.1


def test_series_bounds_at_quoted_example_points():
    # each envelope holds at the point quoted for it
    by_name = {c.name: c for c in certify_series_bounds([1.01])}
    assert by_name["psi_prime_envelope"].passed
    by_name = {c.name: c for c in certify_series_bounds([2.0])}
    assert by_name["psi_second_envelope"].passed
    by_name = {c.name: c for c in certify_series_bounds([1.1])}
    assert by_name["psi_third_envelope"].passed


def test_series_bounds_on_their_true_domains():
    # psi' < 24 e^{-pi x} holds on all of (1, 50]
    certs = {c.name: c for c in certify_series_bounds(log_grid(1.001, 50.0, 512))}
    assert certs["psi_prime_envelope"].passed
    # psi'' < -60 e^{-pi x} holds beyond x ~ 1.75
    certs = {c.name: c for c in certify_series_bounds(log_grid(1.9, 50.0, 256))}
    assert certs["psi_second_envelope"].passed
    # psi''' < 183 e^{-pi x} holds up to x ~ 1.76
    certs = {c.name: c for c in certify_series_bounds(log_grid(1.001, 1.7, 256))}
    assert certs["psi_third_envelope"].passed


def test_series_bounds_report_the_envelope_errata():
    # The psi'' and psi''' envelopes are stated for all x > 1 but are
    # refutably false on parts of that range (independently confirmed by
    # high-precision differentiation of log theta3):
    #   psi''(1.5)  = -0.518634847001 > -60 e^{-1.5 pi} = -0.538997461268
    #   psi'''(2.0) =  0.353077855223 > 183 e^{-2 pi}   =  0.341742019903
    # and asymptotically psi''' ~ 2 pi^4 e^{-pi x} with 2 pi^4 > 183.
    # An honest certifier must fail them on the full grid.
    from torusdet import psi_derivatives

    d = psi_derivatives(1.5)
    assert abs(d.psi2 - (-0.518634847001)) <= 1e-10
    assert d.psi2 > -60.0 * math.exp(-1.5 * math.pi)
    d = psi_derivatives(2.0)
    assert abs(d.psi3 - 0.353077855223) <= 1e-10
    assert d.psi3 > 183.0 * math.exp(-2.0 * math.pi)
    assert 2.0 * math.pi**4 > 183.0

    certs = {c.name: c for c in certify_series_bounds(log_grid(1.001, 50.0, 512))}
    assert not certs["psi_second_envelope"].passed
    assert certs["psi_second_envelope"].min_margin < 0.0
    assert not certs["psi_third_envelope"].passed
    assert certs["psi_third_envelope"].min_margin < 0.0


def test_series_bounds_reject_left_of_one():
    with pytest.raises(DomainError):
        certify_series_bounds([0.9, 2.0])


def test_polynomials():
    certs = certify_polynomials()
    for c in certs:
        assert c.passed, (c.name, c.min_margin)
    # exact root of the cubic at 6/5
    assert Fraction(72) * Fraction(6, 5) ** 2 - Fraction(60) * Fraction(6, 5) ** 3 == 0
    # sample sign checks
    assert 72 * 1.3**2 - 60 * 1.3**3 < 0.0
    assert 168 * 1.1**2 - 360 * 1.1**3 + 183 * 1.1**4 < 0.0


def test_quartic_root_analysis():
    root183 = quartic_upper_root(183.0)
    assert abs(root183 - (60.0 + 2.0 * math.sqrt(46.0)) / 61.0) < 1e-12
    assert root183 > 1.205
    root184 = quartic_upper_root(184.0)
    assert root184 < 1.2


def test_sensitivity_183_vs_184():
    assert quartic_negativity_reaches_cutoff(183.0)
    assert not quartic_negativity_reaches_cutoff(184.0)


def test_conclusion_certificate():
    cert = certify_conclusion(
        [0.05, 0.5, 0.9, 0.99],
        [1.01, 1.1, 1.2, 2.0, 5.0, 20.0],
    )
    assert cert.passed
    assert cert.min_margin > 0.0
    assert cert.grid_points == 10


def test_conclusion_rejects_neighborhood_of_one():
    with pytest.raises(DomainError):
        certify_conclusion([0.9995], [2.0])
    with pytest.raises(DomainError):
        certify_conclusion([0.5], [1.0005])
    with pytest.raises(DomainError):
        certify_conclusion([1.5], [2.0])
