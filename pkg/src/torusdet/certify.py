"""Certificates for the explicit constants and inequalities in the
third-log-derivative sign argument.

The chain of estimates controlling the sign of (x d/dx)^3 log theta3 rests
on a handful of numeric micro-bounds (checked at their binding endpoint or
on a dense grid), three exponential envelopes for psi', psi'', psi''' on
x > 1, and two polynomial sign claims with closed-form roots.  Each check is
reported as a Certificate whose margin already has the evaluation error
subtracted, so ``passed`` means the inequality holds with room to spare.

The envelope constant 183 is load-bearing: with 184 instead, the quartic
168 x^2 - 360 x^3 + 184 x^4 stays negative only up to
(180 + sqrt(32400 - 168*184))/184 ~= 1.188, which no longer reaches the
x = 6/5 handover point, and the argument breaks.  ``quartic_upper_root``
exposes that root analysis for the negative test.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence

from .logscale import psi_derivatives, xddx_log_theta
from .errors import DomainError
from .types import DEFAULT_POLICY, Certificate, ThetaKind, TruncationPolicy

_PI = math.pi
_EPS = 2.220446049250313e-16

# evaluation slack subtracted from closed-form double arithmetic margins
_ARITH_SLACK = 1e-12

HANDOVER = 6.0 / 5.0  # where the cubic bound takes over from the quartic


def _grid(lo: float, hi: float, n: int) -> list[float]:
    if n < 2:
        return [lo]
    step = (math.log(hi) - math.log(lo)) / (n - 1)
    return [math.exp(math.log(lo) + i * step) for i in range(n)]


def _cert(name: str, claim: str, domain: str, grid_points: int, margin: float) -> Certificate:
    return Certificate(
        name=name,
        claim=claim,
        domain=domain,
        grid_points=grid_points,
        min_margin=margin,
        passed=margin > 0.0,
    )


def certify_constants() -> list[Certificate]:
    """All explicit numeric micro-bounds from the sign proof.

    Monotone-in-x expressions are checked at their binding endpoint x = 1;
    the five-term bracket, which is not obviously monotone, is additionally
    scanned on a 512-point grid."""
    e_pi = math.exp(-_PI)
    e_2pi = math.exp(-2.0 * _PI)
    certs = [
        _cert(
            "one_plus_exp",
            "1 + e^{-pi x} < 1.05 for x > 1",
            "x > 1",
            1,
            1.05 - (1.0 + e_pi) - _ARITH_SLACK,
        ),
        _cert(
            "inv_cubed_pi",
            "(1 - e^{-pi x})^{-3} < 1.15 for x > 1",
            "x > 1",
            1,
            1.15 - (1.0 - e_pi) ** -3 - _ARITH_SLACK,
        ),
        _cert(
            "one_plus_exp_2pi",
            "1 + e^{-2 pi} < 1.002",
            "constant",
            1,
            1.002 - (1.0 + e_2pi) - _ARITH_SLACK,
        ),
        _cert(
            "inv_cubed_2pi",
            "(1 - e^{-2 pi})^{-3} < 1.006",
            "constant",
            1,
            1.006 - (1.0 - e_2pi) ** -3 - _ARITH_SLACK,
        ),
        _cert(
            "three_term_upper",
            "e^{-5 pi x} + 4 e^{-3 pi x} + e^{-pi x} < 0.045 for x > 1",
            "x > 1",
            1,
            0.045
            - (math.exp(-5.0 * _PI) + 4.0 * math.exp(-3.0 * _PI) + e_pi)
            - _ARITH_SLACK,
        ),
        _cert(
            "inv_fourth_2pi",
            "(1 - e^{-2 pi x})^{-4} < 1.008 for x > 1",
            "x > 1",
            1,
            1.008 - (1.0 - e_2pi) ** -4 - _ARITH_SLACK,
        ),
        _cert(
            "three_term_lower",
            "e^{-5 pi} + 4 e^{-3 pi} + e^{-pi} > 0.04",
            "constant",
            1,
            (math.exp(-5.0 * _PI) + 4.0 * math.exp(-3.0 * _PI) + e_pi)
            - 0.04
            - _ARITH_SLACK,
        ),
        _cert(
            "inv_fifth_pi",
            "(1 - e^{-pi x})^{-5} < 1.25 for x > 1",
            "x > 1",
            1,
            1.25 - (1.0 - e_pi) ** -5 - _ARITH_SLACK,
        ),
        _cert(
            "psi3_final",
            "(2 * 1.259 - 0.64) pi^4 < 183",
            "constant",
            1,
            183.0 - (2.0 * 1.259 - 0.64) * _PI**4 - _ARITH_SLACK,
        ),
        _cert(
            "psi1_chain",
            "2 pi^2 * 1.05 * 1.15 < 24",
            "constant",
            1,
            24.0 - 2.0 * _PI**2 * 1.05 * 1.15 - _ARITH_SLACK,
        ),
        _cert(
            "psi2_chain",
            "(2 - 0.05) pi^3 > 60",
            "constant",
            1,
            (2.0 - 0.05) * _PI**3 - 60.0 - _ARITH_SLACK,
        ),
        _cert(
            "psi2_inner",
            "1.01 * 0.045 * 1.008 < 0.05",
            "constant",
            1,
            0.05 - 1.01 * 0.045 * 1.008 - _ARITH_SLACK,
        ),
        _cert(
            "psi3_inner",
            "1.25 * 1.0065 < 1.259",
            "constant",
            1,
            1.259 - 1.25 * 1.0065 - _ARITH_SLACK,
        ),
    ]

    def bracket(x: float) -> float:
        return (
            16.0 * math.exp(-7.0 * _PI * x)
            - 79.0 * math.exp(-6.0 * _PI * x)
            + 155.0 * math.exp(-5.0 * _PI * x)
            - 149.0 * math.exp(-4.0 * _PI * x)
            + 81.0 * math.exp(-3.0 * _PI * x)
        )

    xs = [1.0] + _grid(1.0, 50.0, 512)
    margin = min(0.0065 - bracket(x) for x in xs) - _ARITH_SLACK
    certs.append(
        _cert(
            "five_term_bracket",
            "16 e^{-7 pi x} - 79 e^{-6 pi x} + 155 e^{-5 pi x} - 149 e^{-4 pi x}"
            " + 81 e^{-3 pi x} < 0.0065 for x > 1",
            "x > 1",
            len(xs),
            margin,
        )
    )
    return certs


def certify_series_bounds(
    grid: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> list[Certificate]:
    """Exponential envelopes of the psi-derivative series on x > 1:

        psi'(x) < 24 e^{-pi x},  psi''(x) < -60 e^{-pi x},  psi'''(x) < 183 e^{-pi x}.

    Margins subtract the per-order evaluation error bounds."""
    pts = [float(x) for x in grid]
    if any(x <= 1.0 for x in pts):
        raise DomainError("series-bound certificates require grid points > 1")
    m1 = m2 = m3 = math.inf
    for x in pts:
        env = math.exp(-_PI * x)
        d = psi_derivatives(x, policy)
        m1 = min(m1, 24.0 * env - d.psi1 - d.psi1_bound)
        m2 = min(m2, -60.0 * env - d.psi2 - d.psi2_bound)
        m3 = min(m3, 183.0 * env - d.psi3 - d.psi3_bound)
    n = len(pts)
    return [
        _cert("psi_prime_envelope", "psi'(x) < 24 e^{-pi x}", "x > 1", n, m1),
        _cert("psi_second_envelope", "psi''(x) < -60 e^{-pi x}", "x > 1", n, m2),
        _cert("psi_third_envelope", "psi'''(x) < 183 e^{-pi x}", "x > 1", n, m3),
    ]


def quartic_upper_root(c: float) -> float | None:
    """Larger root of c x^2 - 360 x + 168, i.e. the right end of the interval
    on which 168 x^2 - 360 x^3 + c x^4 < 0.  None when the quadratic has no
    real roots (the quartic is then never negative for x > 0)."""
    disc = 32400.0 - 168.0 * c
    if disc < 0.0:
        return None
    return (180.0 + math.sqrt(disc)) / c


def quartic_negativity_reaches_cutoff(c: float) -> bool:
    """Whether the negativity interval of 168 x^2 - 360 x^3 + c x^4 extends
    past the handover point x = 6/5 where the cubic bound takes over.

    True for c = 183 (the proof closes), False for c = 184 (a gap opens)."""
    root = quartic_upper_root(c)
    return root is not None and root > HANDOVER


def certify_polynomials() -> list[Certificate]:
    """Sign claims with closed-form roots.

    72 x^2 - 60 x^3 = 12 x^2 (6 - 5x) is negative exactly for x > 6/5, and
    168 x^2 - 360 x^3 + 183 x^4 is negative on (1, (60 + 2 sqrt(46))/61)
    with (60 + 2 sqrt(46))/61 > 1.205."""
    certs = []

    # exact root of the cubic bound at 6/5
    cubic_at_root = Fraction(72) * Fraction(6, 5) ** 2 - Fraction(60) * Fraction(6, 5) ** 3
    grid = _grid(HANDOVER + 1e-3, 50.0, 512)
    margin = min(60.0 * x**3 - 72.0 * x**2 for x in grid)
    margin = min(margin, math.inf if cubic_at_root == 0 else -math.inf)
    certs.append(
        _cert(
            "cubic_negative",
            "72 x^2 - 60 x^3 < 0 for x > 6/5 (root exactly at 6/5)",
            "x > 6/5",
            len(grid),
            margin - _ARITH_SLACK,
        )
    )

    root = quartic_upper_root(183.0)
    grid = _grid(1.0 + 1e-6, root - 1e-6, 512)
    margin = min(-(183.0 * x * x - 360.0 * x + 168.0) for x in grid)
    certs.append(
        _cert(
            "quartic_negative",
            "168 x^2 - 360 x^3 + 183 x^4 < 0 on (1, (60 + 2 sqrt(46))/61)",
            "(1, 1.20598...)",
            len(grid),
            margin - _ARITH_SLACK,
        )
    )

    certs.append(
        _cert(
            "quartic_root_low_bound",
            "(60 + 2 sqrt(46))/61 > 1.205",
            "constant",
            1,
            (60.0 + 2.0 * math.sqrt(46.0)) / 61.0 - 1.205 - _ARITH_SLACK,
        )
    )
    return certs


def certify_conclusion(
    grid_below: Sequence[float],
    grid_above: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> Certificate:
    """Sign of (x d/dx)^3 log theta3: positive on (0, 1), negative on (1, inf).

    Both grids must exclude a 1e-3 neighborhood of 1 where the value crosses
    zero and the sign is undefined."""
    below = [float(x) for x in grid_below]
    above = [float(x) for x in grid_above]
    if any(not (0.0 < x < 1.0 - 1e-3) for x in below):
        raise DomainError("grid_below must lie in (0, 1 - 1e-3)")
    if any(not (x > 1.0 + 1e-3) for x in above):
        raise DomainError("grid_above must lie in (1 + 1e-3, inf)")
    margin = math.inf
    for x in below:
        b = xddx_log_theta(ThetaKind.THETA3, 3, x, policy)
        margin = min(margin, b.value - b.error_bound)
    for x in above:
        b = xddx_log_theta(ThetaKind.THETA3, 3, x, policy)
        margin = min(margin, -b.value - b.error_bound)
    return _cert(
        "third_logderiv_sign",
        "(x d/dx)^3 log theta3 > 0 on (0,1) and < 0 on (1, inf)",
        "(0,1) u (1,inf)",
        len(below) + len(above),
        margin,
    )
