"""Extended-precision reference evaluations (mpmath).

This is the configuration switch for oracle generation: every function here
sums the defining series/product directly at ``dps`` significant digits,
independently of the binary64 kernels.  Intended for tests and for freezing
reference values; not used by the fast path.
"""

from __future__ import annotations

import mpmath

from .types import ThetaKind


def _workdps(dps: int):
    return mpmath.workdps(dps + 10)


def theta(kind: ThetaKind, x, dps: int = 30, terms: int = 200):
    """Direct series summation of a theta function at extended precision."""
    with _workdps(dps):
        xm = mpmath.mpf(x)
        s = mpmath.mpf(0)
        if kind is ThetaKind.THETA2:
            for k in range(1, terms + 1):
                s += 2 * mpmath.exp(-mpmath.pi * (k - mpmath.mpf(1) / 2) ** 2 * xm)
        elif kind is ThetaKind.THETA3:
            s = mpmath.mpf(1)
            for k in range(1, terms + 1):
                s += 2 * mpmath.exp(-mpmath.pi * k * k * xm)
        elif kind is ThetaKind.THETA4:
            s = mpmath.mpf(1)
            for k in range(1, terms + 1):
                s += 2 * (-1) ** k * mpmath.exp(-mpmath.pi * k * k * xm)
        elif kind is ThetaKind.THETA1_PLUS:
            for k in range(0, terms + 1):
                s += (
                    2
                    * (-1) ** k
                    * (2 * k + 1)
                    * mpmath.exp(-mpmath.pi * (k + mpmath.mpf(1) / 2) ** 2 * xm)
                )
        else:
            raise ValueError(f"unknown kind {kind!r}")
        return +s


def big_theta(z, x, dps: int = 30, terms: int = 200):
    """Theta(z, ix) = 1 + 2 sum e^{-pi k^2 x} cos(2 pi k z) at extended precision."""
    with _workdps(dps):
        xm = mpmath.mpf(x)
        zm = mpmath.mpf(z)
        s = mpmath.mpf(1)
        for k in range(1, terms + 1):
            s += 2 * mpmath.exp(-mpmath.pi * k * k * xm) * mpmath.cos(2 * mpmath.pi * k * zm)
        return +s


def eta(y, dps: int = 30, terms: int = 400):
    """Dedekind eta on the imaginary axis from the defining product."""
    with _workdps(dps):
        ym = mpmath.mpf(y)
        p = mpmath.exp(-mpmath.pi * ym / 12)
        for k in range(1, terms + 1):
            p *= 1 - mpmath.exp(-2 * mpmath.pi * k * ym)
        return +p


def psi1(x, dps: int = 30):
    """x^{3/4} theta1plus(x) at extended precision."""
    with _workdps(dps):
        xm = mpmath.mpf(x)
        return +(xm ** mpmath.mpf("0.75") * theta(ThetaKind.THETA1_PLUS, xm, dps=dps))


def determinant(alpha, dps: int = 30):
    """alpha * eta(i alpha)^4 at extended precision."""
    with _workdps(dps):
        am = mpmath.mpf(alpha)
        return +(am * eta(am, dps=dps) ** 4)


def log_deriv_theta(kind: ThetaKind, x, dps: int = 30):
    """theta'(x)/theta(x) by high-precision numerical differentiation of the
    direct series (independent of the product-derived series route)."""
    with _workdps(dps):
        xm = mpmath.mpf(x)
        f = lambda u: mpmath.log(theta(kind, u, dps=dps))
        return +mpmath.diff(f, xm)
