"""Logarithmic derivatives of theta functions and iterates of x d/dx.

All derivatives are evaluated termwise from the product-derived series (the
same series the proofs manipulate), never by numerically differentiating
theta values; finite differences exist only as an independent test oracle.

Writing psi_j for the j-th plain derivative of log theta, the iterated
operator D = x d/dx expands as

    D^1 log theta = x psi_1
    D^2 log theta = x psi_1 + x^2 psi_2
    D^3 log theta = x psi_1 + 3 x^2 psi_2 + x^3 psi_3
    D^4 log theta = x psi_1 + 7 x^2 psi_2 + 6 x^3 psi_3 + x^4 psi_4

(Stirling numbers of the second kind), with the triangular inverse

    x   psi_1 = D^1
    x^2 psi_2 = D^2 - D^1
    x^3 psi_3 = D^3 - 3 D^2 + 2 D^1
    x^4 psi_4 = D^4 - 6 D^3 + 11 D^2 - 6 D^1.

For x below 1/2 the series are transported to 1/x through the log-scale
symmetries

    D log theta3(x) = -1/2 - D log theta3(1/x)
    D log theta2(x) = -1/2 - D log theta4(1/x)      (and 2 <-> 4)
    D^n log theta3(x) = (-1)^n D^n log theta3(1/x),  n >= 2
    D^n log theta2(x) = (-1)^n D^n log theta4(1/x),  n >= 2  (and 2 <-> 4)

so that every summed series has argument >= 2 where the tail bounds are
sharp.
"""

from __future__ import annotations

import math

from ._backend import kernels
from .errors import DomainError, TolUnreachable, UnsupportedKind, UnsupportedOrder
from .theta import log_rounding_bound, rounding_bound, theta_series
from .types import (
    DEFAULT_POLICY,
    BoundedValue,
    PositiveReal,
    PsiDerivatives,
    ThetaKind,
    TruncationPolicy,
    positive_value,
)

_EPS = 2.220446049250313e-16
_PI = math.pi

_KIND_CODE = {
    ThetaKind.THETA2: 2,
    ThetaKind.THETA3: 3,
    ThetaKind.THETA4: 4,
    ThetaKind.THETA1_PLUS: 1,
}

# duality partner under x -> 1/x on the log scale
_DUAL = {
    ThetaKind.THETA2: ThetaKind.THETA4,
    ThetaKind.THETA3: ThetaKind.THETA3,
    ThetaKind.THETA4: ThetaKind.THETA2,
}

# D^n log theta = sum_j _STIRLING[n][j-1] * x^j * psi_j
_STIRLING = {1: (1.0,), 2: (1.0, 1.0), 3: (1.0, 3.0, 1.0), 4: (1.0, 7.0, 6.0, 1.0)}

_SMALL_X_SWITCH = 0.5


def _plain_direct(kind: ThetaKind, xv: float, target: float, kmax: int):
    """Plain derivatives psi_1..psi_4 of log theta_kind at xv >= 1/2,
    straight from the factor series."""
    amp = 8.0 * (1.0 + xv) ** 4
    tol = target / (2.0 * amp)
    out = kernels.psi_family(_KIND_CODE[kind], xv, tol, kmax)
    d = list(out[0:4])
    tails = out[4:8]
    abssums = list(out[8:12])
    n = out[12]
    if not max(tails) < tol:
        raise TolUnreachable(
            f"derivative series for {kind.value} at x={xv:g} stuck "
            f"(worst tail {max(tails):g} after {n} terms)"
        )
    if kind in (ThetaKind.THETA2, ThetaKind.THETA1_PLUS):
        d[0] -= 0.25 * _PI
        abssums[0] += 0.25 * _PI
    errs = tuple(tails[j] + rounding_bound(abssums[j], n + 2, xv) for j in range(4))
    return tuple(d), errs, n


def _plain_derivs(kind: ThetaKind, xv: float, target: float, kmax: int):
    """psi_1..psi_4 of log theta_kind at any x > 0, transported below 1/2."""
    if xv >= _SMALL_X_SWITCH:
        return _plain_direct(kind, xv, target, kmax)
    y = 1.0 / xv
    py, pe, n = _plain_direct(_DUAL[kind], y, target, kmax)
    dy, ey = _dforms_from_plain(y, py, pe)
    # transport to x: sign flip for n >= 2, affine for n = 1
    dx = (-0.5 - dy[0], dy[1], -dy[2], dy[3])
    ex = tuple(ey[j] + 2.0 * _EPS * abs(dx[j]) for j in range(4))
    p = (
        dx[0] / xv,
        (dx[1] - dx[0]) / xv**2,
        (dx[2] - 3.0 * dx[1] + 2.0 * dx[0]) / xv**3,
        (dx[3] - 6.0 * dx[2] + 11.0 * dx[1] - 6.0 * dx[0]) / xv**4,
    )
    perr = (
        ex[0] / xv,
        (ex[1] + ex[0]) / xv**2,
        (ex[2] + 3.0 * ex[1] + 2.0 * ex[0]) / xv**3,
        (ex[3] + 6.0 * ex[2] + 11.0 * ex[1] + 6.0 * ex[0]) / xv**4,
    )
    perr = tuple(perr[j] + 4.0 * _EPS * abs(p[j]) for j in range(4))
    return p, perr, n


def _dforms_from_plain(xv: float, p, perr):
    """(D^1..D^4) log theta from plain derivatives at the same point."""
    xs = (xv, xv**2, xv**3, xv**4)
    d = tuple(
        sum(c * xs[j] * p[j] for j, c in enumerate(_STIRLING[n]))
        for n in (1, 2, 3, 4)
    )
    e = tuple(
        sum(c * xs[j] * perr[j] for j, c in enumerate(_STIRLING[n]))
        + 4.0 * _EPS * sum(abs(c * xs[j] * p[j]) for j, c in enumerate(_STIRLING[n]))
        for n in (1, 2, 3, 4)
    )
    return d, e


def log_deriv(
    kind: ThetaKind,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """theta'(x)/theta(x) for theta2, theta3 or theta4 (plain, not x-weighted).

    theta1plus is not handled here; its log-derivative enters through the
    symmetric function psi1 in the eta module.
    """
    if kind is ThetaKind.THETA1_PLUS:
        raise UnsupportedKind("log_deriv does not handle theta1plus")
    xv = positive_value(x)
    p, e, n = _plain_derivs(kind, xv, policy.target_abs_tol, policy.max_terms)
    return BoundedValue(p[0], e[0], n)


def log_deriv_series_part(
    kind: ThetaKind,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """theta'(x)/theta(x) with the constant -pi/4 prefactor of theta2 removed
    (identical to log_deriv for theta3/theta4).

    The shifted quantity decays to 0 instead of to a constant, which keeps
    strict monotonicity comparisons meaningful at the far end of a grid.
    Evaluated directly from the factor series at every x.
    """
    if kind is ThetaKind.THETA1_PLUS:
        raise UnsupportedKind("log_deriv_series_part does not handle theta1plus")
    xv = positive_value(x)
    if kind is not ThetaKind.THETA2:
        return log_deriv(kind, xv, policy)
    target = policy.target_abs_tol
    if xv >= _SMALL_X_SWITCH:
        # raw factor series of theta2, no prefactor round-trip
        out = kernels.psi_family(_KIND_CODE[kind], xv, target / 4.0, policy.max_terms)
        d1, t1, a1, n = out[0], out[4], out[8], out[12]
        if not t1 < target / 4.0:
            raise TolUnreachable(f"theta2 series part stuck at {t1:g} at x={xv:g}")
        return BoundedValue(d1, t1 + rounding_bound(a1, n + 2, xv), n)
    # pi/4 - y/2 - y^2 theta4'(y)/theta4(y) with y = 1/x; all terms O(1)-O(y)
    y = 1.0 / xv
    b = log_deriv(ThetaKind.THETA4, y, policy)
    value = 0.25 * _PI - 0.5 * y - y * y * b.value
    err = y * y * b.error_bound + 4.0 * _EPS * (abs(value) + 0.5 * y + y * y * abs(b.value))
    return BoundedValue(value, err, b.terms_used)


def psi_derivatives(
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> PsiDerivatives:
    """psi = theta3'/theta3 and its derivatives psi', psi'', psi''' at x,
    each from its own termwise-differentiated series."""
    xv = positive_value(x)
    p, e, n = _plain_derivs(ThetaKind.THETA3, xv, policy.target_abs_tol, policy.max_terms)
    return PsiDerivatives(
        psi=p[0],
        psi1=p[1],
        psi2=p[2],
        psi3=p[3],
        psi_bound=e[0],
        psi1_bound=e[1],
        psi2_bound=e[2],
        psi3_bound=e[3],
        terms_used=n,
    )


def _check_order(kind: ThetaKind, n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool) or n < 0 or n > 4:
        raise UnsupportedOrder(f"derivative order must be an integer in [0, 4], got {n!r}")
    if kind in (ThetaKind.THETA2, ThetaKind.THETA4) and n > 2:
        raise UnsupportedOrder(
            f"order {n} for {kind.value} needs derivative series beyond order 2"
        )


def xddx_log_theta(
    kind: ThetaKind,
    n: int,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """(x d/dx)^n log theta_kind(x).

    n = 0 returns log theta itself (from the product-form log sum); n = 1 is
    the x-weighted logarithmic derivative.  Orders up to 4 are available for
    theta3, up to 2 for theta2/theta4.
    """
    if kind is ThetaKind.THETA1_PLUS:
        raise UnsupportedKind("xddx_log_theta does not handle theta1plus")
    _check_order(kind, n)
    xv = positive_value(x)
    if n == 0:
        return _log_theta(kind, xv, policy)
    if xv >= _SMALL_X_SWITCH:
        p, e, nn = _plain_direct(kind, xv, policy.target_abs_tol, policy.max_terms)
        return _assemble_dform(n, xv, p, e, nn)
    # transport the D-form itself: the n >= 2 case is a pure sign flip, which
    # preserves the exponentially small values that a round-trip through
    # plain derivatives would absorb into the -1/2 term
    y = 1.0 / xv
    p, e, nn = _plain_direct(_DUAL[kind], y, policy.target_abs_tol, policy.max_terms)
    dy = _assemble_dform(n, y, p, e, nn)
    if n == 1:
        value = -0.5 - dy.value
        return BoundedValue(value, dy.error_bound + _EPS * abs(value), nn)
    sign = 1.0 if n % 2 == 0 else -1.0
    return BoundedValue(sign * dy.value, dy.error_bound, nn)


def _assemble_dform(n: int, xv: float, p, e, nn: int) -> BoundedValue:
    xs = (xv, xv**2, xv**3, xv**4)
    coeffs = _STIRLING[n]
    value = sum(c * xs[j] * p[j] for j, c in enumerate(coeffs))
    err = sum(c * xs[j] * e[j] for j, c in enumerate(coeffs))
    err += 4.0 * _EPS * sum(abs(c * xs[j] * p[j]) for j, c in enumerate(coeffs))
    return BoundedValue(value, err, nn)


def _log_theta(kind: ThetaKind, xv: float, policy: TruncationPolicy) -> BoundedValue:
    target = policy.target_abs_tol
    logsum, ltail, labs, lmax, nn = kernels.theta_log_product(
        _KIND_CODE[kind], xv, target / 2.0, policy.max_terms
    )
    if not ltail < target / 2.0:
        raise TolUnreachable(f"log-product tail stuck at {ltail:g} for {kind.value}")
    if kind is ThetaKind.THETA2:
        pref = math.log(2.0) - 0.25 * _PI * xv
    else:
        pref = 0.0
    value = pref + logsum
    err = ltail + log_rounding_bound(labs, lmax + abs(pref), nn + 2, xv)
    return BoundedValue(value, err, nn)


def finite_difference_check(
    kind: ThetaKind,
    n: int,
    x: float | PositiveReal,
    h: float,
) -> float:
    """Central-finite-difference estimate of (x d/dx)^n log theta at x.

    The first-order central stencil with step h in y = log x is applied n
    times recursively; theta values come from theta_series, so this is an
    oracle independent of the analytic derivative series.  Test-only.
    """
    if kind is ThetaKind.THETA1_PLUS:
        raise UnsupportedKind("finite_difference_check does not handle theta1plus")
    xv = positive_value(x)
    if not isinstance(n, int) or isinstance(n, bool) or n < 1 or n > 4:
        raise DomainError(f"finite differences need an integer order in [1, 4], got {n!r}")
    if not (0.0 < h < xv / 10.0):
        raise DomainError(f"step h={h!r} outside (0, x/10)")
    tight = TruncationPolicy(2e-14, 200_000)

    def stencil(y: float, order: int) -> float:
        if order == 0:
            return math.log(theta_series(kind, math.exp(y), tight).value)
        return (stencil(y + h, order - 1) - stencil(y - h, order - 1)) / (2.0 * h)

    return stencil(math.log(xv), n)
