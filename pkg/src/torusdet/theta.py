"""Error-bounded evaluation of Jacobi's theta functions on the positive real axis.

For x > 0 the four functions are

    theta2(x)     = 2 sum_{k>=1} e^{-pi (k-1/2)^2 x}
    theta3(x)     = 1 + 2 sum_{k>=1} e^{-pi k^2 x}
    theta4(x)     = 1 + 2 sum_{k>=1} (-1)^k e^{-pi k^2 x}
    theta1plus(x) = 2 sum_{k>=0} (-1)^k (2k+1) e^{-pi (k+1/2)^2 x}

with theta1plus the z-derivative at z = 0 of the first two-variable theta.
Each also has an infinite-product representation (Jacobi triple product);
``theta_series`` and ``theta_product`` evaluate the two routes independently.

Series evaluation transports arguments below 1 through the Poisson duality

    theta3(x) = x^{-1/2} theta3(1/x),   theta2(x) = x^{-1/2} theta4(1/x),
    theta4(x) = x^{-1/2} theta2(1/x),   theta1plus(x) = x^{-3/2} theta1plus(1/x)

so the summed series always has argument >= 1.  Products are evaluated
directly at every x (their convergence ratio e^{-2 pi x} stays well below 1
on the supported range), which keeps the two routes genuinely independent.

Error bounds are absolute and account for both the analytic truncation tail
and accumulated binary64 rounding.
"""

from __future__ import annotations

import math

from ._backend import kernels
from .errors import DomainError, TolUnreachable
from .types import (
    DEFAULT_POLICY,
    BoundedValue,
    PositiveReal,
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

_POISSON_PARTNER = {
    ThetaKind.THETA2: ThetaKind.THETA4,
    ThetaKind.THETA3: ThetaKind.THETA3,
    ThetaKind.THETA4: ThetaKind.THETA2,
    ThetaKind.THETA1_PLUS: ThetaKind.THETA1_PLUS,
}


def rounding_bound(abs_sum: float, n_terms: int, arg_scale: float) -> float:
    """Forward rounding-error bound for a recursively accumulated sum of
    n_terms exponential terms whose magnitudes add up to abs_sum.

    Covers the summation roundings (n terms) plus the relative error of each
    term including the rounding of its exponent; the exponent magnitude of
    the mass-carrying terms is O(pi * arg_scale) for every series in this
    package, with deeper terms exponentially too small to matter."""
    return (n_terms + 8 + 13.0 * arg_scale) * _EPS * abs_sum


def log_rounding_bound(abs_sum: float, max_part: float, n_terms: int, arg_scale: float) -> float:
    """Rounding bound for a log-factor sum whose running partials never
    exceed max_part: n roundings of partials plus per-term relative error."""
    return _EPS * (n_terms * max_part + (8.0 + 13.0 * arg_scale) * abs_sum)


def theta_series(
    kind: ThetaKind,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """Evaluate a theta function from its exponential series.

    Returns the value together with an absolute error bound not exceeding
    ``policy.target_abs_tol``.  Raises TolUnreachable when the tolerance
    cannot be certified within ``policy.max_terms``.
    """
    xv = positive_value(x)
    return _series_any(kind, xv, policy.target_abs_tol, policy.max_terms)


def _series_any(kind: ThetaKind, xv: float, target: float, kmax: int) -> BoundedValue:
    if xv >= 1.0:
        return _series_direct(kind, xv, target, kmax)
    scale = xv**-1.5 if kind is ThetaKind.THETA1_PLUS else xv**-0.5
    partner = _POISSON_PARTNER[kind]
    inner = _series_direct(partner, 1.0 / xv, 0.7 * target / scale, kmax)
    value = scale * inner.value
    err = scale * inner.error_bound + 4.0 * _EPS * abs(value)
    if err > target:
        raise TolUnreachable(
            f"cannot certify abs tol {target:g} for {kind.value} at x={xv:g}"
        )
    return BoundedValue(value, err, inner.terms_used)


def _series_direct(kind: ThetaKind, xv: float, target: float, kmax: int) -> BoundedValue:
    tol = target / 2.0
    if kind is ThetaKind.THETA2:
        s, tail, abs_sum, n = kernels.theta2_series(xv, tol, kmax)
        value, n_used = s, n
    elif kind is ThetaKind.THETA3:
        s, tail, abs_sum, n = kernels.theta3_series(xv, tol, kmax)
        value, n_used = 1.0 + s, n + 1
    elif kind is ThetaKind.THETA4:
        s, tail, abs_sum, n = kernels.theta4_series(xv, tol, kmax)
        value, n_used = 1.0 + s, n + 1
    elif kind is ThetaKind.THETA1_PLUS:
        s, tail, abs_sum, n = kernels.theta1p_series(xv, tol, kmax)
        value, n_used = s, n
    else:
        raise DomainError(f"unknown theta kind {kind!r}")
    if not tail < tol:
        raise TolUnreachable(
            f"series tail for {kind.value} at x={xv:g} stuck at {tail:g} "
            f"after {n} terms (budget {kmax})"
        )
    err = tail + rounding_bound(abs_sum, n, xv) + 0.5 * _EPS * abs(value)
    if err > target:
        raise TolUnreachable(
            f"rounding floor exceeds abs tol {target:g} for {kind.value} at x={xv:g}"
        )
    return BoundedValue(value, err, n_used)


def _value_cap(kind: ThetaKind, xv: float) -> float:
    # crude but safe overestimates of |theta(x)| used to convert a target
    # absolute error into a log-scale tolerance
    base = 1.2 * xv**-0.5 + 1.0
    if kind is ThetaKind.THETA1_PLUS:
        return base * base
    return base


def theta_product(
    kind: ThetaKind,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """Evaluate a theta function from its infinite-product representation.

    The product is truncated after K factors; the discarded log-factors are
    bounded through |log(1 + u)| <= |u|/(1 - |u|), which yields a
    multiplicative enclosure converted to the reported absolute bound.
    """
    xv = positive_value(x)
    target = policy.target_abs_tol
    tol_log = target / (4.0 * _value_cap(kind, xv))
    logsum, ltail, labs, lmax, n = kernels.theta_log_product(
        _KIND_CODE[kind], xv, tol_log, policy.max_terms
    )
    if not ltail < tol_log:
        raise TolUnreachable(
            f"product tail for {kind.value} at x={xv:g} stuck at {ltail:g} "
            f"after {n} factors (budget {policy.max_terms})"
        )
    if kind in (ThetaKind.THETA2, ThetaKind.THETA1_PLUS):
        log_pref = math.log(2.0) - 0.25 * _PI * xv
    else:
        log_pref = 0.0
    value = math.exp(log_pref + logsum)
    delta = ltail + log_rounding_bound(labs, lmax + abs(log_pref), n + 4, xv)
    err = value * math.expm1(delta)
    if err > target:
        raise TolUnreachable(
            f"cannot certify abs tol {target:g} for {kind.value} product at x={xv:g}"
        )
    return BoundedValue(value, err, n)


def big_theta_real(
    z: float,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """Two-variable theta restricted to a real first argument:

        Theta(z, ix) = 1 + 2 sum_{k>=1} e^{-pi k^2 x} cos(2 pi k z).

    Real-valued, 1-periodic and even in z; Theta(0, ix) = theta3(x) and
    Theta(1/2, ix) = theta4(x).
    """
    if not isinstance(z, (int, float)) or isinstance(z, bool) or not math.isfinite(z):
        raise DomainError(f"z must be a finite real number, got {z!r}")
    xv = positive_value(x)
    target = policy.target_abs_tol
    s, tail, abs_sum, n = kernels.big_theta_series(float(z), xv, target / 2.0, policy.max_terms)
    if not tail < target / 2.0:
        raise TolUnreachable(
            f"Theta(z, ix) tail stuck at {tail:g} after {n} terms at x={xv:g}"
        )
    value = 1.0 + s
    err = tail + rounding_bound(abs_sum, n, xv) + 0.5 * _EPS * abs(value)
    if err > target:
        raise TolUnreachable(
            f"cannot certify abs tol {target:g} for Theta(z, ix) at x={xv:g}"
        )
    return BoundedValue(value, err, n + 1)


def big_theta_real_product(
    z: float,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """Jacobi triple-product evaluation of Theta(z, ix) for real z:

        prod_{k>=1} (1 - q^{2k}) (1 + 2 cos(2 pi z) q^{2k-1} + q^{2(2k-1)}),
        q = e^{-pi x}.
    """
    if not isinstance(z, (int, float)) or isinstance(z, bool) or not math.isfinite(z):
        raise DomainError(f"z must be a finite real number, got {z!r}")
    xv = positive_value(x)
    target = policy.target_abs_tol
    tol_log = target / (2.0 * (1.2 * xv**-0.5 + 1.0))
    logsum, ltail, labs, lmax, n = kernels.big_theta_log_product(
        float(z), xv, tol_log, policy.max_terms
    )
    if not ltail < tol_log:
        raise TolUnreachable(
            f"triple-product tail stuck at {ltail:g} after {n} factors at x={xv:g}"
        )
    value = math.exp(logsum)
    delta = ltail + log_rounding_bound(labs, lmax, n + 4, xv)
    err = value * math.expm1(delta)
    if err > target:
        raise TolUnreachable(
            f"cannot certify abs tol {target:g} for Theta(z, ix) product at x={xv:g}"
        )
    return BoundedValue(value, err, n)


def theta3_minus_one(
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """theta3(x) - 1, computed without cancellation.

    For x >= 1 this is the raw series 2 sum e^{-pi k^2 x}; for x < 1 the
    Poisson-transported form (x^{-1/2} - 1) + x^{-1/2} (theta3(1/x) - 1).
    Used by the spectral module where theta3 is exponentially close to 1.
    """
    xv = positive_value(x)
    target = policy.target_abs_tol
    if xv >= 1.0:
        s, tail, abs_sum, n = kernels.theta3_series(xv, target / 2.0, policy.max_terms)
        if not tail < target / 2.0:
            raise TolUnreachable(f"theta3 - 1 tail stuck at {tail:g} at x={xv:g}")
        return BoundedValue(s, tail + rounding_bound(abs_sum, max(n, 1), xv), max(n, 1))
    scale = xv**-0.5
    inner = theta3_minus_one(1.0 / xv, TruncationPolicy(target / (2.0 * scale), policy.max_terms))
    value = (scale - 1.0) + scale * inner.value
    err = scale * inner.error_bound + 4.0 * _EPS * (scale + abs(value))
    return BoundedValue(value, err, inner.terms_used)
