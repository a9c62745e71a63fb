"""Dedekind eta on the imaginary axis, the symmetric function psi1, the
rectangular-torus determinant, and the extremal solver.

For y > 0,

    eta(iy) = e^{-pi y / 12} prod_{k>=1} (1 - e^{-2 pi k y})

is real and positive.  The closed-form determinant of the Laplacian on the
unit-area torus C / ((1/alpha) Z x i alpha Z) is

    det' = alpha * eta(i alpha)^4,

and psi1(x) = x^{3/4} theta1plus(x) = 2 x^{3/4} |eta(ix)|^3 satisfies
psi1(x) = psi1(1/x) with a unique global maximum at x = 1, which is what
makes the square torus extremal.  The x-weighted logarithmic derivative

    x d/dx log psi1(x) = 3/4 - (pi/4) x + 3 sum_{k>=1} 2 k pi x / (e^{2 k pi x} - 1)

is strictly decreasing and crosses zero exactly at x = 1, so the maximizer
is found by sign bisection.
"""

from __future__ import annotations

import math

from ._backend import kernels
from .errors import BadInterval, TolUnreachable, TorusDetError
from .theta import rounding_bound
from .types import (
    DEFAULT_POLICY,
    BoundedValue,
    DetRoute,
    DeterminantResult,
    PositiveReal,
    TorusShape,
    TruncationPolicy,
    positive_value,
)

_EPS = 2.220446049250313e-16
_PI = math.pi

_SMALL_SWITCH = 0.5


def _eta_log_tail(y: float, target_rel: float, kmax: int):
    """Log-sum of the eta product factors with tail and rounding bounds."""
    logsum, ltail, labs, lmax, n = kernels.eta_log_product(y, target_rel / 2.0, kmax)
    if not ltail < target_rel / 2.0:
        raise TolUnreachable(f"eta product tail stuck at {ltail:g} for y={y:g}")
    return logsum, ltail, labs, n


def eta_imag_axis(
    y: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """eta(iy) for y > 0, from the defining product.

    Below y = 1/2 the raw product converges slowly, so the value is
    recovered through the psi1 symmetry: eta(iy) = (psi1(1/y) / (2 y^{3/4}))^{1/3}.
    """
    yv = positive_value(y)
    target = policy.target_abs_tol
    if yv >= _SMALL_SWITCH:
        # value <= e^{-pi y/12} < 1, so a log tolerance of target/2 suffices
        logsum, ltail, labs, n = _eta_log_tail(yv, target, policy.max_terms)
        value = math.exp(-_PI * yv / 12.0 + logsum)
        delta = ltail + rounding_bound(labs + _PI * yv / 12.0, n + 4, yv)
        err = value * math.expm1(delta)
        return BoundedValue(value, err, n)
    p = psi1(1.0 / yv, TruncationPolicy(target / 2.0, policy.max_terms))
    scale = 2.0 * yv**0.75
    ratio = p.value / scale
    value = ratio ** (1.0 / 3.0)
    # d(value)/d(ratio) = value / (3 ratio)
    err = (value / (3.0 * ratio)) * (p.error_bound / scale) + 8.0 * _EPS * value
    return BoundedValue(value, err, p.terms_used)


def psi1(
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """psi1(x) = x^{3/4} theta1plus(x) = 2 x^{3/4} e^{-pi x/4} prod (1 - e^{-2 k pi x})^3.

    Evaluated from the cubed product; arguments below 1/2 use the symmetry
    psi1(x) = psi1(1/x).
    """
    xv = positive_value(x)
    target = policy.target_abs_tol
    arg = xv if xv >= _SMALL_SWITCH else 1.0 / xv
    logsum, ltail, labs, n = _eta_log_tail(arg, target / 3.0, policy.max_terms)
    log_pref = math.log(2.0) + 0.75 * math.log(arg) - 0.25 * _PI * arg
    value = math.exp(log_pref + 3.0 * logsum)
    delta = 3.0 * ltail + rounding_bound(3.0 * labs + abs(log_pref), n + 6, arg)
    err = value * math.expm1(delta)
    if err > target:
        raise TolUnreachable(f"cannot certify abs tol {target:g} for psi1 at x={xv:g}")
    return BoundedValue(value, err, n)


def log_deriv_psi1(
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """x psi1'(x)/psi1(x) = 3/4 - (pi/4) x + 3 sum_{k>=1} 2 k pi x / (e^{2 k pi x} - 1).

    Strictly decreasing on (0, inf) with its unique zero at x = 1; below
    x = 1/2 the antisymmetry D log psi1(x) = -D log psi1(1/x) is used.
    """
    xv = positive_value(x)
    target = policy.target_abs_tol
    if xv >= _SMALL_SWITCH:
        s, tail, abs_sum, n = kernels.psi1_logderiv_sum(xv, target / 6.0, policy.max_terms)
        if not tail < target / 6.0:
            raise TolUnreachable(f"psi1 log-derivative tail stuck at {tail:g} at x={xv:g}")
        value = 0.75 - 0.25 * _PI * xv + 3.0 * s
        err = 3.0 * tail + rounding_bound(3.0 * abs_sum + 0.75 + 0.25 * _PI * xv, n + 4, xv)
        return BoundedValue(value, err, n)
    inner = log_deriv_psi1(1.0 / xv, policy)
    return BoundedValue(-inner.value, inner.error_bound + 2.0 * _EPS * abs(inner.value), inner.terms_used)


def determinant_bounded(
    alpha: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """alpha * eta(i alpha)^4 with a propagated absolute error bound."""
    av = positive_value(alpha)
    e = eta_imag_axis(av, policy)
    det = av * e.value**4
    err = av * 4.0 * e.value**3 * e.error_bound + 8.0 * _EPS * det
    return BoundedValue(det, err, e.terms_used)


def determinant(
    shape: TorusShape | float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> DeterminantResult:
    """Closed-form determinant det' = alpha * eta(i alpha)^4 of the
    Laplacian on the unit-area rectangular torus, with height -log(det').

    Cross-checked internally against the algebraically equivalent
    (psi1(alpha)/2)^{4/3} route.
    """
    alpha = shape.alpha if isinstance(shape, TorusShape) else positive_value(shape)
    b = determinant_bounded(alpha, policy)
    det, det_err = b.value, b.error_bound
    p = psi1(alpha, policy)
    half = p.value / 2.0
    cross = half ** (4.0 / 3.0)
    cross_err = (4.0 / 3.0) * cross / half * (p.error_bound / 2.0) + 8.0 * _EPS * cross
    if abs(det - cross) > 4.0 * (det_err + cross_err) + 1e-15:
        raise TorusDetError(
            f"internal cross-check failed at alpha={alpha:g}: "
            f"eta route {det!r} vs psi1 route {cross!r}"
        )
    return DeterminantResult(
        alpha=alpha,
        det_value=det,
        height=-math.log(det),
        route=DetRoute.ETA_CLOSED_FORM,
    )


def maximize_determinant(
    search_interval: tuple[float | PositiveReal, float | PositiveReal],
    tol: float,
) -> tuple[float, float]:
    """Locate the determinant maximizer by sign bisection of the strictly
    decreasing x d/dx log psi1.

    The interval must bracket the sign change (positive at the left end,
    negative at the right end), otherwise BadInterval is raised.  Returns
    (argmax, determinant at argmax) with argmax within tol of the true
    maximizer.
    """
    lo = positive_value(search_interval[0])
    hi = positive_value(search_interval[1])
    if not (tol > 0.0 and math.isfinite(tol)):
        raise ValueError("tol must be finite and > 0")
    if not lo < hi:
        raise BadInterval(f"empty interval ({lo:g}, {hi:g})")
    tight = TruncationPolicy(1e-14, 200_000)
    flo = log_deriv_psi1(lo, tight)
    fhi = log_deriv_psi1(hi, tight)
    if not (flo.value > 0.0 and fhi.value < 0.0):
        raise BadInterval(
            f"log-derivative does not change sign on ({lo:g}, {hi:g}): "
            f"{flo.value:g} .. {fhi.value:g}"
        )
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        f = log_deriv_psi1(mid, tight)
        if abs(f.value) <= f.error_bound:
            # the critical point is inside the evaluation noise band
            lo = hi = mid
            break
        if f.value > 0.0:
            lo = mid
        else:
            hi = mid
    argmax = 0.5 * (lo + hi)
    return argmax, determinant(argmax).det_value
