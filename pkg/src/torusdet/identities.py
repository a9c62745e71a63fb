"""Residual checks for the functional identities tying the theta family together.

Each check computes both sides of one identity from independent primitives
and reports the residual next to an allowance derived by first-order error
propagation through the combining expression (with a fixed safety factor of
4), so a failure always means a real defect rather than tolerance noise.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Callable

from .errors import DomainError, HypothesisFailed
from .logscale import log_deriv
from .theta import big_theta_real, big_theta_real_product, theta_series
from .types import (
    DEFAULT_POLICY,
    BoundedValue,
    PositiveReal,
    ThetaKind,
    TruncationPolicy,
    positive_value,
)

_EPS = 2.220446049250313e-16
_SAFETY = 4.0

# fixed instantiations for the parametric identity kinds
_RATIO_ALPHA, _RATIO_BETA = 1.2, 2.0
_GEN_JACOBI = (0.5, ThetaKind.THETA2, ThetaKind.THETA4)


class IdentityKind(enum.Enum):
    POISSON_THETA3 = "poisson_theta3"
    POISSON_THETA2_TO_4 = "poisson_theta2_to_4"
    POISSON_THETA4_TO_2 = "poisson_theta4_to_2"
    LOG_DERIV_THETA3 = "log_deriv_theta3"
    LOG_DERIV_THETA2_THETA4 = "log_deriv_theta2_theta4"
    LOG_DERIV_THETA4_THETA2 = "log_deriv_theta4_theta2"
    TRIPLE_PRODUCT_EQUIVALENCE = "triple_product_equivalence"
    THETA1_FACTORIZATION = "theta1_factorization"
    GENERALIZED_JACOBI = "generalized_jacobi"
    RATIO_UNIMODAL = "ratio_unimodal"


@dataclass(frozen=True)
class ResidualReport:
    identity: IdentityKind
    x: float
    lhs: float
    rhs: float
    residual: float
    allowed: float

    @property
    def passed(self) -> bool:
        return self.residual <= self.allowed


def _report(kind: IdentityKind, x: float, lhs: float, rhs: float, allowed: float) -> ResidualReport:
    return ResidualReport(
        identity=kind, x=x, lhs=lhs, rhs=rhs,
        residual=abs(lhs - rhs), allowed=allowed,
    )


def _poisson(kind: IdentityKind, f: ThetaKind, g: ThetaKind, x: float,
             policy: TruncationPolicy) -> ResidualReport:
    # sqrt(x) f(x) = g(1/x)
    bf = theta_series(f, x, policy)
    bg = theta_series(g, 1.0 / x, policy)
    r = math.sqrt(x)
    lhs = r * bf.value
    rhs = bg.value
    allowed = _SAFETY * (
        r * bf.error_bound + bg.error_bound + 2.0 * _EPS * (abs(lhs) + abs(rhs))
    )
    return _report(kind, x, lhs, rhs, allowed)


def _log_deriv_pair(kind: IdentityKind, f: ThetaKind, g: ThetaKind, x: float,
                    policy: TruncationPolicy) -> ResidualReport:
    # x f'(x)/f(x) + (1/x) g'(1/x)/g(1/x) = -1/2
    bf = log_deriv(f, x, policy)
    bg = log_deriv(g, 1.0 / x, policy)
    lhs = x * bf.value + (1.0 / x) * bg.value
    allowed = _SAFETY * (
        x * bf.error_bound
        + (1.0 / x) * bg.error_bound
        + 4.0 * _EPS * (abs(x * bf.value) + abs(bg.value / x))
    )
    return _report(kind, x, lhs, -0.5, allowed)


def _triple_product(x: float, policy: TruncationPolicy) -> ResidualReport:
    # series and triple-product routes to Theta(z, ix) for z = 0 and z = 1/2
    worst = None
    for z in (0.0, 0.5):
        bs = big_theta_real(z, x, policy)
        bp = big_theta_real_product(z, x, policy)
        allowed = _SAFETY * (bs.error_bound + bp.error_bound + 2.0 * _EPS * abs(bs.value))
        rep = _report(IdentityKind.TRIPLE_PRODUCT_EQUIVALENCE, x, bs.value, bp.value, allowed)
        if worst is None or rep.residual - rep.allowed > worst.residual - worst.allowed:
            worst = rep
    return worst


def _theta1_factorization(x: float, policy: TruncationPolicy) -> ResidualReport:
    b2 = theta_series(ThetaKind.THETA2, x, policy)
    b3 = theta_series(ThetaKind.THETA3, x, policy)
    b4 = theta_series(ThetaKind.THETA4, x, policy)
    b1 = theta_series(ThetaKind.THETA1_PLUS, x, policy)
    lhs = b2.value * b3.value * b4.value
    allowed = _SAFETY * (
        abs(b3.value * b4.value) * b2.error_bound
        + abs(b2.value * b4.value) * b3.error_bound
        + abs(b2.value * b3.value) * b4.error_bound
        + b1.error_bound
        + 6.0 * _EPS * abs(lhs)
    )
    return _report(IdentityKind.THETA1_FACTORIZATION, x, lhs, b1.value, allowed)


def check_identity(
    identity: IdentityKind,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Evaluate one identity at x and report lhs, rhs, residual and allowance.

    The parametric kinds are instantiated at fixed representatives:
    GENERALIZED_JACOBI at (r=1/2, theta2 -> theta4) and RATIO_UNIMODAL at
    (alpha, beta) = (1.2, 2.0) via the symmetry g(x) = g(1/x).
    """
    xv = positive_value(x)
    k = IdentityKind(identity)
    if k is IdentityKind.POISSON_THETA3:
        return _poisson(k, ThetaKind.THETA3, ThetaKind.THETA3, xv, policy)
    if k is IdentityKind.POISSON_THETA2_TO_4:
        return _poisson(k, ThetaKind.THETA2, ThetaKind.THETA4, xv, policy)
    if k is IdentityKind.POISSON_THETA4_TO_2:
        return _poisson(k, ThetaKind.THETA4, ThetaKind.THETA2, xv, policy)
    if k is IdentityKind.LOG_DERIV_THETA3:
        return _log_deriv_pair(k, ThetaKind.THETA3, ThetaKind.THETA3, xv, policy)
    if k is IdentityKind.LOG_DERIV_THETA2_THETA4:
        return _log_deriv_pair(k, ThetaKind.THETA2, ThetaKind.THETA4, xv, policy)
    if k is IdentityKind.LOG_DERIV_THETA4_THETA2:
        return _log_deriv_pair(k, ThetaKind.THETA4, ThetaKind.THETA2, xv, policy)
    if k is IdentityKind.TRIPLE_PRODUCT_EQUIVALENCE:
        return _triple_product(xv, policy)
    if k is IdentityKind.THETA1_FACTORIZATION:
        return _theta1_factorization(xv, policy)
    if k is IdentityKind.GENERALIZED_JACOBI:
        r, f, g = _GEN_JACOBI
        rep = check_generalized_jacobi(r, f, g, xv, policy)
        return _report(k, xv, rep.lhs, rep.rhs, rep.allowed)
    if k is IdentityKind.RATIO_UNIMODAL:
        ga = ratio_g(_RATIO_ALPHA, _RATIO_BETA, xv, policy)
        gb = ratio_g(_RATIO_ALPHA, _RATIO_BETA, 1.0 / xv, policy)
        allowed = _SAFETY * (ga.error_bound + gb.error_bound + 2.0 * _EPS * abs(ga.value))
        return _report(k, xv, ga.value, gb.value, allowed)
    raise DomainError(f"unknown identity kind {identity!r}")


# evaluator signature for the callable form: x -> (value, value_err, logderiv, logderiv_err)
Evaluator = Callable[[float], tuple[float, float, float, float]]


def _theta_evaluator(kind: ThetaKind, policy: TruncationPolicy) -> Evaluator:
    def ev(x: float):
        b = theta_series(kind, x, policy)
        d = log_deriv(kind, x, policy)
        return b.value, b.error_bound, d.value, d.error_bound

    return ev


def generalized_jacobi_residual(
    r: float,
    f: Evaluator,
    g: Evaluator,
    x: float,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Callable-level form of the generalized Jacobi check.

    Validates the premise x^r f(x) = g(1/x) at the same point before testing
    the conclusion x f'(x)/f(x) + (1/x) g'(1/x)/g(1/x) = -r; a failed premise
    raises HypothesisFailed since the conclusion would then be vacuous.
    """
    fx, fe, fd, fde = f(x)
    ginv, ge, gd, gde = g(1.0 / x)
    xr = x**r
    premise_allowed = _SAFETY * (
        xr * fe + ge + 4.0 * _EPS * (abs(xr * fx) + abs(ginv))
    )
    if abs(xr * fx - ginv) > premise_allowed:
        raise HypothesisFailed(
            f"premise x^{r:g} f(x) = g(1/x) fails at x={x:g}: "
            f"{xr * fx!r} vs {ginv!r} (allowed {premise_allowed:g})"
        )
    lhs = x * fd + (1.0 / x) * gd
    allowed = _SAFETY * (
        x * fde + (1.0 / x) * gde + 4.0 * _EPS * (abs(x * fd) + abs(gd / x) + abs(r))
    )
    return _report(IdentityKind.GENERALIZED_JACOBI, x, lhs, -r, allowed)


def check_generalized_jacobi(
    r: float,
    f_kind: ThetaKind,
    g_kind: ThetaKind,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> ResidualReport:
    """Generalized Jacobi lemma: if x^r f(x) = g(1/x) then
    x f'(x)/f(x) + (1/x) g'(1/x)/g(1/x) = -r.

    The premise is validated numerically at x first (HypothesisFailed
    otherwise); the returned report covers the conclusion."""
    xv = positive_value(x)
    return generalized_jacobi_residual(
        float(r),
        _theta_evaluator(f_kind, policy),
        _theta_evaluator(g_kind, policy),
        xv,
        policy,
    )


def ratio_g(
    alpha: float,
    beta: float,
    x: float | PositiveReal,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> BoundedValue:
    """g(x) = theta3(beta x) theta3(x/beta) / (theta3(alpha x) theta3(x/alpha))
    for 1 <= alpha <= beta.

    Symmetric under x -> 1/x, with a unique maximum at x = 1, increasing on
    (0, 1) and decreasing on (1, inf)."""
    if not (
        isinstance(alpha, (int, float))
        and isinstance(beta, (int, float))
        and math.isfinite(alpha)
        and math.isfinite(beta)
        and 1.0 <= alpha <= beta
    ):
        raise DomainError(f"need 1 <= alpha <= beta, got alpha={alpha!r}, beta={beta!r}")
    xv = positive_value(x)
    nb = theta_series(ThetaKind.THETA3, beta * xv, policy)
    nb2 = theta_series(ThetaKind.THETA3, xv / beta, policy)
    da = theta_series(ThetaKind.THETA3, alpha * xv, policy)
    da2 = theta_series(ThetaKind.THETA3, xv / alpha, policy)
    num = nb.value * nb2.value
    den = da.value * da2.value
    value = num / den
    rel = (
        nb.error_bound / nb.value
        + nb2.error_bound / nb2.value
        + da.error_bound / da.value
        + da2.error_bound / da2.value
    )
    err = abs(value) * rel + 6.0 * _EPS * abs(value)
    terms = nb.terms_used + nb2.terms_used + da.terms_used + da2.terms_used
    return BoundedValue(value, err, terms)
