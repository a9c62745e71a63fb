"""Shared value types: validated arguments, error-carrying results, selectors."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import DomainError


class ThetaKind(enum.Enum):
    """Selector for the four real-argument theta functions.

    THETA1_PLUS is the z-derivative of the first two-variable theta at z = 0,
    not a member of the theta2/3/4 series family.
    """

    THETA2 = "theta2"
    THETA3 = "theta3"
    THETA4 = "theta4"
    THETA1_PLUS = "theta1p"


@dataclass(frozen=True)
class PositiveReal:
    """A strictly positive, finite real argument."""

    value: float

    def __post_init__(self) -> None:
        v = self.value
        if not isinstance(v, (int, float)) or isinstance(v, bool):
            raise DomainError(f"expected a real number, got {v!r}")
        v = float(v)
        if not math.isfinite(v) or v <= 0.0:
            raise DomainError(f"argument must be finite and > 0, got {v!r}")
        object.__setattr__(self, "value", v)


def positive_value(x: float | PositiveReal) -> float:
    """Validate and unwrap an argument that must be strictly positive."""
    if isinstance(x, PositiveReal):
        return x.value
    return PositiveReal(x).value


@dataclass(frozen=True)
class TruncationPolicy:
    """Truncation request: absolute target tolerance and a term budget."""

    target_abs_tol: float = 1e-12
    max_terms: int = 100_000

    def __post_init__(self) -> None:
        if not (self.target_abs_tol > 0.0 and math.isfinite(self.target_abs_tol)):
            raise ValueError("target_abs_tol must be finite and > 0")
        if self.max_terms < 1:
            raise ValueError("max_terms must be >= 1")


DEFAULT_POLICY = TruncationPolicy()


@dataclass(frozen=True)
class BoundedValue:
    """A computed scalar with a guaranteed absolute error bound.

    The true mathematical value lies in [value - error_bound, value + error_bound].
    """

    value: float
    error_bound: float
    terms_used: int

    def __post_init__(self) -> None:
        if not (self.error_bound >= 0.0 and math.isfinite(self.error_bound)):
            raise ValueError("error_bound must be finite and >= 0")
        if self.terms_used < 1:
            raise ValueError("terms_used must be >= 1")


@dataclass(frozen=True)
class PsiDerivatives:
    """Values of psi = theta3'/theta3 and its first three derivatives at one
    point, with per-order absolute error bounds."""

    psi: float
    psi1: float
    psi2: float
    psi3: float
    psi_bound: float
    psi1_bound: float
    psi2_bound: float
    psi3_bound: float
    terms_used: int


@dataclass(frozen=True)
class TorusShape:
    """Rectangular unit-area torus with lattice (1/alpha)Z x i*alpha*Z."""

    alpha: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", positive_value(self.alpha))


class DetRoute(enum.Enum):
    ETA_CLOSED_FORM = "eta"
    SPECTRAL_ZETA = "zeta"


@dataclass(frozen=True)
class DeterminantResult:
    """Determinant of the torus Laplacian and the associated height."""

    alpha: float
    det_value: float
    height: float
    route: DetRoute


@dataclass(frozen=True)
class LatticeCutoff:
    """Box truncation of a lattice sum: indices with |m| <= radius, |n| <= radius."""

    radius: int

    def __post_init__(self) -> None:
        if self.radius < 1:
            raise ValueError("radius must be >= 1")


@dataclass(frozen=True)
class HeatTraceValue:
    """Truncated heat trace with an analytic bound on the discarded terms."""

    t: float
    value: float
    tail_bound: float


@dataclass(frozen=True)
class Certificate:
    """Machine-checked inequality: passes iff the margin stays positive after
    subtracting evaluation error."""

    name: str
    claim: str
    domain: str
    grid_points: int
    min_margin: float
    passed: bool
