"""Grid scans, monotonicity verdicts and CSV emission for the CLI.

Strict monotonicity on a grid is asserted through the consecutive-difference
criterion with a margin of 10x the summed error bounds of the two points:
numerics cannot certify a continuum claim, so scans are regression checks
against the proven statements, and the margin keeps them meaningful.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import UnknownCurve
from .eta import determinant_bounded, log_deriv_psi1, psi1
from .logscale import log_deriv, xddx_log_theta
from .types import DEFAULT_POLICY, ThetaKind, TruncationPolicy

MONOTONE_MARGIN = 10.0


@dataclass(frozen=True)
class ScanReport:
    """Grid scan outcome: values with bounds, monotonicity and sign verdicts,
    and (for identity scans) the worst residual seen."""

    xs: tuple[float, ...]
    values: tuple[float, ...]
    error_bounds: tuple[float, ...]
    strictly_increasing: bool
    strictly_decreasing: bool
    sign: str  # "positive", "negative" or "mixed"
    worst_residual: float | None = None


def log_grid(lo: float, hi: float, n: int) -> list[float]:
    """n log-spaced points from lo to hi inclusive."""
    if n < 2:
        return [float(lo)]
    la, lb = math.log(lo), math.log(hi)
    return [math.exp(la + i * (lb - la) / (n - 1)) for i in range(n)]


def lin_grid(lo: float, hi: float, n: int) -> list[float]:
    if n < 2:
        return [float(lo)]
    return [lo + i * (hi - lo) / (n - 1) for i in range(n)]


def scan_curve(
    f: Callable[[float], tuple[float, float]],
    xs: Sequence[float],
    worst_residual: float | None = None,
) -> ScanReport:
    """Evaluate f (returning (value, error_bound)) on a grid and attach
    margin-aware monotonicity and sign verdicts."""
    values = []
    bounds = []
    for x in xs:
        v, e = f(float(x))
        values.append(v)
        bounds.append(e)
    inc = dec = True
    for i in range(len(values) - 1):
        margin = MONOTONE_MARGIN * (bounds[i] + bounds[i + 1])
        diff = values[i + 1] - values[i]
        if not diff > margin:
            inc = False
        if not -diff > margin:
            dec = False
    pos = all(v - e > 0.0 for v, e in zip(values, bounds))
    neg = all(v + e < 0.0 for v, e in zip(values, bounds))
    sign = "positive" if pos else ("negative" if neg else "mixed")
    return ScanReport(
        xs=tuple(float(x) for x in xs),
        values=tuple(values),
        error_bounds=tuple(bounds),
        strictly_increasing=inc,
        strictly_decreasing=dec,
        sign=sign,
        worst_residual=worst_residual,
    )


_XW_PARTNER = {
    ThetaKind.THETA2: ThetaKind.THETA4,
    ThetaKind.THETA3: ThetaKind.THETA3,
    ThetaKind.THETA4: ThetaKind.THETA2,
}


def xweighted_logderiv_monotone(
    kind: ThetaKind,
    xs: Sequence[float],
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> tuple[bool, bool]:
    """(strictly_increasing, strictly_decreasing) verdicts for x theta'/theta
    on a grid, with the margin rule applied to consecutive differences.

    The curve approaches the constant -1/2 as x -> 0 (for theta2/theta3),
    where differences of directly computed values fall below one ulp of the
    constant.  Shifts cancel in differences, so each consecutive pair is
    compared in an exact shifted frame: for a pair inside (0, 1] the identity
    x theta'(x)/theta(x) + 1/2 = -(1/x) partner'(1/x)/partner(1/x) converts
    the comparison into one between directly summed partner values.
    """

    def direct(x: float) -> tuple[float, float]:
        b = log_deriv(kind, x, policy)
        return x * b.value, x * b.error_bound

    def shifted(x: float) -> tuple[float, float]:
        y = 1.0 / x
        b = log_deriv(_XW_PARTNER[kind], y, policy)
        return -(y * b.value), y * b.error_bound

    inc = dec = True
    for i in range(len(xs) - 1):
        x1, x2 = float(xs[i]), float(xs[i + 1])
        frame = shifted if x2 <= 1.0 else direct
        v1, e1 = frame(x1)
        v2, e2 = frame(x2)
        margin = MONOTONE_MARGIN * (e1 + e2)
        diff = v2 - v1
        if not diff > margin:
            inc = False
        if not -diff > margin:
            dec = False
    return inc, dec


@dataclass(frozen=True)
class GridSpec:
    lo: float
    hi: float
    n: int
    spacing: str = "log"

    def __post_init__(self) -> None:
        if not (self.lo > 0.0 and self.hi > self.lo):
            raise ValueError("grid needs 0 < lo < hi")
        if self.n < 2:
            raise ValueError("grid needs at least 2 points")
        if self.spacing not in ("log", "lin"):
            raise ValueError(f"unknown grid spacing {self.spacing!r}")

    def points(self) -> list[float]:
        if self.spacing == "log":
            return log_grid(self.lo, self.hi, self.n)
        return lin_grid(self.lo, self.hi, self.n)


def parse_grid(text: str) -> GridSpec:
    """Parse 'lo:hi:n[:log|lin]' (log spacing by default)."""
    parts = text.split(":")
    if len(parts) not in (3, 4):
        raise ValueError(f"grid spec must be lo:hi:n[:log|lin], got {text!r}")
    lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    spacing = parts[3] if len(parts) == 4 else "log"
    return GridSpec(lo, hi, n, spacing)


@dataclass(frozen=True)
class CsvTable:
    """Numeric table serialized as CSV with shortest round-trip decimals
    (never more than 17 significant digits)."""

    header: tuple[str, ...]
    rows: tuple[tuple[float, ...], ...] = field(default_factory=tuple)

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        for row in self.rows:
            if len(row) != len(self.header):
                raise ValueError("row arity does not match header")
            lines.append(",".join(repr(float(v)) for v in row))
        return "\n".join(lines) + "\n"


def _bv(f):
    def g(x: float) -> tuple[float, float]:
        b = f(x)
        return b.value, b.error_bound

    return g


def _phi(kind: ThetaKind, policy: TruncationPolicy):
    def g(x: float) -> tuple[float, float]:
        b = log_deriv(kind, x, policy)
        return x * b.value + 0.25, x * b.error_bound

    return g


def _xddx_psi1(policy: TruncationPolicy):
    # x d/dx psi1 = psi1(x) * (x d/dx log psi1)(x)
    def g(x: float) -> tuple[float, float]:
        p = psi1(x, policy)
        d = log_deriv_psi1(x, policy)
        v = p.value * d.value
        e = abs(p.value) * d.error_bound + abs(d.value) * p.error_bound
        return v, e

    return g


def curve_functions(policy: TruncationPolicy) -> dict[str, Callable[[float], tuple[float, float]]]:
    """Named curves available to `scan`: value and error bound per point."""
    return {
        "psi1": _bv(lambda x: psi1(x, policy)),
        "xddx_psi1": _xddx_psi1(policy),
        "logderiv_theta2": _bv(lambda x: log_deriv(ThetaKind.THETA2, x, policy)),
        "logderiv_theta3": _bv(lambda x: log_deriv(ThetaKind.THETA3, x, policy)),
        "logderiv_theta4": _bv(lambda x: log_deriv(ThetaKind.THETA4, x, policy)),
        "phi2": _phi(ThetaKind.THETA2, policy),
        "phi3": _phi(ThetaKind.THETA3, policy),
        "phi4": _phi(ThetaKind.THETA4, policy),
        "xddx3_log_theta3": _bv(lambda x: xddx_log_theta(ThetaKind.THETA3, 3, x, policy)),
        "det": _bv(lambda x: determinant_bounded(x, policy)),
    }


def scan_to_csv(
    fn: str,
    grid: GridSpec,
    policy: TruncationPolicy = DEFAULT_POLICY,
) -> CsvTable:
    """Scan a named curve over a grid; columns are (x, value, error_bound)."""
    curves = curve_functions(policy)
    if fn not in curves:
        raise UnknownCurve(
            f"unknown curve {fn!r}; available: {', '.join(sorted(curves))}"
        )
    f = curves[fn]
    rows = []
    for x in grid.points():
        v, e = f(x)
        rows.append((x, v, e))
    return CsvTable(header=("x", "value", "error_bound"), rows=tuple(rows))
