"""torusdet: certified evaluation of Jacobi theta and Dedekind eta functions
on the positive real axis, and zeta-regularized determinants of rectangular
unit-area tori by two independent routes."""

from ._backend import backend_name
from .errors import (
    BadInterval,
    DomainError,
    HypothesisFailed,
    QuadratureFailure,
    TolUnreachable,
    TorusDetError,
    UnknownCurve,
    UnsupportedKind,
    UnsupportedOrder,
)
from .types import (
    DEFAULT_POLICY,
    BoundedValue,
    Certificate,
    DetRoute,
    DeterminantResult,
    HeatTraceValue,
    LatticeCutoff,
    PositiveReal,
    PsiDerivatives,
    ThetaKind,
    TorusShape,
    TruncationPolicy,
)
from .theta import (
    big_theta_real,
    big_theta_real_product,
    theta3_minus_one,
    theta_product,
    theta_series,
)
from .logscale import (
    finite_difference_check,
    log_deriv,
    psi_derivatives,
    xddx_log_theta,
)
from .identities import (
    IdentityKind,
    ResidualReport,
    check_generalized_jacobi,
    check_identity,
    ratio_g,
)
from .eta import (
    determinant,
    eta_imag_axis,
    log_deriv_psi1,
    maximize_determinant,
    psi1,
)
from .spectral import (
    eigenvalue,
    eisenstein,
    heat_trace_direct,
    heat_trace_theta,
    lattice_zeta,
    zeta_det,
)
from .certify import (
    certify_conclusion,
    certify_constants,
    certify_polynomials,
    certify_series_bounds,
    quartic_upper_root,
    quartic_negativity_reaches_cutoff,
)

__version__ = "0.1.0"

__all__ = [
    "backend_name",
    "BadInterval",
    "DomainError",
    "HypothesisFailed",
    "QuadratureFailure",
    "TolUnreachable",
    "TorusDetError",
    "UnknownCurve",
    "UnsupportedKind",
    "UnsupportedOrder",
    "DEFAULT_POLICY",
    "BoundedValue",
    "Certificate",
    "DetRoute",
    "DeterminantResult",
    "HeatTraceValue",
    "LatticeCutoff",
    "PositiveReal",
    "PsiDerivatives",
    "ThetaKind",
    "TorusShape",
    "TruncationPolicy",
    "big_theta_real",
    "big_theta_real_product",
    "theta3_minus_one",
    "theta_product",
    "theta_series",
    "finite_difference_check",
    "log_deriv",
    "psi_derivatives",
    "xddx_log_theta",
    "IdentityKind",
    "ResidualReport",
    "check_generalized_jacobi",
    "check_identity",
    "ratio_g",
    "determinant",
    "eta_imag_axis",
    "log_deriv_psi1",
    "maximize_determinant",
    "psi1",
    "eigenvalue",
    "eisenstein",
    "heat_trace_direct",
    "heat_trace_theta",
    "lattice_zeta",
    "zeta_det",
    "certify_conclusion",
    "certify_constants",
    "certify_polynomials",
    "certify_series_bounds",
    "quartic_upper_root",
    "quartic_negativity_reaches_cutoff",
]
