"""Exact Moyal star algebra, differential forms and residual checks for
classical and phase-space deformed Kapustin-Witten type gauge equations."""

__version__ = "0.1.0"

from .expr import (
    BETA,
    COORDS,
    HBAR,
    RR,
    DomainError,
    Expr,
    UnboundSymbol,
    canonicalize,
    differentiate,
    equivalent_on_samples,
    evaluate,
    exp,
    log,
    modulus,
    power,
    sample_points,
    sqrt,
    sym,
)
from .phase import InvalidBinding, PhasePoly, chi, moyal_bracket, poisson_bracket, star, substitute_params
from .algebra import MatrixField, su2_generator
from .forms import (
    Coframe,
    DegreeError,
    Form,
    SingularFrame,
    exterior_derivative,
    hodge,
    moyal_wedge,
    psi_plus,
    sd_asd_project,
    structure_constants,
    wedge,
)
from .gauge import (
    GaugePair,
    ParameterError,
    ResidualReport,
    curvature,
    deformed_kw_residuals,
    deformed_sw_residuals,
    kw_residuals,
    moyal_curvature,
    nonabelian_sw_residuals,
    witten_operator_check,
)
