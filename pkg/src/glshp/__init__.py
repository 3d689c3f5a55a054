"""Least-squares homotopy fits for space-fractional nonlinear wave equations."""

from .fracalg import (
    ALPHA,
    BETA,
    DomainError,
    Exponent,
    FracOrders,
    FracSeries,
    caputo_dx,
    dt,
    evaluate,
    gamma_ratio,
    integrate_unit_square,
    mul,
    rl_integral_x,
    specialize,
)
from .hpm import BasisSet, GroupingError, InitialGuess, bootstrap, extract_basis, hpm_start, span_coefficients
from .lsq import (
    Ansatz,
    FitResult,
    Functional,
    InconsistentIC,
    NoConvergence,
    ParamPoly,
    apply_ics,
    assemble_functional,
    build_residual,
    classify_epsilon,
    gradient,
    minimize,
    quadrature_oracle,
)
from .pipeline import CertificateError, Solution, prepare, solve
from .problems import NonlinearTerm, ProblemSpec, example1, example2, example3, validate
from .wronskian import WronskianReport, closed_form_w3, dalpha, dalpha_power, wronskian_at

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
