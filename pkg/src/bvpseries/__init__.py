"""Series solver for u'' + a(x)u = f(x) on [0, x1].

Builds the general solution u = c1*I1 + c2*I2 + F and the two-point solution
with u(0) = alpha, u'(x1) = beta from iterated double integrals of the
coefficient, certified to converge whenever sup|a| * x1^2 / 2 < 1, and
cross-checked by an independent Runge-Kutta shooting oracle.
"""

from .bvp import (
    Diagnostics,
    ProblemD,
    SolveReport,
    general_solution,
    residual_report,
    solve_problem_d,
    wronskian_check,
)
from .checks import (
    Check,
    bound_checks,
    boundary_checks,
    consistency_checks,
    residual_checks,
)
from .errors import (
    ContractionViolation,
    Diverged,
    EvalError,
    GridMismatch,
    InvalidDomain,
    MaxTermsExceeded,
    MissingForcing,
    OracleSingular,
    ParseError,
    SingularI2,
    SolverError,
    TableDomainError,
    UnknownFunction,
)
from .expr import Expr, eval_expr, parse_expr, to_text
from .grid import (
    CoefficientSpec,
    Grid,
    SampledFn,
    cumulative_integral,
    make_grid,
    sample,
    sup_norm,
)
from .oracle import (
    IvpTrajectory,
    OracleFundamental,
    compare,
    oracle_fundamental,
    rk4_ivp,
)
from .series_core import (
    ContractionCertificate,
    SeriesSolution,
    apply_B,
    apply_B_reference,
    compute_g,
    contraction_ratio,
    derivative_of,
    fundamental_system,
    sum_series,
)

__version__ = "0.1.0"

__all__ = [
    "Check",
    "CoefficientSpec",
    "ContractionCertificate",
    "ContractionViolation",
    "Diagnostics",
    "Diverged",
    "EvalError",
    "Expr",
    "Grid",
    "GridMismatch",
    "InvalidDomain",
    "IvpTrajectory",
    "MaxTermsExceeded",
    "MissingForcing",
    "OracleFundamental",
    "OracleSingular",
    "ParseError",
    "ProblemD",
    "SampledFn",
    "SeriesSolution",
    "SingularI2",
    "SolveReport",
    "SolverError",
    "TableDomainError",
    "UnknownFunction",
    "apply_B",
    "apply_B_reference",
    "bound_checks",
    "boundary_checks",
    "compare",
    "compute_g",
    "consistency_checks",
    "contraction_ratio",
    "cumulative_integral",
    "derivative_of",
    "eval_expr",
    "fundamental_system",
    "general_solution",
    "make_grid",
    "oracle_fundamental",
    "parse_expr",
    "residual_checks",
    "residual_report",
    "rk4_ivp",
    "sample",
    "solve_problem_d",
    "sum_series",
    "sup_norm",
    "to_text",
    "wronskian_check",
]
