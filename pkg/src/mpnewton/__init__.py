"""Multi-precision Newton-type solvers for nonlinear systems.

Four iterations (Newton plus three third-order two-step variants) over an
arbitrary-precision number type whose mantissa length adapts to the current
error estimate, with computational order-of-convergence estimators and a
benchmark-table harness.
"""

from .bigreal import (
    BigReal,
    MAX_DIGITS,
    MIN_DIGITS,
    cbrt,
    cos,
    exp,
    from_decimal,
    from_int,
    ln,
    log10_abs,
    raise_precision,
    round_to,
    sin,
    sqrt,
    to_decimal,
)
from .linalg import (
    LUFactors,
    Matrix,
    SingularMatrixError,
    Vector,
    lu_factor,
    lu_solve,
    mat_vec,
    norm_2,
    norm_inf,
)
from .methods import (
    IterationRecord,
    MethodKind,
    Termination,
    Trace,
    run,
    step_amn,
    step_fdn,
    step_hmn,
    step_nm,
)
from .orders import OrderReport, acoc, aitken, coc, ecoc, order_report
from .precision import (
    Mode,
    SolverConfig,
    digits_acoc,
    digits_ecoc,
    digits_known_root,
    should_stop,
)
from .problems import InitialPoint, Problem, build_bvp, by_id, registry
from .validate import (
    DerivativeTensors,
    ErrorModel,
    convergence_slope,
    error_model,
    tensors_for,
    verify_leading_term,
)

__version__ = "0.1.0"

__all__ = [
    "BigReal", "MIN_DIGITS", "MAX_DIGITS", "from_decimal", "from_int",
    "to_decimal", "raise_precision", "round_to", "log10_abs",
    "exp", "ln", "sin", "cos", "sqrt", "cbrt",
    "Vector", "Matrix", "LUFactors", "SingularMatrixError",
    "lu_factor", "lu_solve", "mat_vec", "norm_inf", "norm_2",
    "MethodKind", "Trace", "IterationRecord", "Termination", "run",
    "step_nm", "step_amn", "step_hmn", "step_fdn",
    "Mode", "SolverConfig", "digits_known_root", "digits_acoc",
    "digits_ecoc", "should_stop",
    "InitialPoint", "Problem", "registry", "build_bvp", "by_id",
    "OrderReport", "aitken", "coc", "acoc", "ecoc", "order_report",
    "DerivativeTensors", "ErrorModel", "tensors_for", "error_model",
    "verify_leading_term", "convergence_slope",
]
