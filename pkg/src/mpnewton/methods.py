"""The four iteration steppers and the adaptive-precision driver.

Steppers (``z`` is the plain Newton point ``x - J(x)^-1 F(x)``):

* NM:  x -> z                                   (1 LU factorization)
* AMN: x -> x - 2 [J(x) + J(z)]^-1 F(x)         (2 factorizations)
* HMN: x -> x - (J(x)^-1 + J(z)^-1) F(x) / 2    (2 factorizations)
* FDN: x -> z - J(x)^-1 F(z)                    (1 factorization, reused)

Inverses are always realized as LU solves. :func:`run` drives a stepper to
a stopping criterion while growing the working mantissa per the policies in
:mod:`mpnewton.precision`, recording a full :class:`Trace`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .bigreal import BigReal, from_decimal
from .linalg import (
    SingularMatrixError,
    Vector,
    lu_factor,
    lu_solve,
    mat_add,
    norm_inf,
)
from .precision import GUARD_DIGITS, Mode, SolverConfig, should_stop

__all__ = [
    "MethodKind",
    "IterationRecord",
    "Termination",
    "Trace",
    "step_nm",
    "step_amn",
    "step_hmn",
    "step_fdn",
    "run",
    "EXPECTED_LU_COUNT",
]


class MethodKind(Enum):
    """Newton's method and its three third-order two-step variants."""

    NM = "NM"
    AMN = "AMN"  # averages the two Jacobians
    HMN = "HMN"  # averages the two inverse applications
    FDN = "FDN"  # second step reuses the frozen first Jacobian

    @property
    def theoretical_rho(self) -> int:
        return 2 if self is MethodKind.NM else 3


EXPECTED_LU_COUNT = {
    MethodKind.NM: 1,
    MethodKind.AMN: 2,
    MethodKind.HMN: 2,
    MethodKind.FDN: 1,
}


class Termination(Enum):
    TOLERANCE_MET = "ToleranceMet"
    SINGULAR_JACOBIAN = "SingularJacobian"
    MAX_ITERATIONS = "MaxIterations"
    PRECISION_CEILING = "PrecisionCeiling"
    DIVERGED = "Diverged"


@dataclass
class IterationRecord:
    """Everything measured about one iterate.

    ``digits`` is the nominal mantissa length used to compute this iterate
    (the stored vector carries GUARD_DIGITS more).  ``e_hat_norm`` is the
    step-difference norm ||x_n - x_{n-1}|| (n >= 1), ``delta`` the ratio of
    consecutive difference norms (n >= 2), ``e_tilde_norm`` the Aitken
    surrogate norm (n >= 2, None where degenerate), ``e_known`` the distance
    to the nearest registered root when one is available.
    """

    n: int
    digits: int
    x: Vector
    residual_inf: BigReal
    e_hat_norm: BigReal | None = None
    delta: BigReal | None = None
    e_tilde_norm: BigReal | None = None
    e_known: BigReal | None = None
    lu_count: int = 0


@dataclass
class Trace:
    method: MethodKind
    problem_id: str
    point_label: str
    mode: Mode
    eta: int
    j: int
    rho: int
    records: list[IterationRecord] = field(default_factory=list)
    termination: Termination | None = None

    @property
    def k(self) -> int:
        return self.records[-1].n

    @property
    def final_residual(self) -> BigReal:
        return self.records[-1].residual_inf

    def iterates(self) -> list[Vector]:
        return [r.x for r in self.records]


# ---------------------------------------------------------------------------
# steppers


def _step(problem, x: Vector, kind: MethodKind):
    """One iteration at the precision of ``x``; returns (next, lu_count)."""
    fx = problem.eval_F(x)
    fac = lu_factor(problem.eval_J(x))
    dx = lu_solve(fac, fx)
    z = x - dx
    if kind is MethodKind.NM:
        return z, 1
    if kind is MethodKind.FDN:
        fz = problem.eval_F(z)
        return z - lu_solve(fac, fz), 1
    jz = problem.eval_J(z)
    if kind is MethodKind.AMN:
        fac2 = lu_factor(mat_add(problem.eval_J(x), jz))
        w = lu_solve(fac2, fx)
        return x - w.scale(2), 2
    if kind is MethodKind.HMN:
        fac2 = lu_factor(jz)
        w = lu_solve(fac2, fx)
        half = from_decimal("0.5", x.digits)
        return x - (dx + w).scale(half), 2
    raise ValueError(f"unknown method {kind}")


def step_nm(problem, x: Vector) -> Vector:
    return _step(problem, x, MethodKind.NM)[0]


def step_amn(problem, x: Vector) -> Vector:
    return _step(problem, x, MethodKind.AMN)[0]


def step_hmn(problem, x: Vector) -> Vector:
    return _step(problem, x, MethodKind.HMN)[0]


def step_fdn(problem, x: Vector) -> Vector:
    return _step(problem, x, MethodKind.FDN)[0]


# ---------------------------------------------------------------------------
# driver


def _nearest_root_error(x: Vector, roots) -> BigReal:
    best = None
    for alpha in roots:
        e = norm_inf(x - alpha)
        if best is None or e < best:
            best = e
    return best


def _aitken_norm(x0: Vector, x1: Vector, x2: Vector) -> BigReal | None:
    from .orders import DegenerateComponentError, aitken

    try:
        return norm_inf(x2 - aitken(x0, x1, x2))
    except DegenerateComponentError:
        return None


def _make_record(n, digits, x, problem, roots, prev_rec, prev_prev_x, lu_count):
    residual = norm_inf(problem.eval_F(x))
    e_hat = delta = e_tilde = None
    if prev_rec is not None:
        e_hat = norm_inf(x - prev_rec.x)
        if prev_rec.e_hat_norm is not None and not prev_rec.e_hat_norm.is_zero:
            delta = e_hat / prev_rec.e_hat_norm
        if prev_prev_x is not None:
            e_tilde = _aitken_norm(prev_prev_x, prev_rec.x, x)
    e_known = _nearest_root_error(x, roots) if roots else None
    return IterationRecord(
        n=n,
        digits=digits,
        x=x,
        residual_inf=residual,
        e_hat_norm=e_hat,
        delta=delta,
        e_tilde_norm=e_tilde,
        e_known=e_known,
        lu_count=lu_count,
    )


def _next_digits(cfg: SolverConfig, rec: IterationRecord, current: int):
    """Digits for the next step, or a Termination when the run must end."""
    from .precision import DivergenceError, digits_acoc, digits_ecoc, digits_known_root

    if cfg.mode is Mode.KNOWN_ROOT:
        surrogate = rec.e_known
        formula = lambda: digits_known_root(cfg.rho, surrogate, cfg.j, current)
    elif cfg.mode is Mode.ACOC_DRIVEN:
        surrogate = rec.delta
        formula = lambda: digits_acoc(cfg.rho, surrogate, cfg.j, current)
    else:
        surrogate = rec.e_tilde_norm
        formula = lambda: digits_ecoc(cfg.rho, surrogate, cfg.j, current)
    if surrogate is None:
        # no surrogate yet (first iterations): stay at the bootstrap precision
        return max(current, cfg.initial_digits), None
    if surrogate.is_zero:
        return current, Termination.TOLERANCE_MET
    try:
        d = formula()
    except DivergenceError:
        return current, Termination.DIVERGED
    if d >= cfg.max_digits:
        return current, Termination.PRECISION_CEILING
    return d, None


def run(problem, point, kind: MethodKind, cfg: SolverConfig) -> Trace:
    """Iterate ``kind`` on ``problem`` from ``point`` until a criterion fires.

    ``point`` is an InitialPoint from the registry (or any object with a
    ``label`` and a ``vector(digits)`` method).  Failures never raise; they
    end the run with the matching termination reason.  The known-root error
    column is filled whenever the problem has registered roots, whatever the
    driving mode.
    """
    digits = cfg.initial_digits
    roots = problem.roots(digits + 2 * GUARD_DIGITS)
    x = point.vector(digits + GUARD_DIGITS)
    trace = Trace(
        method=kind,
        problem_id=problem.id,
        point_label=point.label,
        mode=cfg.mode,
        eta=cfg.eta,
        j=cfg.j,
        rho=cfg.rho,
    )
    rec = _make_record(0, digits, x, problem, roots, None, None, 0)
    trace.records.append(rec)
    while True:
        if should_stop(cfg, rec):
            trace.termination = Termination.TOLERANCE_MET
            return trace
        if rec.e_hat_norm is not None and rec.e_hat_norm.is_zero:
            trace.termination = Termination.TOLERANCE_MET  # exact fixed point
            return trace
        if rec.n >= cfg.max_iterations:
            trace.termination = Termination.MAX_ITERATIONS
            return trace
        next_digits, stop = _next_digits(cfg, rec, digits)
        if stop is not None:
            trace.termination = stop
            return trace
        if roots and next_digits + 2 * GUARD_DIGITS > roots[0].digits:
            roots = problem.roots(next_digits + 2 * GUARD_DIGITS)
        try:
            x_next, lu_count = _step(problem, x.at_digits(next_digits + GUARD_DIGITS), kind)
        except SingularMatrixError:
            trace.termination = Termination.SINGULAR_JACOBIAN
            return trace
        if lu_count != EXPECTED_LU_COUNT[kind]:
            raise RuntimeError(
                f"{kind.value} used {lu_count} factorizations, expected {EXPECTED_LU_COUNT[kind]}"
            )
        x = x_next
        digits = next_digits
        prev_prev_x = trace.records[-2].x if len(trace.records) >= 2 else None
        rec = _make_record(
            rec.n + 1, digits, x_next, problem, roots, trace.records[-1], prev_prev_x, lu_count,
        )
        trace.records.append(rec)
