"""Numeric verification of the steppers' local error equations.

Near a simple root alpha with Gamma = J(alpha)^-1, write the normalized
derivative tensors A_k = Gamma F^(k)(alpha) / k!.  One step of each method
from alpha + e then satisfies, to leading order,

* NM:   E = A2 e^2
* AMN:  E = (A3/2 + A2^2) e^3
* HMN:  E = (A3/2) e^3
* FDN:  E = 2 A2^2 e^3

where A2^2 e^3 abbreviates A2(e, A2(e, e)).  These are checked numerically:
the ratio ||E - predicted|| / ||predicted|| must shrink linearly with the
displacement scale, and the fitted slope of log ||E|| against log t must
match the order.  Quadratic systems (F2, F6) annihilate A3, which lifts the
HMN order from three to four; the checks switch to a pure slope test there.

Closed-form second and third derivatives are hand-coded for the three
two-dimensional systems F1, F2, F3.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .bigreal import BigReal, cos, exp, from_decimal, from_int, log10_abs, sin
from .linalg import LUFactors, Matrix, Vector, lu_factor, lu_solve, norm_inf
from .methods import MethodKind, _step

__all__ = [
    "DerivativeTensors",
    "ErrorModel",
    "LeadingTermReport",
    "LeadingTermVanishes",
    "tensors_for",
    "error_model",
    "verify_leading_term",
    "convergence_slope",
    "DEFAULT_SCALES",
]

DEFAULT_SCALES = ("1e-3", "1e-4", "1e-5", "1e-6")
_DIRECTION_SEED = 20260810


class LeadingTermVanishes(ArithmeticError):
    """The predicted leading term is identically (or numerically) zero."""


@dataclass
class DerivativeTensors:
    """Gamma as LU factors plus the bilinear/trilinear A2, A3 evaluators."""

    problem_id: str
    gamma: LUFactors
    a2: callable  # (h1, h2) -> Vector
    a3: callable  # (h1, h2, h3) -> Vector


@dataclass
class ErrorModel:
    method: MethodKind
    order: int
    leading_term: callable  # (DerivativeTensors, e: Vector) -> Vector


@dataclass
class LeadingTermReport:
    problem_id: str
    method: MethodKind
    expected_order: int
    slope: float
    ratios: list = field(default_factory=list)  # (t, R, R/t) triples
    vanished: bool = False


def _f1_d2(alpha):
    a1, a2v = alpha
    ea = exp(a1)
    s = sin(a2v + a2v - a1)

    def f2(u, v):
        c1 = ea * (u[0] * v[0])
        uv = u[0] * v[1] + u[1] * v[0]
        c2 = -s * (u[0] * v[0]) + (2 * s) * uv - (4 * s) * (u[1] * v[1])
        return Vector([c1, c2])

    return f2


def _f1_d3(alpha):
    a1, a2v = alpha
    ea = exp(a1)
    c = cos(a2v + a2v - a1)

    def f3(u, v, w):
        c1 = ea * (u[0] * v[0] * w[0])
        t111 = u[0] * v[0] * w[0]
        t112 = u[0] * v[0] * w[1] + u[0] * v[1] * w[0] + u[1] * v[0] * w[0]
        t122 = u[0] * v[1] * w[1] + u[1] * v[0] * w[1] + u[1] * v[1] * w[0]
        t222 = u[1] * v[1] * w[1]
        c2 = c * t111 - (2 * c) * t112 + (4 * c) * t122 - (8 * c) * t222
        return Vector([c1, c2])

    return f3


def _f2_d2(alpha):
    def f2(u, v):
        return Vector([2 * (u[0] * v[0]) + 2 * (u[1] * v[1]), 2 * (u[1] * v[1])])

    return f2


def _zero_d3(alpha):
    def f3(u, v, w):
        zero = from_int(0, u.digits)
        return Vector([zero, zero])

    return f3


def _f3_d2(alpha):
    ax, ay = alpha

    def f2(u, v):
        uv = u[0] * v[1] + u[1] * v[0]
        c1 = (6 * ax) * (u[0] * v[0]) - (6 * ay) * uv - (6 * ax) * (u[1] * v[1])
        c2 = (6 * ay) * (u[0] * v[0]) + (6 * ax) * uv - (6 * ay) * (u[1] * v[1])
        return Vector([c1, c2])

    return f2


def _f3_d3(alpha):
    def f3(u, v, w):
        t111 = u[0] * v[0] * w[0]
        t112 = u[0] * v[0] * w[1] + u[0] * v[1] * w[0] + u[1] * v[0] * w[0]
        t122 = u[0] * v[1] * w[1] + u[1] * v[0] * w[1] + u[1] * v[1] * w[0]
        t222 = u[1] * v[1] * w[1]
        return Vector([6 * t111 - 6 * t122, 6 * t112 - 6 * t222])

    return f3


_TENSOR_BUILDERS = {
    "F1": (_f1_d2, _f1_d3),
    "F2": (_f2_d2, _zero_d3),
    "F3": (_f3_d2, _f3_d3),
}


def tensors_for(problem, digits: int = 192) -> DerivativeTensors:
    """Hand-coded A2/A3 for F1..F3, verified elsewhere against finite
    differences of the Jacobian."""
    if problem.id not in _TENSOR_BUILDERS:
        raise ValueError(f"no closed-form tensors for {problem.id}")
    alpha = problem.root(digits).at_digits(digits)
    d2_builder, d3_builder = _TENSOR_BUILDERS[problem.id]
    d2 = d2_builder(alpha)
    d3 = d3_builder(alpha)
    gamma = lu_factor(problem.eval_J(alpha))
    half = from_decimal("0.5", digits)
    sixth = from_int(1, digits) / 6

    def a2(h1, h2):
        return lu_solve(gamma, d2(h1, h2)).scale(half)

    def a3(h1, h2, h3):
        return lu_solve(gamma, d3(h1, h2, h3)).scale(sixth)

    return DerivativeTensors(problem.id, gamma, a2, a3)


def error_model(method: MethodKind) -> ErrorModel:
    """The leading error term of one step, as a function of tensors and e."""
    if method is MethodKind.NM:
        return ErrorModel(method, 2, lambda t, e: t.a2(e, e))
    if method is MethodKind.AMN:
        def amn(t, e):
            half = from_decimal("0.5", e.digits)
            return t.a3(e, e, e).scale(half) + t.a2(e, t.a2(e, e))

        return ErrorModel(method, 3, amn)
    if method is MethodKind.HMN:
        def hmn(t, e):
            half = from_decimal("0.5", e.digits)
            return t.a3(e, e, e).scale(half)

        return ErrorModel(method, 3, hmn)
    if method is MethodKind.FDN:
        return ErrorModel(method, 3, lambda t, e: t.a2(e, t.a2(e, e)).scale(2))
    raise ValueError(method)


def fixed_direction(m: int, digits: int, seed: int = _DIRECTION_SEED) -> Vector:
    """Reproducible displacement direction with O(1) components."""
    rng = random.Random(seed)
    comps = []
    for _ in range(m):
        c = rng.uniform(0.2, 1.0) * (1 if rng.random() < 0.5 else -1)
        comps.append(from_decimal(f"{c:.6f}", digits))
    return Vector(comps)


def _log10f(x: BigReal) -> float:
    return float(log10_abs(x))


def _fit_slope(log_t: list[float], log_e: list[float]) -> float:
    return float(np.polyfit(np.array(log_t), np.array(log_e), 1)[0])


def convergence_slope(problem, method: MethodKind, scales=DEFAULT_SCALES,
                      digits: int = 192, seed: int = _DIRECTION_SEED) -> float:
    """Fitted slope of log ||step(alpha + t u) - alpha|| against log t."""
    alpha = problem.root(digits).at_digits(digits)
    u = fixed_direction(problem.m, digits, seed)
    log_t, log_e = [], []
    for s in scales:
        t = from_decimal(s, digits)
        x = alpha + u.scale(t)
        X, _ = _step(problem, x, method)
        err = norm_inf(X - alpha)
        log_t.append(_log10f(t))
        log_e.append(_log10f(err))
    return _fit_slope(log_t, log_e)


def verify_leading_term(problem, method: MethodKind, scales=DEFAULT_SCALES,
                        digits: int = 192, seed: int = _DIRECTION_SEED) -> LeadingTermReport:
    """Compare one true step against the predicted leading term.

    For each scale t the relative deviation R(t) = ||E - LT|| / ||LT|| is
    recorded along with R(t)/t, which must stay bounded as t shrinks.  When
    the predicted term vanishes identically (HMN on a quadratic system) the
    report instead carries the fitted slope, expected one order higher.
    """
    tensors = tensors_for(problem, digits)
    model = error_model(method)
    alpha = problem.root(digits).at_digits(digits)
    u = fixed_direction(problem.m, digits, seed)
    ratios = []
    log_t, log_e = [], []
    vanished = False
    for s in scales:
        t = from_decimal(s, digits)
        e = u.scale(t)
        x = alpha + e
        X, _ = _step(problem, x, method)
        E = X - alpha
        lt = model.leading_term(tensors, e)
        lt_norm = norm_inf(lt)
        e_norm = norm_inf(E)
        log_t.append(_log10f(t))
        log_e.append(_log10f(e_norm))
        # the term is "numerically zero" when it falls below roundoff scale
        if lt_norm.is_zero or _log10f(lt_norm) < _log10f(e_norm) - 50:
            vanished = True
            continue
        dev = norm_inf(E - lt) / lt_norm
        tf = float(t)
        ratios.append((tf, float(dev), float(dev) / tf))
    slope = _fit_slope(log_t, log_e)
    expected = model.order + 1 if vanished else model.order
    return LeadingTermReport(
        problem_id=problem.id,
        method=method,
        expected_order=expected,
        slope=slope,
        ratios=ratios,
        vanished=vanished,
    )
