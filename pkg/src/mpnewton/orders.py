"""Convergence-order estimators and Aitken extrapolation.

All three estimators are the same log-quotient applied to different error
sequences, collapsed to scalars with the max norm:

* COC   uses e_n = ||x_n - alpha||        (needs the root)
* ACOC  uses ehat_n = ||x_n - x_{n-1}||   (root-free)
* ECOC  uses etilde_n = ||x_n - aitken(x_{n-2}, x_{n-1}, x_n)||  (root-free)

and the quotient at the newest admissible index is

    ln(s_last / s_prev) / ln(s_prev / s_prevprev).

Aitken's delta-squared extrapolation is applied componentwise, which keeps
it exact on componentwise-geometric sequences in any dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bigreal import BigReal, from_decimal, log10_abs, to_fraction
from .linalg import Vector, norm_inf

__all__ = [
    "OrderReport",
    "InsufficientIteratesError",
    "InsufficientConvergenceError",
    "ZeroErrorError",
    "ZeroDifferenceError",
    "DegenerateComponentError",
    "aitken",
    "coc",
    "acoc",
    "ecoc",
    "order_from_norms",
    "order_report",
]

# Components whose second difference falls below 10**(AITKEN_MARGIN - d)
# relative to the iterate are too cancelled to extrapolate.
AITKEN_MARGIN = 4


class InsufficientIteratesError(ValueError):
    """Trace too short for the estimator."""


class InsufficientConvergenceError(ArithmeticError):
    """A log-quotient denominator vanished (no contraction to measure)."""


class ZeroErrorError(ArithmeticError):
    """An iterate coincides with the root; the quotient is undefined."""


class ZeroDifferenceError(ArithmeticError):
    """Consecutive iterates coincide (stagnation)."""


class DegenerateComponentError(ArithmeticError):
    """A second difference is numerically zero; extrapolation meaningless."""


def aitken(x0: Vector, x1: Vector, x2: Vector) -> Vector:
    """Componentwise delta-squared extrapolant of three consecutive iterates.

    Exact on componentwise-geometric sequences.  Raises
    :class:`DegenerateComponentError` when some component's second
    difference is below ``10**(AITKEN_MARGIN - d) * |x2_i|``.
    """
    if not (len(x0) == len(x1) == len(x2)):
        raise ValueError("dimension mismatch")
    d = max(x0.digits, x1.digits, x2.digits)
    eps = from_decimal(f"1e{AITKEN_MARGIN - d}", 32)
    out = []
    for a, b, c in zip(x0, x1, x2):
        d1 = c - b
        d2 = (c - b) - (b - a)
        if abs(d2) < eps * abs(c) or d2.is_zero:
            raise DegenerateComponentError("second difference vanishes")
        out.append(c - d1 * d1 / d2)
    return Vector(out)


def _log10(x: BigReal) -> Fraction:
    return to_fraction(log10_abs(x))


def order_from_norms(norms: list[BigReal]) -> float:
    """Log-quotient order estimate from the last three of a norm sequence.

    Returns ln(s[-1]/s[-2]) / ln(s[-2]/s[-3]) evaluated through exact
    base-10 logarithms; exact (to float rounding) when the norms follow
    c**(p**n).
    """
    if len(norms) < 3:
        raise InsufficientIteratesError("need at least three norms")
    s2, s1, s0 = norms[-3], norms[-2], norms[-1]
    for s in (s2, s1, s0):
        if s.is_zero:
            raise ZeroErrorError("zero norm in quotient")
    num = _log10(s0) - _log10(s1)
    den = _log10(s1) - _log10(s2)
    if den == 0:
        raise InsufficientConvergenceError("flat error sequence")
    return float(Fraction(num) / Fraction(den))


def _known_errors(trace, alpha: Vector):
    errs = []
    for rec in trace.records:
        e = norm_inf(rec.x - alpha)
        if e.is_zero:
            raise ZeroErrorError(f"iterate {rec.n} equals the root exactly")
        errs.append(e)
    return errs


def coc(trace, alpha: Vector) -> float:
    """Order estimate against the known root, at the last admissible index."""
    if len(trace.records) < 3:
        raise InsufficientIteratesError("COC needs >= 3 iterates")
    return order_from_norms(_known_errors(trace, alpha))


def acoc(trace) -> float:
    """Root-free order estimate from consecutive iterate differences."""
    if len(trace.records) < 4:
        raise InsufficientIteratesError("ACOC needs >= 4 iterates")
    xs = trace.iterates()
    diffs = []
    for a, b in zip(xs, xs[1:]):
        h = norm_inf(b - a)
        if h.is_zero:
            raise ZeroDifferenceError("consecutive iterates coincide")
        diffs.append(h)
    return order_from_norms(diffs)


def ecoc(trace) -> float:
    """Root-free order estimate from Aitken error surrogates."""
    if len(trace.records) < 5:
        raise InsufficientIteratesError("ECOC needs >= 5 iterates")
    xs = trace.iterates()
    tildes = [
        norm_inf(xs[i] - aitken(xs[i - 2], xs[i - 1], xs[i]))
        for i in range(2, len(xs))
    ]
    return order_from_norms(tildes)


@dataclass
class OrderReport:
    """The three estimates with absolute deviations from the nominal order."""

    rho_theoretical: int
    coc: float | None = None
    acoc: float | None = None
    ecoc: float | None = None
    delta_coc: float | None = None
    delta_acoc: float | None = None
    delta_ecoc: float | None = None


def order_report(trace, alpha: Vector | None, rho: int) -> OrderReport:
    """Fill every estimator the trace supports; unsupported ones stay None."""
    rep = OrderReport(rho_theoretical=rho)
    if alpha is not None:
        try:
            rep.coc = coc(trace, alpha)
            rep.delta_coc = abs(rep.coc - rho)
        except (InsufficientIteratesError, ZeroErrorError, InsufficientConvergenceError):
            pass
    try:
        rep.acoc = acoc(trace)
        rep.delta_acoc = abs(rep.acoc - rho)
    except (InsufficientIteratesError, ZeroDifferenceError, InsufficientConvergenceError):
        pass
    try:
        rep.ecoc = ecoc(trace)
        rep.delta_ecoc = abs(rep.ecoc - rho)
    except (
        InsufficientIteratesError,
        DegenerateComponentError,
        ZeroErrorError,
        InsufficientConvergenceError,
    ):
        pass
    return rep
