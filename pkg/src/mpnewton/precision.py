"""Adaptive mantissa-length policies and stopping criteria.

The solver grows its working precision each step from the current error
surrogate.  With a method of order ``rho`` and slack ``j``:

* known root:        digits = floor(rho * (-log10 e_n + j))
* difference-driven: digits = floor(rho**3/(rho-1) * (-log10 delta_n + j))
* Aitken-driven:     digits = floor(rho**3/(2*rho-1) * (-log10 etilde_n + j))

where ``delta_n`` is the ratio of consecutive-difference norms and
``etilde_n`` the Aitken error surrogate.  The matching stopping criteria
bound the true error by ``0.5 * 10**-eta`` correct decimals either directly
(known root) or through the two surrogate relations (root-free).

All formula arithmetic is exact (``Fraction``), so digit counts are
reproducible across platforms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

from .bigreal import BigReal, MIN_DIGITS, MAX_DIGITS, log10_abs, to_fraction

__all__ = [
    "Mode",
    "SolverConfig",
    "DivergenceError",
    "digits_known_root",
    "digits_acoc",
    "digits_ecoc",
    "should_stop",
]

GUARD_DIGITS = 4

_LOG10_HALF = math.log10(0.5)


class Mode(Enum):
    """Which error surrogate drives precision growth and stopping."""

    KNOWN_ROOT = "known-root"
    ACOC_DRIVEN = "acoc"
    ECOC_DRIVEN = "ecoc"


class DivergenceError(ArithmeticError):
    """Consecutive differences are not contracting (delta >= 1)."""


@dataclass(frozen=True)
class SolverConfig:
    """Run parameters for the adaptive-precision driver.

    ``eta`` is the number of correct decimals demanded of the root,
    ``j`` the slack added inside the digits formulas, ``rho`` the
    effective convergence order of the method on this problem.
    """

    eta: int = 2800
    j: int = 2
    mode: Mode = Mode.KNOWN_ROOT
    rho: int = 2
    max_iterations: int = 100
    initial_digits: int = 64
    max_digits: int = MAX_DIGITS

    def __post_init__(self):
        if self.eta < 1:
            raise ValueError("eta must be >= 1")
        if self.j < 1:
            raise ValueError("j must be >= 1")
        if self.rho < 2:
            raise ValueError("rho must be >= 2")
        if self.initial_digits < MIN_DIGITS:
            raise ValueError(f"initial_digits must be >= {MIN_DIGITS}")


def _digits_formula(factor: Fraction, err: BigReal, j: int, prev: int) -> int:
    if err.is_zero or err.is_negative:
        raise ValueError("error surrogate must be positive")
    neg_log = -to_fraction(log10_abs(err))
    raw = math.floor(factor * (neg_log + j))
    return max(prev, min(max(raw, MIN_DIGITS), MAX_DIGITS))


def digits_known_root(rho: int, e_norm: BigReal, j: int, prev: int = MIN_DIGITS) -> int:
    """floor(rho * (-log10 e + j)), clamped and monotone against ``prev``."""
    return _digits_formula(Fraction(rho), e_norm, j, prev)


def digits_acoc(rho: int, delta: BigReal, j: int, prev: int = MIN_DIGITS) -> int:
    """floor(rho^3/(rho-1) * (-log10 delta + j)); delta >= 1 diverges."""
    if not delta.is_zero and delta >= 1:
        raise DivergenceError("difference ratio exceeds 1")
    return _digits_formula(Fraction(rho**3, rho - 1), delta, j, prev)


def digits_ecoc(rho: int, e_tilde_norm: BigReal, j: int, prev: int = MIN_DIGITS) -> int:
    """floor(rho^3/(2*rho-1) * (-log10 etilde + j)), clamped and monotone."""
    return _digits_formula(Fraction(rho**3, 2 * rho - 1), e_tilde_norm, j, prev)


def _log10_or_none(x: BigReal | None):
    if x is None:
        return None
    if x.is_zero:
        return float("-inf")
    return float(log10_abs(x))


def should_stop(cfg: SolverConfig, rec) -> bool:
    """Test the mode's stopping criterion against one iteration record.

    The record must carry the field the mode consumes (``e_known`` /
    ``delta`` / ``e_tilde_norm``); a missing surrogate on an early record
    simply means "cannot stop yet" for the root-free modes, and is a
    contract violation for the known-root mode.
    """
    rho = cfg.rho
    if cfg.mode is Mode.KNOWN_ROOT:
        le = _log10_or_none(rec.e_known)
        if le is None:
            raise ValueError("known-root stopping needs e_known on the record")
        return le < _LOG10_HALF - cfg.eta
    if cfg.mode is Mode.ACOC_DRIVEN:
        ld = _log10_or_none(rec.delta)
        if ld is None:
            return False
        return ld < _LOG10_HALF - cfg.eta * (rho - 1) / rho**2
    if cfg.mode is Mode.ECOC_DRIVEN:
        lt = _log10_or_none(rec.e_tilde_norm)
        if lt is None:
            return False
        return lt < _LOG10_HALF - cfg.eta * (2 * rho - 1) / rho**2
    raise ValueError(f"unknown mode {cfg.mode}")
