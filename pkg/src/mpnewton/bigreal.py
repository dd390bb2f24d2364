"""Arbitrary-precision real numbers with an explicit per-value decimal precision.

A :class:`BigReal` pairs a binary floating-point value (mpmath's stateless
``libmp`` kernel, gmpy2-accelerated when available) with the number of
significant decimal digits it is trusted to carry.  Precision is a property
of values, never of an ambient context, so independent solver runs can share
numbers across threads or processes without coordination.

The decimal-digit contract lives at the string interface: parsing a decimal
literal at ``d`` digits and rendering it back at ``d`` digits is idempotent,
and a single arithmetic operation at ``d`` digits has relative error below
``10**(1 - d)``.  Internally the mantissa is binary with a few spare bits.
"""

from __future__ import annotations

import os
import re
from fractions import Fraction

import mpmath.libmp as _mp

__all__ = [
    "BigReal",
    "MIN_DIGITS",
    "MAX_DIGITS",
    "PrecisionError",
    "DomainError",
    "from_decimal",
    "from_int",
    "to_decimal",
    "raise_precision",
    "round_to",
    "log10_abs",
    "to_fraction",
    "exp",
    "ln",
    "sin",
    "cos",
    "sqrt",
    "cbrt",
]

_RND = _mp.round_nearest
_MPZ = _mp.MPZ  # backend integer type, no str-conversion length limit

MIN_DIGITS = 32
MAX_DIGITS = int(os.environ.get("MPSOLVE_MAX_DIGITS", "20000"))

# Digits carried by log10_abs results; only ~16 are contractual.
_LOG_DIGITS = 36

_DECIMAL_RE = re.compile(
    r"^(?P<sign>[+-]?)(?P<int>\d*)(?:\.(?P<frac>\d*))?(?:[eE](?P<exp>[+-]?\d+))?$"
)


class PrecisionError(ValueError):
    """Requested precision outside the supported digit range."""


class DomainError(ArithmeticError):
    """Operand outside a function's domain (e.g. log of zero)."""


def _prec(digits: int) -> int:
    return _mp.dps_to_prec(digits)


def _check_digits(digits: int) -> int:
    if not isinstance(digits, int):
        raise PrecisionError(f"precision must be an int, got {type(digits).__name__}")
    if digits < MIN_DIGITS or digits > MAX_DIGITS:
        raise PrecisionError(
            f"precision {digits} outside [{MIN_DIGITS}, {MAX_DIGITS}]"
        )
    return digits


class BigReal:
    """Immutable arbitrary-precision real carrying its own decimal precision.

    Binary arithmetic between two values rounds at the larger of the two
    precisions, so mixing precisions widens rather than truncates.  Integer
    operands are admitted directly (they are exact).
    """

    __slots__ = ("_v", "precision_digits")

    def __init__(self, raw, precision_digits: int):
        _check_digits(precision_digits)
        object.__setattr__(self, "_v", raw)
        object.__setattr__(self, "precision_digits", precision_digits)

    def __setattr__(self, name, value):
        raise AttributeError("BigReal is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(digits: int = MIN_DIGITS) -> "BigReal":
        return BigReal(_mp.fzero, digits)

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return self._v == _mp.fzero

    @property
    def is_negative(self) -> bool:
        return self._v[0] == 1 and not self.is_zero

    # -- conversions -------------------------------------------------------

    def __float__(self) -> float:
        # May underflow to 0.0 / overflow to inf outside double range.
        return _mp.to_float(self._v, strict=False)

    def __repr__(self) -> str:
        return f"BigReal({to_decimal(self, min(self.precision_digits, 17))!r} @{self.precision_digits})"

    # -- arithmetic --------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, BigReal):
            return other
        if isinstance(other, int):
            return BigReal(_mp.from_int(other), self.precision_digits)
        return None

    def _binop(self, other, fn):
        rhs = self._coerce(other)
        if rhs is None:
            return NotImplemented
        d = max(self.precision_digits, rhs.precision_digits)
        return BigReal(fn(self._v, rhs._v, _prec(d), _RND), d)

    def _rbinop(self, other, fn):
        lhs = self._coerce(other)
        if lhs is None:
            return NotImplemented
        d = max(self.precision_digits, lhs.precision_digits)
        return BigReal(fn(lhs._v, self._v, _prec(d), _RND), d)

    def __add__(self, other):
        return self._binop(other, _mp.mpf_add)

    __radd__ = __add__

    def __sub__(self, other):
        return self._binop(other, _mp.mpf_sub)

    def __rsub__(self, other):
        return self._rbinop(other, _mp.mpf_sub)

    def __mul__(self, other):
        return self._binop(other, _mp.mpf_mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self._binop(other, _mp.mpf_div)

    def __rtruediv__(self, other):
        return self._rbinop(other, _mp.mpf_div)

    def __neg__(self):
        return BigReal(_mp.mpf_neg(self._v), self.precision_digits)

    def __abs__(self):
        return BigReal(_mp.mpf_abs(self._v), self.precision_digits)

    # -- comparisons (exact on represented values) -------------------------

    def _cmp(self, other):
        rhs = self._coerce(other)
        if rhs is None:
            return None
        return _mp.mpf_cmp(self._v, rhs._v)

    def __eq__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c == 0

    def __lt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return NotImplemented if c is None else c >= 0

    def __hash__(self):
        return hash(self._v)


# ---------------------------------------------------------------------------
# construction / rendering


def from_decimal(s: str, digits: int) -> BigReal:
    """Parse a signed decimal literal, correctly rounded to ``digits``.

    Accepts optional exponent notation (``-1.25e-300``) and mantissas of
    any length.  Raises ``ValueError`` on malformed input and
    :class:`PrecisionError` when ``digits`` is out of range.
    """
    _check_digits(digits)
    m = _DECIMAL_RE.match(s.strip())
    if not m or (not m.group("int") and not m.group("frac")):
        raise ValueError(f"not a decimal literal: {s!r}")
    frac = m.group("frac") or ""
    exp = int(m.group("exp") or 0) - len(frac)
    man = _MPZ((m.group("int") or "") + frac or "0")
    if m.group("sign") == "-":
        man = -man
    prec = _prec(digits)
    if exp >= 0:
        raw = _mp.from_int(man * _MPZ(10) ** exp, prec, _RND)
    else:
        raw = _mp.mpf_div(
            _mp.from_int(man), _mp.from_int(_MPZ(10) ** (-exp)), prec, _RND
        )
    return BigReal(raw, digits)


def from_int(n: int, digits: int) -> BigReal:
    _check_digits(digits)
    return BigReal(_mp.from_int(n, _prec(digits), _RND), digits)


def to_decimal(x: BigReal, digits: int | None = None) -> str:
    """Render ``x`` in scientific notation ``±d.ddd...e±k`` with exactly
    ``digits`` significant digits (default: the value's own precision)."""
    d = x.precision_digits if digits is None else digits
    if d < 1:
        raise PrecisionError(f"cannot render {d} digits")
    if x.is_zero:
        return "0e+0"
    sign, ds, expn = _mp.to_digits_exp(x._v, d + 10)
    # round the digit string to d digits, half-up, with carry
    if len(ds) > d and ds[d] in "56789":
        ds2 = _increment_digit_string(ds[:d])
        if len(ds2) > d:
            ds2 = ds2[:d]
            expn += 1
        ds = ds2
    else:
        ds = ds[:d]
    ds = ds.ljust(d, "0")
    body = ds[0] if d == 1 else f"{ds[0]}.{ds[1:]}"
    return f"{sign}{body}e{expn:+d}"


def _increment_digit_string(ds: str) -> str:
    # add one, propagating the carry; avoids the int<->str length limit
    out = list(ds)
    for i in range(len(out) - 1, -1, -1):
        if out[i] == "9":
            out[i] = "0"
        else:
            out[i] = chr(ord(out[i]) + 1)
            return "".join(out)
    return "1" + "".join(out)


def raise_precision(x: BigReal, digits: int) -> BigReal:
    """Widen ``x`` to carry ``digits`` digits; the value is unchanged."""
    if digits < x.precision_digits:
        raise PrecisionError(
            f"cannot lower precision {x.precision_digits} -> {digits}; use round_to"
        )
    if digits == x.precision_digits:
        return x
    return BigReal(x._v, _check_digits(digits))


def round_to(x: BigReal, digits: int) -> BigReal:
    """Re-round ``x`` to ``digits`` digits (lossy when narrowing)."""
    _check_digits(digits)
    return BigReal(_mp.mpf_pos(x._v, _prec(digits), _RND), digits)


def to_fraction(x: BigReal) -> Fraction:
    """Exact rational value of the binary representation."""
    if x.is_zero:
        return Fraction(0)
    sign, man, e, _ = x._v
    num = -int(man) if sign else int(man)
    if e >= 0:
        return Fraction(num * (1 << e))
    return Fraction(num, 1 << -e)


# ---------------------------------------------------------------------------
# elementary functions


def _unary(x: BigReal, fn, digits: int | None = None) -> BigReal:
    d = x.precision_digits if digits is None else _check_digits(digits)
    return BigReal(fn(x._v, _prec(d), _RND), d)


def exp(x: BigReal) -> BigReal:
    return _unary(x, _mp.mpf_exp)


def ln(x: BigReal) -> BigReal:
    if x.is_zero or x.is_negative:
        raise DomainError("ln requires a positive argument")
    return _unary(x, _mp.mpf_log)


def sin(x: BigReal) -> BigReal:
    return _unary(x, _mp.mpf_sin)


def cos(x: BigReal) -> BigReal:
    return _unary(x, _mp.mpf_cos)


def sqrt(x: BigReal) -> BigReal:
    if x.is_negative:
        raise DomainError("sqrt requires a nonnegative argument")
    return _unary(x, _mp.mpf_sqrt)


def cbrt(x: BigReal) -> BigReal:
    return _unary(x, _mp.mpf_cbrt)


def log10_abs(x: BigReal) -> BigReal:
    """Base-10 logarithm of ``|x|`` to at least 16 significant digits.

    Exact decimal powers come out as exact integers: the working precision
    leaves the result within half an ulp of the integer, and the final
    re-rounding snaps it.  Raises :class:`DomainError` for x = 0.
    """
    if x.is_zero:
        raise DomainError("log10_abs undefined at zero")
    wp = _prec(_LOG_DIGITS) + 24
    lx = _mp.mpf_log(_mp.mpf_abs(x._v), wp, _RND)
    l10 = _mp.mpf_log(_mp.from_int(10), wp, _RND)
    q = _mp.mpf_div(lx, l10, wp, _RND)
    return BigReal(_mp.mpf_pos(q, _prec(_LOG_DIGITS), _RND), _LOG_DIGITS)
