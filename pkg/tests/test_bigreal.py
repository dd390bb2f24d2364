import pytest
from hypothesis import given, settings, strategies as st

import mpmath

from mpnewton.bigreal import (
    BigReal,
    DomainError,
    MIN_DIGITS,
    PrecisionError,
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
    to_fraction,
)


class TestFromDecimal:
    def test_ln2_ten_digits(self):
        x = from_decimal("0.6931471806", 32)
        assert to_decimal(x, 10) == "6.931471806e-1"
        assert x.precision_digits == 32

    def test_exact_zero(self):
        z = from_decimal("0", 50)
        assert z.is_zero
        assert to_decimal(z) == "0e+0"

    def test_tiny_exponent_round_trip(self):
        x = from_decimal("1e-2800", 2810)
        assert to_decimal(log10_abs(x), 5) == "-2.8000e+3"

    @pytest.mark.parametrize("bad", ["", "abc", "1.2.3", "1e", "--3", "nan", "inf", "0x10"])
    def test_malformed(self, bad):
        with pytest.raises(ValueError):
            from_decimal(bad, 32)

    def test_precision_out_of_range(self):
        with pytest.raises(PrecisionError):
            from_decimal("1", 8)
        with pytest.raises(PrecisionError):
            from_decimal("1", 10**6)


class TestArithmetic:
    def test_max_precision_rule(self):
        a = from_decimal("1.5", 32)
        b = from_decimal("2.25", 100)
        assert (a + b).precision_digits == 100
        assert (a * b).precision_digits == 100

    def test_int_operands(self):
        x = from_decimal("1.5", 32)
        assert float(2 * x) == 3.0
        assert float(x - 1) == 0.5
        assert float(1 / from_decimal("4", 32)) == 0.25

    def test_comparisons(self):
        a, b = from_decimal("1.25", 32), from_decimal("1.5", 64)
        assert a < b and b > a and a <= a and a == a and a != b

    @settings(max_examples=60, deadline=None)
    @given(
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        st.floats(min_value=-1e6, max_value=1e6, allow_nan=False),
        st.sampled_from(["add", "sub", "mul", "div"]),
    )
    def test_single_op_relative_error(self, fa, fb, op):
        # one rounded operation at d digits vs the same op at 2d digits
        d = 32
        a, b = from_decimal(repr(fa), d), from_decimal(repr(fb), d)
        a2, b2 = raise_precision(a, 2 * d), raise_precision(b, 2 * d)
        if op == "div" and b.is_zero:
            return
        got = getattr(a, f"__{'truediv' if op == 'div' else op}__")(b)
        ref = getattr(a2, f"__{'truediv' if op == 'div' else op}__")(b2)
        if ref.is_zero:
            assert got.is_zero
            return
        rel = abs(got - ref) / abs(ref)
        assert rel < from_decimal(f"1e{1 - d}", 32)

    def test_cancellation_is_relative_to_result(self):
        # exactly representable nearby operands subtract exactly
        t = from_int(1, 64) / from_int(2**100, 64)
        a = from_int(1, 64) + t
        assert (a - from_int(1, 64)) == t


class TestStringInterface:
    @settings(max_examples=60, deadline=None)
    @given(st.floats(min_value=-1e10, max_value=1e10, allow_nan=False),
           st.sampled_from([32, 48, 80]))
    def test_round_trip_idempotent(self, f, d):
        x = from_decimal(repr(f), d)
        s1 = to_decimal(x, d)
        s2 = to_decimal(from_decimal(s1, d), d)
        assert s1 == s2

    def test_scientific_format(self):
        assert to_decimal(from_decimal("1.02e-3429", 32), 3) == "1.02e-3429"
        assert to_decimal(from_decimal("-250", 32), 4) == "-2.500e+2"

    def test_rounding_carry(self):
        assert to_decimal(from_decimal("9.999", 32), 2) == "1.0e+1"


class TestRaisePrecision:
    def test_widening_preserves_prefix(self):
        pi32 = from_decimal("3.14159265358979323846264338327950288", 32)
        wide = raise_precision(pi32, 64)
        assert to_decimal(wide, 32) == to_decimal(pi32, 32)
        assert wide == pi32

    def test_identity(self):
        x = from_decimal("2.5", 40)
        assert raise_precision(x, 40) is x

    def test_exact_integer_at_extreme_precision(self):
        # widening an exact small integer renders exactly at any width
        two = raise_precision(from_int(2, 32), 8000)
        assert to_decimal(two, 8000) == "2." + "0" * 7999 + "e+0"

    def test_narrowing_rejected(self):
        with pytest.raises(PrecisionError):
            raise_precision(from_decimal("1", 64), 32)
        assert round_to(from_decimal("1", 64), 32).precision_digits == 32


class TestLog10Abs:
    def test_table_value(self):
        x = from_decimal("1.02e-3429", 64)
        assert abs(float(log10_abs(x)) - (-3428.9914)) < 1e-3

    def test_log_of_one(self):
        assert log10_abs(from_int(1, 32)).is_zero

    @pytest.mark.parametrize("k", [-5000, -3429, -100, -1, 1, 7, 999, 5000])
    def test_powers_of_ten_exact(self, k):
        x = from_decimal(f"1e{k}", 48)
        assert log10_abs(x) == from_int(k, 48)

    def test_small_powers_sweep(self):
        for k in range(1, 101):
            assert log10_abs(from_decimal(f"1e-{k}", 40)) == from_int(-k, 40)

    def test_sixteen_digit_accuracy(self):
        x = from_decimal("7.25", 32)
        ref = mpmath.mpf("7.25")
        got = float(log10_abs(x))
        assert abs(got - float(mpmath.log10(ref))) < 1e-15

    def test_zero_rejected(self):
        with pytest.raises(DomainError):
            log10_abs(from_int(0, 32))


class TestElementary:
    def test_against_mpmath(self):
        mpmath.mp.dps = 40
        x = from_decimal("0.735", 40)
        pairs = [
            (exp(x), mpmath.exp(mpmath.mpf("0.735"))),
            (ln(x), mpmath.log(mpmath.mpf("0.735"))),
            (sin(x), mpmath.sin(mpmath.mpf("0.735"))),
            (cos(x), mpmath.cos(mpmath.mpf("0.735"))),
            (sqrt(x), mpmath.sqrt(mpmath.mpf("0.735"))),
            (cbrt(x), mpmath.cbrt(mpmath.mpf("0.735"))),
        ]
        for got, ref in pairs:
            assert abs(float(got) - float(ref)) < 1e-15

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            ln(from_int(-1, 32))
        with pytest.raises(DomainError):
            sqrt(from_int(-4, 32))


def test_to_fraction_exact():
    x = from_decimal("0.5", 32)
    assert to_fraction(x) == 0.5
    assert to_fraction(from_int(-7, 32)) == -7


def test_immutability():
    x = from_int(1, 32)
    with pytest.raises(AttributeError):
        x.precision_digits = 64
