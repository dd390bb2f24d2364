import pytest
from hypothesis import given, settings, strategies as st

from mpnewton.bigreal import MIN_DIGITS, from_decimal
from mpnewton.methods import IterationRecord
from mpnewton.linalg import Vector
from mpnewton.precision import (
    DivergenceError,
    Mode,
    SolverConfig,
    digits_acoc,
    digits_ecoc,
    digits_known_root,
    should_stop,
)


def _b(s, d=64):
    return from_decimal(s, d)


class TestDigitsKnownRoot:
    def test_direct_formula(self):
        assert digits_known_root(2, _b("1e-100"), 2) == 204
        assert digits_known_root(3, _b("1e-1000"), 4) == 3012

    def test_table_scale_value(self):
        # floor(2 * (1714.496... + 4)) for the 3.19e-1715 error magnitude
        assert digits_known_root(2, _b("3.19e-1715"), 4) == 3436

    def test_clamped_below(self):
        assert digits_known_root(2, _b("0.5"), 2) == MIN_DIGITS

    def test_monotone_against_previous(self):
        assert digits_known_root(2, _b("1e-100"), 2, prev=500) == 500

    def test_quadratic_sequence_doubles(self):
        # error 10**(-2**n): digits = 2*2**n + 4, i.e. doubling per step
        # (starts above the clamp floor)
        for n in range(5, 11):
            e = _b(f"1e-{2**n}", max(32, 2**n + 10))
            assert digits_known_root(2, e, 2) == 2 * 2**n + 4


class TestDigitsAcoc:
    def test_direct_formula(self):
        assert digits_acoc(2, _b("1e-100"), 2) == 816
        assert digits_acoc(3, _b("1e-50"), 2) == 702

    def test_table_scale_value(self):
        assert digits_acoc(3, _b("9.78e-1169"), 2) == 15795

    def test_divergence(self):
        with pytest.raises(DivergenceError):
            digits_acoc(3, _b("1.5"), 2)


class TestDigitsEcoc:
    def test_direct_formula(self):
        assert digits_ecoc(2, _b("1e-100"), 2) == 272
        assert digits_ecoc(3, _b("1e-1000"), 2) == 5410

    def test_table_scale_value(self):
        assert digits_ecoc(3, _b("1.64e-2920"), 2) == 15777


class TestMonotonicity:
    @settings(max_examples=40, deadline=None)
    @given(
        st.integers(min_value=5, max_value=2000),
        st.integers(min_value=5, max_value=2000),
        st.integers(min_value=1, max_value=8),
        st.sampled_from([2, 3, 4]),
    )
    def test_decreasing_error_never_lowers_digits(self, k1, k2, j, rho):
        lo, hi = max(k1, k2), min(k1, k2)
        d_small_err = digits_known_root(rho, _b(f"1e-{lo}"), j)
        d_big_err = digits_known_root(rho, _b(f"1e-{hi}"), j)
        assert d_small_err >= d_big_err

    @settings(max_examples=40, deadline=None)
    @given(st.integers(min_value=5, max_value=2000), st.integers(min_value=1, max_value=10))
    def test_increasing_j_and_rho(self, k, j):
        e = _b(f"1e-{k}")
        assert digits_known_root(2, e, j + 1) >= digits_known_root(2, e, j)
        assert digits_known_root(3, e, j) >= digits_known_root(2, e, j)
        assert digits_acoc(2, e, j + 1) >= digits_acoc(2, e, j)
        assert digits_ecoc(2, e, j + 1) >= digits_ecoc(2, e, j)


def _rec(**kw):
    base = dict(n=3, digits=64, x=Vector([_b("1")]), residual_inf=_b("1e-5"))
    base.update(kw)
    return IterationRecord(**base)


class TestShouldStop:
    def test_known_root_threshold(self):
        cfg = SolverConfig(eta=2800, mode=Mode.KNOWN_ROOT, rho=2)
        assert should_stop(cfg, _rec(e_known=_b("1e-2801", 3000)))
        assert not should_stop(cfg, _rec(e_known=_b("1e-2800", 3000)))

    def test_known_root_requires_field(self):
        cfg = SolverConfig(mode=Mode.KNOWN_ROOT)
        with pytest.raises(ValueError):
            should_stop(cfg, _rec())

    def test_acoc_threshold(self):
        # eta=2800, rho=2: exponent 2800/4 = 700
        cfg = SolverConfig(eta=2800, mode=Mode.ACOC_DRIVEN, rho=2)
        assert not should_stop(cfg, _rec(delta=_b("1e-699", 800)))
        assert should_stop(cfg, _rec(delta=_b("1e-701", 800)))

    def test_ecoc_threshold(self):
        # eta=2800, rho=3: exponent 2800 * 5/9 = 1555.6
        cfg = SolverConfig(eta=2800, mode=Mode.ECOC_DRIVEN, rho=3)
        assert should_stop(cfg, _rec(e_tilde_norm=_b("1e-1600", 1700)))
        assert not should_stop(cfg, _rec(e_tilde_norm=_b("1e-1500", 1700)))

    def test_missing_surrogate_means_keep_going(self):
        cfg = SolverConfig(mode=Mode.ACOC_DRIVEN, rho=3)
        assert not should_stop(cfg, _rec(delta=None))


class TestSolverConfig:
    def test_validation(self):
        with pytest.raises(ValueError):
            SolverConfig(eta=0)
        with pytest.raises(ValueError):
            SolverConfig(j=0)
        with pytest.raises(ValueError):
            SolverConfig(rho=1)

    def test_defaults(self):
        cfg = SolverConfig()
        assert cfg.eta == 2800 and cfg.j == 2 and cfg.initial_digits == 64
