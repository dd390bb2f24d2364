import math
import random

import pytest

from mpnewton.bigreal import from_decimal, from_int, raise_precision, to_decimal
from mpnewton.linalg import (
    Matrix,
    SingularMatrixError,
    Vector,
    identity,
    lu_factor,
    lu_solve,
    mat_vec,
    norm_2,
    norm_inf,
)
from mpnewton.problems import by_id


def _vec(strs, d=32):
    return Vector(from_decimal(s, d) for s in strs)


def _mat(rows, d=32):
    return Matrix([tuple(from_decimal(s, d) for s in r) for r in rows])


def _reconstruct_error(a: Matrix, f) -> float:
    """max |(P A - L U)_ij| over the matrix, as a float exponent check."""
    m = len(a)
    d = a.digits
    worst = from_int(0, d)
    for i in range(m):
        for j in range(m):
            # L U at row i, col j from combined storage
            s = from_int(0, d)
            for p in range(min(i, j) + 1):
                lip = f.lu[i][p] if p < i else from_int(1, d)
                s = s + lip * f.lu[p][j]
            diff = abs(s - a.rows[f.perm[i]][j])
            if diff > worst:
                worst = diff
    return float(worst)


class TestLUFactor:
    def test_identity(self):
        f = lu_factor(identity(3, 32))
        assert f.perm == (0, 1, 2)
        for i in range(3):
            for j in range(3):
                assert float(f.lu[i][j]) == (1.0 if i == j else 0.0)

    def test_permutation_matrix(self):
        a = _mat([["0", "1"], ["1", "0"]])
        f = lu_factor(a)
        assert sorted(f.perm) == [0, 1] and f.perm != (0, 1)
        b = lu_solve(f, _vec(["3", "4"]))
        assert [float(x) for x in b] == [4.0, 3.0]

    def test_f2_jacobian_reconstruction(self):
        p = by_id("F2")
        x = p.point("x0_2").vector(64)
        a = p.eval_J(x)
        f = lu_factor(a)
        # reconstruct at doubled precision
        a2 = Matrix([[raise_precision(e, 128) for e in r] for r in a.rows])
        err = _reconstruct_error(a2, lu_factor(a2))
        assert err <= 10.0 ** (1 - 128) * 10

    @pytest.mark.parametrize("d", [32, 256, 2048])
    def test_reconstruction_random(self, d):
        rng = random.Random(d)
        m = 5
        a = Matrix(
            [
                tuple(from_decimal(f"{rng.uniform(-2, 2):.10f}", d) for _ in range(m))
                for _ in range(m)
            ]
        )
        err = _reconstruct_error(a, lu_factor(a))
        norm = max(
            sum(abs(float(e)) for e in row) for row in a.rows
        )
        assert err <= m * m * 10.0 ** (1 - d) * norm + 10.0 ** (-d)

    def test_singular_raises(self):
        with pytest.raises(SingularMatrixError):
            lu_factor(_mat([["1", "1"], ["1", "1"]]))
        with pytest.raises(SingularMatrixError):
            lu_factor(_mat([["0", "0"], ["0", "0"]]))


class TestLUSolve:
    def test_identity(self):
        b = _vec(["1.5", "-2", "7"])
        y = lu_solve(lu_factor(identity(3, 32)), b)
        assert [float(v) for v in y] == [1.5, -2.0, 7.0]

    def test_diagonal(self):
        a = _mat([["2", "0"], ["0", "4"]])
        y = lu_solve(lu_factor(a), _vec(["2", "4"]))
        assert [float(v) for v in y] == [1.0, 1.0]

    def test_cramer_oracle(self):
        # [[3, 1], [2, 5]]: inverse = 1/13 [[5, -1], [-2, 3]]
        a = _mat([["3", "1"], ["2", "5"]], 48)
        y = lu_solve(lu_factor(a), _vec(["7", "-4"], 48))
        x1 = (5 * 7 - 1 * -4) / 13
        x2 = (-2 * 7 + 3 * -4) / 13
        assert abs(float(y[0]) - x1) < 1e-14
        assert abs(float(y[1]) - x2) < 1e-14

    def test_solve_recovers_random_x(self):
        rng = random.Random(7)
        d = 64
        m = 6
        a = Matrix(
            [
                tuple(from_decimal(f"{rng.uniform(-1, 1):.8f}", d) for _ in range(m))
                for _ in range(m)
            ]
        )
        x = _vec([f"{rng.uniform(-3, 3):.8f}" for _ in range(m)], d)
        y = lu_solve(lu_factor(a), mat_vec(a, x))
        err = float(norm_inf(y - x))
        assert err < 1e-55

    def test_dimension_mismatch(self):
        f = lu_factor(identity(3, 32))
        with pytest.raises(ValueError):
            lu_solve(f, _vec(["1", "2"]))


class TestNorms:
    def test_norm_inf_basic(self):
        assert float(norm_inf(_vec(["1", "-3", "2"]))) == 3.0
        assert norm_inf(_vec(["0", "0"])).is_zero

    def test_norm_inf_f1_first_point(self):
        p = by_id("F1")
        r = norm_inf(p.eval_F(p.point("x0_1").vector(32)))
        assert to_decimal(r, 3) == "8.41e-1"

    def test_norm_2_pythagorean(self):
        assert float(norm_2(_vec(["3", "4"]))) == 5.0

    def test_norm_2_random_vs_float(self):
        rng = random.Random(3)
        vals = [rng.uniform(-5, 5) for _ in range(7)]
        v = _vec([repr(x) for x in vals], 48)
        assert abs(float(norm_2(v)) - math.hypot(*vals)) < 1e-12

    @pytest.mark.parametrize("seed", range(5))
    def test_norm_inequality(self, seed):
        rng = random.Random(seed)
        m = rng.randint(1, 9)
        v = _vec([f"{rng.uniform(-4, 4):.6f}" for _ in range(m)], 48)
        ni, n2 = float(norm_inf(v)), float(norm_2(v))
        assert ni <= n2 * (1 + 1e-15)
        assert n2 <= math.sqrt(m) * ni * (1 + 1e-15)


class TestVectorMatrix:
    def test_uniform_precision_lift(self):
        v = Vector([from_decimal("1", 32), from_decimal("2", 100)])
        assert v.digits == 100
        assert all(e.precision_digits == 100 for e in v)

    def test_matrix_must_be_square(self):
        with pytest.raises(ValueError):
            Matrix([[from_int(1, 32)], [from_int(2, 32), from_int(3, 32)]])

    def test_vector_ops(self):
        a, b = _vec(["1", "2"]), _vec(["3", "5"])
        assert [float(x) for x in (a + b)] == [4.0, 7.0]
        assert [float(x) for x in (b - a)] == [2.0, 3.0]
        assert [float(x) for x in a.scale(from_int(3, 32))] == [3.0, 6.0]
