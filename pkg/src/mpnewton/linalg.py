"""Dense vectors, matrices and LU solves over :class:`~mpnewton.bigreal.BigReal`.

Everything here is immutable and pure. Systems stay small (the benchmark
problems top out at dimension nine), so storage is dense and factorization
is plain Doolittle LU with partial pivoting.
"""

from __future__ import annotations

from .bigreal import BigReal, from_decimal, from_int, raise_precision, sqrt

__all__ = [
    "Vector",
    "Matrix",
    "LUFactors",
    "SingularMatrixError",
    "lu_factor",
    "lu_solve",
    "mat_vec",
    "mat_add",
    "norm_inf",
    "norm_2",
    "identity",
]

# A pivot below 10**(SINGULAR_MARGIN - d) * ||A||_inf flags a numerically
# singular matrix at working precision d.
SINGULAR_MARGIN = 8


class SingularMatrixError(ArithmeticError):
    """The matrix is numerically singular at working precision."""


def _lift_all(entries):
    entries = tuple(entries)
    if not entries:
        raise ValueError("empty vector")
    d = max(e.precision_digits for e in entries)
    return tuple(raise_precision(e, d) for e in entries), d


class Vector:
    """Fixed-length tuple of BigReals at a uniform precision.

    Mixed-precision inputs are widened (exactly) to the largest precision.
    """

    __slots__ = ("entries", "digits")

    def __init__(self, entries):
        es, d = _lift_all(entries)
        object.__setattr__(self, "entries", es)
        object.__setattr__(self, "digits", d)

    def __setattr__(self, name, value):
        raise AttributeError("Vector is immutable")

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def at_digits(self, d: int) -> "Vector":
        if d <= self.digits:
            return self
        return Vector(raise_precision(e, d) for e in self.entries)

    def __add__(self, other):
        self._same_dim(other)
        return Vector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        self._same_dim(other)
        return Vector(a - b for a, b in zip(self, other))

    def scale(self, s) -> "Vector":
        return Vector(s * e for e in self.entries)

    def _same_dim(self, other):
        if len(self) != len(other):
            raise ValueError(f"dimension mismatch: {len(self)} vs {len(other)}")

    def __repr__(self):
        return f"Vector({list(self.entries)!r})"


class Matrix:
    """Square grid of BigReals at a uniform precision."""

    __slots__ = ("rows", "digits")

    def __init__(self, rows):
        rows = [tuple(r) for r in rows]
        m = len(rows)
        if m == 0 or any(len(r) != m for r in rows):
            raise ValueError("matrix must be square and nonempty")
        flat, d = _lift_all(e for r in rows for e in r)
        object.__setattr__(
            self, "rows", tuple(tuple(flat[i * m + j] for j in range(m)) for i in range(m))
        )
        object.__setattr__(self, "digits", d)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    def __len__(self):
        return len(self.rows)

    def __getitem__(self, i):
        return self.rows[i]

    def __repr__(self):
        return f"Matrix({[list(r) for r in self.rows]!r})"


class LUFactors:
    """Combined L\\U storage plus the pivot permutation, P·A = L·U."""

    __slots__ = ("lu", "perm", "digits")

    def __init__(self, lu, perm, digits):
        object.__setattr__(self, "lu", lu)
        object.__setattr__(self, "perm", tuple(perm))
        object.__setattr__(self, "digits", digits)

    def __setattr__(self, name, value):
        raise AttributeError("LUFactors is immutable")


def norm_inf(v: Vector) -> BigReal:
    """Max-magnitude entry."""
    best = abs(v[0])
    for e in v.entries[1:]:
        a = abs(e)
        if a > best:
            best = a
    return best


def norm_2(v: Vector) -> BigReal:
    """Euclidean norm."""
    s = v[0] * v[0]
    for e in v.entries[1:]:
        s = s + e * e
    return sqrt(s)


def mat_vec(a: Matrix, v: Vector) -> Vector:
    if len(a) != len(v):
        raise ValueError("dimension mismatch")
    out = []
    for row in a.rows:
        s = row[0] * v[0]
        for x, y in zip(row[1:], v.entries[1:]):
            s = s + x * y
        out.append(s)
    return Vector(out)


def mat_add(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise ValueError("dimension mismatch")
    return Matrix(
        tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a.rows, b.rows)
    )


def identity(m: int, digits: int) -> Matrix:
    one = from_int(1, digits)
    zero = from_int(0, digits)
    return Matrix(
        tuple(one if i == j else zero for j in range(m)) for i in range(m)
    )


def _matrix_norm_inf(rows) -> BigReal:
    best = None
    for row in rows:
        s = abs(row[0])
        for e in row[1:]:
            s = s + abs(e)
        if best is None or s > best:
            best = s
    return best


def lu_factor(a: Matrix) -> LUFactors:
    """LU with partial pivoting (largest-magnitude column entry).

    Raises :class:`SingularMatrixError` when a pivot falls below
    ``10**(SINGULAR_MARGIN - d) * ||A||_inf``.
    """
    m = len(a)
    d = a.digits
    rows = [list(r) for r in a.rows]
    perm = list(range(m))
    threshold = _matrix_norm_inf(rows) * from_decimal(f"1e{SINGULAR_MARGIN - d}", 32)
    for k in range(m):
        best, bi = abs(rows[k][k]), k
        for i in range(k + 1, m):
            v = abs(rows[i][k])
            if v > best:
                best, bi = v, i
        if best.is_zero or best < threshold:
            raise SingularMatrixError(f"pivot {k} below threshold at {d} digits")
        if bi != k:
            rows[k], rows[bi] = rows[bi], rows[k]
            perm[k], perm[bi] = perm[bi], perm[k]
        pk = rows[k][k]
        for i in range(k + 1, m):
            lik = rows[i][k] / pk
            rows[i][k] = lik
            rk = rows[k]
            ri = rows[i]
            for j in range(k + 1, m):
                ri[j] = ri[j] - lik * rk[j]
    return LUFactors(tuple(tuple(r) for r in rows), perm, d)


def lu_solve(f: LUFactors, b: Vector) -> Vector:
    """Solve A·y = b from the factors of A (forward + back substitution)."""
    m = len(f.perm)
    if len(b) != m:
        raise ValueError("dimension mismatch")
    lu = f.lu
    y = [b[p] for p in f.perm]
    for i in range(1, m):
        s = y[i]
        row = lu[i]
        for j in range(i):
            s = s - row[j] * y[j]
        y[i] = s
    x = [None] * m
    for i in range(m - 1, -1, -1):
        s = y[i]
        row = lu[i]
        for j in range(i + 1, m):
            s = s - row[j] * x[j]
        x[i] = s / row[i]
    return Vector(x)
