"""Registry of the seven benchmark systems F1..F7.

Each problem carries analytic F and Jacobian evaluators over BigReal, a
high-precision root (closed form where one exists, otherwise bootstrapped
by Newton at escalating precision from a short reference seed), three
curated initial points, and the per-table configuration overrides (slack
``j`` and effective order ``rho`` for specific method/point combinations).

The F2 system is even in its second variable, so the reflected root
(x, -y) is registered alongside the tabulated one: trajectories from the
first initial point genuinely cross into the mirror basin, and error
distances are measured against the nearest member of the pair.

Stored point distances ``d_i`` and residuals ``D_i`` are max-norm values
(both recompute that way to three significant digits).
"""

from __future__ import annotations

from dataclasses import dataclass

from .bigreal import (
    BigReal,
    cbrt,
    cos,
    exp,
    from_decimal,
    from_int,
    ln,
    log10_abs,
    sin,
    sqrt,
)
from .linalg import Matrix, Vector, lu_factor, lu_solve, norm_inf
from .methods import MethodKind
from .precision import Mode, SolverConfig

__all__ = [
    "InitialPoint",
    "ConfigOverride",
    "Problem",
    "registry",
    "build_bvp",
    "BVP_N10_SOLUTION",
]

_BOOT_MARGIN = 16


@dataclass(frozen=True)
class InitialPoint:
    """A starting point with its tabulated distance-to-root and residual."""

    label: str
    coords: tuple[str, ...]
    d_i: float
    D_i: float

    def vector(self, digits: int) -> Vector:
        return Vector(from_decimal(c, digits) for c in self.coords)


@dataclass(frozen=True)
class ConfigOverride:
    """Table-footnote override; ``point_label`` None applies method-wide."""

    method: MethodKind
    point_label: str | None
    j: int | None = None
    rho: int | None = None


class Problem:
    """One benchmark system: evaluators, roots, points, overrides."""

    def __init__(self, pid, m, eval_F, eval_J, root_builder, seed,
                 initial_points, overrides=(), mirror_builder=None):
        self.id = pid
        self.m = m
        self.eval_F = eval_F
        self.eval_J = eval_J
        self._root_builder = root_builder
        self._seed = seed
        self._mirror_builder = mirror_builder
        self.initial_points = tuple(initial_points)
        self.overrides = tuple(overrides)
        self._root_cache: Vector | None = None

    # -- roots -------------------------------------------------------------

    def root(self, digits: int) -> Vector:
        """The tabulated root, accurate to at least ``digits`` digits."""
        if self._root_cache is None or self._root_cache.digits < digits:
            want = digits + 64
            if self._root_builder is not None:
                self._root_cache = self._root_builder(want)
            else:
                self._root_cache = _newton_refine(
                    self.eval_F, self.eval_J, self._seed, want
                )
        return self._root_cache

    def roots(self, digits: int) -> list[Vector]:
        """Root family for error measurement; the tabulated root comes first."""
        out = [self.root(digits)]
        if self._mirror_builder is not None:
            out.append(self._mirror_builder(out[0]))
        return out

    # -- per-table configuration -------------------------------------------

    def j_for(self, method: MethodKind, point_label: str) -> int:
        for ov in self.overrides:
            if ov.j is None or ov.method is not method:
                continue
            if ov.point_label is None or ov.point_label == point_label:
                return ov.j
        return 2

    def rho_for(self, method: MethodKind, point_label: str | None = None) -> int:
        for ov in self.overrides:
            if ov.rho is None or ov.method is not method:
                continue
            if ov.point_label is None or ov.point_label == point_label:
                return ov.rho
        return method.theoretical_rho

    def config_for(self, method: MethodKind, point_label: str, *,
                   eta: int = 2800, mode: Mode = Mode.KNOWN_ROOT,
                   j: int | None = None, rho: int | None = None,
                   **kwargs) -> SolverConfig:
        return SolverConfig(
            eta=eta,
            j=self.j_for(method, point_label) if j is None else j,
            mode=mode,
            rho=self.rho_for(method, point_label) if rho is None else rho,
            **kwargs,
        )

    def point(self, label: str) -> InitialPoint:
        for p in self.initial_points:
            if p.label == label or p.label == f"x0_{label}":
                return p
        raise KeyError(f"{self.id} has no initial point {label!r}")

    def __repr__(self):
        return f"Problem({self.id}, m={self.m})"


# ---------------------------------------------------------------------------
# root bootstrap


def _newton_refine(eval_F, eval_J, seed, digits):
    """Newton at escalating precision until the residual clears 10**-(d+6)."""
    d = 32
    x = Vector(from_decimal(s, d + _BOOT_MARGIN) for s in seed)
    while True:
        x = x.at_digits(d + _BOOT_MARGIN)
        for _ in range(80):
            fx = eval_F(x)
            if fx_below(fx, -(d + 6)):
                break
            x = x - lu_solve(lu_factor(eval_J(x)), fx)
        else:
            raise ArithmeticError("root refinement stalled")
        if d >= digits:
            return x
        d = min(2 * d, digits)


def fx_below(fx: Vector, exponent: int) -> bool:
    r = norm_inf(fx)
    return r.is_zero or float(log10_abs(r)) < exponent


# ---------------------------------------------------------------------------
# the seven systems

def _f1_F(v):
    x, y = v
    return Vector([exp(x) - 2, sin(y + y - x)])


def _f1_J(v):
    x, y = v
    c = cos(y + y - x)
    zero = from_int(0, v.digits)
    return Matrix([[exp(x), zero], [-c, c + c]])


def _f1_root(d):
    l2 = ln(from_int(2, d))
    return Vector([l2, l2 / 2])


def _f2_F(v):
    x, y = v
    y2 = y * y
    return Vector([x * x - 4 * x + y2, 2 * x + y2 - 2])


def _f2_J(v):
    x, y = v
    two_y = y + y
    return Matrix([[x + x - 4, two_y], [from_int(2, v.digits), two_y]])


def _f2_root(d):
    s7 = sqrt(from_int(7, d))
    return Vector([3 - s7, sqrt(s7 + s7 - 4)])


def _f2_mirror(root: Vector) -> Vector:
    return Vector([root[0], -root[1]])


def _f3_F(v):
    x, y = v
    x2, y2 = x * x, y * y
    return Vector([x * (x2 - 3 * y2) - 1, y * (3 * x2 - y2) + 1])


def _f3_J(v):
    x, y = v
    diag = 3 * (x * x - y * y)
    off = 6 * (x * y)
    return Matrix([[diag, -off], [off, diag]])


def _f3_root(d):
    s3 = sqrt(from_int(3, d))
    c = cbrt(5 + 3 * s3)
    return Vector([c * (s3 / 2 - 1), c / 2])


def _f4_F(v):
    x, y = v
    ex = exp(x)
    return Vector([ex * cos(y) - x, ex * sin(y) - y])


def _f4_J(v):
    x, y = v
    ex = exp(x)
    c = ex * cos(y)
    s = ex * sin(y)
    return Matrix([[c - 1, -s], [s, c - 1]])


def _f5_F(v):
    x, y, z = v
    return Vector([x * y * z - 1, x + y - z * z, x * x + y * y + z * z - 9])


def _f5_J(v):
    x, y, z = v
    one = from_int(1, v.digits)
    return Matrix([
        [y * z, x * z, x * y],
        [one, one, -(z + z)],
        [x + x, y + y, z + z],
    ])


def _f6_F(v):
    x, y, z, t = v
    return Vector([
        y * z + t * (y + z),
        x * z + t * (x + z),
        x * y + t * (x + y),
        x * y + x * z + y * z - 1,
    ])


def _f6_J(v):
    x, y, z, t = v
    zero = from_int(0, v.digits)
    return Matrix([
        [zero, z + t, y + t, y + z],
        [z + t, zero, x + t, x + z],
        [y + t, x + t, zero, x + y],
        [y + z, x + z, x + y, zero],
    ])


def _f6_root(d):
    s3 = sqrt(from_int(3, d))
    a = s3 / 3
    return Vector([a, a, a, -(s3 / 6)])


def _bvp_F(n):
    def F(v):
        d = v.digits
        h2 = from_int(1, d) / (n * n)
        out = []
        m = len(v)
        for k in range(m):
            yk = v[k]
            t = yk + yk - h2 * (yk * yk * yk)
            if k > 0:
                t = t - v[k - 1]
            if k < m - 1:
                t = t - v[k + 1]
            else:
                t = t - 1
            out.append(t)
        return Vector(out)

    return F


def _bvp_J(n):
    def J(v):
        d = v.digits
        h2 = from_int(1, d) / (n * n)
        zero = from_int(0, d)
        neg_one = from_int(-1, d)
        m = len(v)
        rows = []
        for k in range(m):
            row = [zero] * m
            row[k] = 2 - 3 * (h2 * (v[k] * v[k]))
            if k > 0:
                row[k - 1] = neg_one
            if k < m - 1:
                row[k + 1] = neg_one
            rows.append(row)
        return Matrix(rows)

    return J


# Reference solution of the n=10 discretization (15 digits per component).
BVP_N10_SOLUTION = (
    "0.105541119905921", "0.211070483662496", "0.316505813937525",
    "0.421624081569127", "0.525992841283953", "0.628906344657317",
    "0.729332377591977", "0.825878904047790", "0.916792309006097",
)


def build_bvp(n: int, initial_points=None, overrides=()) -> Problem:
    """Second-order two-point boundary problem y'' + y^3 = 0, y(0)=0, y(1)=1,
    discretized with the standard three-point stencil on n subintervals into
    an (n-1)-dimensional system."""
    if n < 3:
        raise ValueError("n must be >= 3")
    m = n - 1
    if n == 10:
        seed = BVP_N10_SOLUTION
    else:
        seed = tuple(f"{k / n:.8f}" for k in range(1, n))
    if initial_points is None:
        ramp = tuple(f"{k / n:.8f}" for k in range(1, n))
        initial_points = [InitialPoint("x0_1", ramp, 0.0, 0.0)]
    return Problem(
        pid="F7" if n == 10 else f"BVP{n}",
        m=m,
        eval_F=_bvp_F(n),
        eval_J=_bvp_J(n),
        root_builder=None,
        seed=seed,
        initial_points=initial_points,
        overrides=overrides,
    )


def registry() -> list[Problem]:
    """The seven benchmark problems with their tabulated points and overrides."""
    nm, amn, hmn, fdn = MethodKind.NM, MethodKind.AMN, MethodKind.HMN, MethodKind.FDN
    f1 = Problem(
        "F1", 2, _f1_F, _f1_J, _f1_root, None,
        [
            InitialPoint("x0_1", ("1", "0"), 0.347, 0.841),
            InitialPoint("x0_2", ("0.6", "0.3"), 0.0931, 0.178),
            InitialPoint("x0_3", ("0.7", "0.35"), 0.00685, 0.0137),
        ],
        [
            ConfigOverride(nm, "x0_1", j=4),
            ConfigOverride(nm, "x0_2", j=4),
            ConfigOverride(fdn, "x0_3", j=8),
        ],
    )
    f2 = Problem(
        "F2", 2, _f2_F, _f2_J, _f2_root, None,
        [
            InitialPoint("x0_1", ("-1", "0.4"), 1.354, 5.16),
            InitialPoint("x0_2", ("0", "1"), 0.354, 1.0),
            InitialPoint("x0_3", ("0.3", "1.1"), 0.0542, 0.19),
        ],
        [
            ConfigOverride(nm, None, j=3),
            ConfigOverride(hmn, None, j=20, rho=4),
        ],
        mirror_builder=_f2_mirror,
    )
    f3 = Problem(
        "F3", 2, _f3_F, _f3_J, _f3_root, None,
        [
            InitialPoint("x0_1", ("-1", "2"), 0.916, 10.0),
            InitialPoint("x0_2", ("-0.1", "1.4"), 0.316, 1.702),
            InitialPoint("x0_3", ("-0.3", "1.1"), 0.0158, 0.062),
        ],
    )
    f4 = Problem(
        "F4", 2, _f4_F, _f4_J, None, ("0.3181315052", "1.3372357014"),
        [
            InitialPoint("x0_1", ("0", "2"), 0.6627, 1.091),
            InitialPoint("x0_2", ("0.2", "1.1"), 0.2372, 0.354),
            InitialPoint("x0_3", ("0.3", "1.3"), 0.03723, 0.0611),
        ],
        [
            ConfigOverride(nm, None, j=3),
            ConfigOverride(amn, None, j=4),
        ],
    )
    f5 = Problem(
        "F5", 3, _f5_F, _f5_J, None,
        ("2.14025812200", "-2.09029464225", "-0.22352512107"),
        [
            InitialPoint("x0_1", ("1.0", "-1.0", "0.1"), 1.14, 6.99),
            InitialPoint("x0_2", ("2.0", "-2.0", "0.0"), 0.224, 1.00),
            InitialPoint("x0_3", ("2.1", "-2.1", "-0.2"), 0.0403, 0.14),
        ],
    )
    f6 = Problem(
        "F6", 4, _f6_F, _f6_J, _f6_root, None,
        [
            InitialPoint("x0_1", ("0.5", "0.5", "0.5", "0.2"), 0.4887, 0.45),
            InitialPoint("x0_2", ("0.55", "0.55", "0.55", "-0.1"), 0.1887, 0.1925),
            InitialPoint("x0_3", ("0.6", "0.6", "0.6", "-0.3"), 0.02265, 0.08),
        ],
        [
            ConfigOverride(nm, None, j=5),
            ConfigOverride(amn, None, j=5),
            ConfigOverride(hmn, None, rho=4),
        ],
    )
    f7 = build_bvp(
        10,
        initial_points=[
            InitialPoint("x0_1", ("1", "0", "-1", "0", "1", "0", "-1", "0", "1"),
                         1.7290, 1.990),
            InitialPoint("x0_2", ("0", "0", "0", "0.5", "0.5", "0.5", "1", "1", "1"),
                         0.3165, 0.5012),
            InitialPoint("x0_3", ("0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7", "0.8", "0.9"),
                         0.02933, 0.007290),
        ],
        overrides=[ConfigOverride(nm, None, j=5)],
    )
    return [f1, f2, f3, f4, f5, f6, f7]


def by_id(pid: str) -> Problem:
    for p in registry():
        if p.id == pid:
            return p
    raise KeyError(f"unknown problem {pid!r}")
