"""Solve one benchmark system while watching the mantissa grow.

The driver targets eta = 2800 correct decimals.  Each step the working
precision is bumped to rho * (-log10 ||e_n|| + j) digits, so the mantissa
roughly triples per iteration for the third-order method used here.
"""

from mpnewton import MethodKind, by_id, run, to_decimal

problem = by_id("F1")
point = problem.point("x0_2")
cfg = problem.config_for(MethodKind.AMN, point.label)

trace = run(problem, point, MethodKind.AMN, cfg)

print(f"{problem.id} / AMN from {point.coords}, eta={cfg.eta}, j={cfg.j}")
print(f"{'n':>3} {'digits':>7} {'||F(x_n)||':>14} {'||x_n - root||':>15}")
for rec in trace.records:
    err = "-" if rec.e_known is None else to_decimal(rec.e_known, 3)
    print(f"{rec.n:>3} {rec.digits:>7} {to_decimal(rec.residual_inf, 3):>14} {err:>15}")
print(f"terminated: {trace.termination.value} after k={trace.k} iterations")
print(f"final residual {to_decimal(trace.final_residual, 3)}")
