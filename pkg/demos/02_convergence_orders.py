"""The three order-of-convergence estimators, on synthetic and real data.

COC needs the root; ACOC and ECOC are root-free (consecutive differences
and Aitken extrapolation respectively).  On an exact sequence
x_n = root + c**(p**n) * u all three recover p; on a real Newton run they
agree with the method's theoretical order to many digits.
"""

from mpnewton import MethodKind, Vector, by_id, from_decimal, from_int, run
from mpnewton.orders import acoc, coc, ecoc, order_report

# --- synthetic: fifth-order decay, recovered exactly -----------------------
digits = 900
alpha = Vector([from_decimal("0.75", digits), from_decimal("-1.25", digits)])
u = Vector([from_decimal("1", digits), from_decimal("-0.625", digits)])

xs = []
c = from_decimal("0.5", digits)
for n in range(4):
    s = from_int(1, digits)
    for _ in range(5**n):
        s = s * c
    xs.append(alpha + u.scale(s))

from mpnewton.methods import IterationRecord, Trace
from mpnewton.precision import Mode

synthetic = Trace(method=MethodKind.NM, problem_id="synthetic", point_label="x0_1",
                  mode=Mode.KNOWN_ROOT, eta=100, j=2, rho=5)
for n, x in enumerate(xs):
    synthetic.records.append(
        IterationRecord(n=n, digits=digits, x=x, residual_inf=from_int(0, 32))
    )
print(f"synthetic e_n = 0.5**(5**n):  COC = {coc(synthetic, alpha):.14f}")

# --- real run: third-order harmonic-mean variant on F5 ---------------------
problem = by_id("F5")
cfg = problem.config_for(MethodKind.HMN, "x0_3")
trace = run(problem, problem.point("x0_3"), MethodKind.HMN, cfg)
root = problem.root(trace.records[-1].digits + 8)
rep = order_report(trace, root, cfg.rho)
print(f"\n{problem.id} / HMN, k={trace.k} iterations (theoretical order {cfg.rho}):")
print(f"  COC  = {rep.coc:.12f}   (|dev| = {rep.delta_coc:.2e})")
print(f"  ACOC = {rep.acoc:.12f}   (|dev| = {rep.delta_acoc:.2e})")
print(f"  ECOC = {rep.ecoc:.12f}   (|dev| = {rep.delta_ecoc:.2e})")
