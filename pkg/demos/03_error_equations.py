"""Checking each method's local error equation numerically.

One step from root + t*u is compared against the predicted leading term
(built from the normalized derivative tensors A2, A3 at the root):

    NM  -> A2 e^2        AMN -> (A3/2 + A2^2) e^3
    HMN -> (A3/2) e^3    FDN -> 2 A2^2 e^3

The relative deviation of the true step from the prediction shrinks like t.
On purely quadratic systems A3 vanishes, so HMN jumps from third to fourth
order; the fitted slope of log ||E|| vs log t shows it directly.
"""

from mpnewton import MethodKind, by_id
from mpnewton.validate import convergence_slope, verify_leading_term

for pid in ("F1", "F2", "F3"):
    problem = by_id(pid)
    print(f"== {pid} ==")
    for kind in MethodKind:
        rep = verify_leading_term(problem, kind)
        if rep.vanished:
            print(f"  {kind.value:3s}: leading term vanishes identically -> "
                  f"order {rep.expected_order}, fitted slope {rep.slope:.3f}")
            continue
        devs = ", ".join(f"t={t:г}: {d:.1e}" if False else f"{d:.1e}" for t, d, _ in rep.ratios)
        print(f"  {kind.value:3s}: slope {rep.slope:.3f} (order {rep.expected_order}), "
              f"|E/LT - 1| at t=1e-3..1e-6: {devs}")

print("\nquadratic 4-d system (no closed-form tensors, slope test only):")
f6 = by_id("F6")
for kind in (MethodKind.AMN, MethodKind.HMN, MethodKind.FDN):
    print(f"  F6 {kind.value:3s}: slope {convergence_slope(f6, kind):.3f}")
