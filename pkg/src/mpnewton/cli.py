"""Command-line harness: single runs, table reproduction, error-equation checks.

Subcommands
-----------
``run``        solve (problem x method x point) selections, print result rows
``reproduce``  rerun a full benchmark table and diff iteration counts
               against the tabulated values
``verify``     leading-term and order-slope verification of the steppers

Row columns follow the benchmark tables: iterations k, final residual,
previous-step error, then (estimate deviation, surrogate magnitude) pairs
for the three order estimators.  Magnitudes print with three significant
digits.  Traces serialize to JSON with full-precision iterates.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from importlib import resources

from .bigreal import BigReal, from_decimal, to_decimal
from .methods import MethodKind, Mode, Termination, Trace, IterationRecord, run
from .linalg import Vector
from .orders import order_report
from .precision import SolverConfig
from .problems import by_id, registry
from .validate import (
    DEFAULT_SCALES,
    convergence_slope,
    error_model,
    verify_leading_term,
)

_METHOD_ORDER = [MethodKind.NM, MethodKind.AMN, MethodKind.HMN, MethodKind.FDN]
_COLUMNS = [
    "method", "x0", "k", "F_k", "e_prev", "d_coc", "e_tilde", "d_ecoc",
    "delta", "d_acoc", "status",
]


def fmt3(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, BigReal):
        return to_decimal(x, 3)
    return f"{x:.2e}"


# ---------------------------------------------------------------------------
# trace JSON (exact round trip: values rendered with 5 spare digits)


def _num_to_json(x: BigReal | None):
    if x is None:
        return None
    return {"s": to_decimal(x, x.precision_digits + 5), "digits": x.precision_digits}


def _num_from_json(o):
    if o is None:
        return None
    return from_decimal(o["s"], o["digits"])


def trace_to_dict(trace: Trace) -> dict:
    return {
        "method": trace.method.value,
        "problem": trace.problem_id,
        "point": trace.point_label,
        "mode": trace.mode.value,
        "eta": trace.eta,
        "j": trace.j,
        "rho": trace.rho,
        "termination": trace.termination.value if trace.termination else None,
        "records": [
            {
                "n": r.n,
                "digits": r.digits,
                "x": [_num_to_json(c) for c in r.x],
                "residual_inf": _num_to_json(r.residual_inf),
                "e_hat_norm": _num_to_json(r.e_hat_norm),
                "delta": _num_to_json(r.delta),
                "e_tilde_norm": _num_to_json(r.e_tilde_norm),
                "e_known": _num_to_json(r.e_known),
                "lu_count": r.lu_count,
            }
            for r in trace.records
        ],
    }


def trace_from_dict(d: dict) -> Trace:
    trace = Trace(
        method=MethodKind(d["method"]),
        problem_id=d["problem"],
        point_label=d["point"],
        mode=Mode(d["mode"]),
        eta=d["eta"],
        j=d["j"],
        rho=d["rho"],
        termination=Termination(d["termination"]) if d["termination"] else None,
    )
    for r in d["records"]:
        trace.records.append(
            IterationRecord(
                n=r["n"],
                digits=r["digits"],
                x=Vector(_num_from_json(c) for c in r["x"]),
                residual_inf=_num_from_json(r["residual_inf"]),
                e_hat_norm=_num_from_json(r["e_hat_norm"]),
                delta=_num_from_json(r["delta"]),
                e_tilde_norm=_num_from_json(r["e_tilde_norm"]),
                e_known=_num_from_json(r["e_known"]),
                lu_count=r["lu_count"],
            )
        )
    return trace


# ---------------------------------------------------------------------------
# rows


def row_from_trace(problem, trace: Trace) -> dict:
    recs = trace.records
    alpha = None
    if recs[-1].e_known is not None:
        # measure against whichever registered root the run converged to
        roots = problem.roots(recs[-1].digits + 8)
        alpha = min(roots, key=lambda a: _dist_key(recs[-1].x, a))
    rep = order_report(trace, alpha, trace.rho)
    return {
        "method": trace.method.value,
        "x0": trace.point_label,
        "k": trace.k,
        "F_k": fmt3(recs[-1].residual_inf),
        "e_prev": fmt3(recs[-2].e_known if len(recs) >= 2 else None),
        "d_coc": fmt3(rep.delta_coc),
        "e_tilde": fmt3(recs[-1].e_tilde_norm),
        "d_ecoc": fmt3(rep.delta_ecoc),
        "delta": fmt3(recs[-1].delta),
        "d_acoc": fmt3(rep.delta_acoc),
        "status": trace.termination.value,
    }


def _dist_key(x: Vector, alpha: Vector):
    from .bigreal import log10_abs
    from .linalg import norm_inf

    e = norm_inf(x - alpha)
    return float("-inf") if e.is_zero else float(log10_abs(e))


def print_rows(rows, fmt: str, file=None):
    file = file if file is not None else sys.stdout
    if fmt == "json":
        json.dump(rows, file, indent=2)
        file.write("\n")
        return
    if fmt == "csv":
        w = csv.DictWriter(file, fieldnames=_COLUMNS)
        w.writeheader()
        w.writerows(rows)
        return
    widths = {c: max(len(c), max((len(str(r[c])) for r in rows), default=0)) for c in _COLUMNS}
    header = " | ".join(c.ljust(widths[c]) for c in _COLUMNS)
    sep = "-|-".join("-" * widths[c] for c in _COLUMNS)
    print(header, file=file)
    print(sep, file=file)
    for r in rows:
        print(" | ".join(str(r[c]).ljust(widths[c]) for c in _COLUMNS), file=file)


# ---------------------------------------------------------------------------
# cell execution (module-level so it can cross process boundaries)


def run_cell(problem_id: str, method_name: str, point_label: str,
             mode_name: str = "known-root", eta: int = 2800,
             j: int | None = None, rho: int | None = None) -> Trace:
    problem = by_id(problem_id)
    method = MethodKind(method_name)
    point = problem.point(point_label)
    cfg = problem.config_for(method, point.label, eta=eta, mode=Mode(mode_name),
                             j=j, rho=rho)
    return run(problem, point, method, cfg)


def _cell_worker(args):
    trace = run_cell(*args)
    problem = by_id(args[0])
    return row_from_trace(problem, trace), trace_to_dict(trace)


def _run_cells(cells, jobs: int):
    if jobs <= 1:
        return [_cell_worker(c) for c in cells]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_cell_worker, cells))


# ---------------------------------------------------------------------------
# golden table data


def load_expected():
    """{(table, method, point): (k, mantissa, exponent)} from the data file."""
    out = {}
    with resources.files("mpnewton.data").joinpath("expected_k.csv").open() as fh:
        for row in csv.DictReader(fh):
            key = (int(row["table"]), row["method"], row["point"])
            out[key] = (int(row["k"]), float(row["f_mantissa"]), int(row["f_exponent"]))
    return out


# ---------------------------------------------------------------------------
# subcommands


def cmd_run(args) -> int:
    methods = [m.strip().upper() for m in args.method.split(",")]
    points = [p.strip() for p in args.x0.split(",")]
    cells = []
    for m in methods:
        for p in points:
            label = p if p.startswith("x0_") else f"x0_{p}"
            cells.append((args.problem, m, label, args.mode, args.eta, args.j, args.rho))
    results = _run_cells(cells, args.jobs)
    rows = [r for r, _ in results]
    print_rows(rows, args.format)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump([t for _, t in results], fh)
        print(f"wrote {len(results)} trace(s) to {args.out}", file=sys.stderr)
    ok = all(r["status"] == Termination.TOLERANCE_MET.value for r in rows)
    return 0 if ok else 1


def cmd_reproduce(args) -> int:
    tables = range(1, 8) if args.table == "all" else [int(args.table)]
    expected = load_expected()
    failures = 0
    exact = 0
    total = 0
    all_rows = []
    for t in tables:
        pid = f"F{t}"
        cells = [
            (pid, m.value, f"x0_{i}", "known-root", args.eta, None, None)
            for m in _METHOD_ORDER
            for i in (1, 2, 3)
        ]
        results = _run_cells(cells, args.jobs)
        rows = []
        for (row, _), cell in zip(results, cells):
            k_paper = expected[(t, cell[1], cell[2])][0]
            dk = row["k"] - k_paper
            row["k_ref"] = k_paper
            row["dk"] = dk
            total += 1
            exact += dk == 0
            failures += abs(dk) > 1
            rows.append(row)
        print(f"== table {t} ({pid}) ==")
        cols = _COLUMNS + ["k_ref", "dk"]
        widths = {c: max(len(c), max(len(str(r.get(c, ''))) for r in rows)) for c in cols}
        print(" | ".join(c.ljust(widths[c]) for c in cols))
        for r in rows:
            print(" | ".join(str(r.get(c, "")).ljust(widths[c]) for c in cols))
        all_rows.extend(rows)
    print(f"\niteration counts: {exact}/{total} exact, "
          f"{total - failures}/{total} within +-1")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(all_rows, fh, indent=2)
    return 0 if failures == 0 else 1


def cmd_verify(args) -> int:
    scales = tuple(s.strip() for s in args.scales.split(","))
    ok = True
    reports = []
    for pid in ("F1", "F2", "F3"):
        problem = by_id(pid)
        for method in _METHOD_ORDER:
            rep = verify_leading_term(problem, method, scales, digits=args.digits)
            worst_ratio = max((rt for _, _, rt in rep.ratios), default=0.0)
            slope_ok = abs(rep.slope - rep.expected_order) <= 0.05
            ratio_ok = rep.vanished or worst_ratio <= 100.0
            ok &= slope_ok and ratio_ok
            reports.append({
                "problem": pid,
                "method": method.value,
                "expected_order": rep.expected_order,
                "slope": round(rep.slope, 4),
                "max_ratio_over_t": worst_ratio,
                "vanished_leading_term": rep.vanished,
                "pass": slope_ok and ratio_ok,
            })
    # quadratic four-dimensional system: same anomaly, slope check only
    f6 = by_id("F6")
    for method in (MethodKind.AMN, MethodKind.HMN, MethodKind.FDN):
        slope = convergence_slope(f6, method, scales, digits=args.digits)
        expect = 4 if method is MethodKind.HMN else 3
        good = abs(slope - expect) <= 0.05
        ok &= good
        reports.append({
            "problem": "F6",
            "method": method.value,
            "expected_order": expect,
            "slope": round(slope, 4),
            "pass": good,
        })
    if args.format == "json":
        json.dump(reports, sys.stdout, indent=2)
        print()
    else:
        for r in reports:
            mark = "ok " if r["pass"] else "FAIL"
            print(f"[{mark}] {r['problem']} {r['method']:3s} slope={r['slope']:.4f} "
                  f"(expect {r['expected_order']})")
    return 0 if ok else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="mpnewton",
                                 description="multi-precision Newton-type benchmark solvers")
    sub = ap.add_subparsers(dest="cmd", required=True)

    p_run = sub.add_parser("run", help="solve selected (method, point) cells")
    p_run.add_argument("--problem", required=True, choices=[f"F{i}" for i in range(1, 8)])
    p_run.add_argument("--method", default="NM,AMN,HMN,FDN")
    p_run.add_argument("--x0", default="1,2,3")
    p_run.add_argument("--mode", default="known-root",
                       choices=[m.value for m in Mode])
    p_run.add_argument("--eta", type=int, default=2800)
    p_run.add_argument("--j", type=int, default=None,
                       help="slack digits (default: table override or 2)")
    p_run.add_argument("--rho", type=int, default=None,
                       help="effective order (default: table override or method order)")
    p_run.add_argument("--format", default="markdown", choices=["markdown", "csv", "json"])
    p_run.add_argument("--out", default=None, help="write JSON traces here")
    p_run.add_argument("--jobs", type=int, default=1)
    p_run.set_defaults(fn=cmd_run)

    p_rep = sub.add_parser("reproduce", help="rerun benchmark tables, diff k")
    p_rep.add_argument("table", choices=[str(i) for i in range(1, 8)] + ["all"])
    p_rep.add_argument("--eta", type=int, default=2800)
    p_rep.add_argument("--jobs", type=int, default=1)
    p_rep.add_argument("--out", default=None)
    p_rep.set_defaults(fn=cmd_reproduce)

    p_ver = sub.add_parser("verify", help="error-equation and order checks")
    p_ver.add_argument("--scales", default=",".join(DEFAULT_SCALES))
    p_ver.add_argument("--digits", type=int, default=192)
    p_ver.add_argument("--format", default="text", choices=["text", "json"])
    p_ver.set_defaults(fn=cmd_verify)

    args = ap.parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
