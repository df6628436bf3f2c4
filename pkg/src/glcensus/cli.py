"""Command-line interface: census, series, limit, oracle, clique, verify.

All machine output is JSON (forced globally with --json); census defaults to
a human table.  The --threads flag is accepted for interface stability but
execution is sequential, which trivially meets the determinism requirement.
--budget N caps group enumeration at N elements and scan work at 5000*N
steps (the defaults are 200000 and 10^9).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from glcensus import asympt, census, clique, exactalg, oracle, qseries, verify


def _emit(data, as_json: bool = True) -> None:
    if as_json:
        print(json.dumps(data, indent=2))
    else:
        print(data)


def _budget_from_args(args) -> oracle.Budget | None:
    if args.budget is None:
        return None
    return oracle.Budget(elements=args.budget, steps=args.budget * 5000)


# --- census ------------------------------------------------------------------


def cmd_census(args) -> int:
    n = args.n
    row = census.census_row(n)
    payload: dict = {
        "n": n,
        "class_count": row.class_count,
        "b_n": exactalg.rf_to_json(row.b_n),
        "a_polynomial": exactalg.poly_to_json(row.a_poly),
    }
    if args.q is not None:
        q = args.q
        census._check_prime_power(q)
        value = row.a_poly.eval_int(q)
        regime = "exact count" if q > 2 else "upper bound"
        payload["q"] = q
        payload["subgroup_count"] = {"value": str(value), "regime": regime}
        omega_entry: dict = {}
        try:
            omega_entry = {"value": str(census.omega_closed(n, q)),
                           "regime": "exact (q > n)" if q > n else "exact (q = n > 2)"}
        except census.UnsupportedRegimeError as exc:
            omega_entry = {"value": None, "regime": f"unsupported: {exc}"}
        payload["omega"] = omega_entry
    if args.json:
        _emit(payload)
    else:
        print(f"n = {n}")
        print(f"  abelian-cover classes : {row.class_count}")
        print(f"  b_n                   : {row.b_n}")
        print(f"  subgroup count        : {row.a_poly}")
        if args.q is not None:
            sc = payload["subgroup_count"]
            print(f"  at q = {args.q}           : {sc['value']} ({sc['regime']})")
            om = payload["omega"]
            if om["value"] is not None:
                print(f"  omega                 : {om['value']} ({om['regime']})")
            else:
                print(f"  omega                 : {om['regime']}")
    return 0


# --- series ------------------------------------------------------------------


def cmd_series(args) -> int:
    which = args.which.lower()
    form = args.form
    order = args.order
    u_order = args.u_order
    if which == "fbar":
        if form != "exp":
            raise SystemExit("Fbar is built from the exp forms; use --form exp")
        series = qseries.build_fbar(order)
    elif which == "f1":
        series = qseries.build_f1(order, form, u_order)
    elif which == "f2":
        series = qseries.build_f2(order, form, u_order)
    else:
        raise SystemExit(f"unknown series {args.which!r}")
    if isinstance(series.ring, qseries.USeriesRing):
        coeffs = [{"u_order": c.u_order, "coeffs": [str(x) for x in c.coeffs]}
                  for c in series.coeffs]
    else:
        coeffs = [exactalg.rf_to_json(c) for c in series.coeffs]
    _emit({"which": args.which, "form": form, "order": order, "coefficients": coeffs})
    return 0


# --- limit -------------------------------------------------------------------


def cmd_limit_lq(args) -> int:
    q = Fraction(args.q)
    iv = asympt.l_of_q(q, args.terms)
    _emit({
        "q": str(q),
        "terms": args.terms,
        "lo": f"{iv.lo.numerator}/{iv.lo.denominator}",
        "hi": f"{iv.hi.numerator}/{iv.hi.denominator}",
        "decimal_lo": asympt.fraction_to_decimal(iv.lo),
        "decimal_hi": asympt.fraction_to_decimal(iv.hi, round_up=True),
    })
    return 0


def cmd_limit_check(args) -> int:
    q = Fraction(args.q)
    report = asympt.check_estimates(q, args.terms)
    _emit({
        "q": str(q),
        "terms": args.terms,
        "interval": [asympt.fraction_to_decimal(report.interval.lo),
                     asympt.fraction_to_decimal(report.interval.hi, round_up=True)],
        "verdicts": report.verdicts,
        "all_hold": report.all_hold,
    })
    return 0 if report.all_hold else 1


# --- oracle ------------------------------------------------------------------


def cmd_oracle(args) -> int:
    n, q = args.n, args.q
    budget = _budget_from_args(args)
    task = args.task
    payload: dict = {"task": task, "n": n, "q": q}
    ok = True
    if task == "cyclic-proportion":
        c = oracle.cyclic_proportion(n, q, budget)
        bounds = oracle.wall_bound_terms(n, q)
        ok = c >= bounds["estimate_minus_error"] and c > bounds["expanded_lower"]
        payload.update({
            "proportion": f"{c.numerator}/{c.denominator}",
            "estimate_minus_error": str(bounds["estimate_minus_error"]),
            "expanded_lower": str(bounds["expanded_lower"]),
            "bound_holds": ok,
        })
    elif task == "centralizer-count":
        count, reps = oracle.count_cyclic_centralizers(n, q, budget)
        bound = census.a_polynomial(n).eval_int(q)
        ok = (count == bound) if q > n else (count < bound)
        payload.update({
            "distinct_centralizers": count,
            "census_value": bound,
            "regime": "equality expected (q > n)" if q > n else "strict inequality expected (q <= n)",
            "as_expected": ok,
        })
    elif task == "regular-unipotent":
        F = oracle.get_field(q)
        cset = oracle.centralizer(oracle.regular_unipotent(F, n), budget)
        norm = oracle.normalizer_of_set(cset, budget)
        expect_c = q**n - q ** (n - 1)
        expect_n = (q - 1) ** 2 * q ** (2 * n - 3)
        ok = cset.order == expect_c and norm == expect_n
        payload.update({
            "centralizer_order": cset.order,
            "centralizer_expected": expect_c,
            "normalizer_order": norm,
            "normalizer_expected": expect_n,
            "as_expected": ok,
        })
    elif task == "remark-matrix":
        if (n, q) != (4, 2):
            raise SystemExit("the witness matrix lives in GL_4(2); use --n 4 --q 2")
        witness = oracle.noncyclic_centralizer_witness()
        cset = oracle.centralizer(witness, budget)
        group = oracle.gl_group(4, 2, budget)
        cyclic_members = sum(1 for i in cset.members if oracle.is_cyclic(group.mats[i]))
        ok = cset.order == 16 and cyclic_members == 0
        payload.update({
            "centralizer_order": cset.order,
            "expected_order": 16,
            "cyclic_members": cyclic_members,
            "as_expected": ok,
        })
    elif task == "jm-check":
        F = oracle.get_field(q)
        failures = []
        cases = 0
        for d in (1, 2, 3):
            for f in oracle.monic_irreducibles(F, d):
                for m in (1, 2, 3):
                    cases += 1
                    if oracle.min_poly(oracle.jm_block(F, f, m)) != oracle.fqpoly_pow(F, f, m):
                        failures.append({"f": list(f), "m": m})
        ok = not failures
        payload.update({"cases": cases, "failures": failures, "as_expected": ok})
    else:
        raise SystemExit(f"unknown oracle task {task!r}")
    payload["status"] = "pass" if ok else "fail"
    _emit(payload)
    return 0 if ok else 1


# --- clique ------------------------------------------------------------------


def cmd_clique(args) -> int:
    budget = _budget_from_args(args)
    solver_budget = clique.SolverBudget(seconds=args.timeout)
    result, seed_size = clique.compute_omega(args.n, args.q, budget, solver_budget)
    if args.emit_witness:
        group = oracle.gl_group(args.n, args.q, budget)
        with open(args.emit_witness, "w") as handle:
            for idx in result.witness:
                flat = [str(x) for row in group.mats[idx].rows for x in row]
                handle.write(" ".join(flat) + "\n")
    _emit({
        "n": args.n,
        "q": args.q,
        "omega": result.size,
        "optimal": result.optimal,
        "seed_size": seed_size,
        "upper_bound": result.upper_bound_used,
        "steps": result.steps,
        "seconds": round(result.seconds, 3),
    })
    return 0 if result.optimal else 1


# --- verify ------------------------------------------------------------------


def cmd_verify(args) -> int:
    report = verify.verify_all(
        level=args.level,
        seed=args.seed,
        golden_dir=args.golden_dir,
        budget=_budget_from_args(args),
        command="verify --level " + args.level,
    )
    if args.json:
        _emit(report.to_json())
    else:
        for c in report.checks:
            print(f"[{c.status:>12}] {c.check_id:<28} {c.seconds:7.2f}s  {c.detail}")
        fails = sum(1 for c in report.checks if c.status == verify.FAIL)
        print(f"-- {len(report.checks)} checks, {fails} failures --")
    return report.exit_code


# --- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    # global flags may appear before or after the subcommand, so they live in
    # a parent parser with SUPPRESS defaults (the last occurrence wins)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="force JSON output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomised spot checks (default 0)")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="accepted for compatibility; execution is sequential")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS,
                        help="max group elements to enumerate (scan steps scale with it)")

    parser = argparse.ArgumentParser(
        prog="glcensus",
        description="Exact census of the abelian covers of GL_n(q), with brute-force verification.",
        parents=[common],
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("census", parents=[common],
                       help="class counts, b_n and the census polynomial")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, default=None)
    p.add_argument("--table", action="store_true", help="human-readable table (the default)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("series", help="expand the generating functions")
    series_sub = p.add_subparsers(dest="series_command", required=True)
    pe = series_sub.add_parser("expand", parents=[common])
    pe.add_argument("--which", choices=["F1", "F2", "Fbar", "f1", "f2", "fbar"], required=True)
    pe.add_argument("--form", choices=["exp", "sum", "product"], default="exp")
    pe.add_argument("--order", type=int, required=True)
    pe.add_argument("--u-order", dest="u_order", type=int, default=qseries.DEFAULT_U_ORDER)
    pe.set_defaults(func=cmd_series)

    p = sub.add_parser("limit", help="certified intervals for the growth constant")
    limit_sub = p.add_subparsers(dest="limit_command", required=True)
    pl = limit_sub.add_parser("lq", parents=[common])
    pl.add_argument("--q", required=True)
    pl.add_argument("--terms", type=int, default=asympt.DEFAULT_TERMS)
    pl.set_defaults(func=cmd_limit_lq)
    pc = limit_sub.add_parser("check", parents=[common])
    pc.add_argument("--q", required=True)
    pc.add_argument("--terms", type=int, default=asympt.DEFAULT_TERMS)
    pc.set_defaults(func=cmd_limit_check)

    p = sub.add_parser("oracle", parents=[common],
                       help="brute-force checks over a small GL_n(q)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--task", required=True, choices=[
        "cyclic-proportion", "centralizer-count", "regular-unipotent",
        "remark-matrix", "jm-check",
    ])
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("clique", help="exact clique number of the non-commuting graph")
    clique_sub = p.add_subparsers(dest="clique_command", required=True)
    po = clique_sub.add_parser("omega", parents=[common])
    po.add_argument("--n", type=int, required=True)
    po.add_argument("--q", type=int, required=True)
    po.add_argument("--timeout", type=float, default=60.0)
    po.add_argument("--emit-witness", dest="emit_witness", default=None)
    po.set_defaults(func=cmd_clique)

    p = sub.add_parser("verify", parents=[common], help="run the verification suite")
    p.add_argument("--level", choices=["fast", "full"], default="fast")
    p.add_argument("--golden-dir", dest="golden_dir", default=None,
                   help="override the packaged golden files (for testing)")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.json = getattr(args, "json", False)
    args.seed = getattr(args, "seed", 0)
    args.threads = getattr(args, "threads", 1)
    args.budget = getattr(args, "budget", None)
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
