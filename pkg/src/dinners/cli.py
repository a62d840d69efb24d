"""Command-line interface: bounds, build, validate, solve, reference-tables.

Exit codes: 0 success/feasible, 1 semantic failure (infeasible schedule or a
reference-value mismatch), 2 bad parameters or unparseable input, 3 strategy
preconditions not met, 4 search budget exhausted while building, 5 solver
budget exhausted without a proof.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import bounds
from .constructions import (
    ConstructionError,
    build_cas_par,
    build_howell_schedule,
    build_prime,
    build_sigma1,
    build_trivial,
    dispatch_optimal,
)
from .howell import SearchBudgetExceeded
from .model import Instance, ScheduleDecodeError, decode_schedule, encode_schedule, validate_schedule
from .solver import (
    BUDGET_EXHAUSTED,
    INFEASIBLE_AT_BOUND,
    OPTIMAL,
    SolveLimits,
    solve_exact,
)
from .transforms import best_feasible, build_eucli, build_ub1, build_ub2

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_BUILD_BUDGET = 4
EXIT_SOLVE_BUDGET = 5

# Embedded reference values: five instances exercising each lower bound's
# strict-dominance row (starred index) and two upper-bound comparisons.
LB_REFERENCE = [
    ((5, 8, 8, 1, 2), (8, 4, 7, 3, 0), 0),
    ((6, 8, 8, 2, 1), (4, 8, 6, 4, 6), 1),
    ((1, 8, 8, 1, 1), (8, 8, 64, 23, 0), 2),
    ((1, 11, 8, 6, 4), (2, 2, 4, 7, 4), 3),
    ((1, 8, 11, 2, 1), (4, 11, 44, 32, 60), 4),
]
UB_REFERENCE = [
    ((3, 6, 3, 2, 1), 3, 11),
    ((3, 6, 9, 2, 1), 18, 17),
]


def _instance(args) -> Instance:
    values = dict(t=args.t, s=args.s, c=args.c, sigma=args.sigma, gamma=args.gamma)
    try:
        return Instance(**values)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        raise SystemExit(EXIT_PARSE)


def cmd_bounds(args) -> int:
    inst = _instance(args)
    rep = bounds.compute_bounds(inst)
    if args.json:
        obj = {
            "lb1": rep.lb1,
            "lb2": rep.lb2,
            "lb3": rep.lb3,
            "lb4": rep.lb4,
            "lb5": rep.lb5,
            "lb_best": rep.lb_best,
            "ub1": rep.ub1,
            "ub1_improved": rep.ub1_improved,
            "ub2": rep.ub2,
            "ub_eucli": rep.ub_eucli,
            "ub_best": rep.ub_best,
        }
        print(json.dumps(obj))
        return EXIT_OK
    na = "n/a"
    print(f"instance t={inst.t} s={inst.s} c={inst.c} sigma={inst.sigma} gamma={inst.gamma}")
    print(f"lb1={rep.lb1} lb2={rep.lb2} lb3={rep.lb3} "
          f"lb4={rep.lb4 if rep.lb4 is not None else na} lb5={rep.lb5}")
    if inst.sigma >= 2:
        js = bounds.j_star(max(inst.s, 2), inst.customer_groups)
        argj = max(range(2, inst.sigma + 1), key=lambda j: bounds.lb5_term(inst, j))
        print(f"lb5 attained at j={argj} (maximizer hint j*={js})")
    print(f"ub1={rep.ub1} ub1_improved={rep.ub1_improved if rep.ub1_improved is not None else na} "
          f"ub2={rep.ub2 if rep.ub2 is not None else na} ub_eucli={rep.ub_eucli}")
    print(f"lb_best={rep.lb_best} ub_best={rep.ub_best}")
    return EXIT_OK


_STRATEGIES = {
    "trivial": lambda inst: build_trivial(inst),
    "sigma1": lambda inst: build_sigma1(inst),
    "howell": lambda inst: build_howell_schedule(inst),
    "caspar": lambda inst: build_cas_par(inst),
    "prime": lambda inst: build_prime(inst),
    "ub1": lambda inst: build_ub1(inst),
    "ub2": lambda inst: build_ub2(inst),
    "eucli": lambda inst: build_eucli(inst),
}


def cmd_build(args) -> int:
    inst = _instance(args)
    proven = False
    try:
        if args.strategy == "auto":
            hit = dispatch_optimal(inst)
            if hit is not None:
                sched, proven = hit
            else:
                sched, _ = best_feasible(inst)
        else:
            sched = _STRATEGIES[args.strategy](inst)
            hit = dispatch_optimal(inst)
            proven = hit is not None and hit[0].dinner_count() == sched.dinner_count()
    except ConstructionError as e:
        print(f"strategy not applicable: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    except SearchBudgetExceeded as e:
        print(f"search budget exhausted: {e}", file=sys.stderr)
        return EXIT_BUILD_BUDGET
    report = validate_schedule(sched)
    assert report.feasible, "constructed schedule failed validation"
    text = encode_schedule(sched)
    if args.out and args.out != "-":
        with open(args.out, "w") as fh:
            fh.write(text)
    elif args.out == "-":
        sys.stdout.write(text)
    print(f"dinners={sched.dinner_count()} optimal={'yes' if proven else 'unknown'}"
          + (f" written={args.out}" if args.out and args.out != "-" else ""))
    return EXIT_OK


def cmd_validate(args) -> int:
    try:
        with open(args.file) as fh:
            text = fh.read()
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_PARSE
    try:
        sched = decode_schedule(text)
    except ScheduleDecodeError as e:
        print(f"parse error: {e}", file=sys.stderr)
        return EXIT_PARSE
    report = validate_schedule(sched)
    if report.feasible:
        print(f"feasible: {sched.dinner_count()} dinners")
        return EXIT_OK
    print(f"infeasible: {len(report.violations)} violation(s)")
    for kind, detail in report.violations:
        print(f"  {kind}: {detail}")
    return EXIT_SEMANTIC


def cmd_solve(args) -> int:
    inst = _instance(args)
    limits = SolveLimits(
        max_dinners=args.max_dinners,
        node_budget=args.budget,
        time_budget=args.timeout,
    )
    result = solve_exact(inst, limits)
    print(f"status={result.status} value={result.value} nodes={result.nodes} "
          f"proven_lower_bound={result.lower_bound}")
    if result.witness is not None:
        if args.out:
            text = encode_schedule(result.witness)
            if args.out == "-":
                sys.stdout.write(text)
            else:
                with open(args.out, "w") as fh:
                    fh.write(text)
                print(f"witness written to {args.out}")
        else:
            for d, dinner in enumerate(result.witness.dinners, start=1):
                parts = [
                    f"[{','.join(map(str, sorted(tab.suppliers)))}|{','.join(map(str, sorted(tab.customers)))}]"
                    for tab in dinner.tables
                ]
                print(f"  dinner {d}: " + " ".join(parts))
    if result.status == BUDGET_EXHAUSTED:
        return EXIT_SOLVE_BUDGET
    if result.status not in (OPTIMAL, INFEASIBLE_AT_BOUND):
        return EXIT_SOLVE_BUDGET
    return EXIT_OK


def cmd_reference_tables(args) -> int:
    failures = 0
    for params, expected, star in LB_REFERENCE:
        inst = Instance(*params)
        rep = bounds.compute_bounds(inst)
        got = (rep.lb1, rep.lb2, rep.lb3, rep.lb4 if rep.lb4 is not None else 0, rep.lb5)
        names = ("lb1", "lb2", "lb3", "lb4", "lb5")
        for i, name in enumerate(names):
            ok = got[i] == expected[i]
            failures += not ok
            print(f"{'PASS' if ok else 'FAIL'} {params} {name}={got[i]} expected {expected[i]}")
        dominant = all(got[star] > got[i] for i in range(5) if i != star)
        failures += not dominant
        print(f"{'PASS' if dominant else 'FAIL'} {params} {names[star]} strictly dominates")
    for params, e1, e2 in UB_REFERENCE:
        inst = Instance(*params)
        v1, v2 = bounds.ub1(inst), bounds.ub2(inst)
        ok1, ok2 = v1 == e1, v2 == e2
        failures += (not ok1) + (not ok2)
        print(f"{'PASS' if ok1 else 'FAIL'} {params} ub1={v1} expected {e1}")
        print(f"{'PASS' if ok2 else 'FAIL'} {params} ub2={v2} expected {e2}")
    print(f"{'all reference values reproduced' if not failures else f'{failures} mismatches'}")
    return EXIT_OK if not failures else EXIT_SEMANTIC


def _add_instance_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("t", type=int, help="number of tables")
    p.add_argument("s", type=int, help="number of suppliers")
    p.add_argument("c", type=int, help="number of customers")
    p.add_argument("sigma", type=int, help="max suppliers per table")
    p.add_argument("gamma", type=int, help="max customers per table")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dinners",
        description="Bounds, constructions and exact solving for the business dinner problem",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("bounds", help="print all lower/upper bounds")
    _add_instance_args(p)
    p.add_argument("--json", action="store_true", help="emit one JSON object")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("build", help="construct a feasible schedule")
    _add_instance_args(p)
    p.add_argument("--strategy", choices=["auto"] + sorted(_STRATEGIES), default="auto")
    p.add_argument("--out", help="write the schedule JSON to this file ('-' for stdout)")
    p.set_defaults(func=cmd_build)

    p = sub.add_parser("validate", help="validate a schedule file")
    p.add_argument("file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("solve", help="exact minimum dinner count")
    _add_instance_args(p)
    p.add_argument("--budget", type=int, default=None, help="search node budget")
    p.add_argument("--timeout", type=float, default=None, help="time budget in seconds")
    p.add_argument("--max-dinners", type=int, default=None, help="largest dinner count to try")
    p.add_argument("--out", help="write the witness schedule to this file ('-' for stdout)")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser(
        "reference-tables",
        help="recompute the built-in reference bound values and report PASS/FAIL",
    )
    p.set_defaults(func=cmd_reference_tables)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
