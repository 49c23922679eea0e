"""Command-line surface for counting, tables and the verification suite.

Usage examples
--------------
  forestcount count --codim 0 --degree 3
  forestcount count --codim 4 --degree 4 --format json
  forestcount table --cmax 1 --dmax 3 --format csv
  forestcount simple --cmax 4 --dmax 12
  forestcount asymptotics --codim 1 --degree 200
  forestcount oracle --degree 3 --dump diagrams.json
  forestcount verify
  forestcount verify --only growth-constant
  forestcount verify --only oracle --oracle-degree 3
  forestcount verify --artifact route_agreement.json

Every command that compares independent computation routes exits 0 on
agreement and 2 on a verified disagreement (disagreement is a reported
result, distinct from a usage error, which exits 1).  Boxes larger than
the resource ceiling (FORESTCOUNT_MAX_CELLS environment variable,
default 200000 cells) exit 3.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .dp import dp_count
from .formulas import (asymptotic_estimate, asymptotic_log, asymptotic_ratio,
                       codim1_count, flat_count, simple_count)
from .oracle import MAX_ORACLE_DEGREE, dump_diagrams, enumerate_flat
from .solver import (CONVENTIONS, cached_solution, count_configurations,
                     solve_simple)
from .tables import CountTable
from .verify import CHECKS, route_agreement_document, run_suite, suite_passed

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DISAGREEMENT = 2
EXIT_RESOURCE = 3

DEFAULT_MAX_CELLS = 200_000


class UsageError(Exception):
    pass


class ResourceGuard(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # keep usage errors on exit code 1
        raise UsageError(message)


def _max_cells() -> int:
    raw = os.environ.get("FORESTCOUNT_MAX_CELLS", "")
    try:
        return int(raw) if raw else DEFAULT_MAX_CELLS
    except ValueError:
        raise UsageError(f"FORESTCOUNT_MAX_CELLS={raw!r} is not an integer")


def _guard_box(cmax: int, dmax: int) -> None:
    cells = (cmax + 1) * (dmax + 1)
    ceiling = _max_cells()
    if cells > ceiling:
        raise ResourceGuard(
            f"box ({cmax},{dmax}) needs {cells} cells, ceiling is {ceiling} "
            f"(raise FORESTCOUNT_MAX_CELLS to override)")


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _conventions(choice: str) -> list[str]:
    return list(CONVENTIONS) if choice == "both" else [choice]


def _emit(text: str, path: str | None) -> None:
    if path and path != "-":
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


# ----------------------------------------------------------------------
# commands
# ----------------------------------------------------------------------

def cmd_count(args) -> int:
    c, d = args.codim, args.degree
    _guard_box(c, d)
    values: dict[str, int] = {}
    for name in _conventions(args.convention):
        values[f"solver[{name}]"] = count_configurations(c, d, name)
    values["dp"] = dp_count(c, d)
    if c == 0:
        values["closed-form"] = flat_count(d)
    elif c == 1:
        values["closed-form"] = codim1_count(d)
    agree = len(set(values.values())) == 1
    if args.format == "json":
        doc = {"schema": "count-report@1", "codim": c, "degree": d,
               "values": {k: str(v) for k, v in values.items()},
               "agree": agree}
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        lines = [f"#N1({c},{d})"]
        for route, value in values.items():
            lines.append(f"  {route:<16} {value}")
        lines.append("routes agree" if agree else "ROUTES DISAGREE")
        _emit("\n".join(lines), args.output)
    return EXIT_OK if agree else EXIT_DISAGREEMENT


def cmd_table(args) -> int:
    cmax, dmax = args.cmax, args.dmax
    _guard_box(cmax, dmax)
    tables: list[CountTable] = []
    if args.route == "solver":
        for name in _conventions(args.convention):
            solution = cached_solution(name, cmax, dmax)
            rows = [[solution.n1.coeff(c, d) for d in range(dmax + 1)]
                    for c in range(cmax + 1)]
            tables.append(CountTable.from_rows(rows, "n1", "solver", name))
    elif args.route == "dp":
        from .dp import dp_table
        tables.append(CountTable.from_rows(dp_table(cmax, dmax), "n1", "dp"))
    else:  # closed-form: only the c <= 1 rows have formulas
        if cmax > 1:
            raise UsageError("closed-form route covers c <= 1 only")
        rows = [[flat_count(d) for d in range(dmax + 1)]]
        if cmax == 1:
            rows.append([codim1_count(d) for d in range(dmax + 1)])
        tables.append(CountTable.from_rows(rows, "n1", "closed-form"))
    if args.format == "json":
        doc = {"schema": "table-report@1",
               "tables": [t.to_json_dict() for t in tables]}
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        blocks = []
        for t in tables:
            head = f"# family={t.family} route={t.route}"
            if t.convention:
                head += f" convention={t.convention}"
            blocks.append(head + "\n" + t.to_csv())
        _emit("\n".join(blocks), args.output)
    return EXIT_OK


def cmd_simple(args) -> int:
    cmax, dmax = args.cmax, args.dmax
    _guard_box(cmax, dmax)
    closed = [[simple_count(c, d) for d in range(dmax + 1)]
              for c in range(cmax + 1)]
    n4 = solve_simple(cmax, dmax)
    mismatches = [[c, d, n4.coeff(c, d), closed[c][d]]
                  for c in range(cmax + 1) for d in range(dmax + 1)
                  if n4.coeff(c, d) != closed[c][d]]
    table = CountTable.from_rows(closed, "n4", "closed-form")
    if args.format == "json":
        doc = {"schema": "simple-report@1",
               "table": table.to_json_dict(),
               "solver_matches_closed_form": not mismatches,
               "mismatches": mismatches[:20]}
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        status = ("solver route matches closed form" if not mismatches
                  else f"ROUTES DISAGREE on {len(mismatches)} cells")
        _emit(table.to_csv() + status, args.output)
    return EXIT_OK if not mismatches else EXIT_DISAGREEMENT


def cmd_asymptotics(args) -> int:
    c, d = args.codim, args.degree
    exact = simple_count(c, d)
    if exact == 0:
        raise UsageError(f"no simple configurations at ({c},{d}); "
                         "need d >= max(2c, 1)")
    ratio = asymptotic_ratio(exact, c, d)
    doc = {"schema": "asymptotics-report@1", "codim": c, "degree": d,
           "exact": str(exact), "estimate": asymptotic_estimate(c, d),
           "log_estimate": asymptotic_log(c, d), "exact_over_estimate": ratio}
    if args.format == "json":
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        _emit("\n".join([
            f"exact simple count  {exact}",
            f"asymptotic estimate {doc['estimate']:.6e}",
            f"exact / estimate    {ratio:.6f}",
        ]), args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    d = args.degree
    if d > MAX_ORACLE_DEGREE:
        raise ResourceGuard(
            f"oracle degree {d} above guard {MAX_ORACLE_DEGREE}")
    diagrams = enumerate_flat(d)
    expected = flat_count(d)
    if args.dump:
        _emit(dump_diagrams(diagrams), args.dump)
    agree = len(diagrams) == expected
    if args.format == "json":
        doc = {"schema": "oracle-report@1", "degree": d,
               "enumerated": len(diagrams), "closed_form": expected,
               "agree": agree}
        _emit(json.dumps(doc, indent=2), args.output)
    else:
        _emit(f"degree {d}: enumerated {len(diagrams)}, "
              f"closed form {expected}, {'agree' if agree else 'DISAGREE'}",
              args.output)
    return EXIT_OK if agree else EXIT_DISAGREEMENT


def cmd_verify(args) -> int:
    overrides = {
        "row-sum": {"dmax": args.row_sum_dmax},
        "oracle": {"max_degree": args.oracle_degree},
        "cross-routes": {"cmax": args.cross_cmax, "dmax": args.cross_dmax},
        "min-poly": {"cmax": args.box, "dmax": args.box},
        "system-equation": {"cmax": args.box, "dmax": args.box},
    }
    _guard_box(2 * args.row_sum_dmax, args.row_sum_dmax)
    if args.only and args.only not in CHECKS:
        raise UsageError(f"unknown check {args.only!r}; available: "
                         + ", ".join(CHECKS))
    reports = run_suite(only=args.only, overrides=overrides)
    out_lines = []
    for rep in reports:
        if args.format == "jsonl":
            out_lines.append(json.dumps(rep))
        else:
            status = rep["status"].upper()
            extra = ""
            if rep["check"] == "growth-constant":
                extra = f"  value={rep['details']['value']:.6f}"
            elif rep["check"] == "row-sum":
                extra = (f"  final_ratio={rep['details']['final_ratio']:.4f}"
                         f"  growth={rep['details']['growth_constant']:.4f}")
            elif rep["check"] == "cross-routes":
                extra = ("  matches=" +
                         ",".join(rep["details"]["matching_conventions"]))
            elif rep["check"] == "alt-tail":
                tails = rep["details"]["annihilating_tail"]
                extra = "  annihilating_tail=" + ",".join(map(str, tails))
            out_lines.append(f"{status:>7}  {rep['check']}{extra}")
    ok = suite_passed(reports)
    if args.format != "jsonl":
        out_lines.append("all checks passed" if ok else "SUITE FAILED")
    _emit("\n".join(out_lines), args.output)
    if args.artifact:
        doc = route_agreement_document(args.cross_cmax, args.cross_dmax)
        with open(args.artifact, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, indent=2)
            fh.write("\n")
    return EXIT_OK if ok else EXIT_DISAGREEMENT


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="forestcount",
                     description="Exact counts of disk configurations by "
                                 "codimension and degree, with mutual "
                                 "verification across independent routes.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, formats=("text", "json")):
        p.add_argument("--format", choices=formats, default=formats[0])
        p.add_argument("--output", default=None,
                       help="write to this path instead of stdout")

    p = sub.add_parser("count", help="one exact count, all routes")
    p.add_argument("--codim", type=_nonneg, required=True)
    p.add_argument("--degree", type=_nonneg, required=True)
    p.add_argument("--convention", choices=[*CONVENTIONS, "both"],
                   default="both")
    add_common(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("table", help="table of counts over a box")
    p.add_argument("--cmax", type=_nonneg, required=True)
    p.add_argument("--dmax", type=_nonneg, required=True)
    p.add_argument("--route", choices=["solver", "dp", "closed-form"],
                   default="solver")
    p.add_argument("--convention", choices=[*CONVENTIONS, "both"],
                   default="both")
    add_common(p, formats=("csv", "json"))
    p.set_defaults(func=cmd_table)

    p = sub.add_parser("simple", help="simple-configuration counts")
    p.add_argument("--cmax", type=_nonneg, required=True)
    p.add_argument("--dmax", type=_nonneg, required=True)
    add_common(p, formats=("csv", "json"))
    p.set_defaults(func=cmd_simple)

    p = sub.add_parser("asymptotics", help="exact vs asymptotic estimate")
    p.add_argument("--codim", type=_nonneg, required=True)
    p.add_argument("--degree", type=_nonneg, required=True)
    add_common(p)
    p.set_defaults(func=cmd_asymptotics)

    p = sub.add_parser("oracle", help="exhaustive flat-diagram enumeration")
    p.add_argument("--degree", type=_nonneg, required=True)
    p.add_argument("--dump", default=None,
                   help="write enumerated diagrams as JSON to this path "
                        "('-' for stdout)")
    add_common(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("verify", help="run the verification suite")
    p.add_argument("--only", default=None, metavar="CHECK",
                   help="run a single check: " + ", ".join(CHECKS))
    p.add_argument("--row-sum-dmax", type=_nonneg, default=60)
    p.add_argument("--oracle-degree", type=_nonneg, default=3)
    p.add_argument("--cross-cmax", type=_nonneg, default=10)
    p.add_argument("--cross-dmax", type=_nonneg, default=20)
    p.add_argument("--box", type=_nonneg, default=12,
                   help="box side for the polynomial residual checks")
    p.add_argument("--artifact", default=None,
                   help="also write the route-agreement JSON artifact here")
    add_common(p, formats=("text", "jsonl"))
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ResourceGuard as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
