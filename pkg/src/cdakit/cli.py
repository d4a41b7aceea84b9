"""Command-line front end.

Commands: construct, verify, locate, simulate, export, catalog.

Exit codes
  verify:  0 pass, 1 fail, 2 infeasible check or bad input
  locate:  0 exact, 3 exceeds budget, 4 inconsistent, 2 bad input
  others:  0 success, 2 bad input or failed construction
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from . import constructions as con
from .arrayfile import format_array, read_array
from .catalog import catalog_seed, list_seeds
from .errors import CDAError
from .locate import OutcomeVector, Verdict, locate_faults, simulate_outcomes
from .model import Array, ConsecutiveInteraction, RowDivisibleArray
from .recipes import build_recipe, recipe_solver
from . import verify as ver

EXIT_OK, EXIT_FAIL, EXIT_ERROR = 0, 1, 2
LOCATE_EXIT = {Verdict.EXACT: 0, Verdict.EXCEEDS_BUDGET: 3, Verdict.INCONSISTENT: 4}

FAMILIES = (
    "zero-sum",
    "bush",
    "bush-even",
    "macneish",
    "oa3-6",
    "derive-stack",
    "wraparound",
    "double-wrap",
    "column-select",
    "juxtapose",
    "inflate",
    "recipe",
    "seed",
)
PROPERTIES = (
    "ca",
    "cca",
    "oa",
    "coa",
    "simple-coa",
    "super-simple-oa",
    "compatible",
    "row-divisible-coa",
    "cda",
    "bound",
    "equivalence",
)


class UsageError(CDAError):
    pass


def _plain(obj: Array | RowDivisibleArray) -> Array:
    return obj.array if isinstance(obj, RowDivisibleArray) else obj


def _need(args, *names):
    for name in names:
        if getattr(args, name) is None:
            raise UsageError(f"--{name.replace('_', '-')} is required for this command")


def _inputs(args, count: int | None = None) -> list[Array | RowDivisibleArray]:
    paths = args.input or []
    if count is not None and len(paths) != count:
        raise UsageError(f"family {args.family!r} takes {count} --input file(s), got {len(paths)}")
    if not paths:
        raise UsageError(f"family {args.family!r} needs --input")
    return [read_array(p) for p in paths]


def _sequence(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise UsageError(f"bad column sequence {text!r}") from None


def _construct(args) -> Array | RowDivisibleArray:
    family = args.family
    if family == "zero-sum":
        _need(args, "t", "v")
        return con.zero_sum_oa(args.t, args.v)
    if family == "bush":
        _need(args, "t", "q")
        return con.bush_oa(args.t, args.q)
    if family == "bush-even":
        _need(args, "q")
        return con.bush_oa_even(args.q)
    if family == "oa3-6":
        _need(args, "v")
        return con.oa3_6(args.v)
    if family == "macneish":
        _need(args, "t")
        a, b = (_plain(x) for x in _inputs(args, 2))
        return con.macneish_product(a, b, args.t)
    if family == "derive-stack":
        _need(args, "t")
        (a,) = _inputs(args, 1)
        symbols = _sequence(args.symbols) if args.symbols else None
        return con.derive_stack_ssoa(_plain(a), args.t + 1, args.col, args.lam or 1, symbols)
    if family == "wraparound":
        _need(args, "t")
        (a,) = _inputs(args, 1)
        return con.wraparound_coa(_plain(a), args.t)
    if family == "double-wrap":
        (a,) = _inputs(args, 1)
        return con.double_wrap_coa(_plain(a))
    if family == "column-select":
        _need(args, "t", "lam", "sequence")
        (a,) = _inputs(args, 1)
        return con.column_select_coa(_plain(a), _sequence(args.sequence), args.t, args.lam)
    if family == "juxtapose":
        _need(args, "t")
        return con.juxtapose([_plain(x) for x in _inputs(args)], args.t)
    if family == "inflate":
        _need(args, "t")
        first, *rest = _inputs(args)
        if not rest:
            raise UsageError("inflate needs the first factor and at least one second factor via --input")
        return con.inflate_product(first, [_plain(x) for x in rest], args.t)
    if family == "recipe":
        _need(args, "v", "lam")
        return build_recipe(recipe_solver(args.lam, args.v, args.case))
    if family == "seed":
        _need(args, "name")
        return catalog_seed(args.name)
    raise UsageError(f"unknown family {family!r}")


def cmd_construct(args, out) -> int:
    out.write(format_array(_construct(args)))
    return EXIT_OK


def _default_lambda(array: Array, t: int) -> int:
    if array.lam is not None:
        return array.lam
    block = array.v**t
    return max(array.N // block, 1)


def cmd_verify(args, out) -> int:
    obj = read_array(args.file)
    array = _plain(obj)
    t = args.t if args.t is not None else array.t
    if t is None:
        raise UsageError("--t is required (the file records no strength)")
    lam = args.lam if args.lam is not None else _default_lambda(array, t)
    prop = args.property
    reports = []
    if prop == "ca":
        reports.append(ver.is_ca(array, t, lam))
    elif prop == "cca":
        reports.append(ver.is_cca(array, t, lam))
    elif prop == "oa":
        reports.append(ver.is_oa(array, t, lam))
    elif prop == "coa":
        reports.append(ver.is_coa(array, t, lam))
    elif prop == "simple-coa":
        reports.append(ver.is_simple_coa(array, t, lam))
    elif prop == "super-simple-oa":
        reports.append(ver.is_super_simple_oa(array, t, lam))
    elif prop == "compatible":
        _need(args, "other")
        reports.append(ver.is_compatible(array, _plain(read_array(args.other)), t))
    elif prop == "row-divisible-coa":
        if not isinstance(obj, RowDivisibleArray):
            raise UsageError("the file declares no '# parts:' partition")
        reports.append(ver.is_row_divisible_coa(obj, t, lam))
    elif prop in ("cda", "bound", "equivalence"):
        _need(args, "d")
        if prop == "cda":
            direct = ver.is_cda_direct(array, args.d, t, args.budget)
            if direct.passed and t < array.k:
                bound = ver.cdan_bound_report(array, args.d, t)
                direct.optimum = bool(bound.optimum)
                direct.params["bound"] = bound.params["bound"]
            reports.append(direct)
        elif prop == "bound":
            reports.append(ver.cdan_bound_report(array, args.d, t))
        else:
            reports.append(ver.equivalence_crosscheck(array, args.d, t, args.budget))
    passed = all(r.passed for r in reports)
    if args.json:
        payload = reports[0].to_dict() if len(reports) == 1 else [r.to_dict() for r in reports]
        out.write(json.dumps(payload, indent=2) + "\n")
    else:
        for r in reports:
            out.write(r.summary() + "\n")
            if r.witness is not None:
                out.write("witness: " + json.dumps(r.witness) + "\n")
    return EXIT_OK if passed else EXIT_FAIL


def cmd_locate(args, out) -> int:
    plan = _plain(read_array(args.plan))
    outcomes = OutcomeVector.parse(Path(args.outcomes).read_text(encoding="utf-8"))
    report = locate_faults(plan, args.d, args.t, outcomes)
    out.write(json.dumps(report.to_dict(), indent=2) + "\n")
    return LOCATE_EXIT[report.verdict]


def cmd_simulate(args, out) -> int:
    plan = _plain(read_array(args.plan))
    faults = [ConsecutiveInteraction.parse(text) for text in args.fault or []]
    out.write(simulate_outcomes(plan, faults).to_text())
    return EXIT_OK


def _level_names(path: str | None, k: int):
    if path is None:
        return None
    data = json.loads(Path(path).read_text(encoding="utf-8"))
    if isinstance(data, list):
        return [data] * k
    if isinstance(data, dict):
        return [data.get(f"factor_{j}") for j in range(1, k + 1)]
    raise UsageError("level file must hold a JSON list or an object keyed by factor_j")


def cmd_export(args, out) -> int:
    array = _plain(read_array(args.file))
    header = [f"factor_{j}" for j in range(1, array.k + 1)]
    names = _level_names(args.levels, array.k)
    tests = []
    for row in array.rows():
        if names:
            tests.append([names[j][x] if names[j] else x for j, x in enumerate(row)])
        else:
            tests.append(list(row))
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(tests)
        out.write(buf.getvalue())
    else:
        doc = {
            "N": array.N,
            "k": array.k,
            "v": array.v,
            "t": array.t,
            "lambda": array.lam,
            "family": array.family,
            "factors": header,
            "tests": tests,
        }
        out.write(json.dumps(doc) + "\n")
    return EXIT_OK


def cmd_catalog(args, out) -> int:
    if args.action == "list":
        for s in list_seeds():
            out.write(f"{s['name']}\tN={s['N']} k={s['k']} v={s['v']} t={s['t']} lambda={s['lambda']}\t{s['description']}\n")
        return EXIT_OK
    if not args.name:
        raise UsageError("catalog show needs a seed name")
    out.write(format_array(catalog_seed(args.name)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cdakit", description="Consecutive detecting arrays for interaction faults")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="build an array and print it in the array file format")
    p.add_argument("--family", required=True, choices=FAMILIES)
    p.add_argument("--t", type=int)
    p.add_argument("--v", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--col", type=int)
    p.add_argument("--symbols", help="comma-separated symbols for derive-stack")
    p.add_argument("--sequence", help="comma-separated 1-based columns for column-select")
    p.add_argument("--case", choices=("4t+2", "6u"))
    p.add_argument("--name", help="seed name for --family seed")
    p.add_argument("--input", action="append", help="input array file (repeatable)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check an array property")
    p.add_argument("--property", required=True, choices=PROPERTIES)
    p.add_argument("--t", type=int)
    p.add_argument("--lambda", dest="lam", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--other", help="second array for --property compatible")
    p.add_argument("--budget", type=int, help="work cap for the detecting check (env CDAKIT_WORK_BUDGET)")
    p.add_argument("--json", action="store_true")
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("locate", help="locate faulty interactions from test outcomes")
    p.add_argument("plan")
    p.add_argument("outcomes")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_locate)

    p = sub.add_parser("simulate", help="outcomes a plan would produce under given faults")
    p.add_argument("plan")
    p.add_argument("--fault", action="append", help="START:V1,V2,... (repeatable)")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export", help="export an array as a test suite")
    p.add_argument("file")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--levels", help="JSON level names: a list, or an object keyed by factor_j")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("catalog", help="list or show shipped seed arrays")
    p.add_argument("action", choices=("list", "show"))
    p.add_argument("name", nargs="?")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_catalog)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_OK
    buf = io.StringIO()
    try:
        code = args.func(args, buf)
    except (CDAError, OSError, json.JSONDecodeError, IndexError) as exc:
        print(f"cdakit: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    if args.output:
        Path(args.output).write_text(buf.getvalue(), encoding="utf-8")
    else:
        sys.stdout.write(buf.getvalue())
    return code


if __name__ == "__main__":
    sys.exit(main())
