"""Command-line interface: ``orthospace <subcommand> ...``.

Exit codes: 0 success (or all table cells match), 1 table mismatch,
2 usage or input error.  Verdicts such as "not linear" are data, never errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .core import OrthoSpace, SpaceError, from_json, members, new_space
from .enumeration import (
    GOLDEN,
    TABLE_COLUMNS,
    CensusFilter,
    EnumerationError,
    Predicate,
    filtered_spaces,
    verify_table,
)
from .graph6 import Graph6Error, parse_graph6, read_graph6_lines, write_graph6
from .lattice import LatticeTooLarge, compute_lattice, summary
from .properties import Classification, classify, full_report

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2
DEFAULT_N_MAX = 9
EXTENDED_N_MAX = 10


class InputError(Exception):
    pass


def _parse_json_text(text: str, source: str) -> object:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{source}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def _space_from_json(data: object, source: str) -> OrthoSpace:
    if isinstance(data, list):
        pairs = [tuple(p) for p in data]
        n = max((max(p) for p in pairs), default=0) + 1
        return new_space(n, pairs)
    if isinstance(data, dict):
        return from_json(data)
    raise InputError(f"{source}: expected a JSON object or edge list")


def load_spaces(args: argparse.Namespace) -> list[OrthoSpace]:
    """Exactly one of --input / --g6 / --edges must be given."""
    given = [x for x in (args.input, args.g6, args.edges) if x is not None]
    if len(given) != 1:
        raise InputError("give exactly one of --input, --g6, --edges")
    try:
        if args.g6 is not None:
            return [parse_graph6(args.g6)]
        if args.edges is not None:
            return [_space_from_json(_parse_json_text(args.edges, "--edges"), "--edges")]
        path = Path(args.input)
        try:
            text = path.read_text()
        except OSError as exc:
            raise InputError(f"cannot read {path}: {exc.strerror}") from None
        if text.lstrip().startswith(("{", "[")):
            data = _parse_json_text(text, str(path))
            if isinstance(data, list) and data and isinstance(data[0], dict):
                return [from_json(d) for d in data]
            return [_space_from_json(data, str(path))]
        spaces = read_graph6_lines(text.splitlines())
        if not spaces:
            raise InputError(f"{path}: no graphs found")
        return spaces
    except (Graph6Error, SpaceError) as exc:
        raise InputError(str(exc)) from None


def _dump(obj: object, many: bool) -> str:
    return json.dumps(obj) if many else json.dumps(obj, indent=2)


def _human_report(space: OrthoSpace) -> str:
    rep = full_report(space)
    d = rep.to_json()
    lines = [f"graph6: {write_graph6(space)}"]
    for key, val in d.items():
        if key in ("schema", "witnesses"):
            continue
        lines.append(f"{key}: {val}")
    for w in d["witnesses"]:
        lines.append(f"witness {w['kind']}: vertices={w['vertices']} sets={w['sets']}")
    return "\n".join(lines)


def cmd_check(args: argparse.Namespace) -> int:
    spaces = load_spaces(args)
    many = len(spaces) > 1
    for space in spaces:
        if args.format == "json":
            print(_dump(full_report(space).to_json(), many))
        else:
            print(_human_report(space))
            if many:
                print()
    return EXIT_OK


def _classification_json(space: OrthoSpace) -> dict:
    kind, structure = classify(space)
    out = {"schema": 1, "classification": kind.value}
    if structure is not None:
        out.update(structure.to_json())
    return out


def cmd_classify(args: argparse.Namespace) -> int:
    spaces = load_spaces(args)
    many = len(spaces) > 1
    for space in spaces:
        d = _classification_json(space)
        if args.format == "json":
            print(_dump(d, many))
            continue
        kind = d["classification"]
        if kind == Classification.MATCHING_2ABPHI.value:
            print(f"{kind} |A|={len(d['A'])} A={d['A']} B={d['B']} phi={d['phi']}")
        elif kind == Classification.WINDMILL_3ABPHI.value:
            print(f"{kind} hub={d['hub']} pairs={len(d['phi'])} phi={d['phi']}")
        else:
            print(kind)
    return EXIT_OK


def cmd_lattice(args: argparse.Namespace) -> int:
    spaces = load_spaces(args)
    for space in spaces:
        try:
            lat = compute_lattice(space)
        except LatticeTooLarge as exc:
            raise InputError(str(exc)) from None
        summ = summary(lat)
        if args.format == "dot":
            body = lat.to_dot()
            head = "".join(f"// {k}: {json.dumps(v)}\n" for k, v in summ.items())
            print(head + body, end="")
        elif args.format == "json":
            print(_dump({**lat.to_json(), "summary": summ}, len(spaces) > 1))
        else:
            for k, v in summ.items():
                print(f"{k}: {v}")
            print("elements: " + " ".join("{" + ",".join(map(str, members(e))) + "}" for e in lat.elements))
    return EXIT_OK


def _render_table(report, fmt: str) -> str:
    if fmt == "csv":
        return report.to_csv()
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    widths = [max(len(c), 10) for c in TABLE_COLUMNS]
    lines = ["  ".join(c.rjust(w) for c, w in zip(TABLE_COLUMNS, widths))]
    for row in report.rows:
        lines.append("  ".join(f"{v:,}".rjust(w) for v, w in zip(row, widths)))
    return "\n".join(lines) + "\n"


def cmd_tables(args: argparse.Namespace) -> int:
    limit = EXTENDED_N_MAX if args.extended else DEFAULT_N_MAX
    if args.n_max > limit:
        hint = "" if args.extended else " (use --extended for n_max = 10)"
        raise InputError(f"--n-max {args.n_max} exceeds bound {limit}{hint}")
    if args.n_max < 2:
        raise InputError("--n-max must be at least 2")
    report = verify_table(args.table, args.n_max, jobs=args.jobs)
    sys.stdout.write(_render_table(report, args.format))
    if report.passed:
        verdict = f"table {args.table} up to n={args.n_max}: PASS"
    else:
        n, col, got, exp = report.mismatch
        verdict = f"table {args.table}: FAIL at n={n}, column {col}: got {got}, expected {exp}"
    print(verdict, file=sys.stderr if args.format != "human" else sys.stdout)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_enumerate(args: argparse.Namespace) -> int:
    flt = CensusFilter(Predicate(args.filter), args.connected)
    try:
        for space in filtered_spaces(args.n, flt):
            if args.format == "json":
                print(json.dumps(space.to_json()))
            else:
                print(write_graph6(space))
    except EnumerationError as exc:
        raise InputError(str(exc)) from None
    return EXIT_OK


def _add_input(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("input (exactly one)")
    g.add_argument("--input", metavar="PATH", help="graph6 file (one graph per line) or JSON file")
    g.add_argument("--g6", metavar="STRING", help="inline graph6 string")
    g.add_argument("--edges", metavar="JSON", help='inline JSON: {"n": 3, "edges": [[0,1]]} or an edge list')


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="orthospace", description="Finite orthogonality spaces: checks, census, lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="full property report")
    _add_input(p)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("classify", help="recognise 2(A,B,phi) and 3(A,B,phi)")
    _add_input(p)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("lattice", help="lattice of orthoclosed sets")
    _add_input(p)
    p.add_argument("--format", choices=("human", "json", "dot"), default="human")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("tables", help="recompute and verify the census tables")
    p.add_argument("table", choices=sorted(GOLDEN))
    p.add_argument("--n-max", type=int, default=DEFAULT_N_MAX)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--extended", action="store_true", help="allow n_max = 10 (long run)")
    p.add_argument("--format", choices=("human", "csv", "json"), default="human")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("enumerate", help="one graph per isomorphism class")
    p.add_argument("n", type=int)
    p.add_argument("--filter", choices=[x.value for x in Predicate], default="all")
    p.add_argument("--connected", action="store_true")
    p.add_argument("--format", choices=("graph6", "json"), default="graph6")
    p.set_defaults(func=cmd_enumerate)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"orthospace: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
