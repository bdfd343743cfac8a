"""Command-line interface: ``treedex <command> ...``.

Exit codes: 0 success, 1 domain error (one ``error: Kind: reason`` line on
stderr), 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence, TextIO

from .audit import DEFAULT_ALPHA, DEFAULT_BETA, DEFAULT_WITNESSES, audit, builtin_claims, export_report, select_claims
from .construct import extremal_construction, realize_canonical, sequence_from_text
from .enumeration import DEFAULT_REALIZATION_CAP, CorpusSpec, free_trees, realizations
from .errors import TreedexError
from .indices import IndexKind, compute_index, derived_params, format_real, to_csv_value, to_json_value, albertson, sombor, zagreb1
from .search import optimize
from .tree import code_string, format_edge_list, path_tree, read_edge_list, spider_tree, star_tree


def _order_range(text: str) -> tuple[int, int]:
    try:
        a, b = text.split("..")
        lo, hi = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected A..B, got {text!r}")
    if lo < 2 or lo > hi:
        raise argparse.ArgumentTypeError(f"need 2 <= A <= B, got {text!r}")
    return lo, hi


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def _csv_list(text: str) -> list[str]:
    return [s.strip() for s in text.split(",") if s.strip()]


def _index_list(text: str) -> list[IndexKind]:
    try:
        return [IndexKind.parse(s) for s in _csv_list(text)]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _index_kind(text: str) -> IndexKind:
    try:
        return IndexKind.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _extremal_args(text: str) -> tuple[int, int, int, int]:
    try:
        x, y, leaves, mu = (int(s) for s in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y,leaves,mu, got {text!r}")
    return x, y, leaves, mu


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return value


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="treedex", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="indices of one tree read from an edge-list file")
    c.add_argument("--tree", required=True, type=Path)
    c.add_argument("--indices", type=_index_list, default=list(IndexKind))
    c.add_argument("--format", choices=("json", "csv"), default="json")

    c = sub.add_parser("params", help="derived scalars k, eta, mu, x, y of a degree sequence")
    c.add_argument("--sequence", required=True)
    c.add_argument("--no-complete", action="store_true", help="do not append implicit leaves")

    c = sub.add_parser("realize", help="one tree realising a sequence, or the extremal construction")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--sequence")
    g.add_argument("--extremal", type=_extremal_args, metavar="x,y,leaves,mu")
    c.add_argument("--out", type=Path)

    c = sub.add_parser("enumerate", help="non-isomorphic trees of an order or of a degree sequence")
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--order", type=_positive)
    g.add_argument("--sequence")
    c.add_argument("--codes", action="store_true", help="one canonical code per line")
    c.add_argument("--cap", type=_positive, help="order cap for --order, count cap for --sequence")

    c = sub.add_parser("search", help="extremal tree for an index over a degree sequence")
    c.add_argument("--sequence", required=True)
    c.add_argument("--index", required=True, type=_index_kind)
    c.add_argument("--direction", required=True, choices=("max", "min"))
    c.add_argument("--strategy", choices=("exact", "local"), default="exact")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--restarts", type=_positive, default=5)
    c.add_argument("--max-steps", type=_positive, default=10_000)
    c.add_argument("--witness", action="store_true", help="include the witness edge list")

    c = sub.add_parser("audit", help="evaluate claims over a corpus")
    c.add_argument("--claims", type=_csv_list)
    g = c.add_mutually_exclusive_group(required=True)
    g.add_argument("--order-range", type=_order_range, metavar="A..B")
    g.add_argument("--sequence")
    c.add_argument("--alpha", type=_rational, default=DEFAULT_ALPHA)
    c.add_argument("--beta", type=_rational, default=DEFAULT_BETA)
    c.add_argument("--format", choices=("json", "csv"), default="json")
    c.add_argument("--out", type=Path)
    c.add_argument("--fail-on-violation", type=_csv_list, metavar="IDS")
    c.add_argument("--workers", type=_positive, default=1)
    c.add_argument("--witnesses", type=_positive, default=DEFAULT_WITNESSES)
    c.add_argument("--no-examples", action="store_true", help="omit the worked-example comparison")

    c = sub.add_parser("figure", help="CSV series of SO, irr and M1 along tree families")
    c.add_argument("--families", type=_csv_list, default=["path", "star", "spider"])
    c.add_argument("--order-range", type=_order_range, required=True, metavar="A..B")
    c.add_argument("--out", type=Path)
    return p


def _emit(text: str | bytes, out: Path | None, stdout: TextIO) -> None:
    if out is not None:
        if isinstance(text, str):
            out.write_text(text)
        else:
            out.write_bytes(text)
        return
    stdout.write(text if isinstance(text, str) else text.decode("utf-8"))


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_compute(args, stdout: TextIO, stderr: TextIO) -> int:
    t = read_edge_list(args.tree)
    values = [(kind.value, compute_index(kind, t)) for kind in args.indices]
    if args.format == "json":
        stdout.write(_dump({"n": t.n, "indices": {k: to_json_value(v) for k, v in values}}))
    else:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "value"])
        for k, v in values:
            w.writerow([k, to_csv_value(v)])
        stdout.write(buf.getvalue())
    return 0


def cmd_params(args, stdout: TextIO, stderr: TextIO) -> int:
    d = sequence_from_text(args.sequence, complete=not args.no_complete)
    p = derived_params(d)
    obj = {
        "input": args.sequence,
        "sequence": str(d),
        "n": d.n,
        "max_degree": d.max_degree,
        "sum_of_squares": d.sum_of_squares,
        **{k: to_json_value(v) for k, v in p.as_dict().items()},
    }
    stdout.write(_dump(obj))
    return 0


def cmd_realize(args, stdout: TextIO, stderr: TextIO) -> int:
    if args.extremal is not None:
        x, y, leaves, mu = args.extremal
        t = extremal_construction(x, y, leaves, mu)
        header = f"# extremal construction x={x} y={y} leaves={leaves} mu={mu}\n"
    else:
        d = sequence_from_text(args.sequence)
        t = realize_canonical(d)
        header = f"# sequence: {d}\n"
    _emit(header + format_edge_list(t), args.out, stdout)
    return 0


def cmd_enumerate(args, stdout: TextIO, stderr: TextIO) -> int:
    if args.order is not None:
        stream = free_trees(args.order, args.cap)
    else:
        d = sequence_from_text(args.sequence)
        stdout.write(f"# sequence: {d}\n")
        stream = realizations(d, args.cap or DEFAULT_REALIZATION_CAP)
    first = True
    for t in stream:
        if args.codes:
            stdout.write(code_string(t) + "\n")
        else:
            stdout.write(("" if first else "\n") + format_edge_list(t))
        first = False
    return 0


def cmd_search(args, stdout: TextIO, stderr: TextIO) -> int:
    d = sequence_from_text(args.sequence)
    r = optimize(args.index, args.direction, d, args.strategy, args.restarts, args.max_steps, args.seed)
    obj = r.to_json()
    if args.witness:
        obj["witness"] = {"n": r.best_tree.n, "edges": [list(e) for e in r.best_tree.edges]}
    stdout.write(_dump(obj))
    return 0


def cmd_audit(args, stdout: TextIO, stderr: TextIO) -> int:
    claims = select_claims(builtin_claims(args.alpha, args.beta), args.claims)
    if args.order_range is not None:
        spec = CorpusSpec.all_trees(*args.order_range)
    else:
        spec = CorpusSpec.fixed_sequence(sequence_from_text(args.sequence))
    report = audit(claims, spec, workers=args.workers, witnesses=args.witnesses, include_examples=not args.no_examples)
    _emit(export_report(report, args.format), args.out, stdout)
    if args.fail_on_violation:
        wanted = set(args.fail_on_violation)
        failing = [c.id for c in report.claims if c.violated and (c.id in wanted or c.id.split("[")[0] in wanted)]
        if failing:
            stderr.write(f"error: Violations: {','.join(failing)}\n")
            return 1
    return 0


def _figure_tree(family: str, n: int):
    if family == "path" and n >= 2:
        return path_tree(n)
    if family == "star" and n >= 2:
        return star_tree(n)
    if family == "spider" and n >= 4:
        q, r = divmod(n - 1, 3)
        return spider_tree([q + (1 if i < r else 0) for i in range(3)])
    return None


def cmd_figure(args, stdout: TextIO, stderr: TextIO) -> int:
    unknown = [f for f in args.families if f not in ("path", "star", "spider")]
    if unknown:
        raise TreedexError(f"unknown families: {','.join(unknown)}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["family", "n", "SO", "irr", "M1"])
    lo, hi = args.order_range
    for family in args.families:
        for n in range(lo, hi + 1):
            t = _figure_tree(family, n)
            if t is not None:
                w.writerow([family, n, format_real(sombor(t)), albertson(t), zagreb1(t)])
    _emit(buf.getvalue(), args.out, stdout)
    return 0


COMMANDS = {
    "compute": cmd_compute,
    "params": cmd_params,
    "realize": cmd_realize,
    "enumerate": cmd_enumerate,
    "search": cmd_search,
    "audit": cmd_audit,
    "figure": cmd_figure,
}


def run(argv: Sequence[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, stdout, stderr)
    except TreedexError as exc:
        stderr.write(f"error: {exc.reason}\n")
        return 1
    except OSError as exc:
        stderr.write(f"error: IOError: {exc}\n")
        return 1


def main() -> None:
    sys.exit(run())
