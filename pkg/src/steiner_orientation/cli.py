"""Command line: ``steiner-orient <command> ...``.

Exit codes: 0 yes/success, 1 no (UNSAT, invalid witness, verdicts differ),
2 usage or input error.
"""
from __future__ import annotations

import argparse
import sys
import time
from pathlib import Path

from .formula import FormulaError, LayoutError, parse_formula, sat_oracle, validate_layout
from .gadgets import build_gadget
from .graph import verify_orientation
from .reduction import ReductionMetadata, assignment_for, compile_formula, decode
from .solver import default_workers, solve
from .textio import FormatError, format_instance, format_witness, parse_instance, parse_witness, to_dot

OK, NO, ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror}") from None


def _load_formula(path: str):
    try:
        formula = parse_formula(_read(path))
        return formula, validate_layout(formula)
    except (FormulaError, LayoutError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_instance(path: str):
    try:
        instance, meta = parse_instance(_read(path))
        return instance, (ReductionMetadata.from_lines(meta) if meta else None)
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from None


def _fmt_assignment(names, values) -> str:
    return " ".join(f"{n}={'T' if v else 'F'}" for n, v in zip(names, values))


def cmd_compile(args) -> int:
    formula, layout = _load_formula(args.formula)
    instance, meta = compile_formula(formula, layout)
    _write(args.output, format_instance(instance, meta))
    g = instance.graph
    counts = meta.gadget_counts()
    print(f"vertices {g.n} arcs {len(g.arcs)} edges {g.m} pairs {len(instance.pairs)}")
    print("gadgets " + " ".join(f"{k} {counts[k]}" for k in ("variable", "clause3", "clause2", "edge")))
    return OK


def cmd_solve(args) -> int:
    instance, _ = _load_instance(args.instance)
    start = time.perf_counter()
    result = solve(instance, propagate=not args.no_propagate, workers=default_workers())
    elapsed = time.perf_counter() - start
    s = result.stats
    print(f"nodes {s.nodes} propagations {s.propagations} peak_depth {s.peak_depth}", file=sys.stderr)
    if not args.no_timing:
        print(f"time {elapsed:.3f}s", file=sys.stderr)
    print(result.status)
    if result.sat and args.witness:
        _write(args.witness, format_witness(result.witness))
    return OK if result.sat else NO


def cmd_verify(args) -> int:
    instance, _ = _load_instance(args.instance)
    try:
        witness = parse_witness(_read(args.witness))
    except FormatError as exc:
        raise UsageError(f"{args.witness}: {exc}") from None
    if len(witness) != instance.graph.m:
        raise UsageError(f"witness has {len(witness)} edges, instance has {instance.graph.m}")
    ok = verify_orientation(instance, witness)
    print("VALID" if ok else "INVALID")
    return OK if ok else NO


def cmd_equiv(args) -> int:
    formula, layout = _load_formula(args.formula)
    try:
        oracle = sat_oracle(formula)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    instance, meta = compile_formula(formula, layout)
    result = solve(instance, workers=default_workers())
    print(f"sat_oracle: {'SAT' if oracle is not None else 'UNSAT'}"
          + (f" ({_fmt_assignment(formula.names, oracle)})" if oracle is not None else ""))
    line = f"orientation: {result.status}"
    agree = (oracle is not None) == result.sat
    if result.sat:
        values = assignment_for(formula, meta, decode(meta, result.witness))
        good = formula.evaluate(values)
        line += f" (decoded {_fmt_assignment(formula.names, values)}"
        line += ", satisfies formula)" if good else ", DOES NOT satisfy formula)"
        agree = agree and good
    print(line)
    print("EQUIVALENT" if agree else "MISMATCH")
    return OK if agree else NO


def cmd_export_dot(args) -> int:
    instance, _ = _load_instance(args.instance)
    _write(args.output, to_dot(instance))
    return OK


def cmd_gadget(args) -> int:
    try:
        gadget = build_gadget(args.kind, *args.params)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _write(args.output, format_instance(gadget.instance))
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="steiner-orient",
        description="Planar Steiner Orientation: reduction from planar monotone 3-SAT and exact solving.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a formula into an instance file")
    p.add_argument("formula")
    p.add_argument("output")
    p.set_defaults(func=cmd_compile)

    p = sub.add_parser("solve", help="decide an instance")
    p.add_argument("instance")
    p.add_argument("--witness", help="write the solving orientation here")
    p.add_argument("--no-propagate", action="store_true", help="disable unit propagation")
    p.add_argument("--no-timing", action="store_true", help="omit the timing line from stats")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="check a witness orientation")
    p.add_argument("instance")
    p.add_argument("witness")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("equiv", help="compare compile+solve against brute-force SAT")
    p.add_argument("formula")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("export-dot", help="write Graphviz DOT")
    p.add_argument("instance")
    p.add_argument("output")
    p.set_defaults(func=cmd_export_dot)

    p = sub.add_parser("gadget", help="write a standalone gadget instance")
    p.add_argument("kind", choices=["flip", "variable", "clause3", "clause2", "edge"])
    p.add_argument("params", nargs="*", help="variable: P N; clause3/clause2: pos|neg")
    p.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    p.set_defaults(func=cmd_gadget)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR


if __name__ == "__main__":
    sys.exit(main())
