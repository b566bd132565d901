"""Command-line interface.

Exit codes: 0 success (including "no prequantisation" findings), 2 input
parse error, 3 stacky polytope axiom violation, 4 internal assertion.
"""

from __future__ import annotations

import argparse
import difflib
import json
import sys
from pathlib import Path

from .demo import demo_text, golden_text
from .document import InputDocument, InputError
from .hrr import PrecisionError
from .polytope import PolytopeError
from .quantization import EnumerationError, monomial
from .report import build_report, render_text
from .stacky import StackyPolytopeError

EXIT_OK, EXIT_PARSE, EXIT_AXIOM, EXIT_INTERNAL = 0, 2, 3, 4


def _load(path: str) -> InputDocument:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as exc:
        raise InputError(path, str(exc)) from None
    return InputDocument.from_json(text)


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_text(report, sys.stdout))


def cmd_analyze(args) -> int:
    doc = _load(args.path)
    report = build_report(
        doc, list_sections=args.list_sections, list_lattice=args.list_lattice, euler=args.euler
    )
    _emit(report, args.format)
    return EXIT_OK


def cmd_sections(args) -> int:
    doc = _load(args.path)
    report = build_report(doc, list_sections=True)
    if args.format == "json":
        _emit(report, "json")
        return EXIT_OK
    status = report["prequantisation"]["status"]
    print(f"tau: ({', '.join(report['tau'])})  status: {status}")
    if report["q_dim"] is None:
        print("no prequantisation" if status != "out-of-scope" else "section count undefined")
        return EXIT_OK
    for alpha in report["sections"]:
        print(f"{' '.join(map(str, alpha))}\t{monomial(alpha)}")
    print(f"Q = {report['q_dim']}")
    return EXIT_OK


def cmd_demo(args) -> int:
    text = demo_text()
    sys.stdout.write(text)
    golden = golden_text()
    if text != golden:
        diff = difflib.unified_diff(golden.splitlines(True), text.splitlines(True), "golden", "demo")
        sys.stderr.write("demo output differs from the golden tables:\n" + "".join(diff))
        return EXIT_INTERNAL
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="stackypoly",
        description="Prequantisation and section counts for stacky polytopes.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for one input file")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--list-sections", action="store_true", help="list the exponents of the monomial basis")
    p.add_argument("--list-lattice", action="store_true", help="list the lattice points of Delta")
    p.add_argument("--euler", action="store_true", help="Euler characteristic for CP(1,b) and CP(a,a)")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("sections", help="monomial basis of holomorphic sections")
    p.add_argument("path")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.set_defaults(func=cmd_sections)

    p = sub.add_parser("demo", help="regenerate the weighted projective tables")
    p.set_defaults(func=cmd_demo)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: parse: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except StackyPolytopeError as exc:
        where = f" (facet {exc.facet})" if exc.facet is not None else ""
        print(f"error: axiom '{exc.axiom}' violated{where}: {exc}", file=sys.stderr)
        return EXIT_AXIOM
    except (PrecisionError, EnumerationError, PolytopeError, AssertionError) as exc:
        print(f"error: internal: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
