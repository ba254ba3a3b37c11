"""Command line interface.

    linindex check FILE [--json] [--bound B]
    linindex corpus [--json]
    linindex search-torsion --degrees d1,...,dr [--bound B] [--json]

Exit status: 0 criterion satisfied / corpus passes / no witness,
1 criterion fails or is inconclusive / corpus mismatch / witness found,
2 invalid input. The default torsion search bound comes from the
LININDEX_BOUND environment variable when set; --bound overrides it.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Optional, Sequence

from .corpus import render_corpus_json, render_corpus_text, run_corpus
from .descent import DEFAULT_BOUND, stabilizer_torsion_search
from .document import DocumentError, parse_document
from .picard import ParityError
from .report import EXIT_INPUT_ERROR, render_json, render_text, run_check

BOUND_ENV = "LININDEX_BOUND"


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _env_bound() -> Optional[int]:
    raw = os.environ.get(BOUND_ENV)
    if not raw:
        return None
    try:
        return _positive_int(raw)
    except argparse.ArgumentTypeError as exc:
        raise DocumentError([f"{BOUND_ENV}: {exc}"]) from None


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="linindex",
        description="Decide the index-one criterion for varieties given by Picard lattices.")
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="run the criterion on a JSON variety document")
    check.add_argument("file", help="document path, or - for stdin")
    check.add_argument("--json", action="store_true", help="machine-readable report")
    check.add_argument("--bound", type=_positive_int, help="block entry bound for rank >= 3 searches")

    corpus = sub.add_parser(
        "corpus", help="recompute every built-in example",
        description="Built-in examples: quadric_R, conic_R, surface_p3 for e in {3, 5, 7}, "
                    "quartic_k3 and nl_surface for e in 5..9, where e is the surface degree "
                    "(F1*X1 + F2*X2 with deg F_i = e - 1).")
    corpus.add_argument("--json", action="store_true")

    search = sub.add_parser("search-torsion", help="look for a finite-order matrix fixing a degree vector")
    search.add_argument("--degrees", required=True, help="comma-separated degrees, ample degree last")
    search.add_argument("--bound", type=_positive_int)
    search.add_argument("--json", action="store_true")
    return parser


def _check(args: argparse.Namespace) -> int:
    text = sys.stdin.read() if args.file == "-" else open(args.file, encoding="utf-8").read()
    doc = parse_document(text)
    report, code = run_check(doc, args.bound or doc.bound or _env_bound())
    as_json = args.json or doc.report_format == "json"
    sys.stdout.write(render_json(report) if as_json else render_text(report))
    return code


def _corpus(args: argparse.Namespace) -> int:
    rows = run_corpus()
    sys.stdout.write(render_corpus_json(rows) if args.json else render_corpus_text(rows))
    return 0 if all(r.ok for r in rows) else 1


def _search(args: argparse.Namespace) -> int:
    try:
        degrees = [int(x) for x in args.degrees.split(",")]
    except ValueError:
        raise DocumentError([f"--degrees: expected comma-separated integers, got {args.degrees!r}"]) from None
    bound = args.bound or _env_bound() or DEFAULT_BOUND
    out = stabilizer_torsion_search(degrees, bound)
    payload = {"degrees": degrees, "bound": bound, "outcome": out.kind, "condition_2_holds": out.condition_holds,
               "witness": out.witness.tolist() if out.witness else None, "order": out.order, "note": out.note}
    if args.json:
        sys.stdout.write(json.dumps(payload, indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(f"{out.kind}: {out.note}\n")
        if out.witness:
            sys.stdout.write(f"witness of order {out.order}: {out.witness.tolist()}\n")
    return 0 if out.condition_holds else 1


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = _parser().parse_args(argv)
    handler = {"check": _check, "corpus": _corpus, "search-torsion": _search}[args.command]
    try:
        return handler(args)
    except DocumentError as exc:
        for err in exc.errors:
            print(f"error: {err}", file=sys.stderr)
    except (OSError, ParityError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
    return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
