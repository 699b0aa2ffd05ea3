"""Command-line surface: counting, enumeration, classification, probability,
verification, deck utilities, and the HTTP service.

Output is deterministic given the flags (and --seed where applicable); exit
code 1 signals a verification mismatch, 2 a flag error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import census
from .capcore import Cap, check_structure
from .classify import UnclassifiableError, classify
from .deck import find_all_quads, parse_layout
from .enumeration import default_thread_budget


def _emit_rows(rows: list[dict], header: list[str], fmt: str) -> str:
    if fmt == "doc":
        return json.dumps(rows, indent=2, default=str) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=header, extrasaction="ignore")
        writer.writeheader()
        writer.writerows(rows)
        return buf.getvalue()
    # plain aligned table
    widths = [max(len(h), *(len(str(r.get(h, ""))) for r in rows)) for h in header]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(str(r.get(h, "")).rjust(w) for h, w in zip(header, widths)).rstrip())
    return "\n".join(lines) + "\n"


def cmd_count(args) -> int:
    row = census.census_row(args.k, args.n)
    doc = {
        "k": args.k,
        "n": args.n,
        "total": row.total,
        **{f"dim{d}": c for d, c in sorted(row.by_dimension.items(), reverse=True)},
    }
    header = ["k", "n", "total"] + [f"dim{d}" for d in sorted(row.by_dimension, reverse=True)]
    sys.stdout.write(_emit_rows([doc], header, args.format))
    return 0


def cmd_enumerate(args) -> int:
    tallies = census.enumerate_census(
        args.n, args.max_k, thread_budget=args.threads, engine=args.engine
    )
    rows = []
    for t in tallies:
        row = {"k": t.k, "total": t.total}
        for d, c in sorted(t.by_dimension.items()):
            row[f"dim{d}"] = c
        if args.by_class:
            for (d, has2), c in sorted(t.by_dimension_mult2.items()):
                row[f"dim{d}_mult{'2plus' if has2 else '1'}"] = c
        rows.append(row)
    header = sorted({h for r in rows for h in r}, key=lambda h: (h != "k", h != "total", h))
    sys.stdout.write(_emit_rows(rows, header, args.format))
    return 0


def cmd_classify(args) -> int:
    cap = Cap.load(args.infile)
    doc = {
        "n": cap.n,
        "k": cap.k,
        "points": [p.to_binary() for p in cap.points],
        "dimension": cap.dimension() if cap.k else None,
    }
    try:
        doc["class"] = str(classify(cap))
    except UnclassifiableError as exc:
        doc["class"] = None
        doc["class_error"] = str(exc)
    doc["structure"] = check_structure(cap).to_doc()
    sys.stdout.write(json.dumps(doc, indent=2) + "\n")
    return 0


def cmd_probability(args) -> int:
    rows = []
    for r in census.probability_table(args.n):
        row = {"k": r.k, "p_no_quad": r.no_quad_str, "p_quad": r.quad_str}
        if args.exact:
            row["p_no_quad_exact"] = f"{r.p_no_quad.numerator}/{r.p_no_quad.denominator}"
            row["p_quad_exact"] = f"{r.p_quad.numerator}/{r.p_quad.denominator}"
        rows.append(row)
    header = list(rows[0].keys())
    sys.stdout.write(_emit_rows(rows, header, args.format))
    return 0


def cmd_tables(args) -> int:
    r_k, m_r = census.extremal_tables(args.n)
    out = []
    out.append(_emit_rows([{"k": k, "r_k": v} for k, v in r_k.items()], ["k", "r_k"], args.format))
    out.append(_emit_rows([{"r": r, "M": v} for r, v in m_r.items()], ["r", "M"], args.format))
    rows = []
    for row in census.census_table(args.n):
        doc = {"k": row.k, "total": row.total}
        for d, c in sorted(row.by_dimension.items(), reverse=True):
            doc[f"dim{d}"] = c
        rows.append(doc)
    header = sorted({h for r in rows for h in r}, key=lambda h: (h != "k", h != "total", h))
    out.append(_emit_rows(rows, header, args.format))
    sys.stdout.write("\n".join(out))
    return 0


def cmd_verify(args) -> int:
    ok, rows = census.oracle_matches_formulas(args.n, args.max_k, thread_budget=args.threads)
    printable = [
        {
            "k": r["k"],
            "enumerated": r["enumerated"],
            "formula": r["formula"],
            "match": "PASS" if r["match"] else "FAIL",
        }
        for r in rows
    ]
    sys.stdout.write(_emit_rows(printable, ["k", "enumerated", "formula", "match"], args.format))
    sys.stdout.write(("all rows match\n" if ok else "MISMATCH DETECTED\n"))
    return 0 if ok else 1


def cmd_deck(args) -> int:
    if args.deck_command == "find-quads":
        with open(args.infile) as fh:
            layout = parse_layout(fh.read())
        quads = find_all_quads(layout)
        for quad in quads:
            sys.stdout.write(" | ".join(c.name() for c in quad) + "\n")
        sys.stdout.write(f"{len(quads)} quad(s) in {len(layout)} cards\n")
        return 0
    raise AssertionError(args.deck_command)


def cmd_serve(args) -> int:
    from .service import run

    run(host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qap", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["table", "csv", "doc"], default="table")

    p = sub.add_parser("count", help="closed-form cap count Q(k,n) with dimension split")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    add_format(p)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="run the brute-force enumeration oracle")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-k", type=int, required=True)
    p.add_argument("--threads", type=int, default=None,
                   help="thread budget (default: QAP_THREADS or cpu count)")
    p.add_argument("--by-class", action="store_true",
                   help="split tallies by multiplicity class as well")
    p.add_argument("--engine", choices=["fast", "reference"], default="fast")
    add_format(p)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("classify", help="classify a cap file and print its structure report")
    p.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("probability", help="exact quad-layout probability table")
    p.add_argument("--n", type=int, default=6)
    p.add_argument("--exact", action="store_true", help="include exact rationals")
    add_format(p)
    p.set_defaults(func=cmd_probability)

    p = sub.add_parser("tables", help="extremal tables and the cap census")
    p.add_argument("--n", type=int, default=6)
    add_format(p)
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("verify", help="oracle-vs-formula pass/fail matrix (exit 1 on mismatch)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-k", type=int, default=None)
    p.add_argument("--threads", type=int, default=None)
    add_format(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("deck", help="card deck utilities")
    deck_sub = p.add_subparsers(dest="deck_command", required=True)
    fq = deck_sub.add_parser("find-quads", help="list all quads in a layout file")
    fq.add_argument("--in", dest="infile", required=True)
    p.set_defaults(func=cmd_deck)

    p = sub.add_parser("serve", help="start the interactive cap-builder service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    if getattr(args, "command", None) == "verify" and args.max_k is None:
        from .classify import M_R

        args.max_k = M_R[min(args.n, 6)] + 1 if args.n <= 6 else 9
    if getattr(args, "threads", None) is None and hasattr(args, "threads"):
        args.threads = default_thread_budget()
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
