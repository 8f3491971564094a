"""Command line interface and group file formats.

Input formats, chosen by extension or ``--input-format``:

* ``.table`` / ``.txt``: first line ``n``, then ``n`` rows of ``n`` 0-based indices.
* ``.perm``: one generator per line in disjoint cycle notation, e.g. ``(0 1)(2 3 4)``.
* ``.z``: a single ``m:n:r`` line describing C_m x|_r C_n.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
from pathlib import Path
from typing import Sequence

from . import graphs, kernel
from .errors import GroupError, ParseError
from .kernel import FiniteGroup
from .verifier import SuiteConfig, analyze, default_corpus, GroupSource, run_suite
from .zgen import Z_ORDER_CAP, ZParams, enumerate_z_params, realize

FORMATS = ("table", "perm", "z")
_EXTENSIONS = {".table": "table", ".txt": "table", ".perm": "perm", ".z": "z", ".zp": "z"}
_CYCLE = re.compile(r"\(([^()]*)\)")


def _content_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for no, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((no, line))
    return out


def parse_cayley_text(text: str, name: str = "G") -> FiniteGroup:
    lines = _content_lines(text)
    if not lines:
        raise ParseError("empty Cayley table file")
    no, first = lines[0]
    try:
        n = int(first)
    except ValueError:
        raise ParseError(f"expected the group order, got {first!r}", no) from None
    if len(lines) - 1 != n:
        raise ParseError(f"expected {n} table rows, found {len(lines) - 1}", no)
    rows = []
    for no, line in lines[1:]:
        try:
            row = [int(tok) for tok in line.split()]
        except ValueError:
            raise ParseError(f"non-integer entry in {line!r}", no) from None
        if len(row) != n:
            raise ParseError(f"expected {n} entries, found {len(row)}", no)
        rows.append(row)
    return kernel.from_cayley_table(rows, name, source="file")


def parse_cycles(line: str, lineno: int | None = None) -> list[tuple[int, ...]]:
    if _CYCLE.sub("", line).strip():
        raise ParseError(f"text outside cycles in {line!r}", lineno)
    cycles = []
    for body in _CYCLE.findall(line):
        try:
            cyc = tuple(int(tok) for tok in body.replace(",", " ").split())
        except ValueError:
            raise ParseError(f"non-integer point in ({body})", lineno) from None
        if cyc:
            cycles.append(cyc)
    return cycles


def parse_permutations(text: str, name: str = "G") -> FiniteGroup:
    lines = _content_lines(text)
    parsed = [(no, parse_cycles(line, no)) for no, line in lines]
    degree = 1 + max((p for _, cs in parsed for c in cs for p in c), default=0)
    gens = []
    for no, cycles in parsed:
        try:
            gens.append(kernel.perm_from_cycles(cycles, degree))
        except GroupError as exc:
            raise ParseError(str(exc), no) from None
    return kernel.from_permutation_generators(gens, name, source="permutations")


def parse_zparams_text(text: str) -> FiniteGroup:
    lines = _content_lines(text)
    if len(lines) != 1:
        raise ParseError("expected exactly one m:n:r line", lines[1][0] if lines else None)
    no, line = lines[0]
    try:
        return realize(ZParams.parse(line))
    except ParseError as exc:
        raise ParseError(str(exc), no) from None


def detect_format(path: str | os.PathLike) -> str:
    fmt = _EXTENSIONS.get(Path(path).suffix.lower())
    if fmt is None:
        raise ParseError(f"cannot infer format of {path}; pass --input-format {{{','.join(FORMATS)}}}")
    return fmt


def parse_group_file(path: str | os.PathLike, fmt: str | None = None) -> FiniteGroup:
    fmt = fmt or detect_format(path)
    text = Path(path).read_text(encoding="utf-8")
    name = Path(path).stem
    if fmt == "table":
        return parse_cayley_text(text, name)
    if fmt == "perm":
        return parse_permutations(text, name)
    if fmt == "z":
        return parse_zparams_text(text)
    raise ParseError(f"unknown format {fmt!r}")


def format_cayley_table(G: FiniteGroup) -> str:
    rows = [" ".join(map(str, row)) for row in G.mul]
    return f"{G.order}\n" + "\n".join(rows) + "\n"


# -- commands -------------------------------------------------------------------

def _summary_line(p: ZParams, G: FiniteGroup) -> str:
    from .structure import center_mask, is_frobenius
    d = graphs.diameter(graphs.cyclic_graph(G)) if G.order > 1 else "empty"
    return (f"{p}  order={G.order}  center={center_mask(G).bit_count()}  "
            f"frobenius={is_frobenius(G).is_frobenius if G.order > 1 else False}  "
            f"cyclic_graph_diameter={d}")


def cmd_generate(args: argparse.Namespace) -> int:
    lo, hi = (args.order, args.order) if args.order is not None else args.range
    for N in range(lo, hi + 1):
        for p in enumerate_z_params(N):
            print(_summary_line(p, realize(p)) if not args.params_only else str(p))
    return 0


def cmd_analyze(args: argparse.Namespace) -> int:
    G = parse_group_file(args.input, args.input_format)
    report = analyze(G, SuiteConfig(exhaustive_conjugation=args.exhaustive))
    print(json.dumps(report.to_record(), indent=2, sort_keys=True))
    return 1 if report.failures else 0


def cmd_verify(args: argparse.Namespace) -> int:
    corpus: list = default_corpus(args.max_order, args.min_order)
    corpus += [GroupSource("file", path) for path in args.extra]
    config = SuiteConfig(jobs=args.jobs, exhaustive_conjugation=args.exhaustive,
                         corrupt_delta=args.corrupt_delta)
    desc = f"Z-groups of order {args.min_order}..{args.max_order} plus constructor corpus"
    if args.extra:
        desc += f" plus {len(args.extra)} file(s)"
    report = run_suite(corpus, config, desc)
    text = report.to_jsonl()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    summary = report.summary_record()
    print(f"groups={report.group_count} failed={report.failed} "
          f"duration={summary['duration_seconds']}s")
    for tid, tot in report.totals.items():
        print(f"  {tid:<6} applicable={tot['applicable']:<5} passed={tot['passed']:<5} failed={tot['failed']}")
    for f in report.failures[:20]:
        print(f"  FAIL {f['group']} {f['theorem']}: {f['witness']}")
    return 0 if report.ok else 1


def cmd_export(args: argparse.Namespace) -> int:
    G = parse_group_file(args.input, args.input_format)
    out = Path(args.out)
    if args.format == "table":
        out.write_text(format_cayley_table(G), encoding="utf-8")
        return 0
    build = {
        "cyclic": graphs.cyclic_graph,
        "commuting": graphs.commuting_graph,
        "enhanced_power": graphs.enhanced_power_graph,
    }[args.graph]
    g = build(G)
    if args.format == "dot":
        graphs.export_dot(g, out, G.orders)
    else:
        graphs.export_edge_list(g, out)
    return 0


def _order_range(text: str) -> tuple[int, int]:
    m = re.fullmatch(r"(\d+)(?:\.\.|-|:)(\d+)", text.strip())
    if not m:
        raise argparse.ArgumentTypeError(f"expected LO..HI, got {text!r}")
    lo, hi = int(m.group(1)), int(m.group(2))
    if not 1 <= lo <= hi <= Z_ORDER_CAP:
        raise argparse.ArgumentTypeError(f"need 1 <= LO <= HI <= {Z_ORDER_CAP}")
    return lo, hi


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zcyclic", description="Cyclic graphs of finite groups and Z-groups.")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="list Z-groups of an order or order range")
    which = g.add_mutually_exclusive_group(required=True)
    which.add_argument("--order", type=_positive)
    which.add_argument("--range", type=_order_range, metavar="LO..HI")
    g.add_argument("--params-only", action="store_true", help="print only m:n:r")
    g.set_defaults(func=cmd_generate)

    a = sub.add_parser("analyze", help="print the report of one group")
    a.add_argument("--in", dest="input", required=True)
    a.add_argument("--input-format", choices=FORMATS, help="override detection by extension")
    a.add_argument("--exhaustive", action="store_true", help="check conjugation covariance on all triples")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="check every theorem over the default corpus")
    v.add_argument("--max-order", type=_positive, default=300)
    v.add_argument("--min-order", type=_positive, default=2)
    v.add_argument("--extra", action="append", default=[], metavar="FILE", help="additional group file")
    v.add_argument("--jobs", type=_positive, default=1)
    v.add_argument("--report", metavar="PATH", help="write line-delimited JSON records here")
    v.add_argument("--exhaustive", action="store_true")
    v.add_argument("--corrupt-delta", action="store_true",
                   help="negative control: delete one cyclic-graph edge per group before checking")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("export", help="write a graph or Cayley table")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--input-format", choices=FORMATS, help="override detection by extension")
    e.add_argument("--graph", choices=graphs.KINDS, default="cyclic")
    e.add_argument("--format", choices=("dot", "edges", "table"), default="dot",
                   help="dot or edges write the graph; table writes the Cayley table")
    e.add_argument("--out", required=True)
    e.set_defaults(func=cmd_export)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "min_order", 1) > getattr(args, "max_order", Z_ORDER_CAP):
        parser.error("--min-order must not exceed --max-order")
    if getattr(args, "max_order", 0) > Z_ORDER_CAP:
        parser.error(f"--max-order must not exceed {Z_ORDER_CAP}")
    if getattr(args, "min_order", 2) < 2:
        parser.error("--min-order must be at least 2")
    try:
        return args.func(args)
    except (GroupError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
