"""Command-line front end.

Exit status: 0 on success, 1 on domain errors (bad graph, bad word,
refused enumeration, failed check), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import growth, witness as witness_mod
from .corpus import CorpusSpec, generate_corpus
from .errors import HKError
from .graph import (VertexOrder, analyze, build_order, finiteness_check, gk_dimension,
                    parse_graph, simple_cycles)
from .words import Rewriter, format_word, parse_word


def _load(path: str):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise HKError(f"cannot read {path}: {exc.strerror}") from None
    return parse_graph(text)


def _rewriter(g):
    return Rewriter(g, build_order(g, analyze(g)))


def cmd_validate(args) -> int:
    g = _load(args.file)
    print(f"ok: {g.n} vertices, {len(g.arcs)} arcs")
    return 0


def cmd_cycles(args) -> int:
    g = _load(args.file)
    for j, c in enumerate(simple_cycles(g), start=1):
        print(f"C{j}: {' -> '.join(c.vertices)}")
    verdict = finiteness_check(g)
    if verdict.finite:
        print("finite: no two cycles are joined by an oriented path")
    else:
        w = verdict.witness
        print(f"infinite: {' '.join(w.first.vertices)} and {' '.join(w.second.vertices)}"
              f" joined by {'->'.join(w.path)}")
    return 0


def cmd_gk(args) -> int:
    report = gk_dimension(_load(args.file))
    if args.json:
        print(report.to_json(indent=2))
    else:
        print(report.gk if report.finite else "infinite")
    return 0


def cmd_nf(args) -> int:
    g = _load(args.file)
    rw = _rewriter(g)
    result = rw.normal_form(parse_word(g, args.word), strategy=args.strategy, seed=args.seed)
    print(format_word(g, result.normal))
    return 0


def cmd_normal(args) -> int:
    g = _load(args.file)
    print("true" if _rewriter(g).is_normal(parse_word(g, args.word)) else "false")
    return 0


def cmd_enumerate(args) -> int:
    g = _load(args.file)
    if finiteness_check(g).finite:
        rw = _rewriter(g)
    else:
        # no order is singled out; fall back to declaration order
        rw = Rewriter(g, VertexOrder({v: i for i, v in enumerate(g.vertices)}))
    series = growth.enumerate_normal_words(rw, args.max_len, budget=args.budget,
                                           method=args.method, jobs=args.jobs)
    if args.csv:
        sys.stdout.write(series.csv())
    else:
        for n, (p, c) in enumerate(zip(series.density, series.cumulative)):
            print(f"{n:4d} {p:12d} {c:14d}")
    if series.truncated:
        print(f"# truncated at length {series.max_len}: word budget {args.budget} exceeded",
              file=sys.stderr)
    return 0


def cmd_crosscheck(args) -> int:
    g = _load(args.file)
    cv = growth.cross_validate(g, args.max_len, force=args.force, jobs=args.jobs)
    if args.json:
        print(json.dumps(cv.to_dict(), indent=2))
    else:
        e = cv.empirical
        print(f"formula {cv.formula.gk}  estimate {e.estimate:.3f}  rounded {e.rounded}"
              f"  window {e.window[0]}..{e.window[1]}  residual {e.residual:.2e}"
              f"  {'agree' if cv.agree else 'DISAGREE'}")
    return 0 if cv.agree else 1


def cmd_witness(args) -> int:
    g = _load(args.file)
    report = witness_mod.witness(g, grid=args.grid)
    if args.json:
        print(json.dumps(report.to_dict(g), indent=2))
    else:
        print(report.expression.to_text(g))
        print(f"stars {report.star_count}  formula {report.formula_value}"
              f"  checked {report.samples_checked}  normal {report.all_normal}"
              f"  distinct {report.all_distinct}")
        if report.counterexample is not None:
            print(f"counterexample: {format_word(g, report.counterexample)}")
    return 0 if report.passed else 1


def cmd_corpus(args) -> int:
    spec = CorpusSpec(seed=args.seed, count=args.count,
                      constraint="finite" if args.finite_only else "any")
    graphs = generate_corpus(spec)
    out_dir = Path(args.out) if args.out else None
    if out_dir:
        out_dir.mkdir(parents=True, exist_ok=True)
    print(f"# corpus seed={spec.seed} count={spec.count} constraint={spec.constraint}")
    for i, g in enumerate(graphs):
        report = gk_dimension(g)
        status = f"finite gk={report.gk}" if report.finite else "infinite"
        block = f"# graph {i} seed={spec.seed} {status}\n{g.to_text()}"
        if out_dir:
            (out_dir / f"graph{i:03d}.graph").write_text(block, encoding="utf-8")
            print(f"# graph {i}: {status} -> {out_dir / f'graph{i:03d}.graph'}")
        else:
            print(block)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hkgk",
        description="GK dimension of Hecke-Kiselman algebras of oriented graphs.")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(name, func, help):
        p = sub.add_parser(name, help=help)
        p.add_argument("file")
        p.set_defaults(func=func)
        return p

    with_file("validate", cmd_validate, "parse and validate a graph file")
    with_file("cycles", cmd_cycles, "list simple cycles and the finiteness verdict")
    p = with_file("gk", cmd_gk, "GK dimension from the closed formula")
    p.add_argument("--json", action="store_true")
    for name, func, help in (("nf", cmd_nf, "normal form of a word"),
                             ("normal", cmd_normal, "is a word normal?")):
        p = with_file(name, func, help)
        p.add_argument("--word", required=True, help='e.g. "x1 y x1"; "" is the identity')
        if name == "nf":
            p.add_argument("--strategy", choices=["leftmost", "random"], default="leftmost")
            p.add_argument("--seed", type=int, default=0)
    p = with_file("enumerate", cmd_enumerate, "count normal words by length")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--csv", action="store_true")
    p.add_argument("--budget", type=int, default=growth.DEFAULT_BUDGET)
    p.add_argument("--method", choices=["merged", "words"], default="merged")
    p.add_argument("--jobs", type=int, default=1)
    p = with_file("crosscheck", cmd_crosscheck, "formula against fitted growth degree")
    p.add_argument("--max-len", type=int, required=True)
    p.add_argument("--force", action="store_true", help="allow formula values above 4")
    p.add_argument("--json", action="store_true")
    p.add_argument("--jobs", type=int, default=1)
    p = with_file("witness", cmd_witness, "build and check the lower-bound word family")
    p.add_argument("--grid", type=int, default=witness_mod.DEFAULT_GRID)
    p.add_argument("--json", action="store_true")
    p = sub.add_parser("corpus", help="seeded random graphs")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--finite-only", action="store_true")
    p.add_argument("--out", help="write one file per graph into this directory")
    p.set_defaults(func=cmd_corpus)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except HKError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
