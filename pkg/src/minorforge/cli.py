"""Batch command-line front door: classify, reduce, check, verify.

Exit status convention, never conflated: 0 = positive/pass, 1 =
negative/fail, 2 = error/refusal/inconclusive.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import InputError, LimitError
from .family import classification_record, classify_case
from .graph import read_edgelist, to_dot, write_edgelist
from .harness import random_pis_instance, report_text, verify_equivalence
from .minors import Relation, default_limits, find_minor_model, find_topo_model, write_model
from .reductions import (
    build_enhanced_framework,
    manifest_text,
    normalize_pis,
    read_pis,
    vc_reduction,
    write_pis,
)

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


def _load_graph(path: str):
    return read_edgelist(Path(path).read_text())


def _limits(args) -> "Limits":
    lim = default_limits()
    overrides = {}
    if getattr(args, "limit_n", None) is not None:
        overrides["max_host"] = args.limit_n
    if getattr(args, "limit_nodes", None) is not None:
        overrides["search_nodes"] = args.limit_nodes
        overrides["deletion_subsets"] = args.limit_nodes
        overrides["structured_nodes"] = args.limit_nodes
    return lim.override(**overrides)


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def cmd_classify(args) -> int:
    h = _load_graph(args.graph)
    lim = _limits(args)
    for rel in (Relation.MINOR, Relation.TOPOLOGICAL_MINOR):
        print(f"relation={rel.value} " + classification_record(h, rel, lim))
        label = classify_case(h, rel, lim)
        for key in sorted(label.payload, key=str):
            value = label.payload[key]
            if isinstance(value, frozenset):
                value = "{" + ",".join(map(str, sorted(value))) + "}"
            print(f"  payload {key}={value}")
    return EXIT_YES


def cmd_reduce(args) -> int:
    lim = _limits(args)
    rel = Relation.parse(args.relation)
    if args.mode == "vc":
        fam = [_load_graph(p) for p in args.family]
        g = _load_graph(args.graph)
        out_graph, _, manifest = vc_reduction(fam, g, args.budget, rel, lim)
    else:
        h = _load_graph(args.pattern)
        inst = normalize_pis(read_pis(Path(args.pis).read_text()))
        fw, _ = build_enhanced_framework([h], inst, rel, lim)
        out_graph, manifest = fw.graph, manifest_text(fw)
    _emit(manifest, args.out)
    if args.out:
        base = Path(args.out)
        base.with_suffix(base.suffix + ".edgelist").write_text(write_edgelist(out_graph))
        if args.format == "dot":
            base.with_suffix(base.suffix + ".dot").write_text(to_dot(out_graph))
    return EXIT_YES


def cmd_check(args) -> int:
    h = _load_graph(args.pattern)
    g = _load_graph(args.host)
    rel = Relation.parse(args.relation)
    lim = _limits(args)
    finder = find_minor_model if rel is Relation.MINOR else find_topo_model
    model = finder(h, g, lim)
    if model is None:
        return EXIT_NO
    _emit(write_model(model), args.out)
    return EXIT_YES


def cmd_verify(args) -> int:
    h = _load_graph(args.pattern)
    rel = Relation.parse(args.relation)
    lim = _limits(args)
    if args.pis:
        inst = normalize_pis(read_pis(Path(args.pis).read_text()))
        print(f"instance source={args.pis} k={inst.k} m={inst.m}")
    else:
        if args.k is None:
            raise InputError("--random needs --k")
        inst = random_pis_instance(
            args.k, args.seed, cross_probability=args.p, max_edges=args.m
        )
        print(
            f"instance source=random seed={args.seed} k={inst.k} m={inst.m} p={args.p}"
        )
        for line in write_pis(inst).splitlines():
            print(f"  {line}")
    report = verify_equivalence(h, inst, rel, lim)
    text = report_text(report)
    _emit(text, args.out)
    if args.out:
        sys.stdout.write(text)
    return {"pass": EXIT_YES, "fail": EXIT_NO, "inconclusive": EXIT_ERROR}[report.outcome]


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="minorforge",
        description="Hardness-reduction toolkit for F-M-Deletion / F-TM-Deletion",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def common(p, relation=True):
        if relation:
            p.add_argument("--relation", choices=["minor", "tm"], default="minor")
        p.add_argument("--limit-nodes", type=int, default=None)
        p.add_argument("--limit-n", type=int, default=None)
        p.add_argument("--out", default=None)
        p.add_argument("--format", choices=["edgelist", "dot"], default="edgelist")

    p = sub.add_parser("classify", help="family analysis of one graph, both relations")
    p.add_argument("graph")
    common(p, relation=False)
    p.set_defaults(fn=cmd_classify)

    p = sub.add_parser("reduce", help="emit a reduction (vc or framework mode)")
    p.add_argument("mode", choices=["vc", "framework"])
    p.add_argument("--family", action="append", default=[], help="family member file (vc mode)")
    p.add_argument("--graph", help="input graph file (vc mode)")
    p.add_argument("--budget", type=int, default=0, help="vertex cover budget (vc mode)")
    p.add_argument("--H", dest="pattern", help="forbidden graph file (framework mode)")
    p.add_argument("--pis", help="PIS instance file (framework mode)")
    common(p)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("check", help="containment query H against G")
    p.add_argument("pattern")
    p.add_argument("host")
    common(p)
    p.set_defaults(fn=cmd_check)

    p = sub.add_parser("verify", help="end-to-end equivalence report")
    p.add_argument("--H", dest="pattern", required=True)
    p.add_argument("--pis", default=None)
    p.add_argument("--random", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--m", type=int, default=None, help="cap on total instance edges")
    p.add_argument("--p", type=float, default=0.3, help="cross-pair probability")
    common(p)
    p.set_defaults(fn=cmd_verify)
    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (InputError, LimitError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
