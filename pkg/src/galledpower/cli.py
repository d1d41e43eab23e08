"""Command-line front end: recognize, power, gen, verify, square."""

from __future__ import annotations

import argparse
import os
import sys
from typing import Dict, List, Optional, Sequence, TextIO, Tuple

from .evidence import NotPowerEvidence
from .graph_core import Graph
from .harness import GeneratorConfig, random_gnetwork
from .network import GNetwork, leaf_power, validate
from .recognizer import LabelMismatch, recognize, recognize_square, verify_forest


class DocumentError(ValueError):
    pass


def parse_edge_list(text: str) -> Graph:
    vertices = set()
    edges = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) == 1:
            vertices.add(tokens[0])
        elif len(tokens) == 2:
            u, v = tokens
            if u == v:
                raise DocumentError(f"line {lineno}: self-loop at {u!r}")
            key = (u, v) if u <= v else (v, u)
            if key in seen:
                print(f"warning: duplicate edge {u} {v} ignored", file=sys.stderr)
                continue
            seen.add(key)
            edges.append((u, v))
        else:
            raise DocumentError(f"line {lineno}: expected one or two tokens")
    return Graph(vertices, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"# {len(g.vertices)} vertices, {len(g.edges)} edges"]
    covered = set()
    for u, v in g.sorted_edges():
        covered.add(u)
        covered.add(v)
        lines.append(f"{u} {v}")
    for v in g.vertices:
        if v not in covered:
            lines.append(v)
    return "\n".join(lines) + "\n"


def serialize_network(n: GNetwork) -> str:
    lines = ["leaves"]
    for v in sorted(n.leaf_map):
        for x in n.leaves_of(v):
            lines.append(f"  {x} {v}")
    lines.append("inner")
    for v in n.inner_vertices:
        lines.append(f"  {v}")
    lines.append("edges")
    for u, v in n.inner_graph.sorted_edges():
        lines.append(f"  {u} {v}")
    return "\n".join(lines) + "\n"


def serialize_forest(nets: Sequence[GNetwork]) -> str:
    return "".join(serialize_network(n) for n in nets)


def parse_networks(text: str) -> List[GNetwork]:
    docs: List[Dict[str, List[List[str]]]] = []
    section: Optional[str] = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line in ("leaves", "inner", "edges"):
            if line == "leaves" and (not docs or section == "edges"):
                docs.append({"leaves": [], "inner": [], "edges": []})
            section = line
            if not docs:
                raise DocumentError(f"line {lineno}: document must start with 'leaves'")
            continue
        if section is None or not docs:
            raise DocumentError(f"line {lineno}: content before any section header")
        tokens = line.split()
        expected = 1 if section == "inner" else 2
        if len(tokens) != expected:
            raise DocumentError(
                f"line {lineno}: {section} entries take {expected} token(s)")
        docs[-1][section].append(tokens)
    nets = []
    for doc in docs:
        inner = [t[0] for t in doc["inner"]]
        edges = [(a, b) for a, b in doc["edges"]]
        leaf_map: Dict[str, List[str]] = {}
        for label, parent in doc["leaves"]:
            leaf_map.setdefault(parent, []).append(label)
        try:
            nets.append(GNetwork(Graph(inner, edges), leaf_map))
        except ValueError as exc:
            raise DocumentError(str(exc))
    if not nets:
        raise DocumentError("no network documents found")
    return nets


def parse_network(text: str) -> GNetwork:
    nets = parse_networks(text)
    if len(nets) != 1:
        raise DocumentError("expected exactly one network document")
    return nets[0]


def network_dot(nets: Sequence[GNetwork]) -> str:
    lines = ["graph root {"]
    for bi, n in enumerate(nets):
        middles = set()
        for v in n.inner_vertices:
            ns = n.inner_graph.adj(v)
            if len(ns) >= 2 and all(n.is_visible(w) or True for w in ns):
                if sum(1 for w in ns if len(n.inner_graph.adj(w)) == 1) >= 2:
                    middles.add(v)
        for v in n.inner_vertices:
            name = f"b{bi}_{v.lstrip('#')}"
            if n.is_visible(v):
                shape = "hexagon" if v in middles else "circle"
                lines.append(f'  "{name}" [shape={shape}];')
            else:
                lines.append(f'  "{name}" [shape=circle, style=dashed];')
            for x in n.leaves_of(v):
                lines.append(f'  "leaf_{x}" [shape=box, label="{x}"];')
                lines.append(f'  "{name}" -- "leaf_{x}";')
        for u, v in n.inner_graph.sorted_edges():
            lines.append(f'  "b{bi}_{u.lstrip("#")}" -- "b{bi}_{v.lstrip("#")}";')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], payload: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(payload)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(payload)


def _parse_range(text: str, lo_default: int, hi_default: int) -> Tuple[int, int]:
    if not text:
        return lo_default, hi_default
    if ":" in text:
        lo, hi = text.split(":", 1)
        return int(lo), int(hi)
    return int(text), int(text)


def cmd_recognize(args) -> int:
    try:
        g = parse_edge_list(_read(args.input))
    except (OSError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = recognize(g, args.k, debug=args.debug_patterns)
    if args.debug_patterns:
        for note in result.debug:
            print(f"pattern: {note}", file=sys.stderr)
    if not result.is_power:
        print(f"not a {args.k}-leaf galled-network power", file=sys.stderr)
        print(result.evidence.render(), file=sys.stderr)
        return 1
    payload = (network_dot(result.roots) if args.format == "dot"
               else serialize_forest(result.roots))
    _write(args.output, payload)
    return 0


def cmd_square(args) -> int:
    try:
        g = parse_edge_list(_read(args.input))
    except (OSError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    result = recognize_square(g, debug=args.debug_patterns)
    if not result.is_power:
        print("not a square of a galled network", file=sys.stderr)
        print(result.evidence.render(), file=sys.stderr)
        return 1
    payload = (network_dot(result.roots) if args.format == "dot"
               else serialize_forest(result.roots))
    _write(args.output, payload)
    return 0


def cmd_power(args) -> int:
    try:
        nets = parse_networks(_read(args.input))
    except (OSError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    problems = []
    for n in nets:
        problems.extend(validate(n))
    if problems:
        for p in problems:
            print(f"invalid network: {p}", file=sys.stderr)
        return 2
    edges = set()
    labels = []
    for n in nets:
        labels.extend(n.leaf_labels)
        edges |= leaf_power(n, args.k).edges
    if len(labels) != len(set(labels)):
        print("invalid network: duplicate leaf labels across components",
              file=sys.stderr)
        return 2
    _write(args.output, serialize_edge_list(Graph(labels, edges)))
    return 0


def cmd_gen(args) -> int:
    try:
        leaves = _parse_range(args.leaves, 4, 40)
        cycles = _parse_range(args.cycles, 0, 3)
        lengths = _parse_range(args.cycle_len, 3, 12)
        cfg = GeneratorConfig(
            seed=args.seed,
            leaf_count=leaves,
            cycle_count=cycles,
            cycle_lengths=lengths,
            invisible_density=args.invisible_density,
            stratified=args.stratified,
        )
        cfg.check()
    except (ValueError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    docs = []
    for i in range(args.count):
        from dataclasses import replace

        net = random_gnetwork(replace(cfg, seed=cfg.seed + i))
        docs.append(serialize_network(net))
    if args.output_dir:
        os.makedirs(args.output_dir, exist_ok=True)
        for i, doc in enumerate(docs):
            with open(os.path.join(args.output_dir, f"net{cfg.seed + i:06d}.txt"),
                      "w", encoding="utf-8") as fh:
                fh.write(doc)
    else:
        sys.stdout.write("".join(docs))
    return 0


def cmd_verify(args) -> int:
    try:
        nets = parse_networks(_read(args.network))
        g = parse_edge_list(_read(args.graph))
    except (OSError, DocumentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    try:
        ok = verify_forest(nets, g, args.k)
    except LabelMismatch as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if ok:
        print("verified")
        return 0
    power_edges = set()
    for n in nets:
        power_edges |= leaf_power(n, args.k).edges
    missing = sorted(g.edges - power_edges)
    extra = sorted(power_edges - g.edges)
    if missing:
        print(f"first discrepancy: edge {missing[0][0]}-{missing[0][1]} "
              "is in the graph but not the power", file=sys.stderr)
    elif extra:
        print(f"first discrepancy: edge {extra[0][0]}-{extra[0][1]} "
              "is in the power but not the graph", file=sys.stderr)
    else:
        print("network is invalid", file=sys.stderr)
    return 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="galledpower",
        description="k-leaf power recognition for galled networks (k = 2, 3, 4)",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recognize", help="decide whether a graph is a k-leaf power")
    p.add_argument("input", help="edge-list file ('-' for stdin)")
    p.add_argument("--k", type=int, choices=(2, 3, 4), default=4)
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("network", "dot"), default="network")
    p.add_argument("--debug-patterns", action="store_true")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("square", help="decide whether a graph is a galled-network square")
    p.add_argument("input")
    p.add_argument("--output", "-o", default=None)
    p.add_argument("--format", choices=("network", "dot"), default="network")
    p.add_argument("--debug-patterns", action="store_true")
    p.set_defaults(func=cmd_square)

    p = sub.add_parser("power", help="compute the k-leaf power of a network")
    p.add_argument("input", help="network document ('-' for stdin)")
    p.add_argument("--k", type=int, choices=(2, 3, 4), default=4)
    p.add_argument("--output", "-o", default=None)
    p.set_defaults(func=cmd_power)

    p = sub.add_parser("gen", help="generate random galled networks")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--leaves", default="", help="count or lo:hi range")
    p.add_argument("--cycles", default="", help="count or lo:hi range")
    p.add_argument("--cycle-len", default="", help="length or lo:hi range")
    p.add_argument("--invisible-density", type=float, default=0.3)
    p.add_argument("--stratified", action="store_true")
    p.add_argument("--output-dir", default=None)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check that a network's power equals a graph")
    p.add_argument("network")
    p.add_argument("graph")
    p.add_argument("--k", type=int, choices=(2, 3, 4), default=4)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    # GALLED_LEAF_THREADS caps internal parallelism; the implementation is
    # sequential, so any value (including 0) selects sequential execution.
    os.environ.setdefault("GALLED_LEAF_THREADS", "0")
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BrokenPipeError:
        return 2


if __name__ == "__main__":
    sys.exit(main())
