"""Command-line front end: ``zeromod4 analyze | construct | verify``.

Exit codes: 0 success, 1 a verification expectation failed, 2 usage or
parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Sequence

from .constructor import extremal_family_G, extremal_family_H, extremal_for_n
from .dsl import DSLError, evaluate_text
from .gadgets import gap, reverse_at
from .graph import (
    CutWitness,
    Graph,
    Graph6Error,
    components,
    is_biconnected,
    is_bipartite,
    is_connected,
    is_planar,
    pair_cuts,
    parse_graph,
    to_graph6,
)
from .residue import cycle_residues, cycle_witnesses, has_mod_cycle, path_residues
from .search import (
    AuditPreconditionError,
    PROP_RANGE,
    enumerate_modfree,
    lemma_audit,
    max_edges,
    parse_named,
    verify_prop_gadget,
)


class UsageError(Exception):
    pass


# ---------------------------------------------------------------- input


def read_graphs(source: str) -> list[Graph]:
    """Graphs from "-" (stdin), a file path, or a literal graph6/sparse6 string."""
    if source == "-":
        lines = sys.stdin.read().splitlines()
    elif os.path.isfile(source):
        with open(source, encoding="ascii", errors="strict") as fh:
            lines = fh.read().splitlines()
    else:
        lines = [source]
    graphs = []
    for lineno, line in enumerate(lines, 1):
        line = line.strip()
        if not line:
            continue
        try:
            graphs.append(parse_graph(line))
        except Graph6Error as exc:
            where = f"line {lineno}: " if len(lines) > 1 else ""
            raise UsageError(f"{where}{exc}") from None
    if not graphs:
        raise UsageError("no graph given")
    return graphs


def emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="ascii") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------- analyze


def analyze_graph(g: Graph, k: int = 4, l: int = 0, pair: Sequence[int] | None = None) -> dict:
    rep: dict = {"graph6": to_graph6(g), "n": g.n, "edges": g.num_edges, "gap": gap(g)}
    rep["cycle_residues"] = cycle_residues(g, k).members
    rep["cycle_witnesses"] = {str(r): w.to_json() for r, w in cycle_witnesses(g, k).items()}
    rep["connected"] = is_connected(g) if g.n else False
    rep["biconnected"] = is_biconnected(g) if g.n >= 3 else False
    rep["planar"] = is_planar(g)
    rep["bipartite"] = is_bipartite(g)
    w = has_mod_cycle(g, 0, 4)
    rep["mod4_cycle"] = w.to_json() if w else None
    if (k, l % k) != (4, 0):
        w2 = has_mod_cycle(g, l, k)
        rep["mod_cycle"] = {"k": k, "l": l % k, "witness": w2.to_json() if w2 else None}
    rep["two_cuts"] = [list(c.vertices) for c in pair_cuts(g)] if rep["biconnected"] else []
    rep["components"] = len(components(g)) if g.n else 0
    if pair is not None:
        x, y = pair
        if not (0 <= x < g.n and 0 <= y < g.n) or x == y:
            raise UsageError(f"--pair needs two distinct vertices below {g.n}")
        rep["path_residues"] = {"pair": [x, y], "residues": path_residues(g, x, y, k).members}
    return rep


def cmd_analyze(args) -> int:
    if args.k < 2:
        raise UsageError("--k must be at least 2")
    reports = [analyze_graph(g, args.k, args.l, args.pair) for g in read_graphs(args.input)]
    if args.json:
        text = "\n".join(json.dumps(r, sort_keys=True) for r in reports)
    else:
        blocks = []
        for r in reports:
            blocks.append("\n".join(f"{key}: {json.dumps(r[key])}" for key in
                                    ("graph6", "n", "edges", "gap", "cycle_residues", "connected",
                                     "biconnected", "planar", "bipartite", "mod4_cycle", "two_cuts")
                                    + (("mod_cycle",) if "mod_cycle" in r else ())
                                    + (("path_residues",) if "path_residues" in r else ())))
        text = "\n\n".join(blocks)
    emit(text, args.out)
    return 0


# ---------------------------------------------------------------- construct


def _parse_reverse(spec: str) -> tuple[int, int, int]:
    try:
        parts = [int(p) for p in spec.split(",")]
    except ValueError:
        raise UsageError(f"--reverse expects X,Y or X,Y,SIDE; got {spec!r}") from None
    if len(parts) == 2:
        parts.append(0)
    if len(parts) != 3:
        raise UsageError(f"--reverse expects X,Y or X,Y,SIDE; got {spec!r}")
    return parts[0], parts[1], parts[2]


def cmd_construct(args) -> int:
    roots = None
    if args.family:
        if args.expr:
            raise UsageError("give either an expression or --family, not both")
        fam = args.family
        if fam == "extremal":
            if args.n is None:
                raise UsageError("--family extremal needs --n")
            if args.n < 12:
                raise UsageError("--family extremal needs n >= 12")
            g, trace = extremal_for_n(args.n, trace=True)
        else:
            if (args.k is None) == (args.n is None):
                raise UsageError(f"--family {fam} needs exactly one of --k or --n")
            k = args.k
            if k is None:
                base = 8 if fam == "G" else 13
                if args.n < base or (args.n - base) % 2:
                    raise UsageError(f"family {fam} has {base}+2k vertices; n={args.n} is not of that form")
                k = (args.n - base) // 2
            if k < 0:
                raise UsageError("--k must be nonnegative")
            builder = extremal_family_G if fam == "G" else extremal_family_H
            g, trace = builder(k, trace=True)
    else:
        if not args.expr:
            raise UsageError("give an expression or --family")
        try:
            rg, trace = evaluate_text(args.expr)
        except DSLError as exc:
            raise UsageError(str(exc)) from None
        g = rg.graph
        roots = [rg.x, rg.y]
    for spec in args.reverse or []:
        x, y, side = _parse_reverse(spec)
        if not (0 <= x < g.n and 0 <= y < g.n) or x == y:
            raise UsageError(f"--reverse {spec}: vertices must be distinct and below {g.n}")
        comps = components(g, g.vertex_mask & ~(1 << x) & ~(1 << y))
        cut = CutWitness((x, y), tuple(tuple(c) for c in comps))
        if len(comps) < 2:
            raise UsageError(f"--reverse {spec}: {{{x},{y}}} is not a vertex cut")
        if not 0 <= side < len(comps):
            raise UsageError(f"--reverse {spec}: side must be below {len(comps)}")
        g = reverse_at(g, cut, side)
    if args.json:
        out = {"graph6": to_graph6(g), "n": g.n, "edges": g.num_edges, "gap": gap(g),
               "trace": trace.to_json()}
        if roots is not None:
            out["roots"] = roots
        emit(json.dumps(out, sort_keys=True), args.out)
    else:
        emit(to_graph6(g), args.out)
    return 0


# ---------------------------------------------------------------- verify


def cmd_verify(args) -> int:
    workers = max(1, args.workers)
    if args.task == "max-edges":
        if args.n is None:
            raise UsageError("max-edges needs --n")
        try:
            rep = max_edges(args.n, args.cls, workers)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = rep.to_json()
        ok = rep.ok
        extremal = rep.extremal
    elif args.task == "prop-table":
        if args.L is None:
            raise UsageError("prop-table needs --L (one of 01, 12, 23, 03)")
        try:
            L = parse_named(args.L)
            ns = [args.n] if args.n is not None else list(range(3, PROP_RANGE[L] + 1))
            reps = [verify_prop_gadget(L, n, workers) for n in ns]
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        payload = {"L": list(L), "cells": [r.to_json() for r in reps]}
        ok = all(r.ok and r.details.get("cell_ok", True) for r in reps)
        extremal = sorted(e["graph6"] + f" {e['roots'][0]} {e['roots'][1]}" for r in reps for e in r.extremal)
    elif args.task == "lemma-audit":
        if args.input:
            graphs = read_graphs(args.input)
        elif args.n is not None:
            try:
                graphs = enumerate_modfree(args.n, "biconnected", workers)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
        else:
            raise UsageError("lemma-audit needs a graph input or --n")
        results = []
        ok = True
        for g in graphs:
            try:
                v = lemma_audit(g)
            except AuditPreconditionError as exc:
                raise UsageError(f"{to_graph6(g)}: {exc}") from None
            ok &= not v
            results.append({"graph6": to_graph6(g), "violations": v})
        payload = {"audited": len(results), "results": results}
        extremal = []
    else:  # pragma: no cover - argparse restricts choices
        raise UsageError(f"unknown task {args.task}")
    payload["ok"] = ok
    print(json.dumps(payload, sort_keys=True, indent=None if args.json else 2))
    if args.out:
        with open(args.out, "w", encoding="ascii") as fh:
            fh.write("".join(line + "\n" for line in extremal))
    return 0 if ok else 1


# ---------------------------------------------------------------- parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zeromod4",
                                description="Graphs without cycles of length 0 mod 4: analysis, "
                                            "constructions and exhaustive checks.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", help="structural report for graph6/sparse6 input")
    a.add_argument("input", help='graph6 or sparse6 string, a file of them, or "-" for stdin')
    a.add_argument("--k", type=int, default=4, help="modulus (default 4)")
    a.add_argument("--l", type=int, default=0, help="residue for the extra mod-cycle query (default 0)")
    a.add_argument("--pair", type=int, nargs=2, metavar=("X", "Y"), help="also report (X,Y)-path residues")
    a.add_argument("--json", action="store_true", help="one JSON object per graph")
    a.add_argument("--out", help="write the report to FILE")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="build a graph from an expression or a family")
    c.add_argument("expr", nargs="?", help='expression such as "F6[a,b] (+) F4[a,b] (+) P4^2"')
    c.add_argument("--family", choices=("G", "H", "extremal"))
    c.add_argument("--k", type=int, help="number of P4 attachments for families G and H")
    c.add_argument("--n", type=int, help="target vertex count")
    c.add_argument("--reverse", action="append", metavar="X,Y[,SIDE]",
                   help="reverse the result at the cut {X,Y}, side index SIDE (repeatable)")
    c.add_argument("--json", action="store_true", help="emit graph6, sizes, gap and trace as JSON")
    c.add_argument("--out", help="write the output to FILE")
    c.set_defaults(func=cmd_construct)

    v = sub.add_parser("verify", help="exhaustive desk checks")
    v.add_argument("task", choices=("max-edges", "prop-table", "lemma-audit"))
    v.add_argument("input", nargs="?", help="graph input for lemma-audit")
    v.add_argument("--n", type=int)
    v.add_argument("--class", dest="cls", default="all", choices=("all", "connected", "biconnected"))
    v.add_argument("--L", help="residue set for prop-table: 01, 12, 23 or 03")
    v.add_argument("--workers", type=int, default=1)
    v.add_argument("--json", action="store_true", help="compact single-line JSON")
    v.add_argument("--out", help="write extremal graphs (graph6, one per line, sorted) to FILE")
    v.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"zeromod4: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
