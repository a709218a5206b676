"""Command-line front end: ``almostcongruent <command> ...`` prints key-sorted JSON.

Exit codes: 0 success, 1 a verification check failed, 2 invalid input,
3 an ambiguous numeric verdict.
"""
from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

import numpy as np

from . import __version__
from . import bounds, hypergraph as hg, lagrangian, realizability, turan, verify
from .errors import AmbiguousDecision, MalformedInput, ToolkitError, UnknownCommand
from .geometry import PointConfig, ToleranceParams, Triangle, classify_triangle, congruence_hypergraph

CACHE_ENV = "ALMOSTCONGRUENT_CACHE_DIR"
EXIT_OK, EXIT_FAIL, EXIT_INVALID, EXIT_AMBIGUOUS = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise MalformedInput(message)


def _json_default(o):
    if isinstance(o, (np.integer,)):
        return int(o)
    if isinstance(o, (np.floating,)):
        return float(o)
    if isinstance(o, np.ndarray):
        return o.tolist()
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, default=_json_default)


def parse_sides(text: str) -> Triangle:
    try:
        sides = [float(s) for s in text.split(",")]
    except ValueError:
        raise MalformedInput(f"--sides expects three comma-separated numbers, got {text!r}") from None
    if len(sides) != 3:
        raise MalformedInput(f"--sides expects three numbers, got {len(sides)}")
    return Triangle(tuple(sides))


def _read_json(path: str):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise MalformedInput(f"cannot read JSON from {path}: {exc}") from None


def load_graph(spec: str) -> hg.ThreeGraph:
    if spec in hg.NAMED_GRAPHS:
        return hg.named(spec)
    if not os.path.exists(spec):
        raise MalformedInput(f"{spec!r} is neither a named graph ({', '.join(hg.NAMED_GRAPHS)}) nor a file")
    try:
        return hg.ThreeGraph.from_json(_read_json(spec))
    except (KeyError, TypeError, ValueError) as exc:
        raise MalformedInput(f"malformed graph file {spec}: {exc}") from None


def load_points(path: str) -> PointConfig:
    try:
        return PointConfig.from_json(_read_json(path))
    except (KeyError, TypeError) as exc:
        raise MalformedInput(f"malformed point file {path}: {exc}") from None


def _names(text: str) -> List[str]:
    names = [s for s in text.split(",") if s]
    for n in names:
        if n not in hg.NAMED_GRAPHS:
            raise MalformedInput(f"unknown graph name {n!r}")
    return names


def _graph_summary(g: hg.ThreeGraph) -> dict:
    return {**g.to_json(), "name": hg.identify(g), "edges_labelled": g.label_edges()}


# -- commands ------------------------------------------------------------------

def cmd_classify(args):
    return {"type": classify_triangle(parse_sides(args.sides).sides).value}


def cmd_congruence_graph(args):
    tri = parse_sides(args.sides)
    cfg = load_points(args.points)
    g = congruence_hypergraph(cfg, tri, ToleranceParams(args.eps), mode=args.mode)
    return {**g.to_json(), "num_edges": g.num_edges}


def cmd_forbidden(args):
    tri = parse_sides(args.sides)
    names = _names(args.graphs) if args.graphs else hg.TABLE_GRAPHS
    return realizability.build_forbidden_catalog(tri, names).to_json()


def cmd_realize(args):
    tri = parse_sides(args.sides)
    if args.point_sets:
        sets = realizability.realizable_point_sets(tri, args.max_size)
        return {"triangle": tri.to_json(),
                "point_sets": [{**s.to_json(), "graph": _graph_summary(congruence_hypergraph(s, tri))} for s in sets]}
    if not args.graph:
        raise MalformedInput("realize needs --graph or --point-sets")
    g = load_graph(args.graph)
    reals = realizability.find_realizations(g, tri)
    return {"graph": g.to_json(), "triangle": tri.to_json(), "exactly_forbidden": not reals,
            "realizations": [{**r.to_json(), "distinct": r.is_distinct()} for r in reals]}


def cmd_lagrangian(args):
    g = load_graph(args.graph)
    res = lagrangian.maximize(g, restarts=args.restarts, seed=args.seed)
    out = res.to_json()
    if args.certify is not None:
        cert = lagrangian.certify(g, args.certify, depth=args.depth)
        res.certified_upper = args.certify if cert.certified else None
        out = res.to_json()
        out["certificate"] = {"bound": args.certify, "certified": cert.certified, "cells": cert.cells,
                              "max_depth": cert.max_depth, "witness": cert.witness}
    return out


def cmd_bounds(args):
    return bounds.upper_bound(parse_sides(args.sides), args.n).to_json()


def cmd_construct(args):
    tri = parse_sides(args.sides)
    c = bounds.build_construction(args.type, tri, args.n, eps=args.eps, strict=not args.greedy)
    out = {**c.to_json(), "count": bounds.count_construction(c)}
    if args.emit:
        Path(args.emit).write_text(bounds.instantiate(c, args.seed).dumps() + "\n")
        out["emitted"] = args.emit
    return out


def cmd_turan(args):
    family = [hg.named(n) for n in _names(args.forbid)]
    res = turan.turan_number(args.n, family, witnesses=args.witnesses, allow_slow=args.allow_slow)
    return res.to_json()


def cmd_enumerate(args):
    forbid = [hg.named(n) for n in _names(args.forbid)] if args.forbid else []
    contains = [hg.named(n) for n in _names(args.contains)] if args.contains else []

    def keep(g):
        return (g.num_edges >= args.min_edges
                and (not args.complete_shadow or hg.shadow_graph(g).is_complete)
                and hg.is_family_free(g, forbid)
                and all(hg.contains_subgraph(g, c) for c in contains))

    classes = hg.enumerate_classes(args.n, keep)
    return {"n": args.n, "count": len(classes), "classes": [_graph_summary(g) for g in classes]}


def cmd_verify(args):
    if args.lemma != "all" and args.lemma not in verify.LEMMAS:
        raise UnknownCommand(f"unknown lemma id {args.lemma!r}; choose from {', '.join(verify.LEMMAS)}")
    reports = verify.verify_suite(args.lemma, seed=args.seed)
    return {"reports": [r.to_json(timing=args.timing) for r in reports],
            "passed": all(r.passed for r in reports)}


COMMANDS = {
    "classify": cmd_classify,
    "congruence-graph": cmd_congruence_graph,
    "forbidden": cmd_forbidden,
    "realize": cmd_realize,
    "lagrangian": cmd_lagrangian,
    "bounds": cmd_bounds,
    "construct": cmd_construct,
    "turan": cmd_turan,
    "enumerate": cmd_enumerate,
    "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="almostcongruent", description="Verification toolkit for almost congruent triangles.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--cache-dir", help=f"cache JSON results here (default: ${CACHE_ENV}, unset disables)")
    p.add_argument("--jobs", type=int, default=1, help="worker cap (computations run sequentially)")
    sub = p.add_subparsers(dest="command", metavar="command", parser_class=_Parser)

    s = sub.add_parser("classify", help="triangle type from side lengths")
    s.add_argument("--sides", required=True)

    s = sub.add_parser("congruence-graph", help="3-graph of congruent triples of a point set")
    s.add_argument("--points", required=True, help='JSON file {"points": [[x, y], ...]}')
    s.add_argument("--sides", required=True)
    s.add_argument("--mode", choices=("exact", "eps"), default="exact")
    s.add_argument("--eps", type=float, default=1e-3)

    s = sub.add_parser("forbidden", help="exact forbiddenness of the named graphs")
    s.add_argument("--sides", required=True)
    s.add_argument("--graphs", help="comma-separated names (default: the catalog graphs)")

    s = sub.add_parser("realize", help="realisations of a graph, or complete-shadow point sets")
    s.add_argument("--sides", required=True)
    s.add_argument("--graph")
    s.add_argument("--point-sets", action="store_true")
    s.add_argument("--max-size", type=int, default=7)

    s = sub.add_parser("lagrangian", help="maximise and optionally certify the Lagrangian")
    s.add_argument("--graph", required=True)
    s.add_argument("--certify", type=float)
    s.add_argument("--restarts", type=int, default=200)
    s.add_argument("--depth", type=int, default=200)
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("bounds", help="lower and upper bounds on h(n, T)")
    s.add_argument("--sides", required=True)
    s.add_argument("--n", type=int, required=True)

    s = sub.add_parser("construct", help="cluster construction and its exact count")
    s.add_argument("--type", required=True, choices=bounds.KINDS)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--sides", required=True)
    s.add_argument("--eps", type=float, default=1e-3)
    s.add_argument("--greedy", action="store_true", help="allow n outside the divisibility condition")
    s.add_argument("--emit", help="write sampled points to this JSON file")
    s.add_argument("--seed", type=int, default=0)

    s = sub.add_parser("turan", help="exact Turan number for small n")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--forbid", required=True)
    s.add_argument("--witnesses", action="store_true")
    s.add_argument("--allow-slow", action="store_true", help="permit n = 7")

    s = sub.add_parser("enumerate", help="isomorphism classes of small 3-graphs")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--forbid")
    s.add_argument("--contains")
    s.add_argument("--complete-shadow", action="store_true")
    s.add_argument("--min-edges", type=int, default=0)

    s = sub.add_parser("verify", help="run verification checks")
    s.add_argument("--lemma", default="all")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--timing", action="store_true", help="include wall time (output no longer reproducible)")
    return p


def _cache_key(args) -> str:
    items = {}
    for k, v in sorted(vars(args).items()):
        if k in ("cache_dir", "jobs", "emit"):
            continue
        if isinstance(v, str) and k in ("points", "graph") and os.path.isfile(v):
            v = hashlib.sha256(Path(v).read_bytes()).hexdigest()
        items[k] = v
    blob = dumps({"version": __version__, "args": items})
    return hashlib.sha256(blob.encode()).hexdigest()


def run_command(argv: Optional[Sequence[str]] = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UnknownCommand("no command given; choose from " + ", ".join(COMMANDS))
        cache_dir = args.cache_dir or os.environ.get(CACHE_ENV)
        path = None
        payload = None
        # commands writing files are not cached
        if cache_dir and not getattr(args, "emit", None) and not getattr(args, "timing", False):
            path = Path(cache_dir) / f"{args.command}-{_cache_key(args)}.json"
            if path.exists():
                payload = path.read_text()
        if payload is None:
            payload = dumps(COMMANDS[args.command](args))
            if path is not None:
                path.parent.mkdir(parents=True, exist_ok=True)
                path.write_text(payload)
        out.write(payload + "\n")
        if args.command == "verify":
            data = json.loads(payload)
            if any(r["status"] == verify.AMBIGUOUS for r in data["reports"]):
                return EXIT_AMBIGUOUS
            return EXIT_OK if data["passed"] else EXIT_FAIL
        return EXIT_OK
    except AmbiguousDecision as exc:
        err.write(f"ambiguous: {exc}\n")
        return EXIT_AMBIGUOUS
    except (ToolkitError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INVALID


def main() -> None:
    sys.exit(run_command())
