"""Command-line interface: ``chirotree <command> ...``."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import canonical, io
from .bowtie import MODULE_SEARCH_CAP
from .chirotope import hull_cycle
from .errors import AxiomViolation, ChirotopeError, RealizationNotFound, TreeViolation
from .generate import random_tree
from .realization import realize_tree
from .tree import expand, fingerprint
from .triangulations import (
    ENUMERATION_CAP,
    chain_count,
    chain_tree,
    count_tree,
    count_triangulations_brute,
)


def _db_arg(text):
    n, _, path = text.partition("=")
    if not path or not n.isdigit():
        raise argparse.ArgumentTypeError("expected N=PATH")
    return int(n), path


def _load(args):
    with open(args.file, encoding="utf-8") as fh:
        text = fh.read()
    return io.load_any(text, dict(args.db or []), args.big_endian)


def _out(args, payload, text):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def cmd_validate(args):
    try:
        T, _ = _load(args)
    except AxiomViolation as exc:
        _out(args, {"valid": False, "axiom": exc.axiom, "tuple": list(exc.tuple)},
             f"invalid: {exc.axiom} violated on {', '.join(exc.tuple)}")
        return 1
    except TreeViolation as exc:
        _out(args, {"valid": False, "kind": exc.kind, "location": str(exc.location)},
             f"invalid: {exc}")
        return 1
    _out(args, {"valid": True, "nodes": len(T.nodes), "size": len(T.labels)}, "ok")
    return 0


def cmd_extremes(args):
    T, _ = _load(args)
    chi = expand(T)
    ext, cyc = sorted(chi.extremes), hull_cycle(chi)
    _out(args, {"extremes": ext, "hull_cycle": cyc},
         f"extremes: {' '.join(ext)}\nhull cycle: {' '.join(cyc)}")
    return 0


def cmd_decompose(args):
    T, _ = _load(args)
    C = canonical.canonical_tree(expand(T), cap=args.max_node_size)
    sys.stdout.write(io.emit_tree(C))
    return 0


def cmd_canonicalize(args):
    T, _ = _load(args)
    C = canonical.canonicalize(T, seed=args.seed, cap=args.max_node_size)
    if args.check_confluence:
        ref = fingerprint(C)
        for s in range(args.check_confluence):
            got = fingerprint(canonical.canonicalize(T, "random", seed=s, cap=args.max_node_size))
            if got != ref:
                print(f"confluence check failed for seed {s}", file=sys.stderr)
                return 1
    sys.stdout.write(io.emit_tree(C))
    return 0


def cmd_count(args):
    T, _ = _load(args)
    t0 = time.perf_counter()
    if args.brute:
        n = count_triangulations_brute(expand(T), cap=args.cap)
    else:
        n = count_tree(T, cap=args.cap)
    dt = time.perf_counter() - t0
    _out(args, {"count": str(n), "seconds": round(dt, 6), "method": "brute" if args.brute else "tree"},
         str(n))
    return 0


def cmd_chain(args):
    sigma = args.sigma
    if not sigma or set(sigma) - {"0", "1"}:
        print("sigma must be a non-empty binary string", file=sys.stderr)
        return 2
    formula = chain_count(len(sigma))
    if args.formula_only:
        _out(args, {"sigma": sigma, "formula": str(formula)}, str(formula))
        return 0
    counted = count_tree(chain_tree(sigma))
    _out(args, {"sigma": sigma, "count": str(counted), "formula": str(formula),
                "match": counted == formula}, str(counted))
    if counted != formula:
        print(f"mismatch: tree count {counted} != formula {formula}", file=sys.stderr)
        return 1
    return 0


def cmd_realize(args):
    T, points = _load(args)
    missing = sorted(set(T.nodes) - set(points))
    if missing:
        print(f"nodes {missing} have no point coordinates", file=sys.stderr)
        return 1
    try:
        P = realize_tree(T, points, budget=args.budget)
    except RealizationNotFound as exc:
        _out(args, {"realized": False, "reason": str(exc)}, f"RealizationNotFound: {exc}")
        return 1
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(io.emit_points(P))
    _out(args, {"realized": True, "points": len(P), "output": args.output},
         f"wrote {len(P)} points to {args.output}")
    return 0


def cmd_random_tree(args):
    T, points = random_tree(args.nodes, args.node_size, args.max_degree, args.seed)
    text = io.emit_tree(T, points)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    return 0


def build_parser():
    p = argparse.ArgumentParser(prog="chirotree", description=__doc__)
    p.add_argument("--json", action="store_true", help="machine-readable output")
    sub = p.add_subparsers(dest="command", required=True)

    def with_file(name, func, help_):
        sp = sub.add_parser(name, help=help_)
        sp.add_argument("file")
        sp.add_argument("--db", type=_db_arg, action="append", metavar="N=PATH",
                        help="order-type database for N-point records")
        sp.add_argument("--big-endian", action="store_true",
                        help="16-bit database coordinates are big-endian")
        sp.set_defaults(func=func)
        return sp

    with_file("validate", cmd_validate, "check chirotope axioms or tree invariants")
    with_file("extremes", cmd_extremes, "extreme elements and hull cycle")
    sp = with_file("decompose", cmd_decompose, "canonical tree of a chirotope")
    sp.add_argument("--max-node-size", type=int, default=MODULE_SEARCH_CAP)
    sp = with_file("canonicalize", cmd_canonicalize, "canonical form of a tree")
    sp.add_argument("--seed", type=int, default=None)
    sp.add_argument("--check-confluence", type=int, default=0, metavar="K")
    sp.add_argument("--max-node-size", type=int, default=MODULE_SEARCH_CAP)
    sp = with_file("count", cmd_count, "exact number of triangulations")
    sp.add_argument("--brute", action="store_true", help="enumerate triangulations instead")
    sp.add_argument("--cap", type=int, default=ENUMERATION_CAP,
                    help="largest chirotope enumerated directly")
    sp = with_file("realize", cmd_realize, "verified point realization of a tree")
    sp.add_argument("-o", "--output", required=True)
    sp.add_argument("--budget", type=int, default=64)

    sp = sub.add_parser("chain", help="count a chain tree and check the closed formula")
    sp.add_argument("--sigma", required=True)
    sp.add_argument("--formula-only", action="store_true")
    sp.set_defaults(func=cmd_chain)

    sp = sub.add_parser("random-tree", help="write a random point-decorated tree")
    sp.add_argument("--nodes", type=int, required=True)
    sp.add_argument("--node-size", type=int, required=True)
    sp.add_argument("--max-degree", type=int, default=3)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("-o", "--output", default="-")
    sp.set_defaults(func=cmd_random_tree)
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ChirotopeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
