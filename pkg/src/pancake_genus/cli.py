"""Command-line front end: ``pancake-genus <command> ...``.

Results go to stdout (or ``--output``) as JSON with sorted keys; some
commands also speak CSV, markdown or DOT.  Every run emits a manifest with
the parameters, version, seeds, wall-clock and a SHA-256 of the output,
written next to ``--output`` or to stderr.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
import time
from pathlib import Path

from . import __version__
from .bounds import family_bounds, format_table
from .embedding import RotationSystem, construction_rotation, trace_faces
from .graph import OverBudgetError, build_graph, girth
from .labeling import CLASS_NAMES, algra, labeling_json, verify_alternating
from .minor import KNOWN_SEEDS, MinorSearchExhausted, find_k33, witness_json
from .perm import GroupParams
from .reproduce import ARTIFACTS, GROUPS, reproduce, write_bundle
from .search import AnnealParams, SearchBudgetError, anneal_search, exhaustive_search

EXIT_OK = 0
EXIT_BAD_ARGS = 2
EXIT_OVER_BUDGET = 3
EXIT_MISMATCH = 4
EXIT_EXHAUSTED = 5

FAMILY_M = {"pn": 1, "bpn": 2}


class BadArgs(ValueError):
    pass


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def family_params(args) -> GroupParams:
    if args.n is None:
        raise BadArgs("--n is required")
    if args.family in FAMILY_M:
        m = FAMILY_M[args.family]
        if args.m is not None and args.m != m:
            raise BadArgs(f"--family {args.family} fixes m={m}")
    else:
        if args.m is None or args.m < 3:
            raise BadArgs("--family pmn needs --m >= 3")
        m = args.m
    try:
        return GroupParams(m, args.n).check()
    except ValueError as exc:
        raise BadArgs(str(exc)) from exc


def _graph(args):
    return build_graph(family_params(args))


def _labeling(g, args):
    if g.m > 2:
        return None
    base = g.index(args.base) if getattr(args, "base", None) else 0
    return algra(g, base)


# -- commands: each returns (text, seeds) -------------------------------------

def cmd_gen(args):
    g = _graph(args)
    if args.format == "dot":
        return g.to_dot(_labeling(g, args) if args.labeled else None), None
    out = {
        "graph": g.name,
        "m": g.m,
        "n": g.n,
        "vertices": g.vertex_count,
        "edges": g.edge_count,
        "degree": g.degree,
        "adjacency": g.adjacency_json(),
    }
    return dumps(out), None


def cmd_girth(args):
    g = _graph(args)
    return dumps({"graph": g.name, "girth": girth(g)}), None


def cmd_label(args):
    g = _graph(args)
    if g.m > 2:
        raise BadArgs("labelings are defined for pn and bpn only")
    lab = _labeling(g, args)
    if args.format == "dot":
        return g.to_dot(lab), None
    counts = {CLASS_NAMES[c]: int((lab == c).sum()) for c in CLASS_NAMES}
    out = {
        "graph": g.name,
        "labeling": labeling_json(g, lab),
        "class_sizes": counts,
        "violations": [[g.vertex_name(u), name, g.vertex_name(w)] for u, name, w in verify_alternating(g, lab)],
    }
    return dumps(out), None


def _faces_table(census, fmt):
    rows = census.to_json()["faces"]
    if fmt == "csv":
        lines = ["signature,length,count"] + [f"{r['signature']},{r['length']},{r['count']}" for r in rows]
    else:
        lines = ["| signature | length | count |", "|---|---|---|"]
        lines += [f"| {r['signature']} | {r['length']} | {r['count']} |" for r in rows]
    return "\n".join(lines) + "\n"


def cmd_embed(args):
    g = _graph(args)
    if args.rotation:
        rot = RotationSystem.load(g, args.rotation)
    else:
        rot = construction_rotation(g, _labeling(g, args))
    census = trace_faces(g, rot)
    if args.format in ("csv", "markdown"):
        return _faces_table(census, args.format), None
    out = census.to_json(g, seeds=args.seeds)
    out["graph"] = g.name
    out["rotation"] = "file" if args.rotation else "construction"
    return dumps(out), None


def cmd_bounds(args):
    p = family_params(args)
    return dumps(family_bounds(args.family, p.m, p.n).to_json()), None


def cmd_tables(args):
    which = [1, 2, 3, 4] if args.which == "all" else [int(args.which)]
    if args.format == "json":
        data = [format_table(w, "json") for w in which]
        return dumps(data[0] if len(data) == 1 else data), None
    if args.format not in ("csv", "markdown"):
        raise BadArgs(f"tables cannot be written as {args.format}")
    return "\n".join(format_table(w, args.format) for w in which), None


def cmd_search(args):
    g = _graph(args)
    if args.mode == "exhaustive":
        outcome = exhaustive_search(g, budget=args.budget, workers=args.workers)
        seeds = None
    else:
        rot0 = RotationSystem.load(g, args.rotation) if args.rotation else None
        params = AnnealParams(args.restarts, args.steps, args.t0, args.cooling, args.seed)
        outcome = anneal_search(g, rot0, params, workers=args.workers)
        seeds = [args.seed]
    out = outcome.to_json(g)
    if args.witness:
        outcome.rotation.save(g, args.witness)
    return dumps(out), seeds


def cmd_minor(args):
    g = _graph(args)
    if args.seeds == "default":
        seeds = KNOWN_SEEDS if g.params == (3, 2) else None
    else:
        data = json.loads(Path(args.seeds).read_text())
        seeds = (data[0], data[1]) if isinstance(data, list) else (data["side_a"], data["side_b"])
    w = find_k33(g, seeds=seeds, node_budget=args.node_budget)
    return dumps(witness_json(g, w)), None


def cmd_reproduce(args):
    report = reproduce(only=args.only, golden=args.golden)
    if args.out:
        write_bundle(report, args.out)
    for d in report.diffs:
        print(("erratum: " if d.erratum else "MISMATCH: ") + str(d), file=sys.stderr)
    summary = report.summary()
    summary["ok"] = report.ok(strict=args.strict)
    summary["strict"] = args.strict
    args._status = EXIT_OK if summary["ok"] else EXIT_MISMATCH
    return dumps(summary), None


# -- parser -------------------------------------------------------------------

def _family_args(p, formats=("json",)):
    p.add_argument("--family", choices=("pn", "bpn", "pmn"), required=True)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--format", choices=formats, default="json")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pancake-genus", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("--output", "-o", help="write the result here instead of stdout")
    parser.add_argument("--verbose", "-v", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="build a graph")
    _family_args(p, ("json", "dot"))
    p.add_argument("--dot", dest="format", action="store_const", const="dot")
    p.add_argument("--labeled", action="store_true", help="shape DOT vertices by V1/V2 class")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("girth", help="shortest cycle length")
    _family_args(p)
    p.set_defaults(func=cmd_girth)

    p = sub.add_parser("label", help="V1/V2 labeling of pn / bpn")
    _family_args(p, ("json", "dot"))
    p.add_argument("--dot", dest="format", action="store_const", const="dot")
    p.add_argument("--base", help="base vertex (default: identity)")
    p.set_defaults(func=cmd_label)

    p = sub.add_parser("embed", help="trace the faces of a rotation system")
    _family_args(p, ("json", "csv", "markdown"))
    p.add_argument("--rotation", help="rotation system file (default: the family construction)")
    p.add_argument("--seeds", action="store_true", help="list one seed edge per face")
    p.add_argument("--base", help="labeling base vertex")
    p.set_defaults(func=cmd_embed)

    p = sub.add_parser("bounds", help="closed-form genus bounds")
    _family_args(p)
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("tables", help="regenerate the bound tables")
    p.add_argument("--which", choices=("1", "2", "3", "4", "all"), default="all")
    p.add_argument("--format", choices=("json", "csv", "markdown"), default="json")
    p.set_defaults(func=cmd_tables)

    p = sub.add_parser("search", help="search rotation systems for more regions")
    _family_args(p)
    p.add_argument("--mode", choices=("exhaustive", "anneal"), default="anneal")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=AnnealParams.restarts)
    p.add_argument("--steps", type=int, default=AnnealParams.steps)
    p.add_argument("--t0", type=float, default=AnnealParams.t0)
    p.add_argument("--cooling", type=float, default=AnnealParams.cooling)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--budget", type=int, default=2**26, help="exhaustive candidate limit")
    p.add_argument("--rotation", help="annealing start (default: the family construction)")
    p.add_argument("--witness", help="also save the best rotation system here")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("minor", help="find and verify a K_3,3 minor")
    _family_args(p)
    p.add_argument("--seeds", default="default", help="'default' or a JSON file [[a,b,c],[d,e,f]]")
    p.add_argument("--node-budget", type=int, default=2_000_000)
    p.set_defaults(func=cmd_minor)

    p = sub.add_parser("reproduce", help="regenerate every published artifact and diff against golden data")
    p.add_argument("--only", action="append", choices=sorted(GROUPS) + list(ARTIFACTS))
    p.add_argument("--golden", help="alternative golden JSON file")
    p.add_argument("--strict", action="store_true", help="documented errata also fail")
    p.add_argument("--out", help="directory for the artifact bundle")
    p.set_defaults(func=cmd_reproduce)
    return parser


def _over_budget_bounds(args):
    try:
        p = family_params(args)
        return family_bounds(args.family, p.m, p.n).to_json()
    except (BadArgs, ValueError, AttributeError):
        return None


def _manifest(args, text, seeds, elapsed):
    params = {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "_status") and v is not None}
    return {
        "command": args.command,
        "parameters": params,
        "version": __version__,
        "seeds": seeds,
        "wall_clock": round(elapsed, 6),
        "output_sha256": hashlib.sha256(text.encode()).hexdigest(),
    }


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    args._status = EXIT_OK
    t0 = time.perf_counter()
    try:
        text, seeds = args.func(args)
    except (BadArgs, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    except (OverBudgetError, SearchBudgetError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        bounds = _over_budget_bounds(args)
        if bounds is not None:
            sys.stdout.write(dumps({"refused": str(exc), "bounds": bounds}))
        return EXIT_OVER_BUDGET
    except MinorSearchExhausted as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_EXHAUSTED
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_ARGS
    manifest = _manifest(args, text, seeds, time.perf_counter() - t0)
    if args.output:
        Path(args.output).write_text(text)
        Path(args.output + ".manifest.json").write_text(dumps(manifest))
    else:
        sys.stdout.write(text)
        print(json.dumps(manifest, sort_keys=True), file=sys.stderr)
    return args._status


if __name__ == "__main__":
    sys.exit(main())
