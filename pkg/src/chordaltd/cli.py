"""Command-line front end.

Subcommands mirror the workflow: inspect the graph, test chordality,
complete if needed, decompose, verify.  Every subcommand reads ``-`` as
stdin and offers ``--json`` machine output.  Exit codes: 0 all requested
checks pass, 1 a check failed, 2 usage error, 3 I/O or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import replace

from . import __version__
from .errors import Error, ParseError
from .fields import GF, QQ
from .graphs import (
    associated_graph,
    check_peo,
    chordal_complete,
    find_peo,
    graph_of_polys,
    is_subgraph,
    sparsity,
    to_dot,
    treewidth_bound,
)
from .reduction import LeveledSystem, prem_chain_map, reduction_stages
from .systems import parse_system, render_poly, render_system
from .verify import (
    CheckReport,
    check_decomposition,
    check_reduction_chain,
    check_tree_chordality,
    native_prime_runs,
    random_chordal_system,
)
from .wang import DecompTree, decompose

DEFAULT_PRIMES = (3, 5, 7)


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _write_text(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def _field_from_spec(spec: str):
    if spec == "q":
        return QQ
    if spec.startswith("p:"):
        return GF(int(spec[2:]))
    raise ValueError(f"bad field spec {spec!r} (use q or p:PRIME)")


def _load_system(args):
    field = _field_from_spec(getattr(args, "field", "q"))
    return parse_system(_read_text(args.file), field)


def _emit_json(doc) -> None:
    print(json.dumps(doc, indent=2))


def _graph_json(graph) -> dict:
    doc = {
        "vertices": [graph.name(v) for v in sorted(graph.vertices)],
        "edges": [[graph.name(a), graph.name(b)] for a, b in sorted(graph.edges)],
    }
    if graph.weights is not None:
        doc["weights"] = {
            f"{graph.name(a)},{graph.name(b)}": graph.weights[(a, b)]
            for a, b in sorted(graph.edges)
        }
    return doc


def _print_report(report: CheckReport, as_json: bool) -> int:
    if as_json:
        _emit_json(report.to_json_dict())
    else:
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


def _cycle_str(graph, cycle) -> str:
    return "-".join(graph.name(v) for v in cycle)


def cmd_parse(args) -> int:
    system = _load_system(args)
    if args.json:
        _emit_json({
            "vars": list(system.vars),
            "polys": [render_poly(p, system.vars) for p in system.polys],
        })
    else:
        sys.stdout.write(render_system(system))
    return 0


def cmd_graph(args) -> int:
    system = _load_system(args)
    graph = associated_graph(system, weighted=args.weighted)
    if args.dot:
        _write_text(args.dot, to_dot(graph))
    if args.json:
        _emit_json(_graph_json(graph))
    elif not args.dot:
        print("vertices:", " ".join(graph.name(v) for v in sorted(graph.vertices)))
        for a, b in sorted(graph.edges):
            weight = f"  [{graph.weights[(a, b)]}]" if graph.weights else ""
            print(f"{graph.name(a)} -- {graph.name(b)}{weight}")
    return 0


def cmd_chordal(args) -> int:
    system = _load_system(args)
    graph = associated_graph(system)
    if args.order:
        names = [t.strip() for t in args.order.split("<")]
        index = {name: i + 1 for i, name in enumerate(system.vars)}
        try:
            order = [index[name] for name in names]
        except KeyError as exc:
            raise ParseError(f"unknown variable {exc.args[0]!r} in --order", 1, 1)
        result = check_peo(graph, order)
        if args.json:
            doc = {"order_is_peo": result.ok}
            if not result.ok:
                a, b = result.missing_edge
                doc["failing_vertex"] = graph.name(result.failing_vertex)
                doc["missing_edge"] = [graph.name(a), graph.name(b)]
            _emit_json(doc)
        elif result.ok:
            print("order is a PEO: yes")
        else:
            a, b = result.missing_edge
            print(f"order is a PEO: no; fails at {graph.name(result.failing_vertex)}"
                  f" with missing edge ({graph.name(a)}, {graph.name(b)})")
        return 0 if result.ok else 1
    cert = find_peo(graph)
    if args.json:
        doc = {"chordal": cert.chordal}
        if cert.chordal:
            doc["peo"] = [graph.name(v) for v in cert.peo]
        else:
            doc["witness_cycle"] = [graph.name(v) for v in cert.witness_cycle]
        _emit_json(doc)
    elif cert.chordal:
        print("chordal: yes; peo: " + " < ".join(graph.name(v) for v in cert.peo))
    else:
        print("chordal: no; witness cycle: " + _cycle_str(graph, cert.witness_cycle))
    return 0 if cert.chordal else 1


def cmd_complete(args) -> int:
    system = _load_system(args)
    graph = associated_graph(system)
    completed, fill, order = chordal_complete(graph)
    bound = treewidth_bound(graph, exact=args.exact)
    if args.dot:
        _write_text(args.dot, to_dot(completed))
    if args.json:
        _emit_json({
            "fill": [[graph.name(a), graph.name(b)] for a, b in sorted(fill)],
            "peo": [graph.name(v) for v in order],
            "treewidth_bound": bound,
            "exact": args.exact,
        })
    else:
        label = "treewidth" if args.exact else "treewidth bound"
        for a, b in sorted(fill):
            print(f"fill: {graph.name(a)} -- {graph.name(b)}")
        print(f"fill edges: {len(fill)}")
        print(f"{label}: {bound}")
    return 0


def cmd_reduce(args) -> int:
    system = _load_system(args)
    graph = associated_graph(system)
    leveled = LeveledSystem.from_system(system)
    stages = reduction_stages(leveled, prem_chain_map(args.pivot))
    rows = []
    for i, stage in stages:
        if i < args.to:
            break
        inside = is_subgraph(graph_of_polys(stage.members()), graph)
        rows.append((i, stage, inside.ok))
    if args.json:
        _emit_json({
            "stages": [
                {
                    "level": i,
                    "polys": [render_poly(p, system.vars) for p in stage.members()],
                    "subgraph_of_input": ok,
                }
                for i, stage, ok in rows
            ]
        })
    else:
        for i, stage, ok in rows:
            polys = ", ".join(render_poly(p, system.vars) for p in stage.members())
            print(f"level {i}: [{polys}]  subgraph of input: {'yes' if ok else 'no'}")
    return 0


def cmd_decompose(args) -> int:
    system = _load_system(args)
    tree = decompose(system, pivot=args.pivot, early_prune=not args.no_early_prune)
    if args.tree:
        _write_text(args.tree, json.dumps(tree.to_json_dict(), indent=2) + "\n")
    if args.json:
        _emit_json(tree.to_json_dict())
    else:
        print(f"nodes: {len(tree.nodes)}; systems: {len(tree.systems)}")
        for idx, sys_ in enumerate(tree.systems, 1):
            eqs = ", ".join(render_poly(p, system.vars) for p in sys_.equations)
            ineqs = ", ".join(render_poly(p, system.vars) for p in sys_.inequations)
            print(f"T{idx}: [{eqs}]")
            print(f"U{idx}: [{ineqs}]")
    return 0


def cmd_verify(args) -> int:
    text = _read_text(args.file)
    tree = DecompTree.load(args.tree)
    primes = tuple(int(tok) for tok in args.primes.split(","))
    if tree.field == QQ:
        report = native_prime_runs(text, primes=primes, pivot=tree.pivot_spec,
                                   early_prune=tree.early_prune)
    else:
        system = parse_system(text, tree.field)
        report = check_decomposition(system, tree)
    return _print_report(report, args.json)


def cmd_check_theorems(args) -> int:
    system = _load_system(args)
    seed = args.seed if args.seed is not None else int(
        os.environ.get("CHORDAL_TD_SEED", "0"))
    def prefixed(label, entries):
        return [replace(entry, name=f"{label}: {entry.name}") for entry in entries]

    checks = []
    checks.extend(prefixed("input reduction", check_reduction_chain(system).checks))
    for pivot in ("first", "min-terms", "min-support", "index:1"):
        tree = decompose(system, pivot=pivot)
        checks.extend(prefixed(f"input pivot={pivot}",
                               check_tree_chordality(system, tree).checks))
    if system.field == QQ:
        checks.extend(prefixed("input zero sets",
                               native_prime_runs(system, primes=DEFAULT_PRIMES).checks))
    else:
        checks.extend(prefixed("input zero sets",
                               check_decomposition(system, decompose(system)).checks))
    for run in range(args.runs):
        rand = random_chordal_system(
            n=2 + run % 3, max_deg=3, terms=2,
            field=GF(DEFAULT_PRIMES[run % 2]), seed=seed + run)
        tree = decompose(rand, pivot="first")
        checks.extend(prefixed(f"random {run}",
                               check_tree_chordality(rand, tree).checks))
        checks.extend(prefixed(f"random {run}",
                               check_decomposition(rand, tree).checks))
        rq = random_chordal_system(n=2 + run % 4, max_deg=3, terms=2,
                                   field=QQ, seed=seed + run)
        checks.extend(prefixed(f"random {run} reduction",
                               check_reduction_chain(rq).checks))
    report = CheckReport(checks)
    if args.json:
        _emit_json(report.to_json_dict())
    else:
        failures = [c for c in report.checks if not c.passed and not c.observational]
        print(f"checks: {len(report.checks)}; failures: {len(failures)}")
        for line in report.lines():
            print(line)
    return 0 if report.ok else 1


def cmd_sparsity(args) -> int:
    system = _load_system(args)
    s_v, s_v_w = sparsity(system)
    if args.json:
        _emit_json({
            "s_v": str(s_v),
            "s_v_decimal": float(s_v),
            "s_v_w": str(s_v_w),
            "s_v_w_decimal": float(s_v_w),
        })
    else:
        print(f"s_v   = {s_v} = {float(s_v):.6f}")
        print(f"s_v^w = {s_v_w} = {float(s_v_w):.6f}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="chordaltd",
        description="Triangular decomposition with chordal-graph tracking.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.add_argument("file", help="input system (.psys), or - for stdin")
        p.add_argument("--json", action="store_true", help="machine output")
        p.set_defaults(func=func)
        return p

    add("parse", cmd_parse, help="validate and echo canonical form")

    p = add("graph", cmd_graph, help="associated graph")
    p.add_argument("--weighted", action="store_true")
    p.add_argument("--dot", metavar="PATH", help="write Graphviz DOT")

    p = add("chordal", cmd_chordal, help="chordality verdict with certificate")
    p.add_argument("--order", metavar="ORD", help='check a given order "x1<x2<..."')

    p = add("complete", cmd_complete, help="greedy chordal completion")
    p.add_argument("--dot", metavar="PATH")
    p.add_argument("--exact", action="store_true",
                   help="exact treewidth (at most 10 vertices)")

    p = add("reduce", cmd_reduce, help="successive reduction chain")
    p.add_argument("--to", type=int, default=1, metavar="I",
                   help="stop after reducing to this level (default 1)")
    p.add_argument("--pivot", default="first",
                   help="tie-break inside the reduction chain")

    p = add("decompose", cmd_decompose, help="triangular decomposition")
    p.add_argument("--field", default="q", metavar="q|p:PRIME")
    p.add_argument("--pivot", default="first",
                   metavar="first|min-terms|min-support|index:K")
    p.add_argument("--tree", metavar="PATH", help="write the decomposition tree JSON")
    p.add_argument("--no-early-prune", action="store_true",
                   help="keep inconsistent branches until the final filter")

    p = sub.add_parser("verify", help="zero-set oracle against a recorded tree")
    p.add_argument("file")
    p.add_argument("tree", metavar="TREE.json")
    p.add_argument("--primes", default="3,5,7")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = add("check-theorems", cmd_check_theorems,
            help="run the structural-theorem suite")
    p.add_argument("--runs", type=int, default=10, metavar="N",
                   help="additional random systems to test (default 10)")
    p.add_argument("--seed", type=int, default=None)

    p = add("sparsity", cmd_sparsity, help="variable sparsity measures")

    for sp in sub.choices.values():
        sp.add_argument("--threads", type=int, default=1, help=argparse.SUPPRESS)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code in (0, None) else 2
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (Error, ValueError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
