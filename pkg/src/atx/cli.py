"""Command-line surface: diff, check, structure, construct, sweep.

Every verdict printed by a subcommand is recomputed from the printed
certificate or witness by an independent code path before the process
exits.  Exit codes: 0 success or verdict true, 1 verdict false with a
witness, 2 usage or parse error, 3 guard exceeded, 4 internal contract
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import coloring, construct, structure
from .errors import AtxError, ContractViolation, ParseError, TooLarge, WrongClass
from .graphs import Graph, max_average_degree, parse_graph
from .orientations import (
    check_certificate,
    compute_diff,
    is_f_AT,
    orient,
)

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_USAGE = 2
EXIT_GUARD = 3
EXIT_CONTRACT = 4


def _emit(obj: dict, args) -> None:
    if getattr(args, "json", False):
        print(json.dumps(obj, sort_keys=True))
    else:
        print(json.dumps(obj, sort_keys=True, indent=2))


def _read_text(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _load_graph(args) -> Graph:
    return parse_graph(_read_text(args.graph), fmt=args.format)


def _parse_anchors(spec: str) -> list:
    anchors = []
    for field in spec.split(","):
        field = field.strip()
        if not field:
            continue
        try:
            v, cap = field.split(":")
            anchors.append((int(v), int(cap)))
        except ValueError:
            raise AtxError(f"bad anchor {field!r}; expected vertex:cap") from None
    if not anchors:
        raise AtxError("no anchors given")
    return anchors


def cmd_diff(args) -> int:
    g = _load_graph(args)
    arc_text = _read_text(args.orientation)
    arcs = []
    for line in arc_text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        t, h = line.split()
        arcs.append((int(t), int(h)))
    o = orient(g, arcs)  # raises if coverage is wrong
    _emit(compute_diff(o).to_json(), args)
    return EXIT_OK


def cmd_check(args) -> int:
    g = _load_graph(args)
    anchors = _parse_anchors(args.anchors)
    caps = coloring.extendability_capacity(g, anchors)
    if args.mode == "at":
        cert = is_f_AT(g, caps)
        if cert is not None:
            if not check_certificate(cert):
                raise ContractViolation("emitted certificate failed re-verification")
            _emit({"mode": "at", "verdict": True, "certificate": cert.to_json()}, args)
            return EXIT_OK
        _emit({"mode": "at", "verdict": False}, args)
        return EXIT_FALSE
    ok, witness = coloring.is_f_choosable(g, caps)
    if ok:
        _emit({"mode": "choosable", "verdict": True}, args)
        return EXIT_OK
    if coloring.find_L_coloring(g, witness) is not None:
        raise ContractViolation("witness assignment is colorable")
    _emit(
        {
            "mode": "choosable",
            "verdict": False,
            "witness": coloring.lists_to_json(witness),
        },
        args,
    )
    return EXIT_FALSE


def cmd_structure(args) -> int:
    g = _load_graph(args)
    _emit(structure.structure_report(g), args)
    return EXIT_OK


THEOREM_ARITIES = {
    "thm3-22": 2,
    "thm3-21": 2,
    "thm6": 3,
    "thm7": 3,
    "thm9": 3,
}


def _run_constructor(g: Graph, theorem: str, anchors: list):
    verts = [v for (v, _) in anchors]
    if theorem == "thm3-22":
        cert, trace = construct.construct_22_orientation(g, *verts)
        return construct.ExtendOutcome(cert, trace)
    if theorem == "thm3-21":
        return construct.construct_21_orientation(g, *verts)
    if theorem == "thm6":
        return construct.construct_222_orientation(g, *verts)
    if theorem == "thm7":
        cert, trace = construct.construct_221_trianglefree(g, *verts)
        return construct.ExtendOutcome(cert, trace)
    return construct.construct_mad_222(g, *verts)


def cmd_construct(args) -> int:
    g = _load_graph(args)
    anchors = _parse_anchors(args.anchors)
    arity = THEOREM_ARITIES[args.theorem]
    if len(anchors) != arity:
        raise AtxError(f"{args.theorem} needs exactly {arity} anchors")
    outcome = _run_constructor(g, args.theorem, anchors)
    if outcome.present:
        cert, trace = outcome.certificate, outcome.trace
        verified = check_certificate(cert) and (
            trace is None or construct.verify_trace(trace, cert)
        )
        if not verified:
            raise ContractViolation("constructed certificate failed re-verification")
        _emit(
            {
                "certificate": cert.to_json(),
                "trace": trace.to_json() if trace else [],
                "verified": True,
            },
            args,
        )
        return EXIT_OK
    # impossibility: confirm the witness lists really admit no coloring
    if coloring.find_L_coloring(g, outcome.witness_lists) is not None:
        raise ContractViolation("impossibility witness is colorable")
    _emit(
        {
            "result": "impossible",
            "reason": outcome.reason,
            "witnessLists": coloring.lists_to_json(outcome.witness_lists)["lists"],
        },
        args,
    )
    return EXIT_FALSE


def cmd_sweep(args) -> int:
    from .sweep import SweepConfig, run_sweep

    config = SweepConfig(
        max_vertices=args.max_vertices,
        class_filter=args.classfilter,
        anchors=args.arity,
        workers=args.workers,
        seed=args.seed,
    )
    stream = None
    if args.graph and args.graph != "@generator":
        stream = _read_text(args.graph).splitlines()
    report = run_sweep(config, stream)
    for line in report.lines:
        print(json.dumps(line, sort_keys=True))
    summary = {
        "graphs": report.graphs,
        "checked": report.checked,
        "counterexamples": report.counterexamples,
        "seconds": round(report.seconds, 3),
    }
    print(json.dumps({"summary": summary}, sort_keys=True), file=sys.stderr)
    return EXIT_OK if not report.counterexamples else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="atx",
        description="Alon-Tarsi extendability toolkit for small graphs",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, graph_help="graph file or - for stdin"):
        sp.add_argument("graph", help=graph_help)
        sp.add_argument(
            "--format",
            choices=["auto", "graph6", "edgelist"],
            default="auto",
            help="input graph format",
        )
        sp.add_argument("--json", action="store_true", help="compact one-line JSON")

    sp = sub.add_parser("diff", help="Eulerian parity counts of an orientation")
    common(sp)
    sp.add_argument("orientation", help="arc list file ('tail head' per line)")
    sp.set_defaults(func=cmd_diff)

    sp = sub.add_parser("check", help="decide f-AT or f-choosability for anchors")
    common(sp)
    sp.add_argument("--anchors", required=True, help="v:cap,v:cap,...")
    sp.add_argument("--mode", choices=["at", "choosable"], default="at")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("structure", help="structural report")
    common(sp)
    sp.set_defaults(func=cmd_structure)

    sp = sub.add_parser("construct", help="build a certified extension orientation")
    common(sp)
    sp.add_argument("--theorem", choices=sorted(THEOREM_ARITIES), required=True)
    sp.add_argument("--anchors", required=True, help="v:cap,v:cap,...")
    sp.set_defaults(func=cmd_construct)

    sp = sub.add_parser("sweep", help="verify the theorems over a graph corpus")
    sp.add_argument(
        "graph",
        nargs="?",
        default="@generator",
        help="graph6 stream file, - for stdin, or @generator (default)",
    )
    sp.add_argument("--classfilter", "--class", dest="classfilter",
                    choices=["k4mf", "k4mf-trianglefree", "mad145", "all"],
                    default="k4mf")
    sp.add_argument("--max-vertices", type=int, default=6)
    sp.add_argument("--arity", type=int, choices=[2, 3], default=2)
    sp.add_argument("--workers", type=int, default=1)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--json", action="store_true")
    sp.set_defaults(func=cmd_sweep)
    return p


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except TooLarge as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except ContractViolation as exc:
        print(f"internal contract violation: {exc}", file=sys.stderr)
        return EXIT_CONTRACT
    except WrongClass as exc:
        print(f"wrong graph class: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except AtxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
