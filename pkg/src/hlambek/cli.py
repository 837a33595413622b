"""Command-line surface: prove, check-tree, member, translate, hrg2hlg,
intersect, enumerate, render.

Exit codes: 0 affirmative verdict, 1 negative verdict, 2 usage or format
error, 3 budget exceeded.  Standard output carries the structured result;
standard error carries diagnostics only.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import dot as dotmod
from . import jsonio
from .graph import GraphError
from .grammars import (
    Hlg,
    Hrg,
    MEMBER,
    NOT_MEMBER,
    hlg_member,
    hrg_derive,
    hrg_to_hlg,
    intersect_hrgs,
)
from .prover import (
    BUDGET_EXCEEDED,
    DERIVABLE,
    Budget,
    Mode,
    prove,
    verify_tree,
)
from .strcalc import CALCULI, parse_sequent, translate

EXIT_YES = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3


def _load_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as err:
        raise GraphError(f"cannot read {path}: {err}") from err
    except json.JSONDecodeError as err:
        raise GraphError(f"{path}: invalid JSON at line {err.lineno}: {err.msg}") from err


def _budget(args) -> Budget:
    seconds = args.budget_ms / 1000.0 if args.budget_ms else 10.0
    return Budget(max_nodes=args.budget_nodes, max_seconds=seconds)


def _write(path: str | None, text: str) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text + "\n")


def cmd_prove(args) -> int:
    seq = jsonio.sequent_from_json(_load_json(args.sequent), args.sequent)
    mode = Mode.parse(args.mode)
    result = prove(seq, mode=mode, budget=_budget(args))
    out = {"verdict": result.verdict, "nodes": result.nodes, "mode": str(mode)}
    if result.tree is not None:
        tree_json = jsonio.tree_to_json(result.tree)
        out["tree_size"] = result.tree.node_count()
        if args.tree:
            _write(args.tree, json.dumps(tree_json, indent=2))
        if args.dot:
            _write(args.dot, dotmod.tree_to_dot(result.tree))
    print(json.dumps(out))
    if result.verdict == DERIVABLE:
        return EXIT_YES
    if result.verdict == BUDGET_EXCEEDED:
        return EXIT_BUDGET
    return EXIT_NO


def cmd_check_tree(args) -> int:
    seq = jsonio.sequent_from_json(_load_json(args.sequent), args.sequent)
    tree = jsonio.tree_from_json(_load_json(args.tree), args.tree)
    from .graph import isomorphic

    ok, diag = verify_tree(tree)
    matches = (
        tree.conclusion.succedent == seq.succedent
        and isomorphic(tree.conclusion.antecedent, seq.antecedent) is not None
    )
    if ok and not matches:
        ok, diag = False, "root: conclusion does not match the stated sequent"
    print(json.dumps({"valid": ok, "diagnostic": diag}))
    return EXIT_YES if ok else EXIT_NO


def cmd_member(args) -> int:
    grammar = jsonio.grammar_from_json(_load_json(args.grammar), args.grammar)
    graph = jsonio.graph_from_json(_load_json(args.graph), args.graph)
    if isinstance(grammar, Hrg):
        grammar = hrg_to_hlg(grammar)
    result = hlg_member(grammar, graph, budget=_budget(args), jobs=args.jobs)
    out = {"verdict": result.verdict, "nodes": result.nodes}
    if result.witness is not None:
        witness_json = {
            "assignment": {
                eid: jsonio.type_to_json(t)
                for eid, t in sorted(result.witness.assignment.items())
            },
            "tree": jsonio.tree_to_json(result.witness.tree),
        }
        if args.witness:
            _write(args.witness, json.dumps(witness_json, indent=2))
    print(json.dumps(out))
    if result.verdict == MEMBER:
        return EXIT_YES
    if result.verdict == NOT_MEMBER:
        return EXIT_NO
    return EXIT_BUDGET


def cmd_translate(args) -> int:
    seq = parse_sequent(args.sequent, args.calc)
    graph_seq = translate(seq, args.calc)
    print(json.dumps(jsonio.sequent_to_json(graph_seq)))
    return EXIT_YES


def cmd_hrg2hlg(args) -> int:
    hrg = jsonio.hrg_from_json(_load_json(args.grammar), args.grammar)
    print(json.dumps(jsonio.hlg_to_json(hrg_to_hlg(hrg))))
    return EXIT_YES


def cmd_intersect(args) -> int:
    hrgs = [jsonio.hrg_from_json(_load_json(p), p) for p in args.grammars]
    print(json.dumps(jsonio.hlg_to_json(intersect_hrgs(hrgs))))
    return EXIT_YES


def cmd_enumerate(args) -> int:
    hrg = jsonio.hrg_from_json(_load_json(args.grammar), args.grammar)
    for g in hrg_derive(hrg, args.max_edges):
        print(json.dumps(jsonio.graph_to_json(g.renumbered())))
    return EXIT_YES


def cmd_render(args) -> int:
    data = _load_json(args.input)
    if isinstance(data, dict) and "rule" in data:
        tree = jsonio.tree_from_json(data, args.input)
        text = dotmod.tree_to_dot(tree)
    elif isinstance(data, dict) and "antecedent" in data:
        seq = jsonio.sequent_from_json(data, args.input)
        text = dotmod.graph_to_dot(seq.antecedent)
    else:
        graph = jsonio.graph_from_json(data, args.input)
        text = dotmod.graph_to_dot(graph)
    if args.dot:
        _write(args.dot, text)
    else:
        print(text)
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlambek",
        description="Prover and grammar engine for the hypergraph Lambek calculus",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_budget(p):
        p.add_argument("--budget-ms", type=int, default=10_000,
                       help="time budget in milliseconds (default 10000)")
        p.add_argument("--budget-nodes", type=int, default=10**6,
                       help="search node budget (default 1e6)")
        p.add_argument("--deterministic", action="store_true",
                       help="force single-threaded, byte-stable output")
        p.add_argument("--jobs", type=int, default=1,
                       help="parallel assignment checks (membership only)")

    p = sub.add_parser("prove", help="decide derivability of a graph sequent")
    p.add_argument("sequent")
    p.add_argument("--mode", default="hl",
                   choices=["hl", "hl+w", "hl+c", "hl+wc", "hmalc",
                            "hmalc+w", "hmalc+c", "hmalc+wc"])
    p.add_argument("--tree", help="write the derivation tree JSON here")
    p.add_argument("--dot", help="write a DOT rendering of the tree here")
    add_budget(p)
    p.set_defaults(func=cmd_prove)

    p = sub.add_parser("check-tree", help="verify a derivation tree certificate")
    p.add_argument("sequent")
    p.add_argument("tree")
    p.set_defaults(func=cmd_check_tree)

    p = sub.add_parser("member", help="grammar membership with witness")
    p.add_argument("grammar")
    p.add_argument("graph")
    p.add_argument("--witness", help="write the witness JSON here")
    add_budget(p)
    p.set_defaults(func=cmd_member)

    p = sub.add_parser("translate", help="string sequent to graph sequent JSON")
    p.add_argument("--calc", required=True, choices=list(CALCULI))
    p.add_argument("sequent")
    p.set_defaults(func=cmd_translate)

    p = sub.add_parser("hrg2hlg", help="convert a WGNF HRG to an HL-grammar")
    p.add_argument("grammar")
    p.set_defaults(func=cmd_hrg2hlg)

    p = sub.add_parser("intersect", help="HL-grammar for an intersection of WGNF HRGs")
    p.add_argument("grammars", nargs="+")
    p.set_defaults(func=cmd_intersect)

    p = sub.add_parser("enumerate", help="enumerate terminal graphs of an HRG")
    p.add_argument("grammar")
    p.add_argument("--max-edges", type=int, required=True)
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("render", help="DOT rendering of a graph or tree JSON")
    p.add_argument("input")
    p.add_argument("--dot", help="output path (default: stdout)")
    p.set_defaults(func=cmd_render)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    if getattr(args, "deterministic", False):
        args.jobs = 1
    try:
        return args.func(args)
    except GraphError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
