"""DOT export: nodes as dots, hyperedges as boxes with numbered tentacles,
external nodes annotated "(i)"; derivation trees as one box per sequent."""

from __future__ import annotations

from .graph import Dollar, Hypergraph, Label
from .prover import DerivationTree
from .types import And, Div, HlType, Or, Prim, Sequent, Times


def label_text(label: object) -> str:
    if isinstance(label, Dollar):
        return "$"
    if isinstance(label, Label):
        return label.sym
    return type_text(label)


def graph_text(g: Hypergraph) -> str:
    edges = ", ".join(
        f"{label_text(e.label)}({','.join(e.att)})" for e in g.edges
    )
    iso = [v for v in g.nodes if not g.incidence()[v]]
    iso_part = f" .{','.join(iso)}" if iso else ""
    return f"[{edges}{iso_part} | ext {','.join(g.ext) or '-'}]"


def type_text(t: HlType) -> str:
    if isinstance(t, Prim):
        return t.sym
    if isinstance(t, Div):
        return f"div({type_text(t.num)} / {graph_text(t.den)})"
    if isinstance(t, Times):
        return f"times{graph_text(t.body)}"
    if isinstance(t, And):
        return f"({type_text(t.left)} & {type_text(t.right)})"
    if isinstance(t, Or):
        return f"({type_text(t.left)} | {type_text(t.right)})"
    return repr(t)


def sequent_text(s: Sequent) -> str:
    return f"{graph_text(s.antecedent)} -> {type_text(s.succedent)}"


def _quote(text: str) -> str:
    return '"' + text.replace("\\", "\\\\").replace('"', '\\"') + '"'


def graph_to_dot(g: Hypergraph, name: str = "G") -> str:
    ext_pos = {v: i + 1 for i, v in enumerate(g.ext)}
    lines = [f"graph {name} {{", "  node [fontsize=10];"]
    for v in g.nodes:
        label = f"({ext_pos[v]})" if v in ext_pos else ""
        lines.append(
            f"  {_quote('n_' + v)} [shape=point, width=0.12, xlabel={_quote(label)}];"
        )
    for e in g.edges:
        lines.append(
            f"  {_quote('e_' + e.id)} [shape=box, label={_quote(label_text(e.label))}];"
        )
        for i, v in enumerate(e.att, start=1):
            lines.append(
                f"  {_quote('e_' + e.id)} -- {_quote('n_' + v)} [label={_quote(str(i))}, fontsize=8];"
            )
    lines.append("}")
    return "\n".join(lines)


def tree_to_dot(t: DerivationTree, name: str = "D") -> str:
    lines = [f"digraph {name} {{", "  node [shape=box, fontsize=10];"]
    counter = [0]

    def walk(node: DerivationTree) -> str:
        nid = f"s{counter[0]}"
        counter[0] += 1
        lines.append(f"  {nid} [label={_quote(sequent_text(node.conclusion))}];")
        for p in node.premises:
            pid = walk(p)
            lines.append(f"  {pid} -> {nid} [label={_quote(node.rule)}, fontsize=8];")
        if not node.premises:
            leaf = f"{nid}_leaf"
            lines.append(f"  {leaf} [shape=none, label={_quote(node.rule)}];")
            lines.append(f"  {leaf} -> {nid};")
        return nid

    walk(t)
    lines.append("}")
    return "\n".join(lines)
