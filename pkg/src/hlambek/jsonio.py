"""JSON interchange for graphs, types, sequents, derivation trees, grammars.

Graph: ``{"nodes":[id...],"edges":[{"id":..,"label":<Label|Type|"$">,
"att":[id...]}...],"ext":[id...]}`` with ``Label = {"sym":..,"arity":..}``.
Type: ``{"prim":{...}} | {"div":{"num":..,"den":..}} | {"times":<graph>}``;
the additive extension uses ``{"and":[..,..]}`` and ``{"or":[..,..]}``.
Sequent: ``{"antecedent":..,"succedent":..}``.  Tree: ``{"conclusion":..,
"rule":..,"witness":{...},"premises":[...]}``.  Grammars: HLG
``{"alphabet":[Label...],"start":<type>,"lexicon":[{"sym":..,"type":..}]}``,
HRG ``{"nonterminals":[...],"terminals":[...],"start":..,
"productions":[{"lhs":..,"rhs":<graph>}]}``.
"""

from __future__ import annotations

import json
from typing import Any

from .graph import Dollar, GraphError, Hypergraph, Label
from .grammars import Hlg, Hrg
from .prover import DerivationTree
from .types import And, Div, HlType, Or, Prim, Sequent, Times, is_type


class FormatError(GraphError):
    """Malformed JSON input; the message carries the offending path."""


def _expect(cond: bool, path: str, why: str) -> None:
    if not cond:
        raise FormatError(f"{path}: {why}")


# -- dumping -------------------------------------------------------------------


def label_to_json(label: object) -> Any:
    if isinstance(label, Dollar):
        return "$"
    if isinstance(label, Label):
        return {"sym": label.sym, "arity": label.arity}
    if is_type(label):
        return type_to_json(label)
    raise FormatError(f"unserializable label {label!r}")


def graph_to_json(g: Hypergraph) -> dict:
    return {
        "nodes": list(g.nodes),
        "edges": [
            {"id": e.id, "label": label_to_json(e.label), "att": list(e.att)}
            for e in g.edges
        ],
        "ext": list(g.ext),
    }


def type_to_json(t: HlType) -> dict:
    if isinstance(t, Prim):
        return {"prim": {"sym": t.sym, "arity": t.arity}}
    if isinstance(t, Div):
        return {"div": {"num": type_to_json(t.num), "den": graph_to_json(t.den)}}
    if isinstance(t, Times):
        return {"times": graph_to_json(t.body)}
    if isinstance(t, And):
        return {"and": [type_to_json(t.left), type_to_json(t.right)]}
    if isinstance(t, Or):
        return {"or": [type_to_json(t.left), type_to_json(t.right)]}
    raise FormatError(f"unserializable type {t!r}")


def sequent_to_json(s: Sequent) -> dict:
    return {
        "antecedent": graph_to_json(s.antecedent),
        "succedent": type_to_json(s.succedent),
    }


def tree_to_json(t: DerivationTree) -> dict:
    return {
        "conclusion": sequent_to_json(t.conclusion),
        "rule": t.rule,
        "witness": t.witness,
        "premises": [tree_to_json(p) for p in t.premises],
    }


def hlg_to_json(g: Hlg) -> dict:
    return {
        "alphabet": [{"sym": l.sym, "arity": l.arity} for l in g.alphabet],
        "start": type_to_json(g.start),
        "lexicon": [{"sym": sym, "type": type_to_json(t)} for sym, t in g.lexicon],
    }


def hrg_to_json(g: Hrg) -> dict:
    return {
        "nonterminals": [{"sym": l.sym, "arity": l.arity} for l in g.nonterminals],
        "terminals": [{"sym": l.sym, "arity": l.arity} for l in g.terminals],
        "start": g.start,
        "productions": [
            {"lhs": lhs, "rhs": graph_to_json(rhs)} for lhs, rhs in g.productions
        ],
    }


# -- loading -------------------------------------------------------------------


def _label_from_json(data: Any, att_len: int, path: str) -> object:
    if data == "$":
        return Dollar(att_len)
    _expect(isinstance(data, dict), path, "label must be an object or '$'")
    if set(data) == {"sym", "arity"}:
        _expect(isinstance(data["sym"], str), path + ".sym", "must be a string")
        _expect(isinstance(data["arity"], int), path + ".arity", "must be an integer")
        return Label(data["sym"], data["arity"])
    return type_from_json(data, path)


def graph_from_json(data: Any, path: str = "graph") -> Hypergraph:
    _expect(isinstance(data, dict), path, "must be an object")
    for fieldname in ("nodes", "edges", "ext"):
        _expect(fieldname in data, path, f"missing field {fieldname!r}")
    nodes = data["nodes"]
    _expect(
        isinstance(nodes, list) and all(isinstance(v, str) for v in nodes),
        path + ".nodes",
        "must be a list of strings",
    )
    edges = []
    for i, ed in enumerate(data["edges"]):
        fp = f"{path}.edges[{i}]"
        _expect(isinstance(ed, dict), fp, "must be an object")
        for fieldname in ("id", "label", "att"):
            _expect(fieldname in ed, fp, f"missing field {fieldname!r}")
        att = ed["att"]
        _expect(
            isinstance(att, list) and all(isinstance(v, str) for v in att),
            fp + ".att",
            "must be a list of node ids",
        )
        label = _label_from_json(ed["label"], len(att), fp + ".label")
        edges.append((ed["id"], label, att))
    ext = data["ext"]
    _expect(
        isinstance(ext, list) and all(isinstance(v, str) for v in ext),
        path + ".ext",
        "must be a list of node ids",
    )
    try:
        return Hypergraph(nodes, edges, ext)
    except GraphError as err:
        raise FormatError(f"{path}: {err}") from err


def type_from_json(data: Any, path: str = "type") -> HlType:
    _expect(isinstance(data, dict) and len(data) == 1, path, "must be a one-key object")
    (kind, payload), = data.items()
    try:
        if kind == "prim":
            _expect(
                isinstance(payload, dict) and set(payload) == {"sym", "arity"},
                path,
                "prim needs sym and arity",
            )
            return Prim(payload["sym"], payload["arity"])
        if kind == "div":
            _expect(
                isinstance(payload, dict) and set(payload) == {"num", "den"},
                path,
                "div needs num and den",
            )
            return Div(
                type_from_json(payload["num"], path + ".num"),
                graph_from_json(payload["den"], path + ".den"),
            )
        if kind == "times":
            return Times(graph_from_json(payload, path + ".times"))
        if kind in ("and", "or"):
            _expect(
                isinstance(payload, list) and len(payload) == 2,
                path,
                f"{kind} needs a two-element list",
            )
            ctor = And if kind == "and" else Or
            return ctor(
                type_from_json(payload[0], f"{path}.{kind}[0]"),
                type_from_json(payload[1], f"{path}.{kind}[1]"),
            )
    except GraphError as err:
        if isinstance(err, FormatError):
            raise
        raise FormatError(f"{path}: {err}") from err
    raise FormatError(f"{path}: unknown type constructor {kind!r}")


def sequent_from_json(data: Any, path: str = "sequent") -> Sequent:
    _expect(isinstance(data, dict), path, "must be an object")
    for fieldname in ("antecedent", "succedent"):
        _expect(fieldname in data, path, f"missing field {fieldname!r}")
    try:
        return Sequent(
            graph_from_json(data["antecedent"], path + ".antecedent"),
            type_from_json(data["succedent"], path + ".succedent"),
        )
    except GraphError as err:
        if isinstance(err, FormatError):
            raise
        raise FormatError(f"{path}: {err}") from err


def tree_from_json(data: Any, path: str = "tree") -> DerivationTree:
    _expect(isinstance(data, dict), path, "must be an object")
    for fieldname in ("conclusion", "rule", "witness", "premises"):
        _expect(fieldname in data, path, f"missing field {fieldname!r}")
    _expect(isinstance(data["rule"], str), path + ".rule", "must be a string")
    _expect(isinstance(data["witness"], dict), path + ".witness", "must be an object")
    premises = tuple(
        tree_from_json(p, f"{path}.premises[{i}]")
        for i, p in enumerate(data["premises"])
    )
    return DerivationTree(
        sequent_from_json(data["conclusion"], path + ".conclusion"),
        data["rule"],
        premises,
        data["witness"],
    )


def hlg_from_json(data: Any, path: str = "grammar") -> Hlg:
    _expect(isinstance(data, dict), path, "must be an object")
    for fieldname in ("alphabet", "start", "lexicon"):
        _expect(fieldname in data, path, f"missing field {fieldname!r}")
    alphabet = tuple(
        Label(l["sym"], l["arity"]) for l in data["alphabet"]
    )
    lexicon = tuple(
        (entry["sym"], type_from_json(entry["type"], f"{path}.lexicon[{i}].type"))
        for i, entry in enumerate(data["lexicon"])
    )
    try:
        return Hlg(alphabet, type_from_json(data["start"], path + ".start"), lexicon)
    except GraphError as err:
        if isinstance(err, FormatError):
            raise
        raise FormatError(f"{path}: {err}") from err


def hrg_from_json(data: Any, path: str = "grammar") -> Hrg:
    _expect(isinstance(data, dict), path, "must be an object")
    for fieldname in ("nonterminals", "terminals", "start", "productions"):
        _expect(fieldname in data, path, f"missing field {fieldname!r}")
    try:
        return Hrg(
            tuple(Label(l["sym"], l["arity"]) for l in data["nonterminals"]),
            tuple(Label(l["sym"], l["arity"]) for l in data["terminals"]),
            data["start"],
            tuple(
                (p["lhs"], graph_from_json(p["rhs"], f"{path}.productions[{i}].rhs"))
                for i, p in enumerate(data["productions"])
            ),
        )
    except GraphError as err:
        if isinstance(err, FormatError):
            raise
        raise FormatError(f"{path}: {err}") from err


def grammar_from_json(data: Any, path: str = "grammar") -> Hlg | Hrg:
    _expect(isinstance(data, dict), path, "must be an object")
    if "productions" in data:
        return hrg_from_json(data, path)
    return hlg_from_json(data, path)


def dumps(obj: Any, indent: int | None = None) -> str:
    if isinstance(obj, Hypergraph):
        data = graph_to_json(obj)
    elif is_type(obj):
        data = type_to_json(obj)
    elif isinstance(obj, Sequent):
        data = sequent_to_json(obj)
    elif isinstance(obj, DerivationTree):
        data = tree_to_json(obj)
    elif isinstance(obj, Hlg):
        data = hlg_to_json(obj)
    elif isinstance(obj, Hrg):
        data = hrg_to_json(obj)
    else:
        data = obj
    return json.dumps(data, indent=indent, sort_keys=False)
