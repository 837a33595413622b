"""Terminating bottom-up proof search, derivation certificates and their
independent verifier, and the cut combinator.

Search normalizes with the two reversible moves first (expand every
multiplication edge in the antecedent; unfold a division succedent through its
denominator), then branches over division-left reductions and multiplication
introductions via the block matchers.  Sequent sizes drop strictly with every
core rule, so exhaustive search terminates; memoization keys on canonical
forms.  Counter balance and the wolf criterion refute early where they apply.

A derivation tree stores, per node, the rule tag plus the embedding data
needed to replay the step; ``verify_tree`` replays every node from its
premises and accepts only exact reconstructions (up to isomorphism).
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .graph import (
    Dollar,
    Edge,
    GraphError,
    Hypergraph,
    Subgraph,
    compress,
    handle,
    isomorphic,
    replace,
    replace_with_map,
)
from .match import Block, div_left_matches, times_right_matches
from .types import (
    And,
    Div,
    HlType,
    Or,
    Prim,
    Sequent,
    Times,
    counter_feasible,
    has_skeleton_subtype,
    is_lonely,
    is_simple,
    sequent_has_additive,
    size,
)


class MalformedSequent(GraphError):
    pass


class NotSimpleInput(GraphError):
    pass


class LabelMismatch(GraphError):
    pass


@dataclass(frozen=True)
class Mode:
    """Calculus selector: HL or HMALC base plus optional structural rules."""

    base: str = "HL"
    weakening: bool = False
    contraction: bool = False

    def __post_init__(self):
        if self.base not in ("HL", "HMALC"):
            raise ValueError(f"unknown base calculus {self.base!r}")

    @property
    def structural(self) -> bool:
        return self.weakening or self.contraction

    @staticmethod
    def parse(text: str) -> "Mode":
        parts = text.lower().split("+")
        base = {"hl": "HL", "hmalc": "HMALC"}.get(parts[0])
        if base is None:
            raise ValueError(f"unknown calculus {text!r}")
        flags = "".join(parts[1:])
        if set(flags) - {"w", "c"}:
            raise ValueError(f"unknown structural flags in {text!r}")
        return Mode(base, "w" in flags, "c" in flags)

    def __str__(self) -> str:
        out = self.base.lower()
        if self.weakening or self.contraction:
            out += "+" + ("w" if self.weakening else "") + ("c" if self.contraction else "")
        return out


HL = Mode()
HMALC = Mode("HMALC")


@dataclass
class Budget:
    max_nodes: int = 10**6
    max_seconds: float | None = None
    nodes: int = 0
    started: float = field(default_factory=time.monotonic)

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise _OutOfBudget
        if (
            self.max_seconds is not None
            and (self.nodes & 0xFF) == 0
            and time.monotonic() - self.started > self.max_seconds
        ):
            raise _OutOfBudget


class _OutOfBudget(Exception):
    pass


DERIVABLE = "derivable"
NOT_DERIVABLE = "not_derivable"
BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class DerivationTree:
    conclusion: Sequent
    rule: str
    premises: tuple["DerivationTree", ...]
    witness: dict

    def node_count(self) -> int:
        return 1 + sum(p.node_count() for p in self.premises)

    def rules_used(self) -> set[str]:
        out = {self.rule}
        for p in self.premises:
            out |= p.rules_used()
        return out


@dataclass
class ProveResult:
    verdict: str
    tree: DerivationTree | None
    nodes: int

    @property
    def derivable(self) -> bool:
        return self.verdict == DERIVABLE


def _validate(seq: Sequent, mode: Mode) -> None:
    if not isinstance(seq, Sequent):
        raise MalformedSequent(f"not a sequent: {seq!r}")
    if mode.base == "HL" and sequent_has_additive(seq):
        raise MalformedSequent("additive types require the HMALC base")


def _axiom_tree(seq: Sequent) -> DerivationTree | None:
    t = seq.succedent
    if not isinstance(t, Prim):
        return None
    g = seq.antecedent
    if len(g.edges) != 1:
        return None
    e = g.edges[0]
    if e.label != t or g.ext != e.att or set(g.nodes) != set(e.att):
        return None
    return DerivationTree(seq, "axiom", (), {})


def _wolf_refutes(seq: Sequent) -> bool:
    """Sound refutation for a primitive succedent: if no antecedent label has
    a skeleton subtype and the succedent is lonely in the whole antecedent
    (viewed under a multiplication), the sequent is underivable."""
    p = seq.succedent
    if not isinstance(p, Prim):
        return False
    g = seq.antecedent
    # skeleton check for times(antecedent) without building the type
    if not g.edges and len(g.ext) == len(g.nodes):
        return False
    for e in g.edges:
        if has_skeleton_subtype(e.label):
            return False
    big = len(g.edges) >= 2
    for e in g.edges:
        if e.label == p:
            if not big:
                return False
        elif not is_lonely(p, e.label):
            return False
    return True


def _div_edges(g: Hypergraph) -> list[Edge]:
    divs = [e for e in g.edges if isinstance(e.label, Div)]
    return sorted(divs, key=lambda e: (-len(e.label.den.edges), e.id))


def _carve_div_left(
    seq: Sequent, edge: Edge, nmap: dict[str, str], blocks: Sequence[Block]
) -> list[Sequent] | None:
    """Premises of a division-left step, or None if the carve is degenerate."""
    g = seq.antecedent
    ty: Div = edge.label
    den = ty.den
    non_dollar = [e for e in den.edges if not isinstance(e.label, Dollar)]
    removed_nodes = {nmap[v] for v in den.nodes if v not in set(den.ext)}
    block_edge_ids: set[str] = set()
    premises = []
    for blk, de in zip(blocks, non_dollar):
        ext = tuple(nmap[v] for v in de.att)
        node_set = set(blk.internal_nodes) | set(ext)
        prem_graph = Hypergraph(
            [v for v in g.nodes if v in node_set],
            [e for e in g.edges if e.id in set(blk.edge_ids)],
            ext,
        )
        premises.append(Sequent(prem_graph, de.label))
        block_edge_ids |= set(blk.edge_ids)
        removed_nodes |= set(blk.internal_nodes)
    keep_nodes = [v for v in g.nodes if v not in removed_nodes]
    keep_edges = [
        e for e in g.edges if e.id != edge.id and e.id not in block_edge_ids
    ]
    fresh = g.fresh_edge_ids(1)[0]
    main_graph = Hypergraph(
        keep_nodes,
        keep_edges + [Edge(fresh, ty.num, tuple(nmap[v] for v in den.ext))],
        g.ext,
    )
    return [Sequent(main_graph, seq.succedent)] + premises


def _carve_times_right(
    seq: Sequent, nmap: dict[str, str], blocks: Sequence[Block]
) -> list[Sequent]:
    g = seq.antecedent
    body = seq.succedent.body
    premises = []
    for blk, me in zip(blocks, body.edges):
        ext = tuple(nmap[v] for v in me.att)
        node_set = set(blk.internal_nodes) | set(ext)
        prem_graph = Hypergraph(
            [v for v in g.nodes if v in node_set],
            [e for e in g.edges if e.id in set(blk.edge_ids)],
            ext,
        )
        premises.append(Sequent(prem_graph, me.label))
    return premises


def _unfold_div_right(seq: Sequent) -> tuple[Sequent, dict]:
    ty: Div = seq.succedent
    d0 = ty.dollar_edge()
    new_ant, nmap, emap = replace_with_map(ty.den, d0.id, seq.antecedent)
    witness = {
        "sub_nodes": sorted(nmap[v] for v in seq.antecedent.nodes),
        "sub_edges": sorted(emap[e.id] for e in seq.antecedent.edges),
        "sub_ext": [nmap[v] for v in seq.antecedent.ext],
    }
    return Sequent(new_ant, ty.num), witness


def _unfold_times_left(seq: Sequent, edge: Edge) -> tuple[Sequent, dict]:
    body: Hypergraph = edge.label.body
    new_ant, nmap, emap = replace_with_map(seq.antecedent, edge.id, body)
    witness = {
        "edge": edge.id,
        "sub_nodes": sorted(nmap[v] for v in body.nodes),
        "sub_edges": sorted(emap[e.id] for e in body.edges),
        "sub_ext": list(edge.att),
    }
    return Sequent(new_ant, seq.succedent), witness


def _duplicate_edge(g: Hypergraph, edge: Edge) -> tuple[Hypergraph, str]:
    fresh = g.fresh_edge_ids(1)[0]
    return (
        Hypergraph(g.nodes, list(g.edges) + [Edge(fresh, edge.label, edge.att)], g.ext),
        fresh,
    )


_PREMISE_COORD_RULES = {"div_right", "times_left", "contraction"}


def _fit_witness(rule: str, wit: dict, carved: Sequent, subtree: DerivationTree) -> dict:
    """Memoized subtrees may be isomorphic variants of the carved premise;
    witnesses expressed in premise coordinates must follow the rename."""
    if rule not in _PREMISE_COORD_RULES:
        return wit
    actual = subtree.conclusion.antecedent
    if actual.same_presentation(carved.antecedent):
        return wit
    iso = isomorphic(carved.antecedent, actual)
    if iso is None:
        raise AssertionError("memoized premise not isomorphic to the carved one")
    emap, nmap = iso
    out = dict(wit)
    for f in ("sub_nodes", "sub_ext"):
        if f in out:
            out[f] = [nmap[v] for v in out[f]]
    if "sub_edges" in out:
        out["sub_edges"] = [emap[e] for e in out["sub_edges"]]
    if rule == "contraction":
        out["edge"] = emap[out["edge"]]
    return out


def prove(
    seq: Sequent,
    mode: Mode = HL,
    budget: Budget | None = None,
    eager: bool = True,
    prune: bool = True,
    max_contractions: int = 3,
    memo: dict[bytes, "DerivationTree | None"] | None = None,
) -> ProveResult:
    """Decide derivability; exact for HL/HMALC and their +w extensions.

    With contraction the search is bounded by ``max_contractions`` duplication
    steps per branch; exhausting the space under a binding cap reports
    BUDGET_EXCEEDED rather than a refutation.  A ``memo`` dict may be shared
    across calls that use the same mode and contraction cap.
    """
    _validate(seq, mode)
    budget = budget or Budget()
    if memo is None:
        memo = {}
    stack: set[bytes] = set()
    # eager reversibility leans on cut elimination; with open structural
    # rules we fall back to plain branching
    eager = eager and not mode.structural
    use_prune = prune and not mode.structural

    def branches(s: Sequent) -> Iterator[tuple[str, dict, list[Sequent]]]:
        g = s.antecedent
        t = s.succedent
        if mode.base == "HMALC":
            for e in g.edges:
                if isinstance(e.label, Or):
                    yield "or_left", {"edge": e.id}, [
                        Sequent(g.relabel(lambda x: e.label.left if x.id == e.id else x.label), t),
                        Sequent(g.relabel(lambda x: e.label.right if x.id == e.id else x.label), t),
                    ]
            if isinstance(t, And):
                yield "and_right", {}, [Sequent(g, t.left), Sequent(g, t.right)]
            for e in g.edges:
                if isinstance(e.label, And):
                    for which, sub in ((1, e.label.left), (2, e.label.right)):
                        yield "and_left", {"edge": e.id, "which": which}, [
                            Sequent(g.relabel(lambda x, sub=sub: sub if x.id == e.id else x.label), t)
                        ]
            if isinstance(t, Or):
                for which, sub in ((1, t.left), (2, t.right)):
                    yield "or_right", {"which": which}, [Sequent(g, sub)]
        for e in _div_edges(g):
            for nmap, blocks, _rest, _iso in div_left_matches(g, e):
                prems = _carve_div_left(s, e, nmap, blocks)
                if prems is not None:
                    yield "div_left", {
                        "edge": e.id,
                        "node_map": dict(sorted(nmap.items())),
                        "blocks": [
                            {
                                "den_edge": b.pattern_edge,
                                "edges": list(b.edge_ids),
                                "nodes": list(b.internal_nodes),
                            }
                            for b in blocks
                        ],
                    }, prems
        if isinstance(t, Times):
            for nmap, blocks, _rest, _iso in times_right_matches(g, t.body):
                yield "times_right", {
                    "node_map": dict(sorted(nmap.items())),
                    "blocks": [
                        {
                            "body_edge": b.pattern_edge,
                            "edges": list(b.edge_ids),
                            "nodes": list(b.internal_nodes),
                        }
                        for b in blocks
                    ],
                }, _carve_times_right(s, nmap, blocks)
        if not eager:
            if isinstance(t, Div):
                prem, wit = _unfold_div_right(s)
                yield "div_right", wit, [prem]
            for e in g.edges:
                if isinstance(e.label, Times):
                    prem, wit = _unfold_times_left(s, e)
                    yield "times_left", wit, [prem]
        if mode.weakening:
            for e in g.edges:
                smaller = Hypergraph(g.nodes, [x for x in g.edges if x.id != e.id], g.ext)
                yield "weakening", {"removed_edges": [e.id], "removed_nodes": []}, [
                    Sequent(smaller, t)
                ]
            ext = set(g.ext)
            for v in g.isolated_nodes():
                if v in ext:
                    continue
                smaller = Hypergraph([x for x in g.nodes if x != v], g.edges, g.ext)
                yield "weakening", {"removed_edges": [], "removed_nodes": [v]}, [
                    Sequent(smaller, t)
                ]

    def prunable(s: Sequent) -> bool:
        return use_prune and not sequent_has_additive(s) and (
            not counter_feasible(s) or _wolf_refutes(s)
        )

    def search(s: Sequent, c_used: int) -> tuple[DerivationTree | None, bool]:
        ax = _axiom_tree(s)
        if ax is not None:
            return ax, True
        if prunable(s):
            return None, True

        key = s.key()
        if key in memo:
            return memo[key], True
        if key in stack:
            return None, False
        budget.tick()

        if eager:
            # normalize through the reversible moves in one sweep; only the
            # endpoints of the sweep are worth memoizing
            chain: list[tuple[str, dict, Sequent, Sequent]] = []
            cur = s
            while True:
                if isinstance(cur.succedent, Div):
                    prem, wit = _unfold_div_right(cur)
                    chain.append(("div_right", wit, cur, prem))
                    cur = prem
                    continue
                times_edge = next(
                    (e for e in cur.antecedent.edges if isinstance(e.label, Times)),
                    None,
                )
                if times_edge is not None:
                    prem, wit = _unfold_times_left(cur, times_edge)
                    chain.append(("times_left", wit, cur, prem))
                    cur = prem
                    continue
                break
            if chain:
                sub, clean = search(cur, c_used)
                if sub is None:
                    if clean:
                        memo[key] = None
                    return None, clean
                for rule, wit, conclusion, carved in reversed(chain):
                    sub = DerivationTree(
                        conclusion, rule, (sub,), _fit_witness(rule, wit, carved, sub)
                    )
                memo[key] = sub
                return sub, True

        stack.add(key)
        all_clean = True
        try:
            for rule, wit, prems in branches(s):
                if use_prune and any(
                    not sequent_has_additive(p) and not counter_feasible(p)
                    for p in prems
                ):
                    continue
                subtrees = []
                ok = True
                for prem in prems:
                    t, clean = search(prem, c_used)
                    if t is None:
                        ok = False
                        if not clean:
                            all_clean = False
                        break
                    subtrees.append(t)
                if ok:
                    if rule in _PREMISE_COORD_RULES:
                        wit = _fit_witness(rule, wit, prems[0], subtrees[0])
                    tree = DerivationTree(s, rule, tuple(subtrees), wit)
                    memo[key] = tree
                    return tree, True
            if mode.contraction:
                if c_used >= max_contractions:
                    all_clean = False
                else:
                    for e in s.antecedent.edges:
                        bigger, dup = _duplicate_edge(s.antecedent, e)
                        bigger_seq = Sequent(bigger, s.succedent)
                        t, clean = search(bigger_seq, c_used + 1)
                        if t is not None:
                            cwit = _fit_witness("contraction", {"edge": dup}, bigger_seq, t)
                            tree = DerivationTree(s, "contraction", (t,), cwit)
                            memo[key] = tree
                            return tree, True
                        if not clean:
                            all_clean = False
        finally:
            stack.discard(key)
        if all_clean:
            memo[key] = None
        return None, all_clean

    try:
        tree, clean = search(seq, 0)
    except _OutOfBudget:
        return ProveResult(BUDGET_EXCEEDED, None, budget.nodes)
    if tree is not None:
        return ProveResult(DERIVABLE, tree, budget.nodes)
    return ProveResult(NOT_DERIVABLE if clean else BUDGET_EXCEEDED, None, budget.nodes)


# -- simple derivations -----------------------------------------------------------


def _simple_div_matches(
    g: Hypergraph, edge: Edge
) -> Iterator[tuple[dict[str, str], tuple[Block, ...]]]:
    """Division-left matches whose side premises are axioms: every non-$
    denominator edge is matched by exactly one antecedent edge with the same
    primitive label and corresponding attachments."""
    ty: Div = edge.label
    den = ty.den
    d0 = ty.dollar_edge()
    nmap = dict(zip(d0.att, edge.att))
    non_dollar = [e for e in den.edges if not isinstance(e.label, Dollar)]
    den_ext = set(den.ext)
    g_ext = set(g.ext)
    inc = g.incidence()
    for v, x in nmap.items():
        if v not in den_ext and x in g_ext:
            return

    def rec(
        i: int, cur: dict[str, str], used: set[str]
    ) -> Iterator[tuple[dict[str, str], tuple[Block, ...]]]:
        if i == len(non_dollar):
            # place denominator nodes that sit on no denominator edge
            left = [v for v in den.nodes if v not in cur]
            taken = set(cur.values())

            def rest(j: int) -> Iterator[tuple[dict[str, str], tuple[Block, ...]]]:
                if j == len(left):
                    final = dict(cur)
                    removed = {
                        final[v] for v in den.nodes if v not in den_ext
                    }
                    if removed & g_ext:
                        return
                    for x in removed:
                        for e2 in inc[x]:
                            if e2.id != edge.id and e2.id not in used:
                                return
                    blocks = tuple(
                        Block(de.id, (cur_edges[k],), ())
                        for k, de in enumerate(non_dollar)
                    )
                    yield final, blocks
                    return
                v = left[j]
                for x in g.nodes:
                    if x in taken:
                        continue
                    if v not in den_ext:
                        if x in g_ext or inc[x]:
                            continue
                    cur[v] = x
                    taken.add(x)
                    yield from rest(j + 1)
                    del cur[v]
                    taken.discard(x)

            yield from rest(0)
            return
        de = non_dollar[i]
        for ge in g.edges:
            if ge.id == edge.id or ge.id in used or ge.label != de.label:
                continue
            new = dict(cur)
            ok = True
            for a, b in zip(de.att, ge.att):
                if a in new:
                    if new[a] != b:
                        ok = False
                        break
                elif b in set(new.values()):
                    ok = False
                    break
                else:
                    if a not in den_ext and b in g_ext:
                        ok = False
                        break
                    new[a] = b
            if not ok:
                continue
            used.add(ge.id)
            cur_edges.append(ge.id)
            yield from rec(i + 1, new, used)
            cur_edges.pop()
            used.discard(ge.id)

    cur_edges: list[str] = []
    yield from rec(0, nmap, set())


def _simple_ok(seq: Sequent) -> bool:
    if not all(is_simple(e.label) for e in seq.antecedent.edges):
        return False
    t = seq.succedent
    if isinstance(t, Prim):
        return True
    return isinstance(t, Times) and all(
        isinstance(e.label, Prim) for e in t.body.edges
    )


def prove_simple(
    seq: Sequent,
    budget: Budget | None = None,
    memo: dict[bytes, "DerivationTree | None"] | None = None,
) -> ProveResult:
    """Fast exact search through simple derivations; sound and complete when
    antecedent labels are simple and the succedent is primitive or a
    multiplication of primitives."""
    if not _simple_ok(seq):
        raise NotSimpleInput(
            "prove_simple needs simple antecedent labels and a primitive or "
            "primitive-bodied multiplication succedent"
        )
    budget = budget or Budget()
    if memo is None:
        memo = {}
    succ = seq.succedent

    def search(s: Sequent) -> DerivationTree | None:
        ax = _axiom_tree(s)
        if ax is not None:
            return ax
        if not counter_feasible(s):
            return None

        key = s.key()
        if key in memo:
            return memo[key]
        budget.tick()

        chain: list[tuple[dict, Sequent, Sequent]] = []
        cur = s
        while True:
            times_edge = next(
                (e for e in cur.antecedent.edges if isinstance(e.label, Times)), None
            )
            if times_edge is None:
                break
            prem, wit = _unfold_times_left(cur, times_edge)
            chain.append((wit, cur, prem))
            cur = prem
        if chain:
            sub = search(cur)
            if sub is not None:
                for wit, conclusion, carved in reversed(chain):
                    sub = DerivationTree(
                        conclusion,
                        "times_left",
                        (sub,),
                        _fit_witness("times_left", wit, carved, sub),
                    )
            memo[key] = sub
            return sub
        g = s.antecedent

        if isinstance(succ, Times):
            for nmap, blocks, _rest, _iso in times_right_matches(g, succ.body):
                if all(
                    len(b.edge_ids) == 1 and not b.internal_nodes for b in blocks
                ):
                    prems = _carve_times_right(s, nmap, blocks)
                    axioms = [_axiom_tree(p) for p in prems]
                    if all(axioms):
                        tree = DerivationTree(
                            s,
                            "times_right",
                            tuple(axioms),
                            {
                                "node_map": dict(sorted(nmap.items())),
                                "blocks": [
                                    {
                                        "body_edge": b.pattern_edge,
                                        "edges": list(b.edge_ids),
                                        "nodes": list(b.internal_nodes),
                                    }
                                    for b in blocks
                                ],
                            },
                        )
                        memo[key] = tree
                        return tree

        for e in _div_edges(g):
            for nmap, blocks in _simple_div_matches(g, e):
                prems = _carve_div_left(s, e, nmap, blocks)
                if prems is None:
                    continue
                side = [_axiom_tree(p) for p in prems[1:]]
                if not all(side):
                    continue
                main = search(prems[0])
                if main is None:
                    continue
                tree = DerivationTree(
                    s,
                    "div_left",
                    (main, *side),
                    {
                        "edge": e.id,
                        "node_map": dict(sorted(nmap.items())),
                        "blocks": [
                            {
                                "den_edge": b.pattern_edge,
                                "edges": list(b.edge_ids),
                                "nodes": list(b.internal_nodes),
                            }
                            for b in blocks
                        ],
                    },
                )
                memo[key] = tree
                return tree
        memo[key] = None
        return None

    try:
        tree = search(seq)
    except _OutOfBudget:
        return ProveResult(BUDGET_EXCEEDED, None, budget.nodes)
    return ProveResult(
        DERIVABLE if tree else NOT_DERIVABLE, tree, budget.nodes
    )


# -- cut -----------------------------------------------------------------------


def cut(
    left: DerivationTree, right: DerivationTree, edge_id: str
) -> DerivationTree:
    """Combine two derivations along an edge of the right antecedent labeled
    by the left succedent.  The result carries an explicit cut node; a
    cut-free tree for the same conclusion can be recovered with ``prove``
    (the calculus admits cut)."""
    g = right.conclusion.antecedent
    e0 = g.edge(edge_id)
    if e0.label != left.conclusion.succedent:
        raise LabelMismatch(
            f"edge {edge_id} labeled {e0.label!r}, cut needs "
            f"{left.conclusion.succedent!r}"
        )
    conclusion = Sequent(
        replace(g, edge_id, left.conclusion.antecedent), right.conclusion.succedent
    )
    return DerivationTree(conclusion, "cut", (left, right), {"edge": edge_id})


def eliminate_cuts(
    tree: DerivationTree, mode: Mode = HL, budget: Budget | None = None
) -> DerivationTree:
    """Cut-free tree for the same conclusion, obtained by re-deriving cut
    conclusions from scratch (admissibility makes this total in pure HL)."""
    if "cut" not in tree.rules_used():
        return tree
    result = prove(tree.conclusion, mode=mode, budget=budget)
    if result.verdict != DERIVABLE:
        raise RuntimeError(f"cut elimination failed: {result.verdict}")
    return result.tree


def equivalent(
    a: HlType, b: HlType, mode: Mode = HL, budget_nodes: int = 10**6
) -> bool:
    """Mutual derivability of the two handles."""
    if a.arity != b.arity:
        raise GraphError("equivalent: arity mismatch")
    for x, y in ((a, b), (b, a)):
        res = prove(Sequent(handle(x), y), mode=mode, budget=Budget(budget_nodes))
        if res.verdict == BUDGET_EXCEEDED:
            raise RuntimeError("equivalence check exceeded budget")
        if not res.derivable:
            return False
    return True


# -- verification -----------------------------------------------------------------


def verify_tree(tree: DerivationTree, mode: Mode = Mode("HMALC", True, True)) -> tuple[bool, str]:
    """Replay every node of the tree; returns (ok, first failure location).

    The default mode gates nothing; pass a narrower mode to enforce that only
    its rules occur.
    """
    try:
        _verify(tree, mode, "root")
    except _VerifyFailure as f:
        return False, str(f)
    return True, ""


class _VerifyFailure(Exception):
    pass


def _fail(path: str, why: str) -> None:
    raise _VerifyFailure(f"{path}: {why}")


def _need(cond: bool, path: str, why: str) -> None:
    if not cond:
        _fail(path, why)


def _verify(t: DerivationTree, mode: Mode, path: str) -> None:
    for i, p in enumerate(t.premises):
        _verify(p, mode, f"{path}.premises[{i}]")
    seq = t.conclusion
    g = seq.antecedent
    w = t.witness
    rule = t.rule

    if rule == "axiom":
        _need(_axiom_tree(seq) is not None, path, "not an axiom instance")
        _need(not t.premises, path, "axiom with premises")
        return

    if rule == "div_left":
        _need(len(t.premises) >= 1, path, "division-left without premises")
        try:
            e = g.edge(w["edge"])
        except KeyError:
            _fail(path, f"no antecedent edge {w.get('edge')!r}")
        _need(isinstance(e.label, Div), path, "selected edge not division-labeled")
        ty: Div = e.label
        den = ty.den
        nmap = dict(w["node_map"])
        _need(set(nmap) == set(den.nodes), path, "node map keys != denominator nodes")
        _need(
            len(set(nmap.values())) == len(nmap)
            and set(nmap.values()) <= set(g.nodes),
            path,
            "node map not injective into the antecedent",
        )
        d0 = ty.dollar_edge()
        _need(
            tuple(nmap[v] for v in d0.att) == e.att,
            path,
            "$-edge attachments do not anchor the selected edge",
        )
        non_dollar = [x for x in den.edges if not isinstance(x.label, Dollar)]
        _need(
            len(w["blocks"]) == len(non_dollar) == len(t.premises) - 1,
            path,
            "block/premise count mismatch",
        )
        _need(
            [b["den_edge"] for b in w["blocks"]] == [x.id for x in non_dollar],
            path,
            "blocks misaligned with denominator edges",
        )
        seen_edges: set[str] = {e.id}
        seen_nodes: set[str] = set()
        image = set(nmap.values())
        for b in w["blocks"]:
            for eid in b["edges"]:
                _need(g.has_edge(eid), path, f"block edge {eid} missing")
                _need(eid not in seen_edges, path, f"edge {eid} used twice")
                seen_edges.add(eid)
            for v in b["nodes"]:
                _need(v in set(g.nodes), path, f"block node {v} missing")
                _need(v not in seen_nodes, path, f"node {v} carved twice")
                _need(v not in image, path, f"node {v} both mapped and internal")
                seen_nodes.add(v)
        blocks = tuple(
            Block(b["den_edge"], tuple(b["edges"]), tuple(b["nodes"]))
            for b in w["blocks"]
        )
        try:
            prems = _carve_div_left(seq, e, nmap, blocks)
        except GraphError as err:
            _fail(path, f"carve failed: {err}")
        removed = {nmap[v] for v in den.nodes if v not in set(den.ext)} | seen_nodes
        _need(not removed & set(g.ext), path, "carve removes an external node")
        for ge in g.edges:
            if ge.id not in seen_edges:
                _need(
                    not (set(ge.att) & removed),
                    path,
                    f"remaining edge {ge.id} touches removed node",
                )
        for i, (expected, actual) in enumerate(zip(prems, t.premises)):
            _need(
                expected.succedent == actual.conclusion.succedent,
                path,
                f"premise {i} succedent mismatch",
            )
            _need(
                isomorphic(expected.antecedent, actual.conclusion.antecedent)
                is not None,
                path,
                f"premise {i} antecedent does not replay",
            )
        return

    if rule == "times_right":
        _need(isinstance(seq.succedent, Times), path, "succedent not a multiplication")
        body = seq.succedent.body
        nmap = dict(w["node_map"])
        _need(set(nmap) == set(body.nodes), path, "node map keys != body nodes")
        _need(
            len(set(nmap.values())) == len(nmap)
            and set(nmap.values()) <= set(g.nodes),
            path,
            "node map not injective into the antecedent",
        )
        _need(
            tuple(nmap[v] for v in body.ext) == g.ext,
            path,
            "body external nodes do not anchor the antecedent externals",
        )
        _need(
            len(w["blocks"]) == len(body.edges) == len(t.premises),
            path,
            "block/premise count mismatch",
        )
        _need(
            [b["body_edge"] for b in w["blocks"]] == [x.id for x in body.edges],
            path,
            "blocks misaligned with body edges",
        )
        seen_edges: set[str] = set()
        seen_nodes: set[str] = set()
        image = set(nmap.values())
        for b in w["blocks"]:
            for eid in b["edges"]:
                _need(g.has_edge(eid), path, f"block edge {eid} missing")
                _need(eid not in seen_edges, path, f"edge {eid} used twice")
                seen_edges.add(eid)
            for v in b["nodes"]:
                _need(v in set(g.nodes), path, f"block node {v} missing")
                _need(v not in seen_nodes and v not in image, path, f"node {v} misassigned")
                seen_nodes.add(v)
        _need(
            seen_edges == {e.id for e in g.edges},
            path,
            "blocks do not partition the antecedent edges",
        )
        _need(
            seen_nodes | image == set(g.nodes),
            path,
            "blocks and image do not cover the antecedent nodes",
        )
        blocks = tuple(
            Block(b["body_edge"], tuple(b["edges"]), tuple(b["nodes"]))
            for b in w["blocks"]
        )
        try:
            prems = _carve_times_right(seq, nmap, blocks)
        except GraphError as err:
            _fail(path, f"carve failed: {err}")
        for i, (expected, actual) in enumerate(zip(prems, t.premises)):
            _need(
                expected.succedent == actual.conclusion.succedent,
                path,
                f"premise {i} succedent mismatch",
            )
            _need(
                isomorphic(expected.antecedent, actual.conclusion.antecedent)
                is not None,
                path,
                f"premise {i} antecedent does not replay",
            )
        return

    if rule == "div_right":
        _need(len(t.premises) == 1, path, "division-right needs one premise")
        _need(isinstance(seq.succedent, Div), path, "succedent not a division")
        prem = t.premises[0].conclusion
        k = prem.antecedent
        try:
            sub = Subgraph(
                k,
                frozenset(w["sub_nodes"]),
                frozenset(w["sub_edges"]),
                tuple(w["sub_ext"]),
            )
            den = compress(k, sub, Dollar(len(w["sub_ext"])))
        except GraphError as err:
            _fail(path, f"bad subgraph witness: {err}")
        _need(
            seq.succedent == Div(prem.succedent, den),
            path,
            "succedent does not replay as div(premise succedent / compressed)",
        )
        _need(
            isomorphic(seq.antecedent, sub.as_graph()) is not None,
            path,
            "antecedent is not the chosen subgraph",
        )
        return

    if rule == "times_left":
        _need(len(t.premises) == 1, path, "times-left needs one premise")
        prem = t.premises[0].conclusion
        _need(prem.succedent == seq.succedent, path, "succedent changed")
        k = prem.antecedent
        _need(g.has_edge(w.get("edge", "")), path, "compressed edge missing")
        try:
            sub = Subgraph(
                k,
                frozenset(w["sub_nodes"]),
                frozenset(w["sub_edges"]),
                tuple(w["sub_ext"]),
            )
            # fresh edge id: the isomorphism check does not depend on it
            rebuilt = compress(k, sub, Times(sub.as_graph()))
        except GraphError as err:
            _fail(path, f"bad subgraph witness: {err}")
        _need(
            isomorphic(rebuilt, seq.antecedent) is not None,
            path,
            "antecedent does not replay as the compressed premise",
        )
        return

    if rule == "cut":
        _need(len(t.premises) == 2, path, "cut needs two premises")
        left, right = t.premises[0].conclusion, t.premises[1].conclusion
        try:
            e0 = right.antecedent.edge(w["edge"])
        except KeyError:
            _fail(path, f"no cut edge {w.get('edge')!r}")
        _need(e0.label == left.succedent, path, "cut edge label mismatch")
        _need(seq.succedent == right.succedent, path, "succedent changed")
        rebuilt = replace(right.antecedent, w["edge"], left.antecedent)
        _need(
            isomorphic(rebuilt, seq.antecedent) is not None,
            path,
            "conclusion does not replay the replacement",
        )
        return

    if rule == "weakening":
        _need(mode.weakening, path, "weakening outside a +w mode")
        _need(len(t.premises) == 1, path, "weakening needs one premise")
        prem = t.premises[0].conclusion
        _need(prem.succedent == seq.succedent, path, "succedent changed")
        removed_e = set(w["removed_edges"])
        removed_n = set(w["removed_nodes"])
        _need(bool(removed_e or removed_n), path, "weakening removed nothing")
        _need(not removed_n & set(g.ext), path, "weakening removed an external node")
        try:
            smaller = Hypergraph(
                [v for v in g.nodes if v not in removed_n],
                [e for e in g.edges if e.id not in removed_e],
                g.ext,
            )
        except GraphError as err:
            _fail(path, f"removal leaves dangling material: {err}")
        _need(
            isomorphic(smaller, prem.antecedent) is not None,
            path,
            "premise is not the carved subgraph",
        )
        return

    if rule == "contraction":
        _need(mode.contraction, path, "contraction outside a +c mode")
        _need(len(t.premises) == 1, path, "contraction needs one premise")
        prem = t.premises[0].conclusion
        _need(prem.succedent == seq.succedent, path, "succedent changed")
        k = prem.antecedent
        try:
            e2 = k.edge(w["edge"])
        except KeyError:
            _fail(path, f"no duplicate edge {w.get('edge')!r}")
        twin = any(
            e.id != e2.id and e.att == e2.att and e.label == e2.label
            for e in k.edges
        )
        _need(twin, path, "removed edge has no parallel twin")
        smaller = Hypergraph(
            k.nodes, [e for e in k.edges if e.id != e2.id], k.ext
        )
        _need(
            isomorphic(smaller, seq.antecedent) is not None,
            path,
            "conclusion does not drop exactly the duplicate",
        )
        return

    if rule in ("and_left", "or_left", "and_right", "or_right"):
        _need(mode.base == "HMALC", path, f"{rule} outside HMALC")
        if rule == "and_left":
            _need(len(t.premises) == 1, path, "and-left needs one premise")
            try:
                e = g.edge(w["edge"])
            except KeyError:
                _fail(path, f"no edge {w.get('edge')!r}")
            _need(isinstance(e.label, And), path, "edge not conjunction-labeled")
            pick = e.label.left if w.get("which") == 1 else e.label.right
            expect = g.relabel(lambda x: pick if x.id == e.id else x.label)
            prem = t.premises[0].conclusion
            _need(prem.succedent == seq.succedent, path, "succedent changed")
            _need(
                isomorphic(expect, prem.antecedent) is not None,
                path,
                "premise does not replay the relabeling",
            )
            return
        if rule == "or_left":
            _need(len(t.premises) == 2, path, "or-left needs two premises")
            try:
                e = g.edge(w["edge"])
            except KeyError:
                _fail(path, f"no edge {w.get('edge')!r}")
            _need(isinstance(e.label, Or), path, "edge not disjunction-labeled")
            for i, pick in enumerate((e.label.left, e.label.right)):
                expect = g.relabel(lambda x, pick=pick: pick if x.id == e.id else x.label)
                prem = t.premises[i].conclusion
                _need(prem.succedent == seq.succedent, path, f"premise {i} succedent changed")
                _need(
                    isomorphic(expect, prem.antecedent) is not None,
                    path,
                    f"premise {i} does not replay the relabeling",
                )
            return
        if rule == "and_right":
            _need(len(t.premises) == 2, path, "and-right needs two premises")
            _need(isinstance(seq.succedent, And), path, "succedent not a conjunction")
            for i, part in enumerate((seq.succedent.left, seq.succedent.right)):
                prem = t.premises[i].conclusion
                _need(prem.succedent == part, path, f"premise {i} succedent mismatch")
                _need(
                    isomorphic(prem.antecedent, g) is not None,
                    path,
                    f"premise {i} antecedent changed",
                )
            return
        _need(len(t.premises) == 1, path, "or-right needs one premise")
        _need(isinstance(seq.succedent, Or), path, "succedent not a disjunction")
        pick = seq.succedent.left if w.get("which") == 1 else seq.succedent.right
        prem = t.premises[0].conclusion
        _need(prem.succedent == pick, path, "premise succedent mismatch")
        _need(
            isomorphic(prem.antecedent, g) is not None,
            path,
            "premise antecedent changed",
        )
        return

    _fail(path, f"unknown rule {rule!r}")


CORE_RULES = {"axiom", "div_left", "div_right", "times_left", "times_right"}


def check_size_law(tree: DerivationTree) -> bool:
    """Conclusion size = 1 + sum of premise sizes, for the core rules."""
    ok = True
    if tree.rule in CORE_RULES - {"axiom"}:
        ok = size(tree.conclusion) == 1 + sum(
            size(p.conclusion) for p in tree.premises
        )
    return ok and all(check_size_law(p) for p in tree.premises)
