"""Grammars over hypergraphs: Lambek-style lexicons and hyperedge replacement.

An HL-grammar assigns finitely many types to each alphabet symbol; a graph is
a member when some type assignment to its edges yields a derivable sequent
against the start type.  Membership enumerates assignments smallest-option
edges first, pruning partial assignments through counter bounds, and proves
each candidate with a shared memo table; structurally simple lexicons take
the fast simple-derivation path.

The HRG side covers derivation/enumeration, membership for weak Greibach
normal form grammars, the conversion into an equivalent HL-grammar, closure
under relabelings and edgeful substitutions, and the balloon-synchronized
finite-intersection construction.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

from .graph import Dollar, Edge, GraphError, Hypergraph, handle, isomorphic, replace
from .types import (
    Div,
    HlType,
    Prim,
    Sequent,
    Times,
    counter_vector,
    ersatz_conjunction,
    has_skeleton_subtype,
    is_simple,
    isolated_node_measure,
)
from .graph import Label
from .prover import (
    BUDGET_EXCEEDED,
    DERIVABLE,
    Budget,
    DerivationTree,
    ProveResult,
    prove,
    prove_simple,
    verify_tree,
)

MEMBER = "member"
NOT_MEMBER = "not_member"


class AlphabetMismatch(GraphError):
    pass


class NotWGNF(GraphError):
    pass


class NotEdgeful(GraphError):
    pass


class SkeletonTypePresent(GraphError):
    pass


@dataclass(frozen=True)
class Hlg:
    """Hypergraph Lambek grammar: alphabet, start type, lexicon relation."""

    alphabet: tuple[Label, ...]
    start: HlType
    lexicon: tuple[tuple[str, HlType], ...]  # (symbol, type)

    def __post_init__(self):
        arities = {lab.sym: lab.arity for lab in self.alphabet}
        for sym, t in self.lexicon:
            if sym not in arities:
                raise AlphabetMismatch(f"lexicon symbol {sym!r} outside alphabet")
            if t.arity != arities[sym]:
                raise AlphabetMismatch(
                    f"lexicon entry {sym!r}: arity {arities[sym]} != type arity {t.arity}"
                )

    def options(self, sym: str) -> list[HlType]:
        return [t for s, t in self.lexicon if s == sym]

    def dictionary(self) -> list[HlType]:
        seen, out = set(), []
        for _, t in self.lexicon:
            if t.payload_key() not in seen:
                seen.add(t.payload_key())
                out.append(t)
        return out


@dataclass(frozen=True)
class Hrg:
    """Hyperedge replacement grammar; production right-hand sides are graphs
    over nonterminal plus terminal labels."""

    nonterminals: tuple[Label, ...]
    terminals: tuple[Label, ...]
    start: str
    productions: tuple[tuple[str, Hypergraph], ...]  # (lhs symbol, rhs)

    def __post_init__(self):
        nt = {l.sym: l.arity for l in self.nonterminals}
        term = {l.sym: l.arity for l in self.terminals}
        if set(nt) & set(term):
            raise GraphError("nonterminúčal and terminal alphabets overlap")
        if self.start not in nt:
            raise GraphError(f"start symbol {self.start!r} not a nonterminal")
        for lhs, rhs in self.productions:
            if lhs not in nt:
                raise GraphError(f"production head {lhs!r} not a nonterminal")
            if rhs.type != nt[lhs]:
                raise GraphError(f"production {lhs!r}: rhs type {rhs.type} != {nt[lhs]}")
            for e in rhs.edges:
                if not isinstance(e.label, Label):
                    raise GraphError("rhs edges must carry plain labels")
                if e.label.sym not in nt and e.label.sym not in term:
                    raise GraphError(f"unknown rhs symbol {e.label.sym!r}")

    def is_terminal(self, lab: Label) -> bool:
        return any(l.sym == lab.sym for l in self.terminals)

    def label(self, sym: str) -> Label:
        for l in self.nonterminals + self.terminals:
            if l.sym == sym:
                return l
        raise KeyError(sym)


def is_wgnf(g: Hrg) -> bool:
    return all(
        sum(g.is_terminal(e.label) for e in rhs.edges) == 1
        for _, rhs in g.productions
    )


# -- HLG membership ---------------------------------------------------------------


@dataclass
class MemberWitness:
    assignment: dict[str, HlType]  # edge id -> assigned type
    tree: DerivationTree


@dataclass
class MemberResult:
    verdict: str  # member / not_member / budget_exceeded
    witness: MemberWitness | None
    nodes: int = 0

    @property
    def member(self) -> bool:
        return self.verdict == MEMBER


def _vector_bounds(options: Sequence[HlType]) -> tuple[dict, dict]:
    lo: dict = {}
    hi: dict = {}
    keys = set()
    vecs = [counter_vector(t) for t in options]
    for v in vecs:
        keys |= set(v)
    for k in keys:
        vals = [v.get(k, 0) for v in vecs]
        lo[k] = min(vals)
        hi[k] = max(vals)
    return lo, hi


def hlg_member(
    g: Hlg,
    h: Hypergraph,
    budget: Budget | None = None,
    jobs: int = 1,
    memo: dict | None = None,
) -> MemberResult:
    """Decide membership of a terminal graph, with a verifying witness.

    Assignments are enumerated fewest-options-first with counter bounds
    pruning partial sums; each surviving candidate sequent goes to the
    prover (the simple-derivation fast path when the lexicon shape allows).
    """
    alphabet = {l.sym: l.arity for l in g.alphabet}
    for e in h.edges:
        if not isinstance(e.label, Label) or e.label.sym not in alphabet:
            raise AlphabetMismatch(f"edge {e.id} labeled outside the alphabet")
    if h.type != g.start.arity:
        return MemberResult(NOT_MEMBER, None)

    budget = budget or Budget()
    if memo is None:
        memo = {}
    edges = sorted(h.edges, key=lambda e: (len(g.options(e.label.sym)), e.id))
    options = [g.options(e.label.sym) for e in edges]
    if any(not opts for opts in options):
        return MemberResult(NOT_MEMBER, None, budget.nodes)

    target = dict(counter_vector(g.start))
    bounds = [_vector_bounds(opts) for opts in options]
    n = len(edges)
    coords = sorted(
        set(target) | {k for lo, _hi in bounds for k in lo},
    )
    coord_ix = {k: i for i, k in enumerate(coords)}
    want = [target.get(k, 0) for k in coords]
    # suffix min/max contribution per counter coordinate
    suffix_lo = [[0] * len(coords) for _ in range(n + 1)]
    suffix_hi = [[0] * len(coords) for _ in range(n + 1)]
    for i in range(n - 1, -1, -1):
        lo, hi = bounds[i]
        for j, k in enumerate(coords):
            suffix_lo[i][j] = lo.get(k, 0) + suffix_lo[i + 1][j]
            suffix_hi[i][j] = hi.get(k, 0) + suffix_hi[i + 1][j]
    option_vecs = [
        [
            [counter_vector(t).get(k, 0) for k in coords]
            for t in opts
        ]
        for opts in options
    ]

    simple_path = isinstance(g.start, Prim) or (
        isinstance(g.start, Times)
        and all(isinstance(e.label, Prim) for e in g.start.body.edges)
    )
    simple_path = simple_path and all(
        is_simple(t) for _, t in g.lexicon
    )

    def feasible(i: int, partial: list[int]) -> bool:
        lo, hi = suffix_lo[i], suffix_hi[i]
        for j, w in enumerate(want):
            have = partial[j]
            if have + lo[j] > w or have + hi[j] < w:
                return False
        return True

    def candidates() -> Iterator[dict[str, HlType]]:
        def rec(i: int, partial: list[int], chosen: list[HlType]) -> Iterator[dict]:
            if not feasible(i, partial):
                return
            if i == n:
                yield {e.id: t for e, t in zip(edges, chosen)}
                return
            for t, vec in zip(options[i], option_vecs[i]):
                nxt = [a + b for a, b in zip(partial, vec)]
                chosen.append(t)
                yield from rec(i + 1, nxt, chosen)
                chosen.pop()

        yield from rec(0, [0] * len(coords), [])

    def attempt(assignment: dict[str, HlType]) -> ProveResult:
        typed = h.relabel(lambda e: assignment[e.id])
        seq = Sequent(typed, g.start)
        if simple_path:
            return prove_simple(seq, budget=budget, memo=memo)
        return prove(seq, budget=budget, memo=memo)

    ran_out = False
    if jobs > 1:
        # membership parallelizes over assignments; the memo tolerates
        # concurrent idempotent insertion
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            futures = [(a, pool.submit(attempt, a)) for a in candidates()]
            for assignment, fut in futures:
                res = fut.result()
                if res.verdict == DERIVABLE:
                    return MemberResult(
                        MEMBER, MemberWitness(assignment, res.tree), budget.nodes
                    )
                ran_out |= res.verdict == BUDGET_EXCEEDED
    else:
        for assignment in candidates():
            res = attempt(assignment)
            if res.verdict == DERIVABLE:
                return MemberResult(
                    MEMBER, MemberWitness(assignment, res.tree), budget.nodes
                )
            ran_out |= res.verdict == BUDGET_EXCEEDED
    return MemberResult(
        BUDGET_EXCEEDED if ran_out else NOT_MEMBER, None, budget.nodes
    )


def check_member_witness(g: Hlg, h: Hypergraph, witness: MemberWitness) -> bool:
    """Independent witness check: the assignment respects the lexicon and the
    tree verifies with the relabeled sequent as conclusion."""
    for e in h.edges:
        assigned = witness.assignment.get(e.id)
        if assigned is None:
            return False
        if all(
            not (sym == e.label.sym and t == assigned) for sym, t in g.lexicon
        ):
            return False
    typed = h.relabel(lambda e: witness.assignment[e.id])
    ok, _ = verify_tree(witness.tree)
    if not ok:
        return False
    concl = witness.tree.conclusion
    return (
        concl.succedent == g.start
        and isomorphic(concl.antecedent, typed) is not None
    )


# -- HRG derivation ---------------------------------------------------------------


def _min_terminals(g: Hrg) -> dict[str, int]:
    INF = 10**9
    mt = {l.sym: INF for l in g.nonterminals}

    def rhs_cost(rhs: Hypergraph) -> int:
        total = 0
        for e in rhs.edges:
            if g.is_terminal(e.label):
                total += 1
            else:
                total += mt[e.label.sym]
                if total >= INF:
                    return INF
        return total

    changed = True
    while changed:
        changed = False
        for lhs, rhs in g.productions:
            c = rhs_cost(rhs)
            if c < mt[lhs]:
                mt[lhs] = c
                changed = True
    return mt


def hrg_derive(
    g: Hrg, max_edges: int, max_states: int = 10**6
) -> Iterator[Hypergraph]:
    """Exhaustive, duplicate-free enumeration of terminal graphs with at most
    ``max_edges`` edges.  Exact whenever every nonterminal eventually yields a
    terminal edge (always true in weak Greibach normal form)."""
    mt = _min_terminals(g)
    start_label = g.label(g.start)
    seen: set[bytes] = set()
    emitted: set[bytes] = set()
    stack = [handle(start_label)]
    states = 0
    while stack:
        cur = stack.pop()
        states += 1
        if states > max_states:
            raise GraphError("hrg_derive state cap exceeded")
        nonterm = [e for e in cur.edges if not g.is_terminal(e.label)]
        if not nonterm:
            key = cur.canonical_form()
            if key not in emitted:
                emitted.add(key)
                yield cur
            continue
        # expanding one fixed nonterminal suffices: replacements commute
        e0 = min(nonterm, key=lambda e: e.id)
        for lhs, rhs in g.productions:
            if lhs != e0.label.sym:
                continue
            nxt = replace(cur, e0.id, rhs)
            t_edges = sum(g.is_terminal(e.label) for e in nxt.edges)
            lower = t_edges + sum(
                mt[e.label.sym]
                for e in nxt.edges
                if not g.is_terminal(e.label)
            )
            if lower > max_edges:
                continue
            key = nxt.canonical_form()
            if key in seen:
                continue
            seen.add(key)
            stack.append(nxt)


def hrg_member(g: Hrg, h: Hypergraph) -> bool:
    """Exact membership for WGNF grammars: every derivation of an n-edge
    terminal graph takes exactly n steps, so enumeration to n edges decides."""
    if not is_wgnf(g):
        raise NotWGNF("hrg_member needs a weak Greibach normal form grammar")
    target = h.canonical_form()
    return any(
        d.canonical_form() == target for d in hrg_derive(g, len(h.edges))
    )


# -- HRG -> HLG conversion -----------------------------------------------------------


def hrg_to_hlg(g: Hrg) -> Hlg:
    """Each production with terminal edge ``a`` becomes a lexicon entry
    mapping ``a`` to the division whose denominator is the right-hand side
    with the terminal edge turned into the placeholder; handle-shaped
    productions collapse to bare primitives.  Output types are simple."""
    if not is_wgnf(g):
        raise NotWGNF("conversion needs a weak Greibach normal form grammar")
    nt = {l.sym: l.arity for l in g.nonterminals}
    lexicon: list[tuple[str, HlType]] = []
    for lhs, rhs in g.productions:
        term_edges = [e for e in rhs.edges if g.is_terminal(e.label)]
        e0 = term_edges[0]
        a = e0.label
        x = Prim(lhs, nt[lhs])
        if rhs == handle(a):
            lexicon.append((a.sym, x))
            continue
        den = rhs.relabel(
            lambda e: Dollar(len(e.att))
            if e.id == e0.id
            else Prim(e.label.sym, e.label.arity)
        )
        lexicon.append((a.sym, Div(x, den)))
    return Hlg(tuple(g.terminals), Prim(g.start, nt[g.start]), tuple(lexicon))


# -- closure constructions ------------------------------------------------------------


def relabel_grammar(g: Hlg, mapping: Mapping[str, Label]) -> Hlg:
    """Pointwise image under an arity-preserving relabeling of the alphabet."""
    arities = {l.sym: l.arity for l in g.alphabet}
    for sym, new in mapping.items():
        if arities.get(sym) != new.arity:
            raise AlphabetMismatch(f"relabeling changes arity of {sym!r}")
    new_alphabet = []
    for l in g.alphabet:
        target = mapping.get(l.sym, l)
        if all(a.sym != target.sym for a in new_alphabet):
            new_alphabet.append(target)
    lexicon = []
    for sym, t in g.lexicon:
        entry = (mapping.get(sym, Label(sym, arities[sym])).sym, t)
        if entry not in lexicon:
            lexicon.append(entry)
    return Hlg(tuple(new_alphabet), g.start, tuple(lexicon))


def _canonical_first_edge(h: Hypergraph) -> Edge:
    from .graph import _canonical_order

    pos = {v: i for i, v in enumerate(_canonical_order(h))}
    return min(
        h.edges, key=lambda e: (e.label.payload_key(), tuple(pos[v] for v in e.att), e.id)
    )


def substitute_grammar(g: Hlg, images: Mapping[str, Hypergraph]) -> Hlg:
    """Closure under an edgeful graph-for-symbol substitution.

    Every image graph must carry at least one edge and no lexicon type may
    have a skeleton subtype.  One edge per image becomes the placeholder; the
    rest pin fresh lonely primitives so the image can only ever reassemble as
    itself."""
    arities = {l.sym: l.arity for l in g.alphabet}
    for sym in arities:
        if sym not in images:
            raise AlphabetMismatch(f"no image for alphabet symbol {sym!r}")
    for sym, t in g.lexicon:
        if has_skeleton_subtype(t):
            raise SkeletonTypePresent(f"lexicon type for {sym!r} has a skeleton subtype")
    new_alphabet: list[Label] = []
    lexicon: list[tuple[str, HlType]] = []
    for sym, image in images.items():
        if image.type != arities[sym]:
            raise AlphabetMismatch(f"image of {sym!r} has wrong type")
        if not image.edges:
            raise NotEdgeful(f"image of {sym!r} has no edges")
        for e in image.edges:
            if not isinstance(e.label, Label):
                raise GraphError("image edges must carry plain labels")
            if all(a.sym != e.label.sym for a in new_alphabet):
                new_alphabet.append(e.label)
        e_main = _canonical_first_edge(image)
        fresh = {
            e.id: Prim(f"_ps_{sym}_{e.id}", len(e.att))
            for e in image.edges
            if e.id != e_main.id
        }
        den = image.relabel(
            lambda e: Dollar(len(e.att)) if e.id == e_main.id else fresh[e.id]
        )
        for e in image.edges:
            if e.id != e_main.id:
                lexicon.append((e.label.sym, fresh[e.id]))
        for s2, t in g.lexicon:
            if s2 == sym:
                lexicon.append((e_main.label.sym, Div(t, den)))
    dedup = []
    for entry in lexicon:
        if entry not in dedup:
            dedup.append(entry)
    return Hlg(tuple(new_alphabet), g.start, tuple(dedup))


# -- finite intersections ("tying balloons") -------------------------------------------


def _rename_prims(t: HlType, prefix: str) -> HlType:
    if isinstance(t, Prim):
        return Prim(prefix + t.sym, t.arity)
    if isinstance(t, Div):
        den = t.den.relabel(
            lambda e: e.label
            if isinstance(e.label, Dollar)
            else _rename_prims(e.label, prefix)
        )
        return Div(_rename_prims(t.num, prefix), den)
    if isinstance(t, Times):
        return Times(t.body.relabel(lambda e: _rename_prims(e.label, prefix)))
    raise GraphError(f"cannot rename primitives in {t!r}")


def _balloon(j: int) -> Prim:
    return Prim(f"__b{j}", 1)


def _phi_early(t: HlType, j: int) -> HlType:
    """Externalize denominator internals and tie one balloon per node."""
    if isinstance(t, Prim):
        return t
    if not isinstance(t, Div) or not isinstance(t.num, Prim):
        raise GraphError("intersection expects conversion-shaped types")
    den = t.den
    internal = [v for v in den.nodes if v not in set(den.ext)]
    new_den = den.with_ext(tuple(den.ext) + tuple(internal))
    p = t.num
    tcount, m = p.arity, len(internal)
    nodes = [f"v{i}" for i in range(tcount + m)]
    edges: list[tuple[str, object, list[str]]] = [("e0", p, nodes[:tcount])]
    for i in range(m):
        edges.append((f"e{i + 1}", _balloon(j), [nodes[tcount + i]]))
    body = Hypergraph(nodes, edges, nodes)
    return Div(Times(body), new_den)


def _phi_last(t: HlType, k: int) -> HlType:
    """Attach the k-1 balloon edges to every internal denominator node."""
    if isinstance(t, Prim):
        return t
    if not isinstance(t, Div) or not isinstance(t.num, Prim):
        raise GraphError("intersection expects conversion-shaped types")
    den = t.den
    internal = [v for v in den.nodes if v not in set(den.ext)]
    edges = list(den.edges)
    eids = den.fresh_edge_ids((k - 1) * len(internal))
    w = 0
    for v in internal:
        for j in range(1, k):
            edges.append(Edge(eids[w], _balloon(j), (v,)))
            w += 1
    return Div(t.num, Hypergraph(den.nodes, edges, den.ext))


def intersect_hrgs(grammars: Sequence[Hrg]) -> Hlg:
    """HL-grammar for the intersection of the WGNF grammars' languages."""
    if len(grammars) < 2:
        raise GraphError("intersection needs at least two grammars")
    hlgs = [hrg_to_hlg(g) for g in grammars]
    k = len(hlgs)
    starts = [h.start.arity for h in hlgs]
    if len(set(starts)) != 1:
        raise AlphabetMismatch("start types have different arities")
    renamed = []
    for i, h in enumerate(hlgs):
        prefix = f"g{i}_"
        renamed.append(
            Hlg(
                h.alphabet,
                _rename_prims(h.start, prefix),
                tuple((s, _rename_prims(t, prefix)) for s, t in h.lexicon),
            )
        )
    syms = set.intersection(*[{l.sym for l in h.alphabet} for h in renamed])
    alphabet = tuple(l for l in renamed[0].alphabet if l.sym in syms)
    lexicon: list[tuple[str, HlType]] = []
    for sym in sorted(syms):
        per = [h.options(sym) for h in renamed]
        for combo in itertools.product(*per):
            parts = [
                _phi_early(t, j + 1) if j < k - 1 else _phi_last(t, k)
                for j, t in enumerate(combo)
            ]
            lexicon.append((sym, ersatz_conjunction(parts)))
    start = ersatz_conjunction([h.start for h in renamed])
    return Hlg(alphabet, start, tuple(lexicon))


# -- diagnostics ----------------------------------------------------------------------


def isolated_bound_report(g: Hlg) -> dict[str, int]:
    """Constants of the isolated-node bound: members with edges satisfy
    isize < M * |E|."""
    worst = max(
        [isolated_node_measure(t) for t in g.dictionary()]
        + [isolated_node_measure(g.start)],
        default=0,
    )
    c = worst + g.start.arity + 1
    return {"C": c, "M": 3 * c + 1}


# -- fixtures --------------------------------------------------------------------------


def _hgr1_types() -> tuple[HlType, ...]:
    p = Prim("p", 1)
    s = Prim("s", 0)
    q1 = p
    q2 = Div(
        p,
        Hypergraph(
            ["a", "b"], [("d0", Dollar(1), ["a"]), ("d1", p, ["b"])], ["a"]
        ),
    )
    q3 = Div(
        s,
        Hypergraph(["a", "b"], [("d0", Dollar(1), ["a"]), ("d1", p, ["b"])], []),
    )
    return q1, q2, q3


def _two_unary_times(left: HlType | None, right: HlType | None) -> Times:
    edges = []
    if left is not None:
        edges.append(("e0", left, ["a"]))
    if right is not None:
        edges.append(("e1", right, ["b"]))
    return Times(Hypergraph(["a", "b"], edges, ["a", "b"]))


def hgr1() -> Hlg:
    """All 2-graphs without isolated nodes (type 0, single binary symbol)."""
    q = _hgr1_types()
    a = Label("a", 2)
    lexicon: list[tuple[str, HlType]] = []
    for i in range(3):
        for j in range(3):
            lexicon.append(("a", _two_unary_times(q[i], q[j])))
    for i in range(3):
        lexicon.append(("a", _two_unary_times(q[i], None)))
        lexicon.append(("a", _two_unary_times(None, q[i])))
    lexicon.append(("a", _two_unary_times(None, None)))
    return Hlg((a,), Prim("s", 0), tuple(lexicon))


def _u_wrap(t: HlType) -> HlType:
    den = Hypergraph(
        ["a", "b"],
        [("d0", Dollar(2), ["a", "b"]), ("d1", t, ["a", "b"])],
        [],
    )
    return Div(Prim("s", 0), den)


def hgr1_prime() -> Hlg:
    """Same language as hgr1 through double division wrappers."""
    base = hgr1()
    lexicon = tuple((sym, _u_wrap(_u_wrap(t))) for sym, t in base.lexicon)
    return Hlg(base.alphabet, base.start, lexicon)


def hgr2() -> Hlg:
    """Directed-bipartite 2-graphs without isolated nodes."""
    p = Prim("p", 1)
    q = Prim("q", 1)

    def r(idx: int, prim: Prim) -> HlType:
        if idx == 1:
            return prim
        if idx == 2:
            den = Hypergraph(
                ["a"], [("d0", Dollar(1), ["a"]), ("d1", prim, ["a"])], ["a"]
            )
            return Div(prim, den)
        den = Hypergraph(
            ["a", "b"], [("d0", Dollar(1), ["a"]), ("d1", prim, ["b"])], ["a"]
        )
        return Div(prim, den)

    a = Label("a", 2)
    lexicon = []
    for i in (1, 2, 3):
        for j in (1, 2, 3):
            lexicon.append(("a", _two_unary_times(r(i, p), r(j, q))))
    start = Times(
        Hypergraph(["a", "b"], [("e0", p, ["a"]), ("e1", q, ["b"])], [])
    )
    return Hlg((a,), start, tuple(lexicon))


def anbn_lambek() -> Hlg:
    """String graphs of a^n b^n through the translated Lambek lexicon."""
    from .strcalc import SOver, SPrim, SUnder, tr_l

    a = Label("a", 2)
    b = Label("b", 2)
    lexicon = (
        ("a", tr_l(SOver(SPrim("s"), SPrim("p")))),
        ("b", tr_l(SPrim("p"))),
        ("b", tr_l(SUnder(SPrim("p"), SPrim("s")))),
    )
    return Hlg((a, b), Prim("s", 2), lexicon)


def _string_rhs(symbols: Sequence[Label]) -> Hypergraph:
    from .graph import string_graph

    return string_graph(list(symbols))


def anbn_hrg() -> Hrg:
    """WGNF string-graph grammar of a^n b^n."""
    S = Label("S", 2)
    B = Label("B", 2)
    a = Label("a", 2)
    b = Label("b", 2)
    productions = (
        ("S", _string_rhs([a, S, B])),
        ("S", _string_rhs([a, B])),
        ("B", handle(b)),
    )
    return Hrg((S, B), (a, b), "S", productions)


def tree_hrg() -> Hrg:
    """Branching WGNF fixture: ternary fork skeletons capped by unary tips."""
    S = Label("S", 1)
    f = Label("f", 3)
    c = Label("c", 1)
    fork = Hypergraph(
        ["u", "v", "w"],
        [("e0", f, ["u", "v", "w"]), ("e1", S, ["v"]), ("e2", S, ["w"])],
        ["u"],
    )
    return Hrg((S,), (f, c), "S", (("S", fork), ("S", handle(c))))


def intersection_hrg_pair() -> tuple[Hrg, Hrg]:
    """WGNF grammars for (a^n b^n)^k and a^k (b^n a^n)^l b^k; their graph
    languages intersect in ((a^n b^n)^n)."""
    a = Label("a", 2)
    b = Label("b", 2)
    S = Label("S", 2)
    T = Label("T", 2)
    B = Label("B", 2)
    g1 = Hrg(
        (S, T, B),
        (a, b),
        "S",
        (
            ("S", _string_rhs([a, T, B, S])),
            ("S", _string_rhs([a, B, S])),
            ("S", _string_rhs([a, T, B])),
            ("S", _string_rhs([a, B])),
            ("T", _string_rhs([a, T, B])),
            ("T", _string_rhs([a, B])),
            ("B", handle(b)),
        ),
    )
    S2 = Label("S", 2)
    Q = Label("Q", 2)
    T2 = Label("T", 2)
    A2 = Label("A", 2)
    B2 = Label("B", 2)
    g2 = Hrg(
        (S2, Q, T2, A2, B2),
        (a, b),
        "S",
        (
            ("S", _string_rhs([a, S2, B2])),
            ("S", _string_rhs([a, Q, B2])),
            ("S", _string_rhs([b, T2, A2, Q])),
            ("S", _string_rhs([b, A2, Q])),
            ("S", _string_rhs([b, T2, A2])),
            ("S", _string_rhs([b, A2])),
            ("Q", _string_rhs([b, T2, A2, Q])),
            ("Q", _string_rhs([b, A2, Q])),
            ("Q", _string_rhs([b, T2, A2])),
            ("Q", _string_rhs([b, A2])),
            ("T", _string_rhs([b, T2, A2])),
            ("T", _string_rhs([b, A2])),
            ("A", handle(a)),
            ("B", handle(b)),
        ),
    )
    return g1, g2


def builtin_grammars() -> dict[str, Hlg | Hrg]:
    return {
        "HGr1": hgr1(),
        "HGr1_prime": hgr1_prime(),
        "HGr2": hgr2(),
        "anbn_lambek": anbn_lambek(),
        "anbn_hrg": anbn_hrg(),
        "tree_hrg": tree_hrg(),
    }
