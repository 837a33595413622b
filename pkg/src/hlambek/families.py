"""Exhaustive small-instance families: non-isomorphic graph sets, bounded
type pools, and bounded sequent families for the oracle-style suites.

Type sizes alone do not bound the embedded graphs (isolated nodes are free),
so every family here also carries explicit shape caps: node counts, edge
counts and isolated-node allowances.  Families are deduplicated through
canonical forms and deterministic in their ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Dollar, Hypergraph, Label
from .types import Div, HlType, Prim, Sequent, Times, size


def two_graph_family(
    max_edges: int, max_isolated: int = 1, sym: str = "a"
) -> list[Hypergraph]:
    """All type-0 2-graphs over one binary symbol with at most ``max_edges``
    edges and up to ``max_isolated`` extra isolated nodes, up to isomorphism.
    Built by edge augmentation with canonical deduplication."""
    a = Label(sym, 2)
    empty = Hypergraph([], [], [])
    layers: list[dict[bytes, Hypergraph]] = [{empty.canonical_form(): empty}]
    for _ in range(max_edges):
        nxt: dict[bytes, Hypergraph] = {}
        for g in layers[-1].values():
            candidates = list(g.nodes)
            fresh = g.fresh_node_ids(2)
            pools = candidates + fresh
            eid = g.fresh_edge_ids(1)[0]
            for u, v in itertools.permutations(pools, 2):
                new_nodes = list(g.nodes) + [x for x in (u, v) if x in fresh]
                try:
                    h = Hypergraph(
                        new_nodes, list(g.edges) + [(eid, a, [u, v])], []
                    )
                except Exception:
                    continue
                nxt.setdefault(h.canonical_form(), h)
        layers.append(nxt)
    out: dict[bytes, Hypergraph] = {}
    for layer in layers:
        for g in layer.values():
            for extra in range(max_isolated + 1):
                h = g.with_extra_nodes(extra)
                out.setdefault(h.canonical_form(), h)
    return list(out.values())


@dataclass(frozen=True)
class TypeShapeCaps:
    """Shape bounds for embedded graphs inside enumerated types."""

    max_den_edges: int = 1  # non-$ edges per denominator
    max_body_edges: int = 2
    max_nodes: int = 3
    max_iso: int = 1
    max_arity: int = 2
    ext_lens: tuple[int, ...] = (0, 1, 2)


def _graph_shells(
    edge_labels: Sequence[object],
    ext_len: int,
    caps: TypeShapeCaps,
) -> Iterator[Hypergraph]:
    """All graphs (up to iso) with the given edge payloads in order and the
    given external length, within the node caps."""
    from .graph import payload_arity

    arities = [payload_arity(l) for l in edge_labels]
    min_nodes = max([ext_len] + arities) if (arities or ext_len) else 0
    seen: set[bytes] = set()
    for n_nodes in range(min_nodes, caps.max_nodes + caps.max_iso + 1):
        nodes = [f"n{i}" for i in range(n_nodes)]
        att_choices = [
            list(itertools.permutations(nodes, a)) for a in arities
        ]
        for atts in itertools.product(*att_choices):
            for ext in itertools.permutations(nodes, ext_len):
                try:
                    g = Hypergraph(
                        nodes,
                        [
                            (f"e{i}", lab, list(att))
                            for i, (lab, att) in enumerate(zip(edge_labels, atts))
                        ],
                        list(ext),
                    )
                except Exception:
                    continue
                if g.isize() > caps.max_iso:
                    continue
                key = g.canonical_form()
                if key not in seen:
                    seen.add(key)
                    yield g


def small_types(
    prims: Sequence[Prim], max_size: int, caps: TypeShapeCaps | None = None
) -> list[HlType]:
    """All types up to the size bound whose embedded graphs respect the shape
    caps; deduplicated structurally, ordered by size."""
    caps = caps or TypeShapeCaps()
    by_size: list[list[HlType]] = [[] for _ in range(max_size + 1)]
    seen: set[bytes] = set()

    def add(t: HlType) -> None:
        k = t.payload_key()
        if k not in seen:
            seen.add(k)
            by_size[size(t)].append(t)

    for p in prims:
        if p.arity <= caps.max_arity:
            add(p)

    def pool_upto(s: int) -> list[HlType]:
        return [t for layer in by_size[: s + 1] for t in layer]

    for s in range(2, max_size + 1):
        # times: label sizes sum to s-1 (zero or more edges)
        for k in range(0, caps.max_body_edges + 1):
            for labels in _label_tuples(pool_upto(s - 1), k, s - 1):
                for ext_len in caps.ext_lens:
                    for body in _graph_shells(labels, ext_len, caps):
                        t = Times(body)
                        if size(t) == s:
                            add(t)
        # div: |num| + label sizes + 1 = s
        for num in pool_upto(s - 2) + (by_size[s - 1] if s - 1 >= 1 else []):
            budget = s - 1 - size(num)
            if budget < 0 or num.arity not in caps.ext_lens:
                continue
            for k in range(0, caps.max_den_edges + 1):
                for labels in _label_tuples(pool_upto(budget), k, budget):
                    if sum(size(l) for l in labels) != budget:
                        continue
                    for dollar_arity in range(0, caps.max_arity + 1):
                        den_labels = [Dollar(dollar_arity)] + list(labels)
                        for den in _graph_shells(den_labels, num.arity, caps):
                            t = Div(num, den)
                            if size(t) == s:
                                add(t)
    return [t for layer in by_size for t in layer]


def _label_tuples(
    pool: Sequence[HlType], k: int, budget: int
) -> Iterator[tuple[HlType, ...]]:
    """Multisets of k pool types with sizes summing to at most ``budget``
    (exact budget filtering happens at the caller)."""
    if k == 0:
        if budget >= 0:
            yield ()
        return
    for combo in itertools.combinations_with_replacement(range(len(pool)), k):
        labels = tuple(pool[i] for i in combo)
        if sum(size(l) for l in labels) <= budget:
            yield labels


@dataclass(frozen=True)
class SequentFamilyCaps:
    max_sequent_size: int = 7
    max_ant_edges: int = 2
    max_ant_nodes: int = 3
    max_ant_iso: int = 1
    ext_lens: tuple[int, ...] = (0, 1)


def sequent_family(
    types: Sequence[HlType], caps: SequentFamilyCaps | None = None
) -> list[Sequent]:
    """All sequents (up to iso) whose antecedent edges and succedent come from
    the pool, within the size and shape caps."""
    caps = caps or SequentFamilyCaps()
    shape_caps = TypeShapeCaps(
        max_nodes=caps.max_ant_nodes,
        max_iso=caps.max_ant_iso,
        max_arity=max((t.arity for t in types), default=2),
    )
    out: dict[bytes, Sequent] = {}
    for succ in types:
        if succ.arity not in caps.ext_lens:
            continue
        budget = caps.max_sequent_size - size(succ)
        if budget < 0:
            continue
        for k in range(0, caps.max_ant_edges + 1):
            for labels in _label_tuples(types, k, budget):
                for ant in _graph_shells(labels, succ.arity, shape_caps):
                    s = Sequent(ant, succ)
                    out.setdefault(s.key(), s)
    return list(out.values())
