"""Hypergraphs with ordered attachments and ordered external nodes.

This is the carrier structure for everything else: antecedents of graph
sequents, denominators and bodies of types, grammar right-hand sides.  A
hypergraph has a finite node set, finitely many labeled hyperedges (each with
an ordered sequence of pairwise-distinct attachment nodes) and an ordered
sequence of pairwise-distinct external nodes.  Loops (repeated nodes in an
attachment or external sequence) are not representable.

Edge payloads are generic: a ``Label`` for terminal graphs, a type object for
typed antecedents, or the ``Dollar`` placeholder inside denominators.  Any
payload must expose an integer ``arity`` attribute and a ``payload_key()``
method returning bytes that respect structural equality.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    """Malformed graph or illegal graph operation."""


class ArityMismatch(GraphError):
    pass


class BoundaryViolation(GraphError):
    """Compression preconditions (a)/(b) are violated."""


class EmptyWord(GraphError):
    pass


@dataclass(frozen=True)
class Label:
    """Alphabet symbol with a fixed rank."""

    sym: str
    arity: int

    def payload_key(self) -> bytes:
        return b"L:%d:%s" % (self.arity, self.sym.encode())

    def __repr__(self) -> str:
        return f"{self.sym}#{self.arity}"


@dataclass(frozen=True)
class Dollar:
    """Placeholder edge label of denominators; one occurrence per denominator.

    The placeholder is rank-polymorphic, so each occurrence carries its own
    arity and the arity takes part in the payload key.
    """

    arity: int

    def payload_key(self) -> bytes:
        return b"$:%d" % self.arity

    def __repr__(self) -> str:
        return f"$#{self.arity}"


@dataclass(frozen=True)
class Edge:
    id: str
    label: object
    att: tuple[str, ...]


def _check_distinct(seq: Sequence[str], what: str) -> None:
    if len(set(seq)) != len(seq):
        raise GraphError(f"repeated node in {what}: {seq}")


class Hypergraph:
    """Immutable hypergraph value.

    Equality and hashing are up to isomorphism (label payloads compared
    structurally through their keys); use ``same_presentation`` for the rare
    id-sensitive comparison.
    """

    __slots__ = ("nodes", "edges", "ext", "_canon", "_incidence")

    def __init__(
        self,
        nodes: Iterable[str],
        edges: Iterable[tuple[str, object, Sequence[str]]] | Iterable[Edge],
        ext: Sequence[str],
    ):
        nodes = tuple(nodes)
        if len(set(nodes)) != len(nodes):
            raise GraphError("repeated node id")
        nodeset = set(nodes)
        built = []
        seen_eids = set()
        for item in edges:
            if isinstance(item, Edge):
                eid, label, att = item.id, item.label, item.att
            else:
                eid, label, att = item
            att = tuple(att)
            if eid in seen_eids:
                raise GraphError(f"repeated edge id {eid!r}")
            seen_eids.add(eid)
            _check_distinct(att, f"att of {eid}")
            if not set(att) <= nodeset:
                raise GraphError(f"attachment of {eid} outside node set")
            if payload_arity(label) != len(att):
                raise ArityMismatch(
                    f"edge {eid}: label arity {payload_arity(label)} != |att| {len(att)}"
                )
            built.append(Edge(eid, label, att))
        ext = tuple(ext)
        _check_distinct(ext, "ext")
        if not set(ext) <= nodeset:
            raise GraphError("external node outside node set")
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", tuple(built))
        object.__setattr__(self, "ext", ext)
        object.__setattr__(self, "_canon", None)
        object.__setattr__(self, "_incidence", None)

    # -- basic accessors ---------------------------------------------------

    @property
    def type(self) -> int:
        return len(self.ext)

    def edge(self, eid: str) -> Edge:
        for e in self.edges:
            if e.id == eid:
                return e
        raise KeyError(eid)

    def has_edge(self, eid: str) -> bool:
        return any(e.id == eid for e in self.edges)

    def incidence(self) -> Mapping[str, tuple[Edge, ...]]:
        """node id -> edges attached to it (memoized)."""
        if self._incidence is None:
            inc: dict[str, list[Edge]] = {v: [] for v in self.nodes}
            for e in self.edges:
                for v in e.att:
                    inc[v].append(e)
            object.__setattr__(
                self, "_incidence", {v: tuple(es) for v, es in inc.items()}
            )
        return self._incidence

    def isolated_nodes(self) -> tuple[str, ...]:
        inc = self.incidence()
        return tuple(v for v in self.nodes if not inc[v])

    def isize(self) -> int:
        return len(self.isolated_nodes())

    def fresh_node_ids(self, count: int) -> list[str]:
        return _fresh_ids("n", self.nodes, count)

    def fresh_edge_ids(self, count: int) -> list[str]:
        return _fresh_ids("e", [e.id for e in self.edges], count)

    # -- equality / canonical form -----------------------------------------

    def canonical_form(self) -> bytes:
        if self._canon is None:
            object.__setattr__(self, "_canon", _canonical_form(self))
        return self._canon

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.canonical_form() == other.canonical_form()

    def __hash__(self) -> int:
        return hash(self.canonical_form())

    def same_presentation(self, other: "Hypergraph") -> bool:
        return (
            self.nodes == other.nodes
            and self.ext == other.ext
            and self.edges == other.edges
        )

    def __repr__(self) -> str:
        es = ", ".join(f"{e.label!r}({','.join(e.att)})" for e in self.edges)
        return f"<graph [{','.join(self.nodes)}] {es} ext=[{','.join(self.ext)}]>"

    # -- derived graphs ------------------------------------------------------

    def relabel(self, mapping: Callable[[Edge], object]) -> "Hypergraph":
        return Hypergraph(
            self.nodes,
            [(e.id, mapping(e), e.att) for e in self.edges],
            self.ext,
        )

    def with_extra_nodes(self, count: int) -> "Hypergraph":
        """Add ``count`` fresh isolated (non-external) nodes."""
        extra = self.fresh_node_ids(count)
        return Hypergraph(self.nodes + tuple(extra), self.edges, self.ext)

    def with_ext(self, ext: Sequence[str]) -> "Hypergraph":
        return Hypergraph(self.nodes, self.edges, ext)

    def renumbered(self) -> "Hypergraph":
        """Deterministically renamed copy (canonical node/edge order)."""
        order = _canonical_order(self)
        nmap = {v: f"n{i}" for i, v in enumerate(order)}
        edges = sorted(
            self.edges,
            key=lambda e: (payload_key(e.label), tuple(nmap[v] for v in e.att), e.id),
        )
        return Hypergraph(
            [nmap[v] for v in order],
            [(f"e{i}", e.label, [nmap[v] for v in e.att]) for i, e in enumerate(edges)],
            [nmap[v] for v in self.ext],
        )


@dataclass(frozen=True)
class Subgraph:
    """A designated sub-hypergraph of ``host`` with its own external sequence."""

    host: Hypergraph
    node_subset: frozenset[str]
    edge_subset: frozenset[str]
    sub_ext: tuple[str, ...]

    def __post_init__(self):
        if not self.node_subset <= set(self.host.nodes):
            raise GraphError("subgraph nodes outside host")
        host_eids = {e.id for e in self.host.edges}
        if not self.edge_subset <= host_eids:
            raise GraphError("subgraph edges outside host")
        for e in self.host.edges:
            if e.id in self.edge_subset and not set(e.att) <= self.node_subset:
                raise GraphError(f"edge {e.id} attaches outside subgraph nodes")
        _check_distinct(self.sub_ext, "subExt")
        if not set(self.sub_ext) <= self.node_subset:
            raise GraphError("subExt outside subgraph nodes")

    def as_graph(self) -> Hypergraph:
        host = self.host
        return Hypergraph(
            [v for v in host.nodes if v in self.node_subset],
            [e for e in host.edges if e.id in self.edge_subset],
            self.sub_ext,
        )


# -- payload protocol helpers ------------------------------------------------


def payload_arity(label: object) -> int:
    arity = getattr(label, "arity", None)
    if not isinstance(arity, int):
        raise GraphError(f"payload without integer arity: {label!r}")
    return arity


def payload_key(label: object) -> bytes:
    key = label.payload_key()
    if not isinstance(key, bytes):
        raise GraphError(f"payload_key of {label!r} is not bytes")
    return key


# -- constructions -------------------------------------------------------------


def _fresh_ids(prefix: str, taken: Iterable[str], count: int) -> list[str]:
    taken = set(taken)
    out: list[str] = []
    i = 0
    while len(out) < count:
        cand = f"{prefix}{i}"
        if cand not in taken:
            out.append(cand)
            taken.add(cand)
        i += 1
    return out


def handle(label: object, edge_id: str = "e0") -> Hypergraph:
    """The graph with one `label`-edge whose attachments are the externals."""
    n = payload_arity(label)
    nodes = [f"n{i}" for i in range(n)]
    return Hypergraph(nodes, [(edge_id, label, nodes)], nodes)


def string_graph(word: Sequence[object]) -> Hypergraph:
    """Chain graph of binary labels; externals are the two endpoints."""
    if len(word) == 0:
        raise EmptyWord("string graph of the empty word is undefined")
    for a in word:
        if payload_arity(a) != 2:
            raise ArityMismatch(f"string graph symbols must be binary: {a!r}")
    nodes = [f"n{i}" for i in range(len(word) + 1)]
    edges = [
        (f"e{i}", a, [nodes[i], nodes[i + 1]]) for i, a in enumerate(word)
    ]
    return Hypergraph(nodes, edges, [nodes[0], nodes[-1]])


def replace_with_map(
    host: Hypergraph, edge_id: str, filler: Hypergraph
) -> tuple[Hypergraph, dict[str, str], dict[str, str]]:
    """Like ``replace`` but also returns the (node map, edge map) taking the
    filler's material to its copy inside the result."""
    e0 = host.edge(edge_id)
    if filler.type != len(e0.att):
        raise ArityMismatch(
            f"replace: type(filler)={filler.type} != type(edge)={len(e0.att)}"
        )
    internal = [v for v in filler.nodes if v not in set(filler.ext)]
    fresh_nodes = host.fresh_node_ids(len(internal))
    nmap = dict(zip(internal, fresh_nodes))
    nmap.update({x: y for x, y in zip(filler.ext, e0.att)})
    fresh_eids = _fresh_ids("e", [e.id for e in host.edges], len(filler.edges))
    emap = {fe.id: eid for fe, eid in zip(filler.edges, fresh_eids)}
    new_edges = [e for e in host.edges if e.id != edge_id]
    for fe in filler.edges:
        new_edges.append(Edge(emap[fe.id], fe.label, tuple(nmap[v] for v in fe.att)))
    result = Hypergraph(tuple(host.nodes) + tuple(fresh_nodes), new_edges, host.ext)
    return result, nmap, emap


def replace(host: Hypergraph, edge_id: str, filler: Hypergraph) -> Hypergraph:
    """Substitute ``filler`` for the edge: fuse its i-th external node with the
    edge's i-th attachment node; internal filler material is copied fresh."""
    return replace_with_map(host, edge_id, filler)[0]


def replace_many(
    host: Hypergraph, substitutions: Mapping[str, Hypergraph]
) -> Hypergraph:
    """Simultaneous replacement; order-independent up to isomorphism."""
    g = host
    for eid in sorted(substitutions):
        g = replace(g, eid, substitutions[eid])
    return g


def check_compressible(host: Hypergraph, sub: Subgraph) -> None:
    if sub.host is not host and not sub.host.same_presentation(host):
        raise GraphError("subgraph does not belong to host")
    ext_set = set(sub.sub_ext)
    outside = [e for e in host.edges if e.id not in sub.edge_subset]
    for e in outside:
        for v in e.att:
            if v in sub.node_subset and v not in ext_set:
                raise BoundaryViolation(
                    f"node {v} touches outside edge {e.id} but is not in subExt"
                )
    for v in host.ext:
        if v in sub.node_subset and v not in ext_set:
            raise BoundaryViolation(f"host-external node {v} not in subExt")


def compress(
    host: Hypergraph, sub: Subgraph, label: object, edge_id: str | None = None
) -> Hypergraph:
    """Collapse a boundary-respecting subgraph into one fresh edge."""
    check_compressible(host, sub)
    if payload_arity(label) != len(sub.sub_ext):
        raise ArityMismatch(
            f"compress: arity {payload_arity(label)} != |subExt| {len(sub.sub_ext)}"
        )
    keep_nodes = [
        v
        for v in host.nodes
        if v not in sub.node_subset or v in set(sub.sub_ext)
    ]
    keep_edges = [e for e in host.edges if e.id not in sub.edge_subset]
    if edge_id is None:
        edge_id = _fresh_ids("e", [e.id for e in host.edges], 1)[0]
    keep_edges.append(Edge(edge_id, label, tuple(sub.sub_ext)))
    return Hypergraph(keep_nodes, keep_edges, host.ext)


# -- isomorphism ---------------------------------------------------------------


def isomorphic(
    g1: Hypergraph, g2: Hypergraph
) -> tuple[dict[str, str], dict[str, str]] | None:
    """Isomorphism witness ``(edge_map, node_map)`` from g1 to g2, or None.

    Backtracking matcher, independent of the canonical-form machinery so the
    two can cross-check each other.
    """
    if (
        len(g1.nodes) != len(g2.nodes)
        or len(g1.edges) != len(g2.edges)
        or len(g1.ext) != len(g2.ext)
    ):
        return None
    if sorted(payload_key(e.label) for e in g1.edges) != sorted(
        payload_key(e.label) for e in g2.edges
    ):
        return None

    nmap: dict[str, str] = {}
    used_nodes: set[str] = set()

    def assign(a: str, b: str) -> bool:
        if a in nmap:
            return nmap[a] == b
        if b in used_nodes:
            return False
        nmap[a] = b
        used_nodes.add(b)
        return True

    for a, b in zip(g1.ext, g2.ext):
        if not assign(a, b):
            return None

    inc2 = g2.incidence()

    def deg_profile(g: Hypergraph, v: str) -> tuple:
        return tuple(
            sorted(
                (payload_key(e.label), e.att.index(v)) for e in g.incidence()[v]
            )
        )

    prof2: dict[tuple, list[str]] = {}
    for v in g2.nodes:
        prof2.setdefault(deg_profile(g2, v), []).append(v)
    for v in g1.nodes:
        if deg_profile(g1, v) not in prof2:
            return None

    # match edges one by one, most-constrained (already-mapped attachments) first
    edges1 = list(g1.edges)

    def edge_backtrack(
        pending: list[Edge], emap: dict[str, str], used_edges: set[str]
    ) -> bool:
        if not pending:
            # extend node map over leftover isolated/unmatched nodes
            left1 = [v for v in g1.nodes if v not in nmap]
            left2 = [v for v in g2.nodes if v not in used_nodes]

            def node_backtrack(rest: list[str]) -> bool:
                if not rest:
                    return True
                a = rest[0]
                pa = deg_profile(g1, a)
                for b in left2:
                    if b in used_nodes or deg_profile(g2, b) != pa:
                        continue
                    nmap[a] = b
                    used_nodes.add(b)
                    if node_backtrack(rest[1:]):
                        return True
                    del nmap[a]
                    used_nodes.discard(b)
                return False

            return node_backtrack(left1)

        pending = sorted(
            pending, key=lambda e: -sum(v in nmap for v in e.att)
        )
        e = pending[0]
        rest = pending[1:]
        key = payload_key(e.label)
        for f in g2.edges:
            if f.id in used_edges or payload_key(f.label) != key:
                continue
            saved_nmap = dict(nmap)
            saved_used = set(used_nodes)
            ok = all(assign(a, b) for a, b in zip(e.att, f.att))
            if ok:
                emap[e.id] = f.id
                used_edges.add(f.id)
                if edge_backtrack(rest, emap, used_edges):
                    return True
                del emap[e.id]
                used_edges.discard(f.id)
            nmap.clear()
            nmap.update(saved_nmap)
            used_nodes.clear()
            used_nodes.update(saved_used)
        return False

    emap: dict[str, str] = {}
    if edge_backtrack(edges1, emap, set()):
        return emap, dict(nmap)
    return None


# -- canonical form -------------------------------------------------------------


class _CanonWork:
    """Preprocessed view for the canonical search: node ids and labels are
    interned to dense integers."""

    __slots__ = ("names", "n", "ext", "edges", "inc", "uniq")

    def __init__(self, g: Hypergraph):
        self.names = list(g.nodes)
        self.n = len(self.names)
        node_ix = {v: i for i, v in enumerate(self.names)}
        self.ext = [node_ix[v] for v in g.ext]
        self.uniq = sorted({payload_key(e.label) for e in g.edges})
        lab_ix = {k: i for i, k in enumerate(self.uniq)}
        self.edges = [
            (lab_ix[payload_key(e.label)], tuple(node_ix[v] for v in e.att))
            for e in g.edges
        ]
        inc: list[list[tuple[int, int, tuple[int, ...]]]] = [
            [] for _ in range(self.n)
        ]
        for li, att in self.edges:
            for pos, v in enumerate(att):
                inc[v].append((li, pos, att))
        self.inc = inc


def _refine(w: _CanonWork, ranks: list[int]) -> list[int]:
    for _ in range(w.n):
        sigs = []
        for v in range(w.n):
            around = [
                (li, pos, tuple(ranks[u] for u in att)) for li, pos, att in w.inc[v]
            ]
            around.sort()
            sigs.append((ranks[v], tuple(around)))
        order = sorted(set(sigs))
        idx = {c: i for i, c in enumerate(order)}
        new_ranks = [idx[s] for s in sigs]
        if new_ranks == ranks:
            break
        ranks = new_ranks
    return ranks


def _initial_ranks(w: _CanonWork) -> list[int]:
    ext_pos = {v: i for i, v in enumerate(w.ext)}
    colors = []
    for v in range(w.n):
        profile = tuple(sorted((li, pos) for li, pos, _ in w.inc[v]))
        colors.append((ext_pos.get(v, -1), profile))
    order = sorted(set(colors))
    idx = {c: i for i, c in enumerate(order)}
    return [idx[c] for c in colors]


def _serialize_ints(w: _CanonWork, order: Sequence[int]) -> tuple:
    pos = [0] * w.n
    for i, v in enumerate(order):
        pos[v] = i
    rows = sorted((li, tuple(pos[v] for v in att)) for li, att in w.edges)
    return (w.n, tuple(pos[v] for v in w.ext), tuple(rows))


def _swap_is_automorphism(w: _CanonWork, a: int, b: int) -> bool:
    """Does transposing the two nodes (fixing everything else) preserve the
    graph?  Cheap orbit test that collapses interchangeable nodes."""
    original: dict[tuple, int] = {}
    swapped: dict[tuple, int] = {}
    for li, att in w.edges:
        k1 = (li, att)
        original[k1] = original.get(k1, 0) + 1
        k2 = (li, tuple(b if v == a else a if v == b else v for v in att))
        swapped[k2] = swapped.get(k2, 0) + 1
    return original == swapped


def _search_order(w: _CanonWork) -> list[int]:
    best: list[tuple | None] = [None]
    best_order: list[list[int]] = [list(range(w.n))]

    def rec(ranks: list[int]) -> None:
        classes: dict[int, list[int]] = {}
        for v, r in enumerate(ranks):
            classes.setdefault(r, []).append(v)
        if all(len(vs) == 1 for vs in classes.values()):
            order = [vs[0] for _, vs in sorted(classes.items())]
            cand = _serialize_ints(w, order)
            if best[0] is None or cand < best[0]:
                best[0] = cand
                best_order[0] = order
            return
        target_rank = min(r for r, vs in classes.items() if len(vs) > 1)
        cell = classes[target_rank]
        reps: list[int] = []
        for v in cell:
            if any(_swap_is_automorphism(w, v, u) for u in reps):
                continue
            reps.append(v)
        for v in reps:
            ind = [2 * r for r in ranks]
            ind[v] -= 1
            rec(_refine(w, ind))

    rec(_refine(w, _initial_ranks(w)))
    return best_order[0]


def _canonical_order(g: Hypergraph) -> list[str]:
    """Node order realizing the canonical form (individualization-refinement
    search over orderings; minimal serialization wins)."""
    w = _CanonWork(g)
    return [w.names[v] for v in _search_order(w)]


def _canonical_form(g: Hypergraph) -> bytes:
    w = _CanonWork(g)
    order = _search_order(w)
    n, ext, rows = _serialize_ints(w, order)
    parts = [b"V%d" % n, b"X" + b",".join(b"%d" % i for i in ext)]
    parts.append(b"L" + b";".join(w.uniq))
    for li, att in rows:
        parts.append(b"E%d@" % li + b",".join(b"%d" % i for i in att))
    return b"|".join(parts)


# -- anchored embedding enumeration --------------------------------------------


def enumerate_embeddings(
    pattern: Hypergraph,
    host: Hypergraph,
    anchor: Mapping[str, str] | None = None,
    exact_labels: bool = False,
) -> Iterator[tuple[dict[str, str], dict[str, str]]]:
    """Injective embeddings of ``pattern`` into ``host``.

    Yields ``(node_map, edge_map)`` pairs: every injective extension of
    ``anchor`` on nodes together with an injective edge assignment such that
    attachments correspond pointwise.  With ``exact_labels`` pattern edge
    labels must equal host labels structurally; otherwise pattern edges act
    as rank-matching placeholders.  Exhaustive and duplicate-free.

    The prover's rule matchers use the richer block-partition machinery in
    ``hlambek.match``; this surface covers the one-edge-per-edge case.
    """
    anchor = dict(anchor or {})
    for a, b in anchor.items():
        if a not in pattern.nodes or b not in host.nodes:
            raise GraphError("anchor outside node sets")
    if len(set(anchor.values())) != len(anchor):
        raise GraphError("anchor not injective")

    pedges = sorted(pattern.edges, key=lambda e: e.id)

    def rec(
        i: int, nmap: dict[str, str], emap: dict[str, str]
    ) -> Iterator[tuple[dict[str, str], dict[str, str]]]:
        if i == len(pedges):
            free = [v for v in pattern.nodes if v not in nmap]
            avail = [w for w in host.nodes if w not in set(nmap.values())]

            def nodes_rec(j: int, cur: dict[str, str]):
                if j == len(free):
                    yield dict(cur), dict(emap)
                    return
                used = set(cur.values())
                for w in avail:
                    if w in used:
                        continue
                    cur[free[j]] = w
                    yield from nodes_rec(j + 1, cur)
                    del cur[free[j]]

            yield from nodes_rec(0, dict(nmap))
            return
        pe = pedges[i]
        for he in host.edges:
            if he.id in emap.values() or len(he.att) != len(pe.att):
                continue
            if exact_labels and payload_key(he.label) != payload_key(pe.label):
                continue
            new = dict(nmap)
            ok = True
            for a, b in zip(pe.att, he.att):
                if a in new:
                    if new[a] != b:
                        ok = False
                        break
                elif b in set(new.values()):
                    ok = False
                    break
                else:
                    new[a] = b
            if not ok:
                continue
            emap[pe.id] = he.id
            yield from rec(i + 1, new, emap)
            del emap[pe.id]

    yield from rec(0, dict(anchor), {})
