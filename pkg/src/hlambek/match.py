"""Bottom-up rule matchers for the two branching rules.

Reading the division-left rule upward from a conclusion ``G -> A`` with a
distinguished division-labeled edge means: find an injective image of the
denominator's nodes in G (anchored at the edge's attachments), split the
remaining edges into the part that stays in the first premise and one block
per non-$ denominator edge, and distribute isolated nodes.  The
multiplication-right rule is the same machinery with the body anchored at the
external nodes and no remainder.

Blocks are closed under connectivity through nodes outside the matched image,
so assignment enumerates connected components rather than single edges.
Isolated nodes are distributed explicitly; they are semantically significant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from .graph import Dollar, Edge, Hypergraph


@dataclass(frozen=True)
class Block:
    """Host material assigned to one pattern edge: its edges plus the host
    nodes that become internal to the carved premise."""

    pattern_edge: str
    edge_ids: tuple[str, ...]
    internal_nodes: tuple[str, ...]


@dataclass(frozen=True)
class RuleMatch:
    node_map: dict[str, str]  # pattern node -> host node
    blocks: tuple[Block, ...]  # aligned with pattern edge order

    def block_graph(self, host: Hypergraph, ext: Sequence[str], i: int) -> Hypergraph:
        blk = self.blocks[i]
        keep = set(blk.edge_ids)
        node_set = set(blk.internal_nodes) | set(ext)
        ordered = [v for v in host.nodes if v in node_set]
        return Hypergraph(
            ordered,
            [e for e in host.edges if e.id in keep],
            ext,
        )


def _components(
    host: Hypergraph, skip: set[str], image: set[str]
) -> list[tuple[tuple[str, ...], tuple[str, ...]]]:
    """Connected components of host edges (minus ``skip``) linked through
    nodes outside ``image``.  Returns (edge ids, outside nodes) per component,
    deterministically ordered."""
    edges = [e for e in host.edges if e.id not in skip]
    parent: dict[str, str] = {e.id: e.id for e in edges}

    def find(x: str) -> str:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a: str, b: str) -> None:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[rb] = ra

    by_node: dict[str, list[str]] = {}
    for e in edges:
        for v in e.att:
            if v not in image:
                by_node.setdefault(v, []).append(e.id)
    for ids in by_node.values():
        for other in ids[1:]:
            union(ids[0], other)

    groups: dict[str, list[str]] = {}
    for e in edges:
        groups.setdefault(find(e.id), []).append(e.id)
    out = []
    edge_by_id = {e.id: e for e in edges}
    for root in sorted(groups):
        eids = tuple(sorted(groups[root]))
        outside = sorted(
            {
                v
                for eid in eids
                for v in edge_by_id[eid].att
                if v not in image
            }
        )
        out.append((eids, tuple(outside)))
    return out


def _injective_extensions(
    pattern: Hypergraph,
    host: Hypergraph,
    anchor: dict[str, str],
    pattern_internal_ok: "callable",
) -> Iterator[dict[str, str]]:
    """All injective completions of ``anchor`` over pattern nodes; candidate
    filtering is delegated per pattern node."""
    free = [v for v in pattern.nodes if v not in anchor]

    def rec(i: int, cur: dict[str, str], used: set[str]) -> Iterator[dict[str, str]]:
        if i == len(free):
            yield dict(cur)
            return
        v = free[i]
        for x in host.nodes:
            if x in used:
                continue
            if not pattern_internal_ok(v, x):
                continue
            cur[v] = x
            used.add(x)
            yield from rec(i + 1, cur, used)
            del cur[v]
            used.discard(x)

    yield from rec(0, dict(anchor), set(anchor.values()))


def _assign_components(
    comps: list[tuple[tuple[str, ...], tuple[str, ...]]],
    owners_per_comp: list[list[int]],
    n_blocks: int,
) -> Iterator[list[int]]:
    """Owner -1 is the remainder; 0..n_blocks-1 are blocks."""

    def rec(i: int, cur: list[int]) -> Iterator[list[int]]:
        if i == len(comps):
            yield list(cur)
            return
        for owner in owners_per_comp[i]:
            cur.append(owner)
            yield from rec(i + 1, cur)
            cur.pop()

    yield from rec(0, [])


def _distribute(
    items: Sequence[str], owners: Sequence[int]
) -> Iterator[dict[str, int]]:
    def rec(i: int, cur: dict[str, int]) -> Iterator[dict[str, int]]:
        if i == len(items):
            yield dict(cur)
            return
        for o in owners:
            cur[items[i]] = o
            yield from rec(i + 1, cur)

    yield from rec(0, {})


def enumerate_rule_matches(
    host: Hypergraph,
    pattern: Hypergraph,
    anchor: dict[str, str],
    pattern_edges: Sequence[Edge],
    skip_edges: set[str],
    allow_remainder: bool,
) -> Iterator[tuple[dict[str, str], tuple[Block, ...], tuple[str, ...], tuple[str, ...]]]:
    """Core matcher shared by the two branching rules.

    Yields ``(node_map, blocks, rest_edge_ids, rest_isolated)``.  ``pattern``
    is the denominator or body; ``pattern_edges`` the edges acting as premise
    slots; ``skip_edges`` host edges excluded up front (the division edge);
    ``allow_remainder`` distinguishes division-left from multiplication-right.
    """
    host_ext = set(host.ext)
    host_inc = host.incidence()
    pat_ext = set(pattern.ext)
    boundary = set(pattern.ext)
    pat_inc = pattern.incidence()

    for v, x in anchor.items():
        # anchored internal pattern nodes vanish with the step, so their
        # images may not be host-external
        if v not in boundary and x in host_ext:
            return

    def candidate_ok(v: str, x: str) -> bool:
        if v in boundary:
            return True
        # internal pattern node: removed by the step, so never host-external
        if x in host_ext:
            return False
        if not pat_inc[v]:
            # isolated internal pattern node must land on an isolated host node
            return not host_inc[x]
        return True

    k = len(pattern_edges)
    att_sets = [set(e.att) for e in pattern_edges]

    for nmap in _injective_extensions(pattern, host, anchor, candidate_ok):
        image = set(nmap.values())
        inv = {x: v for v, x in nmap.items()}
        comps = _components(host, skip_edges, image)
        owners_per_comp: list[list[int]] = []
        feasible = True
        edge_by_id = {e.id: e for e in host.edges}
        for eids, outside in comps:
            touched = {
                inv[v]
                for eid in eids
                for v in edge_by_id[eid].att
                if v in image
            }
            owners: list[int] = []
            if allow_remainder and all(v in pat_ext for v in touched):
                owners.append(-1)
            if not any(v in host_ext for v in outside):
                for i in range(k):
                    if touched <= att_sets[i]:
                        owners.append(i)
            if not owners:
                feasible = False
                break
            owners_per_comp.append(owners)
        if not feasible:
            continue

        iso_free = [
            v
            for v in host.nodes
            if v not in image and not host_inc[v] and v not in host_ext
        ]
        iso_ext_stuck = [
            v for v in host.nodes if v not in image and not host_inc[v] and v in host_ext
        ]
        if not allow_remainder and iso_ext_stuck:
            continue  # uncovered external isolated node: no home for it
        iso_owners = list(range(-1 if allow_remainder else 0, k))

        if not allow_remainder and iso_free and k == 0:
            continue
        if k == 0 and not allow_remainder and comps:
            continue

        for assignment in _assign_components(comps, owners_per_comp, k):
            for iso_assign in _distribute(iso_free, iso_owners or [-1]):
                if not allow_remainder and any(o == -1 for o in iso_assign.values()):
                    continue
                blocks = []
                rest_edges: list[str] = []
                rest_iso = [v for v, o in iso_assign.items() if o == -1]
                per_block_edges: list[list[str]] = [[] for _ in range(k)]
                per_block_nodes: list[list[str]] = [[] for _ in range(k)]
                for (eids, outside), owner in zip(comps, assignment):
                    if owner == -1:
                        rest_edges.extend(eids)
                    else:
                        per_block_edges[owner].extend(eids)
                        per_block_nodes[owner].extend(outside)
                for v, o in iso_assign.items():
                    if o >= 0:
                        per_block_nodes[o].append(v)
                for i, pe in enumerate(pattern_edges):
                    blocks.append(
                        Block(
                            pe.id,
                            tuple(sorted(per_block_edges[i])),
                            tuple(sorted(set(per_block_nodes[i]))),
                        )
                    )
                yield nmap, tuple(blocks), tuple(sorted(rest_edges)), tuple(
                    sorted(rest_iso)
                )


def div_left_matches(
    antecedent: Hypergraph, edge: Edge
) -> Iterator[tuple[dict[str, str], tuple[Block, ...], tuple[str, ...], tuple[str, ...]]]:
    """Matches for reducing a division-labeled antecedent edge."""
    den = edge.label.den
    d0 = edge.label.dollar_edge()
    anchor = dict(zip(d0.att, edge.att))
    if len(set(anchor.values())) != len(anchor):
        return
    non_dollar = [e for e in den.edges if not isinstance(e.label, Dollar)]
    yield from enumerate_rule_matches(
        antecedent,
        den,
        anchor,
        non_dollar,
        skip_edges={edge.id},
        allow_remainder=True,
    )


def times_right_matches(
    antecedent: Hypergraph, body: Hypergraph
) -> Iterator[tuple[dict[str, str], tuple[Block, ...], tuple[str, ...], tuple[str, ...]]]:
    """Matches for proving a multiplication succedent: the body is anchored at
    the external sequence and the antecedent is fully partitioned."""
    if len(body.ext) != len(antecedent.ext):
        return
    anchor = dict(zip(body.ext, antecedent.ext))
    yield from enumerate_rule_matches(
        antecedent,
        body,
        anchor,
        list(body.edges),
        skip_edges=set(),
        allow_remainder=False,
    )
