"""Carrier structure: handles, string graphs, replacement, compression,
isomorphism and the canonical form."""

import itertools

import pytest

from hlambek import (
    ArityMismatch,
    BoundaryViolation,
    Dollar,
    EmptyWord,
    GraphError,
    Hypergraph,
    Label,
    Subgraph,
    compress,
    enumerate_embeddings,
    handle,
    isomorphic,
    replace,
    string_graph,
)
from conftest import brute_force_isomorphic

A = Label("a", 2)
B = Label("b", 2)
P = Label("p", 2)
Q = Label("q", 0)


def test_handle_binary():
    h = handle(P)
    assert len(h.nodes) == 2 and len(h.edges) == 1
    e = h.edges[0]
    assert e.att == h.ext and set(h.nodes) == set(e.att)


def test_handle_nullary():
    h = handle(Q)
    assert h.nodes == () and h.ext == () and len(h.edges) == 1
    assert h.edges[0].att == ()


def test_string_graph_shape():
    g = string_graph([A, B])
    assert len(g.nodes) == 3 and len(g.edges) == 2
    assert g.ext == (g.nodes[0], g.nodes[-1])
    assert string_graph([A]) == handle(A)


def test_string_graph_empty_word():
    with pytest.raises(EmptyWord):
        string_graph([])


def test_string_graph_needs_binary():
    with pytest.raises(ArityMismatch):
        string_graph([Label("u", 1)])


def test_replace_handle_is_identity():
    for word in (["a", "b"], ["a"], ["b", "b", "a"]):
        g = string_graph([Label(w, 2) for w in word])
        for e in g.edges:
            again = replace(g, e.id, handle(e.label))
            assert again == g


def test_replace_into_handle_gives_filler():
    g = string_graph([Label("c", 2), Label("d", 2)])
    assert replace(handle(Label("x", 2)), "e0", g) == g


def test_replace_chain_splice():
    # replacing the a-edge of (ab) by (cd) yields (cdb)
    g = string_graph([A, B])
    e_a = next(e for e in g.edges if e.label == A)
    out = replace(g, e_a.id, string_graph([Label("c", 2), Label("d", 2)]))
    assert out == string_graph([Label("c", 2), Label("d", 2), B])


def test_replace_arity_mismatch():
    g = string_graph([A])
    with pytest.raises(ArityMismatch):
        replace(g, g.edges[0].id, handle(Label("u", 1)))


def test_simultaneous_replacement_order_independent():
    g = string_graph([A, B])
    e1, e2 = g.edges
    f1 = string_graph([Label("x", 2), Label("y", 2)])
    f2 = string_graph([Label("z", 2)])
    one = replace(replace(g, e1.id, f1), e2.id, f2)
    other = replace(replace(g, e2.id, f2), e1.id, f1)
    assert one == other


def test_compress_middle_edge_of_chain():
    g = string_graph([A, B, Label("c", 2)])
    e_b = next(e for e in g.edges if e.label == B)
    sub = Subgraph(g, frozenset(e_b.att), frozenset({e_b.id}), e_b.att)
    out = compress(g, sub, Label("x", 2))
    assert out == string_graph([A, Label("x", 2), Label("c", 2)])


def test_compress_boundary_violation():
    g = string_graph([A, B])
    e_a = next(e for e in g.edges if e.label == A)
    mid = e_a.att[1]
    # omit the shared node from subExt: condition (a) fails
    sub = Subgraph(g, frozenset(e_a.att), frozenset({e_a.id}), (e_a.att[0],))
    with pytest.raises(BoundaryViolation):
        compress(g, sub, Label("u", 1))


def test_compress_arity_mismatch():
    g = string_graph([A])
    e = g.edges[0]
    sub = Subgraph(g, frozenset(e.att), frozenset({e.id}), e.att)
    with pytest.raises(ArityMismatch):
        compress(g, sub, Q)


def _random_graphs(seed: int, count: int):
    import random

    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, 5)
        nodes = [f"n{i}" for i in range(n)]
        edges = []
        for i in range(rng.randint(0, 5)):
            arity = rng.randint(0, min(2, n))
            att = rng.sample(nodes, arity)
            edges.append((f"e{i}", Label(rng.choice("ab"), arity), att))
        ext_len = rng.randint(0, min(2, n))
        ext = rng.sample(nodes, ext_len)
        try:
            out.append(Hypergraph(nodes, edges, ext))
        except GraphError:
            pass
    return out


def test_round_trip_compress_then_replace():
    # compressing a sub-chunk and replacing it back is the identity
    for g in _random_graphs(11, 40):
        if not g.edges:
            continue
        e0 = g.edges[0]
        others = {e.id for e in g.edges if e.id != e0.id}
        # subgraph: e0 plus its attachments; subExt = boundary-respecting
        inc_outside = {
            v
            for e in g.edges
            if e.id != e0.id
            for v in e.att
            if v in set(e0.att)
        }
        need_ext = sorted(inc_outside | (set(g.ext) & set(e0.att)))
        sub = Subgraph(g, frozenset(e0.att), frozenset({e0.id}), tuple(need_ext))
        lab = Label("w", len(need_ext))
        squeezed = compress(g, sub, lab, edge_id="fresh")
        back = replace(squeezed, "fresh", sub.as_graph())
        assert back == g


def test_round_trip_replace_then_compress():
    for g in _random_graphs(13, 40):
        binaries = [e for e in g.edges if len(e.att) == 2]
        if not binaries:
            continue
        e0 = binaries[0]
        filler = string_graph([A, B])
        expanded, nmap, emap = __import__(
            "hlambek.graph", fromlist=["replace_with_map"]
        ).replace_with_map(g, e0.id, filler)
        sub = Subgraph(
            expanded,
            frozenset(nmap[v] for v in filler.nodes),
            frozenset(emap.values()),
            tuple(nmap[v] for v in filler.ext),
        )
        back = compress(expanded, sub, e0.label, edge_id=e0.id)
        assert back == g


def test_edge_count_deltas():
    g = string_graph([A, B])
    filler = string_graph([A, B, A])
    out = replace(g, g.edges[0].id, filler)
    assert len(out.edges) == len(g.edges) + len(filler.edges) - 1
    assert len(out.ext) == len(g.ext)


def test_isomorphic_renaming_and_witness():
    g1 = string_graph([A, B])
    g2 = Hypergraph(
        ["x", "y", "z"],
        [("u", A, ["x", "y"]), ("w", B, ["y", "z"])],
        ["x", "z"],
    )
    witness = isomorphic(g1, g2)
    assert witness is not None
    emap, nmap = witness
    for e in g1.edges:
        target = g2.edge(emap[e.id])
        assert target.label == e.label
        assert tuple(nmap[v] for v in e.att) == target.att
    assert tuple(nmap[v] for v in g1.ext) == g2.ext


def test_isomorphic_label_order_matters():
    assert isomorphic(string_graph([A, B]), string_graph([B, A])) is None


def test_isomorphic_ext_reversal_matters():
    g = handle(P)
    flipped = Hypergraph(g.nodes, g.edges, tuple(reversed(g.ext)))
    assert isomorphic(g, flipped) is None
    assert brute_force_isomorphic(g, flipped) is False


def test_isomorphic_agrees_with_brute_force():
    graphs = _random_graphs(3, 35)
    for g1 in graphs:
        for g2 in graphs:
            assert (isomorphic(g1, g2) is not None) == brute_force_isomorphic(
                g1, g2
            )


def test_canonical_form_respects_isomorphism():
    graphs = _random_graphs(5, 35)
    for g1 in graphs:
        for g2 in graphs:
            assert (g1.canonical_form() == g2.canonical_form()) == (
                isomorphic(g1, g2) is not None
            )


def test_canonical_partitions_two_node_family():
    # every graph with 2 nodes and at most 2 binary a-edges, no/all ext
    nodes = ["u", "v"]
    family = []
    for n_edges in range(3):
        for atts in itertools.product(
            itertools.permutations(nodes, 2), repeat=n_edges
        ):
            for ext in ([], ["u"], ["u", "v"]):
                family.append(
                    Hypergraph(
                        nodes,
                        [(f"e{i}", A, list(a)) for i, a in enumerate(atts)],
                        ext,
                    )
                )
    for g1 in family:
        for g2 in family:
            assert (g1.canonical_form() == g2.canonical_form()) == (
                brute_force_isomorphic(g1, g2)
            )


def test_dollar_canonical_includes_arity():
    g1 = Hypergraph(["u"], [("e", Dollar(1), ["u"])], ["u"])
    g2 = Hypergraph(["u"], [("e", Dollar(0), [])], ["u"])
    assert g1.canonical_form() != g2.canonical_form()


def test_no_repeated_nodes_in_att_or_ext():
    with pytest.raises(GraphError):
        Hypergraph(["u"], [("e", A, ["u", "u"])], [])
    with pytest.raises(GraphError):
        Hypergraph(["u", "v"], [], ["u", "u"])


def test_enumerate_embeddings_handle_onto_handle():
    found = list(enumerate_embeddings(handle(P), handle(P), exact_labels=True))
    assert len(found) == 1


def test_enumerate_embeddings_two_parallel_dollars_on_y():
    pattern = Hypergraph(
        ["u1", "u2"],
        [("d1", Dollar(1), ["u1"]), ("d2", Dollar(1), ["u2"])],
        [],
    )
    p1 = Label("p", 1)
    host = Hypergraph(
        ["v1", "v2"], [("e1", p1, ["v1"]), ("e2", p1, ["v2"])], ["v1"]
    )
    found = list(enumerate_embeddings(pattern, host))
    assert len(found) == 2  # the swap


def test_anchored_embeddings_never_exceed_unanchored():
    pattern = string_graph([A])
    host = string_graph([A, A])
    total = len(list(enumerate_embeddings(pattern, host, exact_labels=True)))
    anchored = len(
        list(
            enumerate_embeddings(
                pattern,
                host,
                anchor={pattern.ext[0]: host.ext[0]},
                exact_labels=True,
            )
        )
    )
    assert anchored <= total
