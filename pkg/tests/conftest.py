"""Shared fixtures: the running-example types, sequents and graphs."""

from __future__ import annotations

import itertools

import pytest

from hlambek import Dollar, Div, Hypergraph, Label, Prim, Sequent, Times


@pytest.fixture(scope="session")
def prims():
    return {
        "p": Prim("p", 2),
        "q": Prim("q", 0),
        "r": Prim("r", 1),
        "s": Prim("s", 1),
        "t": Prim("t", 2),
    }


@pytest.fixture(scope="session")
def a1(prims):
    # div(q / [s(n1), $(n1,n2), r(n2)]), no external nodes
    return Div(
        prims["q"],
        Hypergraph(
            ["n1", "n2"],
            [
                ("d0", Dollar(2), ["n1", "n2"]),
                ("ds", prims["s"], ["n1"]),
                ("dr", prims["r"], ["n2"]),
            ],
            [],
        ),
    )


@pytest.fixture(scope="session")
def a2(prims):
    # div(t / [r(m1), $(m3,m2), s(m3)]) with ext [m1, m2]
    return Div(
        prims["t"],
        Hypergraph(
            ["m1", "m2", "m3"],
            [
                ("d0", Dollar(2), ["m3", "m2"]),
                ("dr", prims["r"], ["m1"]),
                ("ds", prims["s"], ["m3"]),
            ],
            ["m1", "m2"],
        ),
    )


@pytest.fixture(scope="session")
def a3(prims):
    # div(q / [$(k2,k3,k1), t(k3,k2)]), no external nodes
    return Div(
        prims["q"],
        Hypergraph(
            ["k1", "k2", "k3"],
            [
                ("d0", Dollar(3), ["k2", "k3", "k1"]),
                ("dt", prims["t"], ["k3", "k2"]),
            ],
            [],
        ),
    )


@pytest.fixture(scope="session")
def a4(prims, a1):
    # times of two parallel binary edges labeled a1 and p
    return Times(
        Hypergraph(
            ["u1", "u2"],
            [("b1", a1, ["u1", "u2"]), ("b2", prims["p"], ["u1", "u2"])],
            ["u1", "u2"],
        )
    )


@pytest.fixture(scope="session")
def example_sequent(prims, a2, a3, a4):
    """The worked four-rule derivation instance."""
    ant = Hypergraph(
        ["N1", "N2", "N3", "N4"],
        [
            ("e1", a2, ["N1", "N2"]),
            ("e2", prims["p"], ["N1", "N3"]),
            ("e3", a3, ["N2", "N3", "N4"]),
        ],
        ["N1", "N3"],
    )
    return Sequent(ant, a4)


@pytest.fixture(scope="session")
def y_graph_sequent():
    """Two unary edges on two nodes, first node external; not derivable."""
    p1 = Prim("p", 1)
    y = Hypergraph(
        ["v1", "v2"], [("e1", p1, ["v1"]), ("e2", p1, ["v2"])], ["v1"]
    )
    return Sequent(y, p1)


def brute_force_isomorphic(g1: Hypergraph, g2: Hypergraph) -> bool:
    """Exhaustive bijection search; the independent oracle for both the
    canonical form and the production matcher."""
    from hlambek.graph import payload_key

    if (
        len(g1.nodes) != len(g2.nodes)
        or len(g1.edges) != len(g2.edges)
        or len(g1.ext) != len(g2.ext)
    ):
        return False
    for perm in itertools.permutations(g2.nodes):
        nmap = dict(zip(g1.nodes, perm))
        if tuple(nmap[v] for v in g1.ext) != g2.ext:
            continue
        need = sorted(
            (payload_key(e.label), tuple(nmap[v] for v in e.att)) for e in g1.edges
        )
        have = sorted((payload_key(e.label), e.att) for e in g2.edges)
        if need == have:
            return True
    return False
