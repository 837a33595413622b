"""Type algebra: arities, sizes, subtypes, counters, structural predicates,
the isolated-node measure, simplification, ersatz conjunction."""

import pytest

from hlambek import (
    Counter,
    Div,
    Dollar,
    Hypergraph,
    Prim,
    Sequent,
    Times,
    counter_feasible,
    counter_value,
    ersatz_conjunction,
    handle,
    has_skeleton_subtype,
    is_lonely,
    is_simple,
    isolated_node_measure,
    simplify,
    size,
    string_graph,
    subtypes,
)
from hlambek.types import TypeError_
from hlambek.prover import equivalent


def test_arities_of_running_example(a1, a2, a3, a4):
    assert a1.arity == 2 and a2.arity == 2
    assert a3.arity == 3 and a4.arity == 2


def test_arity_prim_and_empty_times():
    assert Prim("p", 2).arity == 2
    body = Hypergraph(["x", "y", "z"], [], ["x", "y", "z"])
    assert Times(body).arity == 3


def test_denominator_needs_exactly_one_dollar():
    with pytest.raises(TypeError_):
        Div(Prim("q", 0), Hypergraph(["u"], [("e", Prim("s", 1), ["u"])], []))
    with pytest.raises(TypeError_):
        Div(
            Prim("q", 0),
            Hypergraph(
                ["u", "v"],
                [("e", Dollar(1), ["u"]), ("f", Dollar(1), ["v"])],
                [],
            ),
        )


def test_size_examples(a4, example_sequent):
    assert size(Prim("p", 2)) == 1
    # expanding the running example by the recursion: ops x and div plus
    # primitive occurrences p, q, s, r
    assert size(a4) == 6
    p = Prim("p", 2)
    assert size(Sequent(handle(p), p)) == 2
    assert size(example_sequent) == size(a4) + 4 + 1 + 3  # a2, p, a3 labels


def test_subtypes(a4, a1, prims):
    subs = subtypes(a4)
    assert subs == {a4, prims["p"], a1, prims["q"], prims["s"], prims["r"]}
    assert subtypes(Prim("p", 2)) == {Prim("p", 2)}
    # closure: every denominator label of every member is a member
    for t in subs:
        if isinstance(t, Div):
            for e in t.den.edges:
                if not isinstance(e.label, Dollar):
                    assert e.label in subs


def test_counter_paper_values(a1, a4):
    assert counter_value(Counter.unit("q"), a1) == 1
    assert counter_value(Counter.unit("s"), a1) == -1
    assert counter_value(Counter.unit("p"), a4) == 1
    assert counter_value(Counter.unit("p"), Prim("p", 2)) == 1


def test_counter_by_arity_is_derived():
    a1_arity_counter = Counter.by_arity(1)
    # within a1: q#0 in the numerator, s#1 and r#1 in the denominator
    t = Div(
        Prim("q", 0),
        Hypergraph(
            ["n1", "n2"],
            [
                ("d0", Dollar(2), ["n1", "n2"]),
                ("ds", Prim("s", 1), ["n1"]),
                ("dr", Prim("r", 1), ["n2"]),
            ],
            [],
        ),
    )
    assert counter_value(a1_arity_counter, t) == -2


def test_counter_feasible(example_sequent, y_graph_sequent):
    p = Prim("p", 2)
    assert counter_feasible(Sequent(handle(p), p))
    assert not counter_feasible(y_graph_sequent)  # two p's against one
    assert counter_feasible(example_sequent)


def test_lonely_paper_values(prims, a4):
    assert is_lonely(prims["p"], a4)
    assert is_lonely(prims["s"], a4)
    assert is_lonely(prims["r"], a4)
    assert not is_lonely(prims["q"], a4)
    assert not is_lonely(Prim("p", 2), Prim("p", 2))


def test_skeleton():
    skel = Times(Hypergraph(["x", "y"], [], ["x", "y"]))
    assert has_skeleton_subtype(skel)
    inner = Times(Hypergraph(["x", "y"], [("e", skel, ["x", "y"])], ["x", "y"]))
    assert has_skeleton_subtype(inner)
    assert not has_skeleton_subtype(Prim("p", 2))
    # a times with an internal node is not skeleton
    not_skel = Times(Hypergraph(["x", "y"], [], ["x"]))
    assert not has_skeleton_subtype(not_skel)


def test_lonely_brute_force_small_family():
    """Agreement with a direct evaluation of the definitions over a small
    enumerated family."""
    from hlambek.families import TypeShapeCaps, small_types

    p = Prim("p", 1)
    q = Prim("q", 1)
    pool = small_types([p, q], 4, TypeShapeCaps(max_nodes=2, ext_lens=(0, 1)))

    def top_occurrences(t, target):
        # list of coverage booleans, one per top occurrence of target
        if t == target:
            return [False]
        if isinstance(t, Div):
            return top_occurrences(t.num, target)
        if isinstance(t, Times):
            out = []
            big = len(t.body.edges) >= 2
            for e in t.body.edges:
                if e.label == target:
                    out.append(big)
                else:
                    out.extend(top_occurrences(e.label, target))
            return out
        return []

    for t in pool:
        expected = all(top_occurrences(t, p))
        assert is_lonely(p, t) == expected, t


def test_simple(a4, a1):
    assert is_simple(Prim("p", 2))
    assert is_simple(a1)
    assert is_simple(a4)  # a1 labels an edge under times; its own den labels are primitive
    wrapped = Div(
        Prim("q", 0),
        Hypergraph(
            ["n1", "n2"],
            [("d0", Dollar(2), ["n1", "n2"]), ("da", a1, ["n1", "n2"])],
            [],
        ),
    )
    assert not is_simple(wrapped)


def test_isolated_node_measure():
    assert isolated_node_measure(Prim("p", 2)) == 0
    body = Hypergraph(
        ["x", "y", "z", "w", "u"],
        [("e", Prim("p", 2), ["x", "y"])],
        ["x", "y"],
    )
    assert isolated_node_measure(Times(body)) == 3


def test_simplify_identity_on_prims():
    p = Prim("p", 2)
    assert simplify(p) == p


def test_simplify_inlines_times_in_denominator():
    # div(s / triangle with a times((pq)-chain) edge) flattens the chain
    p = Prim("p", 2)
    q = Prim("q", 2)
    s = Prim("s", 0)
    chain = Times(string_graph([p, q]))
    den = Hypergraph(
        ["x", "y", "z"],
        [
            ("d0", Dollar(2), ["x", "y"]),
            ("d1", chain, ["y", "z"]),
            ("d2", Prim("r", 2), ["z", "x"]),
        ],
        [],
    )
    t = Div(s, den)
    flat = simplify(t)
    assert isinstance(flat, Div)
    labels = sorted(
        repr(e.label) for e in flat.den.edges if not isinstance(e.label, Dollar)
    )
    assert labels == ["p", "q", "r"]
    assert flat.arity == t.arity


def test_simplify_flattens_nested_times():
    p = Prim("p", 2)
    inner = Times(string_graph([p, p]))
    outer = Times(string_graph([inner, p]))
    flat = simplify(outer)
    assert isinstance(flat, Times)
    assert all(e.label == p for e in flat.body.edges)
    assert len(flat.body.edges) == 3


def test_simplify_fuses_double_division():
    p = Prim("p", 2)
    s = Prim("s", 2)
    d1 = string_graph([Dollar(2), p])  # inner denominator
    inner = Div(s, d1)
    d2 = string_graph([Dollar(2), p])
    t = Div(inner, d2)
    flat = simplify(t)
    assert isinstance(flat, Div)
    assert not isinstance(flat.num, Div)
    assert flat.arity == t.arity


def test_simplify_preserves_equivalence_on_samples():
    from hlambek.families import TypeShapeCaps, small_types

    p = Prim("p", 1)
    s = Prim("s", 0)
    pool = small_types([p, s], 4, TypeShapeCaps(max_nodes=2, ext_lens=(0, 1)))
    checked = 0
    for t in pool:
        ft = simplify(t)
        assert ft.arity == t.arity
        if ft != t:
            assert equivalent(t, ft)
            checked += 1
    assert checked >= 3  # the family must exercise real rewrites


def test_ersatz_conjunction():
    p = Prim("p", 2)
    q = Prim("q", 2)
    r = Prim("r", 2)
    t = ersatz_conjunction([p, q, r])
    assert t.arity == 2
    assert len(t.body.edges) == 3
    atts = {e.att for e in t.body.edges}
    assert len(atts) == 1  # all parallel over the shared externals
    assert t.body.ext == next(iter(atts))
    single = ersatz_conjunction([p])
    assert single == Times(handle(p))
    with pytest.raises(TypeError_):
        ersatz_conjunction([p, Prim("u", 1)])
