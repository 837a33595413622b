"""Proof search, certificates, verification, cut, simple derivations."""

import random

import pytest

from hlambek import (
    Budget,
    DERIVABLE,
    Div,
    Dollar,
    HL,
    HMALC,
    Hypergraph,
    Mode,
    NOT_DERIVABLE,
    Prim,
    Sequent,
    Times,
    counter_feasible,
    cut,
    eliminate_cuts,
    equivalent,
    handle,
    prove,
    prove_simple,
    simplify,
    string_graph,
    verify_tree,
)
from hlambek.families import (
    SequentFamilyCaps,
    TypeShapeCaps,
    sequent_family,
    small_types,
)
from hlambek.prover import (
    LabelMismatch,
    NotSimpleInput,
    check_size_law,
)
from hlambek.types import subtypes


def _subformula_property(tree, root):
    allowed = set()
    for e in root.antecedent.edges:
        allowed |= subtypes(e.label)
    allowed |= subtypes(root.succedent)

    def walk(node):
        for e in node.conclusion.antecedent.edges:
            assert subtypes(e.label) <= allowed
        assert subtypes(node.conclusion.succedent) <= allowed
        for p in node.premises:
            walk(p)

    walk(tree)


def test_axiom(prims):
    p = prims["p"]
    res = prove(Sequent(handle(p), p))
    assert res.derivable and res.tree.rule == "axiom"
    assert verify_tree(res.tree)[0]


def test_example_derivation(example_sequent):
    res = prove(example_sequent)
    assert res.derivable
    ok, diag = verify_tree(res.tree)
    assert ok, diag
    rules = [r for r in _rule_list(res.tree) if r != "axiom"]
    assert sorted(rules) == ["div_left", "div_left", "div_right", "times_right"]
    assert check_size_law(res.tree)
    _subformula_property(res.tree, example_sequent)


def _rule_list(tree):
    out = [tree.rule]
    for p in tree.premises:
        out.extend(_rule_list(p))
    return out


def test_y_graph_not_derivable(y_graph_sequent):
    assert prove(y_graph_sequent).verdict == NOT_DERIVABLE


def test_y_graph_derivable_with_weakening(y_graph_sequent):
    res = prove(y_graph_sequent, mode=Mode("HL", weakening=True))
    assert res.derivable
    ok, diag = verify_tree(res.tree, Mode("HL", weakening=True))
    assert ok, diag


def test_t_to_t_small_family():
    pool = small_types(
        [Prim("p", 2), Prim("q", 0), Prim("r", 1), Prim("s", 1)],
        4,
        TypeShapeCaps(max_nodes=2, max_body_edges=2, max_den_edges=1),
    )
    assert len(pool) > 30
    for t in pool:
        res = prove(Sequent(handle(t), t))
        assert res.derivable, t
        ok, diag = verify_tree(res.tree)
        assert ok, (t, diag)


def test_empty_times_leaf():
    body = Hypergraph(["x", "y", "z"], [], ["x", "y"])
    seq = Sequent(Hypergraph(["a", "b", "c"], [], ["a", "b"]), Times(body))
    res = prove(seq)
    assert res.derivable
    assert res.tree.rule == "times_right" and not res.tree.premises
    assert verify_tree(res.tree)[0]
    # one isolated node fewer: not derivable (isolated nodes count)
    seq2 = Sequent(Hypergraph(["a", "b"], [], ["a", "b"]), Times(body))
    assert prove(seq2).verdict == NOT_DERIVABLE


@pytest.fixture(scope="module")
def small_suite():
    """Exhaustive sequent family over a compact alphabet, with reference
    verdicts from the pruning-free, non-eager search."""
    pool = small_types(
        [Prim("p", 1), Prim("s", 0)],
        4,
        TypeShapeCaps(max_nodes=2, max_den_edges=1, max_body_edges=2, ext_lens=(0, 1)),
    )
    fam = sequent_family(
        pool,
        SequentFamilyCaps(
            max_sequent_size=7, max_ant_edges=2, max_ant_nodes=3, ext_lens=(0, 1)
        ),
    )
    verdicts = {}
    for seq in fam:
        verdicts[seq.key()] = prove(seq, eager=False, prune=False).verdict
    return fam, verdicts


def test_suite_is_substantial(small_suite):
    fam, verdicts = small_suite
    assert len(fam) > 300
    assert sum(v == DERIVABLE for v in verdicts.values()) > 20


def test_eager_normalization_preserves_verdicts(small_suite):
    fam, verdicts = small_suite
    for seq in fam:
        assert prove(seq, eager=True, prune=False).verdict == verdicts[seq.key()]


def test_pruning_preserves_verdicts(small_suite):
    fam, verdicts = small_suite
    for seq in fam:
        assert prove(seq, eager=True, prune=True).verdict == verdicts[seq.key()]


def test_counter_necessity_on_suite(small_suite):
    fam, verdicts = small_suite
    for seq in fam:
        if verdicts[seq.key()] == DERIVABLE:
            assert counter_feasible(seq)


def test_wolf_corollary_on_suite(small_suite):
    from hlambek.types import has_skeleton_subtype, is_lonely

    fam, verdicts = small_suite
    checked = 0
    for seq in fam:
        p = seq.succedent
        if not isinstance(p, Prim):
            continue
        labels = [e.label for e in seq.antecedent.edges]
        if any(has_skeleton_subtype(t) for t in labels):
            continue
        if not all(t == p or is_lonely(p, t) for t in labels):
            continue
        if len(seq.antecedent.edges) == 1 and labels[0] == p:
            continue  # possibly the axiom shape itself
        # corollary-eligible non-handle antecedent: must be refuted
        if verdicts[seq.key()] == DERIVABLE:
            ant = seq.antecedent
            assert len(ant.edges) == 1 and ant.edges[0].label == p
            assert ant.ext == ant.edges[0].att
        else:
            checked += 1
    assert checked > 5


def test_every_tree_verifies_and_obeys_size_law(small_suite):
    fam, verdicts = small_suite
    for seq in fam:
        res = prove(seq)
        if res.tree is not None:
            ok, diag = verify_tree(res.tree)
            assert ok, (seq, diag)
            assert check_size_law(res.tree)
            _subformula_property(res.tree, seq)


def test_prove_simple_agreement(small_suite):
    from hlambek.types import is_simple

    fam, verdicts = small_suite
    compared = 0
    for seq in fam:
        if not all(is_simple(e.label) for e in seq.antecedent.edges):
            continue
        succ = seq.succedent
        if not (
            isinstance(succ, Prim)
            or (isinstance(succ, Times)
                and all(isinstance(e.label, Prim) for e in succ.body.edges))
        ):
            continue
        res = prove_simple(seq)
        assert res.verdict == verdicts[seq.key()], seq
        if res.tree is not None:
            ok, diag = verify_tree(res.tree)
            assert ok, diag
        compared += 1
    assert compared > 100


def test_prove_simple_rejects_unsuitable_input():
    p = Prim("p", 2)
    t = Div(p, string_graph([Dollar(2), Times(string_graph([p, p]))]))
    seq = Sequent(handle(t), p)
    with pytest.raises(NotSimpleInput):
        prove_simple(seq)


def test_budget_exceeded():
    p = Prim("p", 2)
    t = Sequent(handle(p), p)
    res = prove(t, budget=Budget(max_nodes=0))
    assert res.verdict in (DERIVABLE, "budget_exceeded")
    # something bigger than one node
    seq = Sequent(
        string_graph([Div(p, string_graph([Dollar(2), p])), p]), p
    )
    res = prove(seq, budget=Budget(max_nodes=1))
    assert res.verdict == "budget_exceeded"


# -- cut ---------------------------------------------------------------------


def _derivable_pairs(rng, fam, verdicts):
    pos = [s for s in fam if verdicts[s.key()] == DERIVABLE]
    pairs = []
    for right in pos:
        for e in right.antecedent.edges:
            for left in pos:
                if left.succedent == e.label:
                    pairs.append((left, right, e.id))
    rng.shuffle(pairs)
    return pairs


def test_cut_combinator_and_admissibility(small_suite):
    fam, verdicts = small_suite
    rng = random.Random(20240811)
    pairs = _derivable_pairs(rng, fam, verdicts)
    assert len(pairs) >= 30
    done = 0
    for left_seq, right_seq, eid in pairs[:60]:
        left = prove(left_seq).tree
        right = prove(right_seq).tree
        combined = cut(left, right, eid)
        ok, diag = verify_tree(combined)
        assert ok, diag
        res = prove(combined.conclusion)
        assert res.derivable, combined.conclusion
        cut_free = eliminate_cuts(combined)
        assert "cut" not in cut_free.rules_used()
        assert verify_tree(cut_free)[0]
        done += 1
    assert done == min(60, len(pairs))


def test_cut_label_mismatch():
    p, q = Prim("p", 2), Prim("q", 2)
    tp = prove(Sequent(handle(p), p)).tree
    tq = prove(Sequent(handle(q), q)).tree
    with pytest.raises(LabelMismatch):
        cut(tp, tq, tq.conclusion.antecedent.edges[0].id)


def test_cut_axiom_cases(example_sequent):
    # left premise an axiom: conclusion isomorphic to the right conclusion
    right = prove(example_sequent).tree
    e2 = example_sequent.antecedent.edge("e2")  # the p-labeled edge
    p_axiom = prove(Sequent(handle(e2.label), e2.label)).tree
    combined = cut(p_axiom, right, "e2")
    assert combined.conclusion.antecedent == example_sequent.antecedent
    # right premise a generalized axiom: conclusion isomorphic to the left
    t = example_sequent.succedent
    gen = prove(Sequent(handle(t), t)).tree
    left = prove(example_sequent).tree
    combined = cut(left, gen, gen.conclusion.antecedent.edges[0].id)
    assert combined.conclusion.antecedent == example_sequent.antecedent
    assert combined.conclusion.succedent == t


# -- equivalence ----------------------------------------------------------------


def test_equivalent_basics():
    p, q = Prim("p", 2), Prim("q", 2)
    assert equivalent(p, p)
    assert not equivalent(p, q)
    t = Times(string_graph([p, q]))
    assert equivalent(t, simplify(t))


# -- structural and additive modes ------------------------------------------------


def test_hmalc_and_or():
    from hlambek import And, Or

    p, q = Prim("p", 2), Prim("q", 2)
    both = And(p, q)
    assert prove(Sequent(handle(both), p), mode=HMALC).derivable
    assert prove(Sequent(handle(both), q), mode=HMALC).derivable
    assert not prove(Sequent(handle(p), both), mode=HMALC).derivable
    either = Or(p, q)
    assert prove(Sequent(handle(p), either), mode=HMALC).derivable
    assert not prove(Sequent(handle(either), p), mode=HMALC).derivable
    res = prove(Sequent(handle(both), Or(q, p)), mode=HMALC)
    assert res.derivable
    ok, diag = verify_tree(res.tree, HMALC)
    assert ok, diag


def test_hmalc_rejected_in_hl_mode():
    from hlambek import And
    from hlambek.prover import MalformedSequent

    p = Prim("p", 2)
    with pytest.raises(MalformedSequent):
        prove(Sequent(handle(And(p, p)), p), mode=HL)


def test_contraction_mode():
    # handle(p) -> times(two parallel p edges) needs contraction
    p = Prim("p", 1)
    body = Hypergraph(
        ["x"], [("e0", p, ["x"]), ("e1", p, ["x"])], ["x"]
    )
    seq = Sequent(handle(p), Times(body))
    assert prove(seq).verdict == NOT_DERIVABLE
    res = prove(seq, mode=Mode("HL", contraction=True))
    assert res.derivable
    ok, diag = verify_tree(res.tree, Mode("HL", contraction=True))
    assert ok, diag


def test_weakening_composes():
    # removing two edges takes two single steps
    p = Prim("p", 1)
    g = Hypergraph(
        ["v", "w"],
        [("e0", p, ["v"]), ("e1", p, ["v"]), ("e2", p, ["w"])],
        ["v"],
    )
    res = prove(Sequent(g, p), mode=Mode("HL", weakening=True))
    assert res.derivable
    assert verify_tree(res.tree, Mode("HL", weakening=True))[0]


def test_mode_parse_roundtrip():
    for text in ("hl", "hl+w", "hl+c", "hl+wc", "hmalc", "hmalc+wc"):
        assert str(Mode.parse(text)) == text
