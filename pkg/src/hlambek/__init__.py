"""Prover and grammar engine for the hypergraph Lambek calculus."""

from .graph import (
    ArityMismatch,
    BoundaryViolation,
    Dollar,
    Edge,
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
from .types import (
    And,
    Counter,
    Div,
    HlType,
    Or,
    Prim,
    Sequent,
    Times,
    counter_feasible,
    counter_value,
    ersatz_conjunction,
    has_skeleton_subtype,
    is_lonely,
    is_simple,
    isolated_node_measure,
    simplify,
    size,
    subtypes,
)
from .prover import (
    BUDGET_EXCEEDED,
    DERIVABLE,
    NOT_DERIVABLE,
    Budget,
    DerivationTree,
    HL,
    HMALC,
    Mode,
    ProveResult,
    cut,
    eliminate_cuts,
    equivalent,
    prove,
    prove_simple,
    verify_tree,
)

__all__ = [name for name in dir() if not name.startswith("_")]
