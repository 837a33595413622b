"""The HL type algebra over hypergraphs.

Types are primitive symbols, divisions ``div(N / D)`` whose denominator is a
graph with exactly one ``$``-edge, and multiplications ``times(M)`` over a
type-labeled body graph.  The additive connectives ``and_``/``or_`` extend the
algebra for the multiplicative-additive calculus; the pure-HL surfaces reject
them.

Structural equality of types is syntactic up to isomorphism of the embedded
graphs (payload keys are canonical forms), which matches how the calculus
identifies isomorphic graphs.  Logical equivalence (mutual derivability) lives
in the prover module.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Mapping

from .graph import Dollar, Edge, GraphError, Hypergraph, payload_key, replace


class TypeError_(GraphError):
    """Malformed type."""


class _TypeBase:
    __slots__ = ()

    def payload_key(self) -> bytes:
        raise NotImplementedError

    @property
    def arity(self) -> int:
        raise NotImplementedError

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, _TypeBase):
            return NotImplemented
        return self.payload_key() == other.payload_key()

    def __hash__(self) -> int:
        return hash(self.payload_key())


class Prim(_TypeBase):
    __slots__ = ("sym", "_arity")

    def __init__(self, sym: str, arity: int):
        object.__setattr__(self, "sym", sym)
        object.__setattr__(self, "_arity", arity)

    @property
    def arity(self) -> int:
        return self._arity

    def payload_key(self) -> bytes:
        return b"P:%d:%s" % (self._arity, self.sym.encode())

    def __repr__(self) -> str:
        return self.sym

    def __setattr__(self, *a):  # immutable
        raise AttributeError("Prim is immutable")


class Div(_TypeBase):
    """``div(num / den)``; the denominator holds exactly one $-edge."""

    __slots__ = ("num", "den", "_key")

    def __init__(self, num: "HlType", den: Hypergraph):
        dollars = [e for e in den.edges if isinstance(e.label, Dollar)]
        if len(dollars) != 1:
            raise TypeError_("denominator must contain exactly one $-edge")
        for e in den.edges:
            if not isinstance(e.label, (Dollar, _TypeBase)):
                raise TypeError_(f"denominator edge {e.id} carries non-type label")
        if num.arity != den.type:
            raise TypeError_(
                f"arity of numerator {num.arity} != type of denominator {den.type}"
            )
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        object.__setattr__(self, "_key", None)

    @property
    def arity(self) -> int:
        return len(self.dollar_edge().att)

    def dollar_edge(self) -> Edge:
        for e in self.den.edges:
            if isinstance(e.label, Dollar):
                return e
        raise AssertionError("denominator lost its $-edge")

    def payload_key(self) -> bytes:
        if self._key is None:
            object.__setattr__(
                self,
                "_key",
                b"D(" + self.num.payload_key() + b"/" + self.den.canonical_form() + b")",
            )
        return self._key

    def __repr__(self) -> str:
        return f"div({self.num!r} / {self.den!r})"

    def __setattr__(self, *a):
        raise AttributeError("Div is immutable")


class Times(_TypeBase):
    __slots__ = ("body", "_key")

    def __init__(self, body: Hypergraph):
        for e in body.edges:
            if not isinstance(e.label, _TypeBase):
                raise TypeError_(f"body edge {e.id} carries non-type label")
        object.__setattr__(self, "body", body)
        object.__setattr__(self, "_key", None)

    @property
    def arity(self) -> int:
        return self.body.type

    def payload_key(self) -> bytes:
        if self._key is None:
            object.__setattr__(self, "_key", b"T(" + self.body.canonical_form() + b")")
        return self._key

    def __repr__(self) -> str:
        return f"times({self.body!r})"

    def __setattr__(self, *a):
        raise AttributeError("Times is immutable")


class _Additive(_TypeBase):
    __slots__ = ("left", "right", "_key")
    _tag = b"?"

    def __init__(self, left: "HlType", right: "HlType"):
        if left.arity != right.arity:
            raise TypeError_("additive connective over unequal arities")
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "_key", None)

    @property
    def arity(self) -> int:
        return self.left.arity

    def payload_key(self) -> bytes:
        if self._key is None:
            object.__setattr__(
                self,
                "_key",
                self._tag + b"(" + self.left.payload_key() + b"," + self.right.payload_key() + b")",
            )
        return self._key

    def __setattr__(self, *a):
        raise AttributeError("additive types are immutable")


class And(_Additive):
    __slots__ = ()
    _tag = b"A"

    def __repr__(self) -> str:
        return f"and({self.left!r}, {self.right!r})"


class Or(_Additive):
    __slots__ = ()
    _tag = b"O"

    def __repr__(self) -> str:
        return f"or({self.left!r}, {self.right!r})"


HlType = _TypeBase


def is_type(x: object) -> bool:
    return isinstance(x, _TypeBase)


@dataclass(frozen=True)
class Sequent:
    antecedent: Hypergraph
    succedent: HlType

    def __post_init__(self):
        for e in self.antecedent.edges:
            if not is_type(e.label):
                raise TypeError_(f"antecedent edge {e.id} is not type-labeled")
        if self.antecedent.type != self.succedent.arity:
            raise TypeError_(
                f"antecedent type {self.antecedent.type} != succedent arity "
                f"{self.succedent.arity}"
            )

    def key(self) -> bytes:
        return (
            self.antecedent.canonical_form()
            + b"==>"
            + self.succedent.payload_key()
        )

    def __repr__(self) -> str:
        return f"{self.antecedent!r} -> {self.succedent!r}"


# -- structural measures --------------------------------------------------------


def size(x: HlType | Sequent) -> int:
    """Primitive occurrences plus div/times operators; sequents sum over
    antecedent labels and the succedent.  Additives count their operator too."""
    if isinstance(x, Sequent):
        return sum(size(e.label) for e in x.antecedent.edges) + size(x.succedent)
    if isinstance(x, Prim):
        return 1
    if isinstance(x, Div):
        return (
            size(x.num)
            + sum(size(e.label) for e in x.den.edges if not isinstance(e.label, Dollar))
            + 1
        )
    if isinstance(x, Times):
        return sum(size(e.label) for e in x.body.edges) + 1
    if isinstance(x, _Additive):
        return size(x.left) + size(x.right) + 1
    raise TypeError_(f"not a type: {x!r}")


def subtypes(t: HlType) -> set[HlType]:
    out: set[HlType] = set()

    def walk(u: HlType) -> None:
        if u in out:
            return
        out.add(u)
        if isinstance(u, Div):
            walk(u.num)
            for e in u.den.edges:
                if not isinstance(e.label, Dollar):
                    walk(e.label)
        elif isinstance(u, Times):
            for e in u.body.edges:
                walk(e.label)
        elif isinstance(u, _Additive):
            walk(u.left)
            walk(u.right)

    walk(t)
    return out


def primitives_of(t: HlType) -> set[Prim]:
    return {u for u in subtypes(t) if isinstance(u, Prim)}


# -- counters -------------------------------------------------------------------


@dataclass(frozen=True)
class Counter:
    """Finitely supported integer weighting of primitive symbols.

    ``unit(q)`` weighs one symbol; ``by_arity(m)`` weighs every primitive of
    rank m (the h_m family, expressible as a derived weighting).
    """

    weights: tuple[tuple[str, int], ...]
    arity_weights: tuple[tuple[int, int], ...] = ()

    @staticmethod
    def unit(sym: str) -> "Counter":
        return Counter(((sym, 1),))

    @staticmethod
    def by_arity(m: int) -> "Counter":
        return Counter((), ((m, 1),))

    def of_prim(self, p: Prim) -> int:
        total = 0
        for sym, w in self.weights:
            if sym == p.sym:
                total += w
        for m, w in self.arity_weights:
            if m == p.arity:
                total += w
        return total


_VEC_CACHE: dict[bytes, dict[tuple[str, int], int]] = {}


def counter_vector(t: HlType) -> Mapping[tuple[str, int], int]:
    """Map (sym, arity) -> coefficient of the unit counter; linear in f."""
    key = t.payload_key()
    cached = _VEC_CACHE.get(key)
    if cached is not None:
        return cached
    vec: dict[tuple[str, int], int] = {}

    def add(other: Mapping[tuple[str, int], int], sign: int) -> None:
        for k, v in other.items():
            vec[k] = vec.get(k, 0) + sign * v

    if isinstance(t, Prim):
        vec[(t.sym, t.arity)] = 1
    elif isinstance(t, Div):
        add(counter_vector(t.num), 1)
        for e in t.den.edges:
            if not isinstance(e.label, Dollar):
                add(counter_vector(e.label), -1)
    elif isinstance(t, Times):
        for e in t.body.edges:
            add(counter_vector(e.label), 1)
    else:
        raise TypeError_("counters are undefined on additive types")
    vec = {k: v for k, v in vec.items() if v}
    _VEC_CACHE[key] = vec
    return vec


def counter_value(c: Counter, x: HlType | Hypergraph) -> int:
    if isinstance(x, Hypergraph):
        return sum(counter_value(c, e.label) for e in x.edges)
    total = 0
    for (sym, arity), coeff in counter_vector(x).items():
        total += coeff * c.of_prim(Prim(sym, arity))
    return total


_ADD_CACHE: dict[bytes, bool] = {}


def has_additive(t: HlType) -> bool:
    key = t.payload_key()
    cached = _ADD_CACHE.get(key)
    if cached is None:
        cached = any(isinstance(u, _Additive) for u in subtypes(t))
        _ADD_CACHE[key] = cached
    return cached


def sequent_has_additive(s: Sequent) -> bool:
    return has_additive(s.succedent) or any(
        has_additive(e.label) for e in s.antecedent.edges
    )


def counter_feasible(s: Sequent) -> bool:
    """Necessary condition for derivability: every unit counter balances.

    Checking units g_q over occurring primitives suffices for the whole linear
    family since #_f = sum f(p) * #_{g_p}.  Additive types have no counters;
    such sequents pass vacuously.
    """
    if sequent_has_additive(s):
        return True
    lhs: dict[tuple[str, int], int] = {}
    for e in s.antecedent.edges:
        for k, v in counter_vector(e.label).items():
            lhs[k] = lhs.get(k, 0) + v
    rhs = counter_vector(s.succedent)
    keys = set(lhs) | set(rhs)
    return all(lhs.get(k, 0) == rhs.get(k, 0) for k in keys)


# -- structural predicates --------------------------------------------------------


def is_skeleton(t: HlType) -> bool:
    return (
        isinstance(t, Times)
        and not t.body.edges
        and len(t.body.ext) == len(t.body.nodes)
    )


_SKEL_CACHE: dict[bytes, bool] = {}


def has_skeleton_subtype(t: HlType) -> bool:
    key = t.payload_key()
    if key in _SKEL_CACHE:
        return _SKEL_CACHE[key]
    out = any(is_skeleton(u) for u in subtypes(t))
    _SKEL_CACHE[key] = out
    return out


_LONELY_CACHE: dict[tuple[bytes, bytes], bool] = {}


def is_lonely(p: Prim, t: HlType) -> bool:
    """True iff every top occurrence of ``p`` in ``t`` sits as an edge label of
    some multiplication body with at least two edges."""
    ckey = (p.payload_key(), t.payload_key())
    cached = _LONELY_CACHE.get(ckey)
    if cached is not None:
        return cached

    def covered(u: HlType) -> bool:
        # every top occurrence of p within u is covered inside u
        if isinstance(u, Prim):
            return u != p  # the occurrence u itself has no covering body
        if isinstance(u, Div):
            return covered(u.num)
        if isinstance(u, Times):
            big = len(u.body.edges) >= 2
            for e in u.body.edges:
                if e.label == p:
                    if not big:
                        return False
                elif not covered(e.label):
                    return False
            return True
        if isinstance(u, _Additive):
            raise TypeError_("loneliness is undefined on additive types")
        raise TypeError_(f"not a type: {u!r}")

    out = covered(t)
    _LONELY_CACHE[ckey] = out
    return out


_SIMPLE_CACHE: dict[bytes, bool] = {}


def is_simple(t: HlType) -> bool:
    key = t.payload_key()
    cached = _SIMPLE_CACHE.get(key)
    if cached is not None:
        return cached
    if isinstance(t, Prim):
        out = True
    elif isinstance(t, Times):
        out = all(is_simple(e.label) for e in t.body.edges)
    elif isinstance(t, Div):
        out = is_simple(t.num) and all(
            isinstance(e.label, Prim)
            for e in t.den.edges
            if not isinstance(e.label, Dollar)
        )
    else:
        out = False
    _SIMPLE_CACHE[key] = out
    return out


def isolated_node_measure(t: HlType) -> int:
    """Total count of isolated nodes inside a type's graphs, recursively."""
    if isinstance(t, Prim):
        return 0
    if isinstance(t, Div):
        return (
            isolated_node_measure(t.num)
            + sum(
                isolated_node_measure(e.label)
                for e in t.den.edges
                if not isinstance(e.label, Dollar)
            )
            + t.den.isize()
        )
    if isinstance(t, Times):
        return (
            sum(isolated_node_measure(e.label) for e in t.body.edges)
            + t.body.isize()
        )
    if isinstance(t, _Additive):
        return isolated_node_measure(t.left) + isolated_node_measure(t.right)
    raise TypeError_(f"not a type: {t!r}")


# -- equivalence-preserving simplification ----------------------------------------


def simplify(t: HlType) -> HlType:
    """Exhaustively flatten nested multiplications, inline multiplications in
    denominators, and fuse division-of-division; innermost-first, normalized
    node/edge ids on output."""
    out = _simplify(t)
    return _renumber_type(out)


def _simplify(t: HlType) -> HlType:
    if isinstance(t, Prim):
        return t
    if isinstance(t, Times):
        body = t.body.relabel(lambda e: _simplify(e.label))
        body = _inline_times(body)
        return Times(body)
    if isinstance(t, Div):
        num = _simplify(t.num)
        den = t.den.relabel(
            lambda e: e.label if isinstance(e.label, Dollar) else _simplify(e.label)
        )
        den = _inline_times(den)
        if isinstance(num, Div):
            # div(div(N/D1)/D2) ~ div(N / D1[D2 at D1's $-edge])
            inner_dollar = num.dollar_edge()
            fused = replace(num.den, inner_dollar.id, den)
            return _simplify(Div(num.num, fused))
        return Div(num, den)
    if isinstance(t, And):
        return And(_simplify(t.left), _simplify(t.right))
    if isinstance(t, Or):
        return Or(_simplify(t.left), _simplify(t.right))
    raise TypeError_(f"not a type: {t!r}")


def _inline_times(g: Hypergraph) -> Hypergraph:
    while True:
        target = next(
            (e for e in g.edges if isinstance(e.label, Times)), None
        )
        if target is None:
            return g
        g = replace(g, target.id, target.label.body)


def _renumber_type(t: HlType) -> HlType:
    if isinstance(t, Prim):
        return t
    if isinstance(t, Div):
        den = t.den.relabel(
            lambda e: e.label if isinstance(e.label, Dollar) else _renumber_type(e.label)
        ).renumbered()
        return Div(_renumber_type(t.num), den)
    if isinstance(t, Times):
        return Times(t.body.relabel(lambda e: _renumber_type(e.label)).renumbered())
    if isinstance(t, And):
        return And(_renumber_type(t.left), _renumber_type(t.right))
    if isinstance(t, Or):
        return Or(_renumber_type(t.left), _renumber_type(t.right))
    raise TypeError_(f"not a type: {t!r}")


def ersatz_conjunction(ts: list[HlType]) -> Times:
    """Parallel edges labeled by the given types over one shared external
    node sequence."""
    if not ts:
        raise TypeError_("ersatz conjunction of nothing")
    m = ts[0].arity
    if any(t.arity != m for t in ts):
        raise TypeError_("ersatz conjunction over unequal arities")
    nodes = [f"n{i}" for i in range(m)]
    edges = [(f"e{i}", t, nodes) for i, t in enumerate(ts)]
    return Times(Hypergraph(nodes, edges, nodes))


def nested_and(ts: list[HlType]) -> HlType:
    out = ts[0]
    for t in ts[1:]:
        out = And(out, t)
    return out
