"""String-side calculi: L, LP, NL-diamond and LW, with translations into
graph sequents.

The provers here are deliberately self-contained sequence/multiset/term
searches with no graph machinery, so they can serve as independent oracles
for the embedding theorems.  Each is an exact exhaustive backward search;
sizes decrease strictly, so no budgets are needed at the scales used.

Surface syntax: atoms ``[a-z][a-z0-9]*``; binary operators ``\\``, ``/``,
``*`` at one precedence level, left-associative; ``dia``/``box`` prefixes
(NL-diamond); ``(T;n)`` weight annotations and a ``<n>`` sequent prefix (LW);
``(A,B)`` pairs and ``<A>`` diamond brackets in NL-diamond antecedents.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .graph import Dollar, GraphError, Hypergraph, handle, replace, string_graph
from .types import Div, HlType, Prim, Sequent, Times


class MalformedStrSequent(GraphError):
    pass


class ReservedSymbol(GraphError):
    pass


L, LP, NLD, LW = "L", "LP", "NLd", "LW"
CALCULI = (L, LP, NLD, LW)

BR_SYM = "p_br"
DIA_SYM = "p_dia"
RESERVED_SYMS = {BR_SYM, DIA_SYM}


# -- string types -----------------------------------------------------------------


@dataclass(frozen=True)
class SPrim:
    sym: str


@dataclass(frozen=True)
class SOver:  # num / den
    num: "StrType"
    den: "StrType"


@dataclass(frozen=True)
class SUnder:  # den \ num
    den: "StrType"
    num: "StrType"


@dataclass(frozen=True)
class SProd:
    left: "StrType"
    right: "StrType"


@dataclass(frozen=True)
class SDia:
    inner: "StrType"


@dataclass(frozen=True)
class SBox:
    inner: "StrType"


@dataclass(frozen=True)
class SWeighted:
    """LW type: a weight on top of a primitive or binary constructor whose
    children are themselves weighted."""

    core: "StrType"
    n: int


StrType = object


def connectives(t: StrType) -> int:
    if isinstance(t, SPrim):
        return 0
    if isinstance(t, (SOver, SUnder, SProd)):
        a, b = _parts(t)
        return 1 + connectives(a) + connectives(b)
    if isinstance(t, (SDia, SBox)):
        return 1 + connectives(t.inner)
    if isinstance(t, SWeighted):
        return connectives(t.core)
    raise MalformedStrSequent(f"not a string type: {t!r}")


def _parts(t) -> tuple:
    if isinstance(t, SOver):
        return t.num, t.den
    if isinstance(t, SUnder):
        return t.den, t.num
    return t.left, t.right


@dataclass(frozen=True)
class StrSequent:
    """Antecedent is a type tuple (L/LP/LW) or a bracketed term (NL-diamond:
    nested tuples ("leaf", T) | ("pair", a, b) | ("dia", a)); LW sequents
    carry a weight."""

    antecedent: tuple
    succedent: StrType
    weight: int | None = None


def str_repr(t: StrType) -> str:
    if isinstance(t, SPrim):
        return t.sym
    if isinstance(t, SOver):
        return f"({str_repr(t.num)}/{str_repr(t.den)})"
    if isinstance(t, SUnder):
        return f"({str_repr(t.den)}\\{str_repr(t.num)})"
    if isinstance(t, SProd):
        return f"({str_repr(t.left)}*{str_repr(t.right)})"
    if isinstance(t, SDia):
        return f"dia {str_repr(t.inner)}"
    if isinstance(t, SBox):
        return f"box {str_repr(t.inner)}"
    if isinstance(t, SWeighted):
        inner = str_repr(t.core)
        return f"({inner};{t.n})" if t.n else inner
    return repr(t)


# -- parsing ----------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(->|[a-z][a-z0-9_]*|\d+|[()<>,;/\\*])")


def _tokenize(text: str) -> list[str]:
    out, pos = [], 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise MalformedStrSequent(f"cannot tokenize at {text[pos:]!r}")
            break
        out.append(m.group(1))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, tokens: list[str], calc: str):
        self.toks = tokens
        self.i = 0
        self.calc = calc

    def peek(self) -> str | None:
        return self.toks[self.i] if self.i < len(self.toks) else None

    def take(self, expect: str | None = None) -> str:
        tok = self.peek()
        if tok is None or (expect is not None and tok != expect):
            raise MalformedStrSequent(f"expected {expect!r}, got {tok!r}")
        self.i += 1
        return tok

    def type_expr(self):
        left = self.term()
        while self.peek() in ("/", "\\", "*"):
            op = self.take()
            right = self.term()
            if op == "/":
                left = self._mk(SOver(self._unwrap(left), self._unwrap(right)))
            elif op == "\\":
                left = self._mk(SUnder(self._unwrap(left), self._unwrap(right)))
            else:
                left = self._mk(SProd(self._unwrap(left), self._unwrap(right)))
        return left

    def _unwrap(self, t):
        return t

    def _mk(self, core):
        if self.calc == LW and not isinstance(core, SWeighted):
            return SWeighted(core, 0)
        return core

    def term(self):
        tok = self.peek()
        if tok == "(":
            self.take()
            t = self.type_expr()
            if self.peek() == ";":
                if self.calc != LW:
                    raise MalformedStrSequent("weights only in LW")
                self.take(";")
                n = int(self.take())
                self.take(")")
                core = t.core if isinstance(t, SWeighted) else t
                return SWeighted(core, n)
            self.take(")")
            return t
        if tok in ("dia", "box"):
            if self.calc != NLD:
                raise MalformedStrSequent("dia/box only in NLd")
            self.take()
            inner = self.term()
            return SDia(inner) if tok == "dia" else SBox(inner)
        if tok is not None and re.fullmatch(r"[a-z][a-z0-9_]*", tok):
            self.take()
            return self._mk(SPrim(tok))
        raise MalformedStrSequent(f"unexpected token {tok!r}")

    def nl_term(self):
        tok = self.peek()
        if tok == "<":
            self.take()
            inner = self.nl_term()
            self.take(">")
            return ("dia", inner)
        if tok == "(":
            # try a pair; fall back to a parenthesized type
            save = self.i
            self.take()
            try:
                first = self.nl_term()
                if self.peek() == ",":
                    self.take(",")
                    second = self.nl_term()
                    self.take(")")
                    return ("pair", first, second)
            except MalformedStrSequent:
                pass
            self.i = save
            return ("leaf", self.type_expr())
        return ("leaf", self.type_expr())


def parse_sequent(text: str, calc: str) -> StrSequent:
    """Parse ``Gamma -> C`` in the given calculus's surface syntax."""
    if calc not in CALCULI:
        raise MalformedStrSequent(f"unknown calculus {calc!r}")
    toks = _tokenize(text)
    p = _Parser(toks, calc)
    weight = None
    if calc == LW:
        weight = 0
        if p.peek() == "<":
            p.take("<")
            weight = int(p.take())
            p.take(">")
    if calc == NLD:
        ant: tuple = (p.nl_term(),)
        if p.peek() == ",":
            raise MalformedStrSequent("NLd antecedent is a single bracketed term")
        antecedent = ant[0]
    else:
        items = [p.type_expr()]
        while p.peek() == ",":
            p.take(",")
            items.append(p.type_expr())
        antecedent = tuple(items)
    p.take("->")
    succ = p.type_expr()
    if p.peek() is not None:
        raise MalformedStrSequent(f"trailing input {p.peek()!r}")
    if calc == NLD:
        return StrSequent((antecedent,), succ)
    return StrSequent(antecedent, succ, weight)


def nl_antecedent(seq: StrSequent):
    return seq.antecedent[0]


# -- provers ----------------------------------------------------------------------


@dataclass
class StrProof:
    derivable: bool
    tree: tuple | None = None  # (rule, conclusion repr, premises)


def prove_string(seq: StrSequent, calc: str, lp_strict: bool = False) -> StrProof:
    """Exact derivability for the chosen calculus.

    LP note: the graph embedding of LP realizes division reductions whose
    side premise is empty (a single shared node carries no residue), so the
    embedding theorem holds for LP with empty premise splits; that is the
    default here.  ``lp_strict`` restores Lambek's nonempty restriction
    throughout, under which the embedding genuinely over-derives.
    """
    if calc == L:
        return _prove_l(seq.antecedent, seq.succedent, permute=False, allow_empty=False)
    if calc == LP:
        return _prove_l(
            seq.antecedent, seq.succedent, permute=True, allow_empty=not lp_strict
        )
    if calc == NLD:
        return _prove_nld(nl_antecedent(seq), seq.succedent)
    if calc == LW:
        if seq.weight is None:
            raise MalformedStrSequent("LW sequent without weight")
        return _prove_lw(seq.weight, seq.antecedent, seq.succedent)
    raise MalformedStrSequent(f"unknown calculus {calc!r}")


def _prove_l(ant: tuple, succ, permute: bool, allow_empty: bool) -> StrProof:
    memo: dict = {}

    def derive(a: tuple, c) -> tuple | None:
        if not a and not allow_empty:
            return None
        k = (tuple(sorted(a, key=repr)) if permute else a, c)
        if k in memo:
            return memo[k]
        memo[k] = None  # sizes strictly decrease: no revisit on a branch
        tree = _derive_l(a, c, derive, permute, allow_empty)
        memo[k] = tree
        return tree

    tree = derive(tuple(ant), succ)
    return StrProof(tree is not None, tree)


def _derive_l(a: tuple, c, derive, permute: bool, allow_empty: bool) -> tuple | None:
    label = f"{','.join(map(str_repr, a))} -> {str_repr(c)}"
    lo = 0 if allow_empty else 1
    if len(a) == 1 and isinstance(c, SPrim) and a[0] == c:
        return ("axiom", label, ())
    if isinstance(c, SOver):  # -> num/den
        sub = derive(a + (c.den,), c.num)
        if sub:
            return ("right_over", label, (sub,))
    if isinstance(c, SUnder):
        sub = derive((c.den,) + a, c.num)
        if sub:
            return ("right_under", label, (sub,))
    if isinstance(c, SProd):
        if permute:
            idx = range(len(a))
            for r in range(lo, len(a) + 1 - lo):
                for pick in itertools.combinations(idx, r):
                    left = tuple(a[i] for i in pick)
                    right = tuple(a[i] for i in idx if i not in pick)
                    s1 = derive(left, c.left)
                    if s1:
                        s2 = derive(right, c.right)
                        if s2:
                            return ("right_prod", label, (s1, s2))
        else:
            for k in range(1, len(a)):
                s1 = derive(a[:k], c.left)
                if s1:
                    s2 = derive(a[k:], c.right)
                    if s2:
                        return ("right_prod", label, (s1, s2))
    for i, t in enumerate(a):
        if isinstance(t, SProd):
            sub = derive(a[:i] + (t.left, t.right) + a[i + 1 :], c)
            if sub:
                return ("left_prod", label, (sub,))
        if isinstance(t, (SOver, SUnder)):
            rest = a[:i] + a[i + 1 :]
            if permute:
                idx = range(len(rest))
                for r in range(lo, len(rest) + 1):
                    for pick in itertools.combinations(idx, r):
                        pi = tuple(rest[j] for j in pick)
                        ctx = tuple(rest[j] for j in idx if j not in pick)
                        s1 = derive(pi, t.den)
                        if s1:
                            s2 = derive(ctx + (t.num,), c)
                            if s2:
                                return ("left_div", label, (s1, s2))
            elif isinstance(t, SUnder):
                # Gamma, Pi, den\num, Delta -> c
                for j in range(i):
                    pi = a[j:i]
                    s1 = derive(pi, t.den)
                    if s1:
                        s2 = derive(a[:j] + (t.num,) + a[i + 1 :], c)
                        if s2:
                            return ("left_under", label, (s1, s2))
            else:
                # Gamma, num/den, Pi, Delta -> c
                for j in range(i + 2, len(a) + 1):
                    pi = a[i + 1 : j]
                    s1 = derive(pi, t.den)
                    if s1:
                        s2 = derive(a[:i] + (t.num,) + a[j:], c)
                        if s2:
                            return ("left_over", label, (s1, s2))
    return None


def _prove_nld(term, succ) -> StrProof:
    memo: dict = {}

    def derive(t, c) -> tuple | None:
        k = (t, c)
        if k in memo:
            return memo[k]
        memo[k] = None
        out = _derive_nld(t, c, derive)
        memo[k] = out
        return out

    tree = derive(term, succ)
    return StrProof(tree is not None, tree)


def _positions(term) -> Iterator[tuple]:
    yield ()
    if term[0] == "pair":
        for side in (1, 2):
            for pos in _positions(term[side]):
                yield (side,) + pos
    elif term[0] == "dia":
        for pos in _positions(term[1]):
            yield (1,) + pos


def _at(term, pos):
    for i in pos:
        term = term[i]
    return term


def _put(term, pos, sub):
    if not pos:
        return sub
    if term[0] == "pair":
        if pos[0] == 1:
            return ("pair", _put(term[1], pos[1:], sub), term[2])
        return ("pair", term[1], _put(term[2], pos[1:], sub))
    return ("dia", _put(term[1], pos[1:], sub))


def _derive_nld(t, c, derive) -> tuple | None:
    label = f"{t!r} -> {str_repr(c)}"
    if t[0] == "leaf" and isinstance(c, SPrim) and t[1] == c:
        return ("axiom", label, ())
    if isinstance(c, SOver):
        sub = derive(("pair", t, ("leaf", c.den)), c.num)
        if sub:
            return ("right_over", label, (sub,))
    if isinstance(c, SUnder):
        sub = derive(("pair", ("leaf", c.den), t), c.num)
        if sub:
            return ("right_under", label, (sub,))
    if isinstance(c, SProd) and t[0] == "pair":
        s1 = derive(t[1], c.left)
        if s1:
            s2 = derive(t[2], c.right)
            if s2:
                return ("right_prod", label, (s1, s2))
    if isinstance(c, SDia) and t[0] == "dia":
        sub = derive(t[1], c.inner)
        if sub:
            return ("right_dia", label, (sub,))
    if isinstance(c, SBox):
        sub = derive(("dia", t), c.inner)
        if sub:
            return ("right_box", label, (sub,))
    for pos in _positions(t):
        sub = _at(t, pos)
        if sub[0] == "leaf":
            ty = sub[1]
            if isinstance(ty, SProd):
                s = derive(
                    _put(t, pos, ("pair", ("leaf", ty.left), ("leaf", ty.right))), c
                )
                if s:
                    return ("left_prod", label, (s,))
            if isinstance(ty, SDia):
                s = derive(_put(t, pos, ("dia", ("leaf", ty.inner))), c)
                if s:
                    return ("left_dia", label, (s,))
        elif sub[0] == "dia" and sub[1][0] == "leaf" and isinstance(sub[1][1], SBox):
            s = derive(_put(t, pos, ("leaf", sub[1][1].inner)), c)
            if s:
                return ("left_box", label, (s,))
        elif sub[0] == "pair":
            lhs, rhs = sub[1], sub[2]
            if rhs[0] == "leaf" and isinstance(rhs[1], SUnder):
                s1 = derive(lhs, rhs[1].den)
                if s1:
                    s2 = derive(_put(t, pos, ("leaf", rhs[1].num)), c)
                    if s2:
                        return ("left_under", label, (s1, s2))
            if lhs[0] == "leaf" and isinstance(lhs[1], SOver):
                s1 = derive(rhs, lhs[1].den)
                if s1:
                    s2 = derive(_put(t, pos, ("leaf", lhs[1].num)), c)
                    if s2:
                        return ("left_over", label, (s1, s2))
    return None


def _prove_lw(weight: int, ant: tuple, succ) -> StrProof:
    memo: dict = {}

    def derive(n: int, a: tuple, c) -> tuple | None:
        if not a or n < 0:
            return None
        k = (n, a, c)
        if k in memo:
            return memo[k]
        memo[k] = None
        out = _derive_lw(n, a, c, derive)
        memo[k] = out
        return out

    tree = derive(weight, tuple(ant), succ)
    return StrProof(tree is not None, tree)


def _w(t) -> tuple:
    if not isinstance(t, SWeighted):
        raise MalformedStrSequent(f"LW type not weighted: {t!r}")
    return t.core, t.n


def _derive_lw(n: int, a: tuple, c, derive) -> tuple | None:
    label = f"<{n}> {','.join(map(str_repr, a))} -> {str_repr(c)}"
    core_c, m_c = _w(c)
    if (
        n == 0
        and len(a) == 1
        and isinstance(core_c, SPrim)
        and m_c == 0
        and a[0] == c
    ):
        return ("axiom", label, ())
    if isinstance(core_c, SPrim) and m_c >= 1 and n >= m_c:
        sub = derive(n - m_c, a, SWeighted(core_c, 0))
        if sub:
            return ("right_w", label, (sub,))
    if isinstance(core_c, SOver):
        sub = derive(n + m_c, a + (core_c.den,), core_c.num)
        if sub:
            return ("right_over", label, (sub,))
    if isinstance(core_c, SUnder):
        sub = derive(n + m_c, (core_c.den,) + a, core_c.num)
        if sub:
            return ("right_under", label, (sub,))
    if isinstance(core_c, SProd):
        for k in range(1, len(a)):
            for n1 in range(n - m_c + 1):
                if n - m_c < 0:
                    break
                s1 = derive(n1, a[:k], core_c.left)
                if s1:
                    s2 = derive(n - m_c - n1, a[k:], core_c.right)
                    if s2:
                        return ("right_prod", label, (s1, s2))
    for i, t in enumerate(a):
        core, m = _w(t)
        if isinstance(core, SPrim) and m >= 1:
            sub = derive(n + m, a[:i] + (SWeighted(core, 0),) + a[i + 1 :], c)
            if sub:
                return ("left_w", label, (sub,))
        if isinstance(core, SProd):
            sub = derive(n + m, a[:i] + (core.left, core.right) + a[i + 1 :], c)
            if sub:
                return ("left_prod", label, (sub,))
        if isinstance(core, SUnder):
            for j in range(i):
                pi = a[j:i]
                for n1 in range(n - m + 1):
                    s1 = derive(n1, pi, core.den)
                    if s1:
                        s2 = derive(
                            n - m - n1, a[:j] + (core.num,) + a[i + 1 :], c
                        )
                        if s2:
                            return ("left_under", label, (s1, s2))
        if isinstance(core, SOver):
            for j in range(i + 2, len(a) + 1):
                pi = a[i + 1 : j]
                for n1 in range(n - m + 1):
                    s1 = derive(n1, pi, core.den)
                    if s1:
                        s2 = derive(n - m - n1, a[:i] + (core.num,) + a[j:], c)
                        if s2:
                            return ("left_over", label, (s1, s2))
    return None


def unweight(t) -> StrType:
    """Forget weights: LW type to L type."""
    core, _ = _w(t)
    if isinstance(core, SPrim):
        return core
    if isinstance(core, SOver):
        return SOver(unweight(core.num), unweight(core.den))
    if isinstance(core, SUnder):
        return SUnder(unweight(core.den), unweight(core.num))
    if isinstance(core, SProd):
        return SProd(unweight(core.left), unweight(core.right))
    raise MalformedStrSequent(f"cannot unweight {core!r}")


# -- translations into graph sequents ------------------------------------------------


def _check_reserved(t: StrType) -> None:
    if isinstance(t, SPrim):
        if t.sym in RESERVED_SYMS:
            raise ReservedSymbol(f"{t.sym} is reserved for the translation gadgets")
    elif isinstance(t, (SOver, SUnder, SProd)):
        a, b = _parts(t)
        _check_reserved(a)
        _check_reserved(b)
    elif isinstance(t, (SDia, SBox)):
        _check_reserved(t.inner)
    elif isinstance(t, SWeighted):
        _check_reserved(t.core)


def _two_edge_den(first, second) -> Hypergraph:
    """Chain of two binary payloads with the endpoints external."""
    return Hypergraph(
        ["a", "b", "c"],
        [("e0", first, ["a", "b"]), ("e1", second, ["b", "c"])],
        ["a", "c"],
    )


def tr_l(t: StrType) -> HlType:
    _check_reserved(t)
    if isinstance(t, SPrim):
        return Prim(t.sym, 2)
    if isinstance(t, SOver):
        return Div(tr_l(t.num), _two_edge_den(Dollar(2), tr_l(t.den)))
    if isinstance(t, SUnder):
        return Div(tr_l(t.num), _two_edge_den(tr_l(t.den), Dollar(2)))
    if isinstance(t, SProd):
        return Times(string_graph([tr_l(t.left), tr_l(t.right)]))
    raise MalformedStrSequent(f"not an L type: {t!r}")


def _br(x, y) -> Hypergraph:
    return Hypergraph(
        ["a", "b", "c"],
        [
            ("e0", x, ["a", "b"]),
            ("e1", y, ["b", "c"]),
            ("e2", Prim(BR_SYM, 2), ["a", "c"]),
        ],
        ["a", "c"],
    )


def _diam(x) -> Hypergraph:
    return Hypergraph(
        ["a", "b"],
        [("e0", x, ["a", "b"]), ("e1", Prim(DIA_SYM, 2), ["a", "b"])],
        ["a", "b"],
    )


def tr_nld(t: StrType) -> HlType:
    _check_reserved(t)
    if isinstance(t, SPrim):
        return Prim(t.sym, 2)
    if isinstance(t, SOver):
        return Div(tr_nld(t.num), _br(Dollar(2), tr_nld(t.den)))
    if isinstance(t, SUnder):
        return Div(tr_nld(t.num), _br(tr_nld(t.den), Dollar(2)))
    if isinstance(t, SBox):
        return Div(tr_nld(t.inner), _diam(Dollar(2)))
    if isinstance(t, SProd):
        return Times(_br(tr_nld(t.left), tr_nld(t.right)))
    if isinstance(t, SDia):
        return Times(_diam(tr_nld(t.inner)))
    raise MalformedStrSequent(f"not an NLd type: {t!r}")


def _nld_term_graph(term) -> Hypergraph:
    if term[0] == "leaf":
        return string_graph([tr_nld(term[1])])
    if term[0] == "pair":
        skeleton = _br(Prim("_x", 2), Prim("_y", 2))
        g = replace(skeleton, "e0", _nld_term_graph(term[1]))
        e1 = next(e.id for e in g.edges if e.label == Prim("_y", 2))
        return replace(g, e1, _nld_term_graph(term[2]))
    skeleton = _diam(Prim("_x", 2))
    return replace(skeleton, "e0", _nld_term_graph(term[1]))


def tr_lp(t: StrType) -> HlType:
    _check_reserved(t)
    if isinstance(t, SPrim):
        return Prim(t.sym, 1)
    if isinstance(t, (SOver, SUnder)):
        num = t.num
        den = t.den
        den_graph = Hypergraph(
            ["a"],
            [("e0", Dollar(1), ["a"]), ("e1", tr_lp(den), ["a"])],
            ["a"],
        )
        return Div(tr_lp(num), den_graph)
    if isinstance(t, SProd):
        body = Hypergraph(
            ["a"],
            [("e0", tr_lp(t.left), ["a"]), ("e1", tr_lp(t.right), ["a"])],
            ["a"],
        )
        return Times(body)
    raise MalformedStrSequent(f"not an LP type: {t!r}")


def tr_lw(t) -> HlType:
    _check_reserved(t)
    core, n = _w(t)
    if isinstance(core, SPrim):
        if n == 0:
            return Prim(core.sym, 2)
        return Times(handle(Prim(core.sym, 2)).with_extra_nodes(n))
    if isinstance(core, SOver):
        den = _two_edge_den(Dollar(2), tr_lw(core.den)).with_extra_nodes(n)
        return Div(tr_lw(core.num), den)
    if isinstance(core, SUnder):
        den = _two_edge_den(tr_lw(core.den), Dollar(2)).with_extra_nodes(n)
        return Div(tr_lw(core.num), den)
    if isinstance(core, SProd):
        body = string_graph([tr_lw(core.left), tr_lw(core.right)]).with_extra_nodes(n)
        return Times(body)
    raise MalformedStrSequent(f"not an LW type: {t!r}")


def translate(seq: StrSequent, calc: str) -> Sequent:
    """Image of a string sequent as a graph sequent under the calculus's
    embedding."""
    if calc == L:
        ant = string_graph([tr_l(t) for t in seq.antecedent])
        return Sequent(ant, tr_l(seq.succedent))
    if calc == NLD:
        return Sequent(_nld_term_graph(nl_antecedent(seq)), tr_nld(seq.succedent))
    if calc == LP:
        edges = [
            (f"e{i}", tr_lp(t), ["v0"]) for i, t in enumerate(seq.antecedent)
        ]
        ant = Hypergraph(["v0"], edges, ["v0"])
        return Sequent(ant, tr_lp(seq.succedent))
    if calc == LW:
        if seq.weight is None:
            raise MalformedStrSequent("LW sequent without weight")
        ant = string_graph([tr_lw(t) for t in seq.antecedent]).with_extra_nodes(
            seq.weight
        )
        return Sequent(ant, tr_lw(seq.succedent))
    raise MalformedStrSequent(f"unknown calculus {calc!r}")


def tr_type(t: StrType, calc: str) -> HlType:
    return {L: tr_l, LP: tr_lp, NLD: tr_nld, LW: tr_lw}[calc](t)


# -- enumeration and agreement suites -------------------------------------------------


@dataclass(frozen=True)
class FamilyParams:
    """Bounds for exhaustive string-sequent families."""

    max_connectives: int = 3
    max_antecedent_len: int = 3
    primitives: tuple[str, ...] = ("p", "q")
    max_weight: int = 2  # LW: per-annotation and sequent weight bound
    max_dia_wraps: int = 1  # NLd antecedent bracket wraps
    cap: int | None = None  # hard cap on emitted sequents


def enum_types(calc: str, max_conn: int, params: FamilyParams) -> list[list]:
    """types_by_conn[c] = all types with exactly c connectives."""
    prims = [SPrim(s) for s in params.primitives]
    if calc == LW:
        weights = range(params.max_weight + 1)
        by_conn: list[list] = [[SWeighted(p, w) for p in prims for w in weights]]
        for c in range(1, max_conn + 1):
            layer = []
            for i in range(c):
                for a in by_conn[i]:
                    for b in by_conn[c - 1 - i]:
                        for ctor in (
                            lambda x, y: SOver(x, y),
                            lambda x, y: SUnder(y, x),
                            lambda x, y: SProd(x, y),
                        ):
                            for w in weights:
                                layer.append(SWeighted(ctor(a, b), w))
            by_conn.append(layer)
        return by_conn
    by_conn = [list(prims)]
    for c in range(1, max_conn + 1):
        layer = []
        for i in range(c):
            for a in by_conn[i]:
                for b in by_conn[c - 1 - i]:
                    layer.append(SOver(a, b))
                    layer.append(SUnder(b, a))
                    layer.append(SProd(a, b))
        if calc == NLD:
            for a in by_conn[c - 1]:
                layer.append(SDia(a))
                layer.append(SBox(a))
        by_conn.append(layer)
    return by_conn


def _enum_type_tuples(by_conn, length: int, budget: int) -> Iterator[tuple]:
    if length == 0:
        if True:
            yield ()
        return
    for c in range(budget + 1):
        for t in by_conn[c]:
            for rest in _enum_type_tuples(by_conn, length - 1, budget - c):
                yield (t,) + rest


def _enum_nl_terms(leaves: tuple, wraps: int) -> Iterator[tuple]:
    if len(leaves) == 1:
        yield ("leaf", leaves[0])
    else:
        for k in range(1, len(leaves)):
            for lt in _enum_nl_terms(leaves[:k], wraps):
                for rt in _enum_nl_terms(leaves[k:], wraps):
                    yield ("pair", lt, rt)
    if wraps > 0:
        for inner in _enum_nl_terms(leaves, wraps - 1):
            yield ("dia", inner)


def enum_sequents(calc: str, params: FamilyParams) -> Iterator[StrSequent]:
    """All sequents within the bounds, smallest first."""
    by_conn = enum_types(calc, params.max_connectives, params)
    emitted = 0
    for total in range(params.max_connectives + 1):
        for succ_c in range(total + 1):
            ant_budget = total - succ_c
            for succ in by_conn[succ_c]:
                for length in range(1, params.max_antecedent_len + 1):
                    for ant in _enum_type_tuples(by_conn, length, ant_budget):
                        if sum(map(connectives, ant)) != ant_budget:
                            continue
                        if calc == NLD:
                            for term in _enum_nl_terms(ant, params.max_dia_wraps):
                                yield StrSequent((term,), succ)
                                emitted += 1
                                if params.cap and emitted >= params.cap:
                                    return
                        elif calc == LW:
                            for w in range(params.max_weight + 1):
                                yield StrSequent(ant, succ, w)
                                emitted += 1
                                if params.cap and emitted >= params.cap:
                                    return
                        else:
                            yield StrSequent(ant, succ)
                            emitted += 1
                            if params.cap and emitted >= params.cap:
                                return


@dataclass
class AgreementReport:
    calc: str
    params: FamilyParams
    total: int = 0
    string_derivable: int = 0
    graph_derivable: int = 0
    disagreements: list[StrSequent] = field(default_factory=list)

    @property
    def agrees(self) -> bool:
        return not self.disagreements


def embedding_agrees(
    calc: str,
    params: FamilyParams | None = None,
    progress: "callable | None" = None,
) -> AgreementReport:
    """Compare the string-side prover against translate-then-prove over the
    exhaustive family; the embedding theorems predict an empty disagreement
    list."""
    from .prover import Budget, DERIVABLE, prove

    params = params or FamilyParams()
    report = AgreementReport(calc, params)
    memo: dict = {}
    for seq in enum_sequents(calc, params):
        s_res = prove_string(seq, calc).derivable
        g_seq = translate(seq, calc)
        g_res = prove(g_seq, budget=Budget(10**7), memo=memo).verdict == DERIVABLE
        report.total += 1
        report.string_derivable += s_res
        report.graph_derivable += g_res
        if s_res != g_res:
            report.disagreements.append(seq)
        if progress and report.total % 1000 == 0:
            progress(report)
    return report
