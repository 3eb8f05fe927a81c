"""Symbolic grammar of order types: ADT, parser, printer, normalizer.

Text grammar (whitespace insignificant)::

    expr  := sum
    sum   := prod ('+' prod)*
    prod  := unary ('*' unary)*
    unary := atom ['~']
    atom  := NAT | 'w' | 'z' | 'q' | 'r'
           | 'w' '^' '(' expr ')'
           | 'geom' '(' expr [',' NAT] ')'
           | 'geomrev' '(' expr [',' NAT] ')'
           | 'revsum' '(' expr ')'
           | '(' expr ')'

Semantics: ``a*b`` is the product "ab" -- every point of b replaced by
a copy of a (anti-lexicographic); ``~`` is reversal; ``w``/``z``/``q``/
``r`` are the types of the naturals, integers, rationals and reals.
``geom(b)`` is the w-indexed sum of the powers b^n (ascending n),
``geomrev(b)`` the w*-indexed sum (descending n, b^0 rightmost); the
optional second argument starts the power sequence at n = k instead of
n = 0.  ``revsum(a)`` is the w*-indexed sum of the canonical
fundamental sequence of the limit ordinal a (an artifact extension of
the base grammar, needed to present witnesses).

Normal form: no ``Rev`` nodes except implicitly in the reversed leaf
forms, no Sum directly under Sum, products distributed over index
sums, finite index products expanded, and every maximal pure-ordinal
(or reversed-pure-ordinal) subterm folded into canonical leaves.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .ordinals import (
    OMEGA,
    ONE,
    ZERO,
    Ordinal,
    fundamental_sequence,
)


class Term:
    """Base class of all term nodes (immutable)."""

    __slots__ = ()


@dataclass(frozen=True)
class OrdLeaf(Term):
    """A pure ordinal below epsilon_0."""

    value: Ordinal


@dataclass(frozen=True)
class RevOrd(Term):
    """The reverse of an infinite additively indecomposable ordinal.

    ``power`` is the ordinal w^e being reversed; reversed decomposable
    ordinals are expanded into sums of these plus a finite prefix.
    """

    power: Ordinal

    def __post_init__(self):
        if self.power.is_finite() or not self.power.is_additively_indecomposable():
            raise ValueError("RevOrd requires an infinite w-power")


@dataclass(frozen=True)
class Zeta(Term):
    """The order type of the integers."""


@dataclass(frozen=True)
class Eta(Term):
    """The order type of the rationals."""


@dataclass(frozen=True)
class Lambda(Term):
    """The order type of the reals."""


ZETA = Zeta()
ETA = Eta()
LAMBDA = Lambda()


@dataclass(frozen=True)
class Sum(Term):
    parts: Tuple[Term, ...]

    def __post_init__(self):
        if not self.parts:
            raise ValueError("Sum needs at least one part")


@dataclass(frozen=True)
class Prod(Term):
    """Every point of ``index`` replaced by a copy of ``inner``."""

    inner: Term
    index: Term


@dataclass(frozen=True)
class Rev(Term):
    """Reversal; eliminated by normalization."""

    arg: Term


@dataclass(frozen=True)
class GeomOmega(Term):
    """Sum over n in w (n >= start) of base^n, ascending."""

    base: Term
    start: int = 0


@dataclass(frozen=True)
class GeomOmegaStar(Term):
    """Sum over n in w* (n >= start) of base^n, descending; base^start
    is the rightmost block."""

    base: Term
    start: int = 0


@dataclass(frozen=True)
class SeqSumStar(Term):
    """Sum over n in w* of limit[n] (canonical fundamental sequence),
    descending; limit[0] is the rightmost block."""

    limit: Ordinal

    def __post_init__(self):
        if not self.limit.is_limit():
            raise ValueError("SeqSumStar requires a limit ordinal")


@dataclass(frozen=True)
class SeqSumRev(Term):
    """The reverse of SeqSumStar(limit): the w-indexed ascending sum of
    the reversed fundamental-sequence blocks."""

    limit: Ordinal

    def __post_init__(self):
        if not self.limit.is_limit():
            raise ValueError("SeqSumRev requires a limit ordinal")


def fin(n: int) -> Term:
    return OrdLeaf(Ordinal.from_int(n))


OMEGA_T = OrdLeaf(OMEGA)
OMEGA_STAR = RevOrd(OMEGA)
ZERO_T = OrdLeaf(ZERO)
ONE_T = OrdLeaf(ONE)


# ---------------------------------------------------------------------------
# value extraction


def pure_ordinal(t: Term) -> Optional[Ordinal]:
    """The ordinal a normalized term denotes, or None."""
    if isinstance(t, OrdLeaf):
        return t.value
    return None


def co_ordinal(t: Term) -> Optional[Ordinal]:
    """If the reverse of t is a pure ordinal, that ordinal; else None."""
    if isinstance(t, OrdLeaf):
        return t.value if t.value.is_finite() else None
    if isinstance(t, RevOrd):
        return t.power
    if isinstance(t, Sum):
        total = ZERO
        for part in reversed(t.parts):
            v = co_ordinal(part)
            if v is None:
                return None
            total = total + v
        return total
    if isinstance(t, Prod):
        a = co_ordinal(t.inner)
        b = co_ordinal(t.index)
        if a is None or b is None:
            return None
        return a * b
    return None


# ---------------------------------------------------------------------------
# normalization


def rev_ordinal_term(a: Ordinal) -> Term:
    """Canonical normalized term for the reverse of the ordinal a."""
    if a.is_finite():
        return OrdLeaf(a)
    parts = []
    m = a.finite_part
    if m:
        parts.append(OrdLeaf(Ordinal.from_int(m)))
    for exp, coeff in reversed(a.limit_part.terms):
        power = Ordinal(((exp, 1),))
        parts.extend([RevOrd(power)] * coeff)
    if len(parts) == 1:
        return parts[0]
    return Sum(tuple(parts))


def _is_pure(t: Term) -> bool:
    return isinstance(t, OrdLeaf)


def _is_co(t: Term) -> bool:
    return isinstance(t, RevOrd) or (isinstance(t, OrdLeaf) and t.value.is_finite())


def _norm_sum(parts) -> Term:
    flat = []
    for p in parts:
        if isinstance(p, Sum):
            flat.extend(p.parts)
        elif isinstance(p, OrdLeaf) and p.value.is_zero():
            continue
        else:
            flat.append(p)
    # fold adjacent pure / reversed-pure runs until stable
    while True:
        out = []
        for p in flat:
            if out:
                prev = out[-1]
                if _is_pure(prev) and _is_pure(p):
                    out[-1] = OrdLeaf(prev.value + p.value)
                    continue
                if _is_co(prev) and _is_co(p):
                    # (prev + p)* = p* + prev*; refold canonically
                    combined = co_ordinal(p) + co_ordinal(prev)
                    folded = rev_ordinal_term(combined)
                    out.pop()
                    out.extend(folded.parts if isinstance(folded, Sum) else (folded,))
                    continue
                if (
                    isinstance(prev, RevOrd)
                    and isinstance(p, OrdLeaf)
                    and p.value >= OMEGA
                ):
                    # a reversed power block ends in a descending copy
                    # of w*, so the seam with an ascending leaf closes
                    # into a zeta block:
                    #   w*     + v = zeta + (v - w)
                    #   (w^e)* + v = (w^e)* + zeta + (v - w)  [e > 1]
                    rest = p.value - OMEGA
                    if prev.power == OMEGA:
                        out[-1] = ZETA
                    else:
                        out.append(ZETA)
                    if not rest.is_zero():
                        out.append(OrdLeaf(rest))
                    continue
            out.append(p)
        if out == flat:
            break
        flat = out
    if not flat:
        return ZERO_T
    if len(flat) == 1:
        return flat[0]
    return Sum(tuple(flat))


def _norm_prod(inner: Term, index: Term) -> Term:
    if isinstance(inner, OrdLeaf) and inner.value.is_zero():
        return ZERO_T
    if isinstance(index, OrdLeaf) and index.value.is_zero():
        return ZERO_T
    if isinstance(inner, OrdLeaf) and inner.value == ONE:
        return index
    if isinstance(index, OrdLeaf) and index.value == ONE:
        return inner
    # right distributivity: a(b+c) = ab + ac, an exact isomorphism
    if isinstance(index, Sum):
        return _norm_sum([_norm_prod(inner, p) for p in index.parts])
    # associativity: a(bc) = (ab)c; left-nest products
    if isinstance(index, Prod):
        return _norm_prod(_norm_prod(inner, index.inner), index.index)
    # merge adjacent pure-ordinal indices: (a b1) b2 = a (b1 b2)
    if (
        isinstance(inner, Prod)
        and isinstance(inner.index, OrdLeaf)
        and isinstance(index, OrdLeaf)
    ):
        return _norm_prod(inner.inner, OrdLeaf(inner.index.value * index.value))
    # merge adjacent reversed-pure indices: (x a*) b* = x (ab)*
    if (
        isinstance(inner, Prod)
        and co_ordinal(inner.index) is not None
        and co_ordinal(index) is not None
    ):
        folded = co_ordinal(inner.index) * co_ordinal(index)
        return _norm_prod(inner.inner, rev_ordinal_term(folded))
    # pure ordinal product folds
    if isinstance(inner, OrdLeaf) and isinstance(index, OrdLeaf):
        return OrdLeaf(inner.value * index.value)
    # reversed-pure product folds through (ab)* = a*b*
    ci, cx = co_ordinal(inner), co_ordinal(index)
    if ci is not None and cx is not None:
        return rev_ordinal_term(ci * cx)
    # finite index: expand into an explicit sum of copies
    if isinstance(index, OrdLeaf) and index.value.is_finite():
        n = index.value.as_int()
        return _norm_sum([inner] * n)
    # decomposable ordinal index: distribute over its CNF summands
    if isinstance(index, OrdLeaf):
        b = index.value
        if len(b.terms) > 1 or b.terms[0][1] > 1 or b.finite_part:
            parts = []
            for exp, coeff in b.terms:
                block = Ordinal(((exp, 1),))
                parts.extend([_norm_prod(inner, OrdLeaf(block))] * coeff)
            return _norm_sum(parts)
    return Prod(inner, index)


def _norm_geom(base: Term, start: int, star: bool) -> Term:
    v = pure_ordinal(base)
    if v is not None:
        if v.is_zero():
            return ONE_T if start == 0 else ZERO_T
        if v == ONE:
            # sum of w-many single points
            return RevOrd(OMEGA) if star else OMEGA_T
        if star:
            # a finite base gives w*-many finite blocks, i.e. just w*
            return GeomOmegaStar(base, start) if not v.is_finite() else RevOrd(OMEGA)
        return OrdLeaf(v**OMEGA if not v.is_finite() else OMEGA)
    c = co_ordinal(base)
    if c is not None:
        # base is a reversed ordinal: the star sum is the reverse of a
        # pure geometric ordinal sum and vice versa
        if c.is_zero():
            return ONE_T if start == 0 else ZERO_T
        if c == ONE:
            return RevOrd(OMEGA) if star else OMEGA_T
        total = c**OMEGA if not c.is_finite() else OMEGA
        if star:
            return rev_ordinal_term(total)
        return GeomOmega(base, start)
    return GeomOmegaStar(base, start) if star else GeomOmega(base, start)


def _norm_seqsum(a: Ordinal, reverse: bool) -> Term:
    if a == OMEGA:
        # blocks are the naturals; the w*-sum is just w*
        return OMEGA_T if reverse else RevOrd(OMEGA)
    # fold geometric fundamental sequences: for a = w^(w^h) with h a
    # successor (or h = 1), the blocks are the powers of w^(w^(h-1))
    if len(a.terms) == 1 and a.terms[0][1] == 1:
        g = a.terms[0][0]
        if len(g.terms) == 1 and g.terms[0][1] == 1 and not g.terms[0][0].is_zero():
            h = g.terms[0][0]
            if h.is_successor():
                rho = OMEGA ** (Ordinal(((h.pred(), 1),)))
                if reverse:
                    return _norm_geom(rev_ordinal_term(rho), 0, star=False)
                return _norm_geom(OrdLeaf(rho), 0, star=True)
    return SeqSumRev(a) if reverse else SeqSumStar(a)


def _reverse_normal(t: Term) -> Term:
    """Reverse of an already-normalized term, renormalized."""
    if isinstance(t, OrdLeaf):
        return rev_ordinal_term(t.value)
    if isinstance(t, RevOrd):
        return OrdLeaf(t.power)
    if isinstance(t, (Zeta, Eta, Lambda)):
        return t
    if isinstance(t, Sum):
        return _norm_sum([_reverse_normal(p) for p in reversed(t.parts)])
    if isinstance(t, Prod):
        return _norm_prod(_reverse_normal(t.inner), _reverse_normal(t.index))
    if isinstance(t, GeomOmega):
        return _norm_geom(_reverse_normal(t.base), t.start, star=True)
    if isinstance(t, GeomOmegaStar):
        return _norm_geom(_reverse_normal(t.base), t.start, star=False)
    if isinstance(t, SeqSumStar):
        return _norm_seqsum(t.limit, reverse=True)
    if isinstance(t, SeqSumRev):
        return _norm_seqsum(t.limit, reverse=False)
    raise TypeError(f"cannot reverse {t!r}")


def normalize(t: Term) -> Term:
    """Canonical normal form; idempotent."""
    if isinstance(t, Rev):
        return _reverse_normal(normalize(t.arg))
    if isinstance(t, Sum):
        return _norm_sum([normalize(p) for p in t.parts])
    if isinstance(t, Prod):
        return _norm_prod(normalize(t.inner), normalize(t.index))
    if isinstance(t, GeomOmega):
        return _norm_geom(normalize(t.base), t.start, star=False)
    if isinstance(t, GeomOmegaStar):
        return _norm_geom(normalize(t.base), t.start, star=True)
    if isinstance(t, SeqSumStar):
        return _norm_seqsum(t.limit, reverse=False)
    if isinstance(t, SeqSumRev):
        return _norm_seqsum(t.limit, reverse=True)
    return t


def reverse_term(t: Term) -> Term:
    """Normalized reverse of t."""
    return normalize(Rev(t))


# ---------------------------------------------------------------------------
# printing


def print_term(t: Term, level: int = 0) -> str:
    """Canonical text form.  level: 0 = sum context, 1 = product
    context, 2 = unary/atom context."""
    if isinstance(t, OrdLeaf):
        s = str(t.value)
        need = ("+" in s and level >= 1) or ("*" in s and level >= 2)
        return f"({s})" if need else s
    if isinstance(t, RevOrd):
        p = t.power
        if p == OMEGA:
            return "w~"
        if len(p.terms) == 1 and p.terms[0][1] == 1:
            return f"w^({p.terms[0][0]})~"
        raise AssertionError("RevOrd invariant violated")
    if isinstance(t, Zeta):
        return "z"
    if isinstance(t, Eta):
        return "q"
    if isinstance(t, Lambda):
        return "r"
    if isinstance(t, Sum):
        s = " + ".join(print_term(p, 1) for p in t.parts)
        return f"({s})" if level >= 1 else s
    if isinstance(t, Prod):
        s = f"{print_term(t.inner, 2)}*{print_term(t.index, 2)}"
        return f"({s})" if level >= 2 else s
    if isinstance(t, Rev):
        return f"{print_term(t.arg, 2)}~"
    if isinstance(t, GeomOmega):
        inner = print_term(t.base, 0)
        return f"geom({inner}, {t.start})" if t.start else f"geom({inner})"
    if isinstance(t, GeomOmegaStar):
        inner = print_term(t.base, 0)
        return f"geomrev({inner}, {t.start})" if t.start else f"geomrev({inner})"
    if isinstance(t, SeqSumStar):
        return f"revsum({t.limit})"
    if isinstance(t, SeqSumRev):
        return f"revsum({t.limit})~"
    raise TypeError(f"cannot print {t!r}")


# ---------------------------------------------------------------------------
# parsing


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str):
        if self.peek() != ch:
            raise ParseError(f"expected {ch!r}", self.pos)
        self.pos += 1

    def match_word(self, word: str) -> bool:
        self.skip_ws()
        end = self.pos + len(word)
        if self.text[self.pos : end] == word:
            nxt = self.text[end : end + 1]
            if not nxt.isalnum():
                self.pos = end
                return True
        return False

    def parse_nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if start == self.pos:
            raise ParseError("expected a number", self.pos)
        return int(self.text[start : self.pos])

    def parse_expr(self) -> Term:
        parts = [self.parse_prod()]
        while self.peek() == "+":
            self.pos += 1
            parts.append(self.parse_prod())
        return parts[0] if len(parts) == 1 else Sum(tuple(parts))

    def parse_prod(self) -> Term:
        t = self.parse_unary()
        while self.peek() == "*":
            self.pos += 1
            t = Prod(t, self.parse_unary())
        return t

    def parse_unary(self) -> Term:
        t = self.parse_atom()
        while self.peek() == "~":
            self.pos += 1
            t = Rev(t)
        return t

    def parse_atom(self) -> Term:
        c = self.peek()
        if c.isdigit():
            return fin(self.parse_nat())
        if c == "(":
            self.pos += 1
            t = self.parse_expr()
            self.expect(")")
            return t
        if self.match_word("geomrev"):
            return self._parse_geom(star=True)
        if self.match_word("geom"):
            return self._parse_geom(star=False)
        if self.match_word("revsum"):
            self.expect("(")
            t = self.parse_expr()
            self.expect(")")
            v = pure_ordinal(normalize(t))
            if v is None or not v.is_limit():
                raise ParseError("revsum requires a limit ordinal argument", self.pos)
            return SeqSumStar(v)
        if self.match_word("w"):
            if self.peek() == "^":
                self.pos += 1
                self.expect("(")
                e = self.parse_expr()
                self.expect(")")
                v = pure_ordinal(normalize(e))
                if v is None:
                    raise ParseError("exponent must be a pure ordinal", self.pos)
                return OrdLeaf(OMEGA**v)
            return OMEGA_T
        if self.match_word("z"):
            return ZETA
        if self.match_word("q"):
            return ETA
        if self.match_word("r"):
            return LAMBDA
        raise ParseError("expected a term", self.pos)

    def _parse_geom(self, star: bool) -> Term:
        self.expect("(")
        t = self.parse_expr()
        start = 0
        if self.peek() == ",":
            self.pos += 1
            start = self.parse_nat()
        self.expect(")")
        return GeomOmegaStar(t, start) if star else GeomOmega(t, start)


def parse_term(text: str) -> Term:
    """Parse the grammar above; raises ParseError with a position."""
    p = _Parser(text)
    t = p.parse_expr()
    p.skip_ws()
    if p.pos != len(p.text):
        raise ParseError("trailing input", p.pos)
    return t


def parse_normalized(text: str) -> Term:
    return normalize(parse_term(text))
