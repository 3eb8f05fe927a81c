"""Certificate-producing decision engine for order-type embeddability.

``Engine.embeds`` answers "does s embed in t?" three-valuedly (YES, NO,
UNKNOWN) by bounded-depth search over a fixed catalogue of sound rules.
Every YES/NO carries a certificate tree -- rule name, instantiation and
premise sub-certificates -- that ``replay_certificate`` revalidates
independently of the search.  UNKNOWN is an honest answer: the rule set
is sound, not complete.

Rules marked with axioms: "AC" depend on the axiom of choice and are
disabled by ``use_choice=False``; rules marked "classical" (notably the
universality of the rational line for countable orders) can be switched
off with ``use_classical=False``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import inf
from typing import Callable, Dict, List, Optional, Tuple

from .analysis import facts
from .ordinals import OMEGA, ONE, ZERO, Ordinal, classify_ordinal
from .points import power_term, total_count
from .terms import (
    Eta,
    GeomOmega,
    GeomOmegaStar,
    Lambda,
    OrdLeaf,
    Prod,
    RevOrd,
    SeqSumRev,
    SeqSumStar,
    Sum,
    Term,
    Zeta,
    ETA,
    LAMBDA,
    ZETA,
    OMEGA_T,
    OMEGA_STAR,
    ONE_T,
    co_ordinal,
    fin,
    normalize,
    parse_normalized,
    print_term,
    pure_ordinal,
    rev_ordinal_term,
    reverse_term,
)

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    answer: str
    certificate: Optional[dict] = None
    frontier: Tuple[str, ...] = ()

    @property
    def is_yes(self):
        return self.answer == YES

    @property
    def is_no(self):
        return self.answer == NO

    @property
    def decided(self):
        return self.answer != UNKNOWN


def _cert(answer, rule, s, t, inst=None, premises=(), axioms=()):
    node = {
        "answer": answer,
        "rule": rule,
        "s": print_term(s),
        "t": print_term(t),
        "instantiation": inst or {},
        "premises": [p.certificate for p in premises],
        "axioms": list(axioms),
    }
    for p in premises:
        for ax in p.certificate.get("axioms", []):
            if ax not in node["axioms"]:
                node["axioms"].append(ax)
    return Verdict(answer, node)


UNK = Verdict(UNKNOWN)


# ---------------------------------------------------------------------------
# structural helpers


def _parts(t: Term) -> Tuple[Term, ...]:
    return t.parts if isinstance(t, Sum) else (t,)


def _sumify(parts) -> Term:
    parts = [p for p in parts if p is not None]
    if not parts:
        return OrdLeaf(ZERO)
    if len(parts) == 1:
        return parts[0]
    return normalize(Sum(tuple(parts)))


def _npow(base: Term, n: int) -> Term:
    return normalize(power_term(base, n))


def term_cuts(t: Term, deep: bool = True) -> List[Tuple[Term, Term]]:
    """Certified decompositions t = left + right with both parts
    nonzero."""
    out: List[Tuple[Term, Term]] = []
    if isinstance(t, OrdLeaf):
        a = t.value
        marks = set()
        prefix = ZERO
        for e, c in a.terms:
            pw = Ordinal(((e, 1),))
            for j in range(1, min(c, 2) + 1):
                marks.add(prefix + pw * Ordinal.from_int(j))
            prefix = prefix + pw * Ordinal.from_int(c)
        for m in sorted(marks):
            for d in (ZERO, ONE):
                cut = m + d
                if not cut.is_zero() and cut < a:
                    out.append((OrdLeaf(cut), OrdLeaf(a - cut)))
    elif isinstance(t, RevOrd):
        for l, r in term_cuts(OrdLeaf(t.power), deep):
            out.append((normalize(reverse_term(r)), normalize(reverse_term(l))))
    elif isinstance(t, Zeta):
        out.append((OMEGA_STAR, OMEGA_T))
    elif isinstance(t, Eta):
        out.extend(
            [(ETA, ETA), (_sumify([ETA, ONE_T]), ETA), (ETA, _sumify([ONE_T, ETA]))]
        )
    elif isinstance(t, Lambda):
        out.extend(
            [
                (LAMBDA, LAMBDA),
                (_sumify([LAMBDA, ONE_T]), LAMBDA),
                (LAMBDA, _sumify([ONE_T, LAMBDA])),
            ]
        )
    elif isinstance(t, Sum):
        ps = t.parts
        for i in range(1, len(ps)):
            out.append((_sumify(ps[:i]), _sumify(ps[i:])))
        if deep:
            for i, p in enumerate(ps):
                for l, r in term_cuts(p, deep=False):
                    out.append(
                        (_sumify(list(ps[:i]) + [l]), _sumify([r] + list(ps[i + 1 :])))
                    )
    elif isinstance(t, Prod):
        if deep:
            for l, r in term_cuts(t.index, deep=False):
                out.append(
                    (normalize(Prod(t.inner, l)), normalize(Prod(t.inner, r)))
                )
            fi = facts(t.index)
            if fi.left_end:
                # index = 1 + rest; when the index absorbs the 1 the
                # remainder keeps the index's type only for limit-like
                # indices, so we only emit the generic two-block cut
                pass
    elif isinstance(t, GeomOmega):
        for k in (1, 2):
            prefix = _sumify([_npow(t.base, n) for n in range(t.start, t.start + k)])
            out.append((prefix, GeomOmega(t.base, t.start + k)))
    elif isinstance(t, GeomOmegaStar):
        for k in (1, 2):
            suffix = _sumify(
                [_npow(t.base, n) for n in range(t.start + k - 1, t.start - 1, -1)]
            )
            out.append((GeomOmegaStar(t.base, t.start + k), suffix))
    return out


def term_pieces(t: Term) -> List[Term]:
    """Certified convex sub-orders t' with t' <= t."""
    out: List[Term] = []
    if isinstance(t, Sum):
        ps = t.parts
        for i in range(len(ps)):
            for j in range(i + 1, len(ps) + 1):
                if (i, j) != (0, len(ps)):
                    out.append(_sumify(ps[i:j]))
    elif isinstance(t, Prod):
        out.extend([t.inner, t.index])
        cnt = total_count(t.index)
        k = 3 if cnt == inf else min(3, int(cnt))
        if k >= 2:
            out.append(normalize(Prod(t.inner, fin(k))))
    elif isinstance(t, Zeta):
        out.extend([OMEGA_STAR, OMEGA_T])
    elif isinstance(t, GeomOmega):
        out.append(OMEGA_T)
        out.append(t.base)
        for n in range(t.start, t.start + 3):
            out.append(_npow(t.base, n))
        for k in (2, 3):
            out.append(
                _sumify([_npow(t.base, n) for n in range(t.start, t.start + k)])
            )
        out.append(GeomOmega(t.base, t.start + 1))
    elif isinstance(t, GeomOmegaStar):
        out.append(OMEGA_STAR)
        out.append(t.base)
        for n in range(t.start, t.start + 3):
            out.append(_npow(t.base, n))
        for k in (2, 3):
            out.append(
                _sumify(
                    [_npow(t.base, n) for n in range(t.start + k - 1, t.start - 1, -1)]
                )
            )
        out.append(GeomOmegaStar(t.base, t.start + 1))
    elif isinstance(t, SeqSumStar):
        out.append(OMEGA_STAR)
        from .ordinals import fundamental_sequence

        for n in range(4):
            blk = fundamental_sequence(t.limit, n)
            if not blk.is_zero():
                out.append(OrdLeaf(blk))
        for k in (2, 3, 4):
            total = ZERO
            for n in range(k - 1, -1, -1):
                total = total + fundamental_sequence(t.limit, n)
            out.append(OrdLeaf(total))
    elif isinstance(t, SeqSumRev):
        out.append(normalize(reverse_term(t)) if False else OMEGA_T)
        rev_pieces = term_pieces(SeqSumStar(t.limit))
        out.extend(normalize(reverse_term(p)) for p in rev_pieces)
    seen, uniq = set(), []
    for p in out:
        if p not in seen and p != t and total_count(p) != 0:
            seen.add(p)
            uniq.append(p)
    return uniq


def _block_sum_structure(t: Term):
    """If t is an infinite sum of well-ordered blocks indexed by omega*
    (descending sequences must be unbounded left) return "left"; if the
    mirror (reverse-well-ordered blocks indexed by omega) return
    "right"; else None."""
    if isinstance(t, SeqSumStar):
        return "left"
    if isinstance(t, SeqSumRev):
        return "right"
    if isinstance(t, GeomOmegaStar) and _wo_term(t.base):
        return "left"
    if isinstance(t, GeomOmega) and _rwo_term(t.base):
        return "right"
    return None


def _wo_term(t: Term) -> bool:
    return facts(t).well_ordered


def _rwo_term(t: Term) -> bool:
    return facts(t).rev_well_ordered


def _geom_pure_base(t: Term):
    """(value, star, reversed_sense) for geometric terms with an
    ordinal-or-reversed-ordinal base; None otherwise."""
    if isinstance(t, GeomOmega):
        star = False
    elif isinstance(t, GeomOmegaStar):
        star = True
    else:
        return None
    v = pure_ordinal(t.base)
    if v is not None:
        return v, star, False
    v = co_ordinal(t.base)
    if v is not None:
        return v, star, True
    return None


_HEREDITARY_FACTS = (
    "well_ordered",
    "rev_well_ordered",
    "scattered",
    "countable",
    "final_segments_wo",
    "initial_segments_rwo",
)


class InconsistencyError(RuntimeError):
    """A classification profile violated one of its own theorems --
    an engine bug, surfaced rather than patched."""


DEFAULT_RULE_ORDER = (
    "R-EMPTY",
    "R-REFL",
    "R-ORD",
    "R-CO-ORD",
    "R-FIN",
    "R-CARD",
    "R-SCAT",
    "R-STRUCT",
    "R-ETA-UNIV",
    "R-DENSE-ABS",
    "R-LAMBDA-SEP",
    "R-ABSORB",
    "R-SUM-DP",
    "R-PROD-MONO",
    "R-PROD-SUMFOLD",
    "R-PSI-TAU",
    "R-GEOM-REINDEX",
    "R-GEOM-PROD",
    "R-GEOM",
    "R-REVSUM-OMEGA",
    "R-WO-REVSUM",
    "R-BLOCK-UNBOUNDED",
    "R-SEP-PROD",
    "R-SEP-SUM",
    "R-REV",
)


class _EngineCore:
    """Bounded-depth rule search with memoization.

    One instance owns one memo table; confine an instance to a single
    thread at a time.  Answers are deterministic for a fixed rule
    order, and YES/NO answers are independent of rule order (all rules
    are sound, so reordering can only trade YES/NO for UNKNOWN, never
    flip them).
    """

    def __init__(self, depth: int = 8, use_choice: bool = True,
                 use_classical: bool = True, rule_order=None):
        self.depth = depth
        self.use_choice = use_choice
        self.use_classical = use_classical
        self.rule_order = tuple(rule_order or DEFAULT_RULE_ORDER)
        unknown = set(self.rule_order) - set(DEFAULT_RULE_ORDER)
        if unknown:
            raise ValueError(f"unknown rules: {sorted(unknown)}")
        self._memo: Dict[Tuple[Term, Term], Verdict] = {}
        self._unknown_depth: Dict[Tuple[Term, Term], int] = {}
        self._active: set = set()
        self._cut_hits = 0

    # -- embeddability ---------------------------------------------------

    def embeds(self, s: Term, t: Term, depth: Optional[int] = None) -> Verdict:
        s, t = normalize(s), normalize(t)
        return self._embeds(s, t, self.depth if depth is None else depth)

    def _embeds(self, s: Term, t: Term, depth: int) -> Verdict:
        key = (s, t)
        hit = self._memo.get(key)
        if hit is not None:
            return hit
        if key in self._active:
            self._cut_hits += 1
            return UNK
        if self._unknown_depth.get(key, -1) >= depth:
            return UNK
        before = self._cut_hits
        self._active.add(key)
        try:
            result = UNK
            tried = []
            for name in self.rule_order:
                v = getattr(self, "_rule_" + name.replace("-", "_").lower())(
                    s, t, depth
                )
                if v is not None and v.decided:
                    result = v
                    break
                tried.append(name)
        finally:
            self._active.discard(key)
        if result.decided:
            self._memo[key] = result
        else:
            result = Verdict(UNKNOWN, None, tuple(tried))
            if self._cut_hits == before:
                # no cycle was hit, so this UNKNOWN is reproducible at
                # this depth and safe to memoize
                self._unknown_depth[key] = max(
                    self._unknown_depth.get(key, -1), depth
                )
        return result

    def equimorphic(self, s: Term, t: Term, depth: Optional[int] = None) -> Verdict:
        s, t = normalize(s), normalize(t)
        fwd = self.embeds(s, t, depth)
        bwd = self.embeds(t, s, depth)
        if fwd.is_yes and bwd.is_yes:
            return _cert(YES, "EQ", s, t, premises=(fwd, bwd))
        if fwd.is_no:
            return _cert(NO, "EQ", s, t, inst={"failed": "forward"},
                         premises=(fwd,))
        if bwd.is_no:
            return _cert(NO, "EQ", s, t, inst={"failed": "backward"},
                         premises=(bwd,))
        return UNK

    # -- decisive rules --------------------------------------------------

    def _rule_r_empty(self, s, t, depth):
        ns, nt = total_count(s), total_count(t)
        if ns == 0:
            return _cert(YES, "R-EMPTY", s, t, inst={"side": "s"})
        if nt == 0:
            return _cert(NO, "R-EMPTY", s, t, inst={"side": "t"})
        return None

    def _rule_r_refl(self, s, t, depth):
        if s == t:
            return _cert(YES, "R-REFL", s, t)
        return None

    def _rule_r_ord(self, s, t, depth):
        a, b = pure_ordinal(s), pure_ordinal(t)
        if a is None or b is None:
            return None
        ans = YES if a <= b else NO
        return _cert(ans, "R-ORD", s, t, inst={"cmp": "LE" if a <= b else "GT"})

    def _rule_r_co_ord(self, s, t, depth):
        a, b = co_ordinal(s), co_ordinal(t)
        if a is None or b is None:
            return None
        ans = YES if a <= b else NO
        return _cert(ans, "R-CO-ORD", s, t, inst={"cmp": "LE" if a <= b else "GT"})

    def _rule_r_fin(self, s, t, depth):
        fs = facts(s)
        if fs.size is None:
            return None
        nt = total_count(t)
        if nt >= fs.size:
            return _cert(YES, "R-FIN", s, t, inst={"size": fs.size})
        return _cert(NO, "R-FIN", s, t,
                     inst={"size": fs.size, "target_size": int(nt)})

    def _rule_r_card(self, s, t, depth):
        if not facts(s).countable and facts(t).countable:
            return _cert(NO, "R-CARD", s, t)
        return None

    def _rule_r_scat(self, s, t, depth):
        if not facts(s).scattered and facts(t).scattered:
            return _cert(NO, "R-SCAT", s, t)
        return None

    def _rule_r_struct(self, s, t, depth):
        fs, ft = facts(s), facts(t)
        for name in _HEREDITARY_FACTS:
            if getattr(ft, name) and not getattr(fs, name):
                return _cert(NO, "R-STRUCT", s, t, inst={"fact": name})
        return None

    def _rule_r_eta_univ(self, s, t, depth):
        if not self.use_classical:
            return None
        if isinstance(t, (Eta, Lambda)) and facts(s).countable:
            return _cert(YES, "R-ETA-UNIV", s, t, axioms=("classical",))
        return None

    def _rule_r_dense_abs(self, s, t, depth):
        if depth <= 0 or not isinstance(t, (Eta, Lambda)):
            return None
        if not isinstance(s, Sum):
            return None
        prem = []
        for p in s.parts:
            v = self._embeds(p, t, depth - 1)
            if not v.is_yes:
                return None
            prem.append(v)
        return _cert(YES, "R-DENSE-ABS", s, t, premises=tuple(prem))

    def _rule_r_lambda_sep(self, s, t, depth):
        if not isinstance(t, Lambda) or not isinstance(s, Prod):
            return None
        if total_count(s.inner) >= 2 and not facts(s.index).countable:
            return _cert(NO, "R-LAMBDA-SEP", s, t)
        return None

    def _rule_r_absorb(self, s, t, depth):
        if depth <= 0:
            return None
        for i, piece in enumerate(term_pieces(t)):
            v = self._embeds(s, piece, depth - 1)
            if v.is_yes:
                return _cert(YES, "R-ABSORB", s, t,
                             inst={"piece": print_term(piece), "index": i},
                             premises=(v,))
        return None

    def _rule_r_sum_dp(self, s, t, depth):
        if depth <= 0 or not isinstance(s, Sum) or not isinstance(t, Sum):
            return None
        sp, tp = s.parts, t.parts
        if len(sp) > 8 or len(tp) > 8:
            return None
        fail = set()

        def solve(i, j):
            if i == len(sp):
                return []
            if j >= len(tp) or (i, j) in fail:
                return None
            for jj in range(j, len(tp)):
                for a in range(1, min(3, len(sp) - i) + 1):
                    run = _sumify(sp[i : i + a])
                    v = self._embeds(run, tp[jj], depth - 1)
                    if v.is_yes:
                        rest = solve(i + a, jj + 1)
                        if rest is not None:
                            return [(i, a, jj, v)] + rest
            fail.add((i, j))
            return None

        plan = solve(0, 0)
        if plan is None:
            return None
        return _cert(
            YES, "R-SUM-DP", s, t,
            inst={"segments": [[i, a, jj] for i, a, jj, _ in plan]},
            premises=tuple(v for _, _, _, v in plan),
        )

    def _rule_r_prod_mono(self, s, t, depth):
        if depth <= 0 or not isinstance(s, Prod) or not isinstance(t, Prod):
            return None
        vi = self._embeds(s.inner, t.inner, depth - 1)
        if not vi.is_yes:
            return None
        vx = self._embeds(s.index, t.index, depth - 1)
        if not vx.is_yes:
            return None
        return _cert(YES, "R-PROD-MONO", s, t, premises=(vi, vx))

    @staticmethod
    def _sum_of_prods_fold(u: Term):
        """u = sum of products with one shared inner factor: the
        (inner, summed index) pair of the isomorphic single product."""
        if not isinstance(u, Sum):
            return None
        inner = None
        idxs = []
        for p in u.parts:
            if isinstance(p, Prod):
                c, ix = p.inner, p.index
            else:
                c, ix = p, ONE_T
            if inner is None:
                inner = c
            elif inner != c:
                return None
            idxs.append(ix)
        if inner is None or len(idxs) < 2:
            return None
        return inner, _sumify(idxs)

    def _rule_r_prod_sumfold(self, s, t, depth):
        if depth <= 0:
            return None
        sf = self._sum_of_prods_fold(s)
        tf = self._sum_of_prods_fold(t)
        if sf is None and tf is None:
            return None
        sc = (s.inner, s.index) if isinstance(s, Prod) else sf
        tc = (t.inner, t.index) if isinstance(t, Prod) else tf
        if sc is None or tc is None:
            return None
        vi = self._embeds(sc[0], tc[0], depth - 1)
        if not vi.is_yes:
            return None
        vx = self._embeds(sc[1], tc[1], depth - 1)
        if not vx.is_yes:
            return None
        return _cert(YES, "R-PROD-SUMFOLD", s, t,
                     inst={"s_product": [print_term(sc[0]), print_term(sc[1])],
                           "t_product": [print_term(tc[0]), print_term(tc[1])]},
                     premises=(vi, vx))

    def _rule_r_psi_tau(self, s, t, depth):
        if depth <= 0 or not isinstance(s, Sum) or not isinstance(t, Prod):
            return None
        c, d = t.inner, t.index
        sp = s.parts
        for i in range(1, len(sp)):
            head = _sumify(sp[:i])
            v1 = self._embeds(head, c, depth - 1)
            if not v1.is_yes:
                continue
            rest = _sumify([ONE_T] + list(sp[i:]))
            v2 = self._embeds(rest, d, depth - 1)
            if v2.is_yes:
                return _cert(YES, "R-PSI-TAU", s, t, inst={"split": i},
                             premises=(v1, v2))
        return None

    def _rule_r_geom_reindex(self, s, t, depth):
        if depth <= 0 or type(s) is not type(t):
            return None
        if not isinstance(s, (GeomOmega, GeomOmegaStar)):
            return None
        v = self._embeds(s.base, t.base, depth - 1)
        if v.is_yes:
            return _cert(YES, "R-GEOM-REINDEX", s, t, premises=(v,))
        return None

    def _rule_r_geom_prod(self, s, t, depth):
        if depth <= 0 or not isinstance(t, Prod):
            return None
        g = _geom_pure_base(s)
        if g is None:
            return None
        rho, star, rev_base = g
        c, d = t.inner, t.index
        gamma = co_ordinal(c) if rev_base else pure_ordinal(c)
        if gamma is None or not (rho ** OMEGA <= gamma):
            return None
        marker = OMEGA_STAR if star else OMEGA_T
        v = self._embeds(marker, d, depth - 1)
        if not v.is_yes:
            return None
        return _cert(YES, "R-GEOM-PROD", s, t,
                     inst={"block_bound": str(rho ** OMEGA),
                           "direction": "star" if star else "omega"},
                     premises=(v,))

    def _rule_r_geom(self, s, t, depth):
        if depth <= 0:
            return None
        if isinstance(s, GeomOmega):
            cond = _sumify([ONE_T, normalize(Prod(s.base, t))])
            v = self._embeds(cond, t, depth - 1)
            if v.is_yes:
                return _cert(YES, "R-GEOM", s, t,
                             inst={"direction": "omega"}, premises=(v,))
        elif isinstance(s, GeomOmegaStar):
            rt = normalize(reverse_term(t))
            rb = normalize(reverse_term(s.base))
            cond = _sumify([ONE_T, normalize(Prod(rb, rt))])
            v = self._embeds(cond, rt, depth - 1)
            if v.is_yes:
                return _cert(YES, "R-GEOM", s, t,
                             inst={"direction": "star"}, premises=(v,))
        return None

    def _rule_r_revsum_omega(self, s, t, depth):
        if depth <= 0 or not isinstance(t, Prod):
            return None
        alpha = pure_ordinal(s)
        if alpha is None or alpha.is_finite():
            return None
        c, d = t.inner, t.index
        ok = False
        if isinstance(c, SeqSumStar) and alpha <= c.limit:
            ok = True
        else:
            g = _geom_pure_base(c)
            if g is not None and g[1] and not g[2] and alpha <= g[0] ** OMEGA:
                ok = True
        if not ok:
            return None
        v = self._embeds(OMEGA_T, d, depth - 1)
        if not v.is_yes:
            return None
        return _cert(YES, "R-REVSUM-OMEGA", s, t, premises=(v,))

    def _rule_r_wo_revsum(self, s, t, depth):
        alpha = pure_ordinal(s)
        if alpha is None or alpha.is_finite():
            return None
        if not alpha.is_additively_indecomposable():
            return None
        if isinstance(t, SeqSumStar) and t.limit <= alpha:
            return _cert(NO, "R-WO-REVSUM", s, t, inst={"kind": "revsum"})
        g = _geom_pure_base(t)
        if g is not None and g[1] and not g[2] and g[0] ** OMEGA <= alpha:
            return _cert(NO, "R-WO-REVSUM", s, t, inst={"kind": "geom"})
        return None

    def _rule_r_block_unbounded(self, s, t, depth):
        side = _block_sum_structure(t)
        if side is None:
            return None
        for i, (a, b) in enumerate(term_cuts(s)):
            if side == "left":
                # descending sequences in t are unbounded left, so no
                # nonempty prefix can sit wholly left of one
                if total_count(a) != 0 and not facts(b).well_ordered:
                    return _cert(NO, "R-BLOCK-UNBOUNDED", s, t,
                                 inst={"side": side, "cut": i,
                                       "left": print_term(a),
                                       "right": print_term(b)})
            else:
                if total_count(b) != 0 and not facts(a).rev_well_ordered:
                    return _cert(NO, "R-BLOCK-UNBOUNDED", s, t,
                                 inst={"side": side, "cut": i,
                                       "left": print_term(a),
                                       "right": print_term(b)})
        return None

    def _rule_r_sep_prod(self, s, t, depth):
        if depth <= 0 or not isinstance(s, Prod) or not isinstance(t, Prod):
            return None
        a, b, c, d = s.inner, s.index, t.inner, t.index
        vb = self._embeds(b, d, depth - 1)
        if not vb.is_no:
            return None
        if total_count(a) != 0 or total_count(c) != 0:
            for variant, probe in (
                ("one-left", _sumify([ONE_T, a])),
                ("one-right", _sumify([a, ONE_T])),
            ):
                va = self._embeds(probe, c, depth - 1)
                if va.is_no:
                    return _cert(NO, "R-SEP-PROD", s, t,
                                 inst={"variant": variant},
                                 premises=(va, vb))
        if self.use_choice:
            va = self._embeds(a, c, depth - 1)
            if va.is_no:
                return _cert(NO, "R-SEP-PROD", s, t,
                             inst={"variant": "plain"},
                             premises=(va, vb), axioms=("AC",))
        return None

    def _rule_r_sep_sum(self, s, t, depth):
        if depth <= 1:
            return None
        scuts = term_cuts(s)
        tcuts = term_cuts(t)
        if not scuts or not tcuts:
            return None
        for i, (phi, psi) in enumerate(scuts):
            for j, (tau, rho) in enumerate(tcuts):
                v1 = self._embeds(phi, tau, depth - 1)
                if not v1.is_no:
                    continue
                v2 = self._embeds(psi, rho, depth - 1)
                if v2.is_no:
                    return _cert(NO, "R-SEP-SUM", s, t,
                                 inst={"variant": "plain", "s_cut": i,
                                       "t_cut": j},
                                 premises=(v1, v2))
                v2 = self._embeds(_sumify([ONE_T, psi]), rho, depth - 1)
                if v2.is_no:
                    return _cert(NO, "R-SEP-SUM", s, t,
                                 inst={"variant": "strong", "s_cut": i,
                                       "t_cut": j},
                                 premises=(v1, v2))
        return None

    def _rule_r_rev(self, s, t, depth):
        if depth <= 0:
            return None
        rs, rt = normalize(reverse_term(s)), normalize(reverse_term(t))
        if (rs, rt) == (s, t):
            return None
        v = self._embeds(rs, rt, depth - 1)
        if v.decided:
            return _cert(v.answer, "R-REV", s, t, premises=(v,))
        return None


# ---------------------------------------------------------------------------
# classification

PROFILE_FIELDS = (
    "indecomposable",
    "strictly_indec_left",
    "strictly_indec_right",
    "sum_closed",
    "strongly_indecomposable",
    "untranscendable",
    "s_untranscendable",
    "product_closed",
    "homogeneous",
)


@dataclass(frozen=True)
class TypeProfile:
    indecomposable: Verdict
    strictly_indec_left: Verdict
    strictly_indec_right: Verdict
    sum_closed: Verdict
    strongly_indecomposable: Verdict
    untranscendable: Verdict
    s_untranscendable: Verdict
    product_closed: Verdict
    homogeneous: Verdict

    def answers(self) -> dict:
        return {f: getattr(self, f).answer for f in PROFILE_FIELDS}

    def decided(self) -> dict:
        return {f: v for f, v in self.answers().items() if v != UNKNOWN}


def _sutr_candidates(t: Term):
    out = []
    if isinstance(t, Prod):
        out.append((t.inner, t.index))
    g = _geom_pure_base(t)
    if g is not None:
        rho, star, rev_base = g
        if star and not rev_base:
            out.append((OrdLeaf(rho ** OMEGA), OMEGA_STAR))
        elif not star and rev_base:
            out.append((normalize(rev_ordinal_term(rho ** OMEGA)), OMEGA_T))
    return out


_PC_CANDIDATES = (
    (OMEGA_T, fin(2)),
    (OMEGA_STAR, fin(2)),
    (fin(2), OMEGA_T),
    (fin(2), OMEGA_STAR),
)


class _ProfileBuilder:
    def __init__(self, engine: "Engine", t: Term):
        self.engine = engine
        self.t = t
        self.fields: Dict[str, Verdict] = {f: UNK for f in PROFILE_FIELDS}

    def decided(self, name):
        return self.fields[name].decided

    def set(self, name, verdict: Verdict):
        if verdict is None or not verdict.decided:
            return
        cur = self.fields[name]
        if cur.decided:
            if cur.answer != verdict.answer:
                raise InconsistencyError(
                    f"{name} derived both {cur.answer} and {verdict.answer} "
                    f"for {print_term(self.t)}"
                )
            return
        self.fields[name] = verdict

    def cert(self, answer, rule, inst=None, premises=(), axioms=()):
        return _cert(answer, rule, self.t, self.t, inst, premises, axioms)


class EngineClassifier:
    """classify_type / trichotomy_check / square pipeline, implemented
    as a mixin over the embeddability engine."""

    def classify_type(self, t: Term) -> TypeProfile:
        t = normalize(t)
        b = _ProfileBuilder(self, t)
        a = pure_ordinal(t)
        co = co_ordinal(t)
        if a is not None:
            self._classify_ordinal_term(b, a, swap_sides=False)
        elif co is not None:
            self._classify_ordinal_term(b, co, swap_sides=True)
        else:
            self._classify_general(b)
        prof = TypeProfile(**b.fields)
        self._enforce_profile(t, prof)
        return prof

    # -- ordinal / reversed-ordinal closed forms -------------------------

    def _classify_ordinal_term(self, b, a: Ordinal, swap_sides: bool):
        op = classify_ordinal(a)
        rule = "C-ORD-REV" if swap_sides else "C-ORD"

        def mk(answer, flag):
            return b.cert(answer, rule, inst={"ordinal": str(a), "flag": flag})

        indec = op.additively_indecomposable or a.is_zero()
        b.set("indecomposable", mk(YES if indec else NO, "indecomposable"))
        b.set("sum_closed", mk(YES if indec else NO, "sum_closed"))
        b.set("strongly_indecomposable",
              mk(YES if indec else NO, "strongly_indecomposable"))
        b.set("untranscendable",
              mk(YES if op.untranscendable else NO, "untranscendable"))
        b.set("s_untranscendable",
              mk(YES if op.s_untranscendable else NO, "s_untranscendable"))
        b.set("product_closed",
              mk(YES if op.product_closed else NO, "product_closed"))
        homog = a.is_finite() and a.as_int() <= 2
        b.set("homogeneous", mk(YES if homog else NO, "homogeneous"))
        if a == ONE:
            left = right = YES
        elif a.is_zero():
            left = right = None  # degenerate; leave undecided
        elif a.is_finite() or not indec:
            left = right = NO
        else:
            left, right = NO, YES
        if swap_sides:
            left, right = right, left
        if left is not None:
            b.set("strictly_indec_left", mk(left, "strictly_indec_left"))
            b.set("strictly_indec_right", mk(right, "strictly_indec_right"))

    # -- the general catalogue -------------------------------------------

    def _classify_general(self, b: _ProfileBuilder):
        t = b.t
        ft = facts(t)
        double = self.embeds(_sumify([t, t]), t)
        square = self.embeds(normalize(Prod(t, t)), t)

        if double.is_yes:
            b.set("indecomposable", b.cert(YES, "C-DOUBLE", premises=(double,)))
            b.set("sum_closed", b.cert(YES, "C-DOUBLE", premises=(double,)))
        decomp = self._decomposition_witness(t)
        if decomp is not None:
            l, r, vl, vr = decomp
            inst = {"left": print_term(l), "right": print_term(r)}
            b.set("indecomposable",
                  b.cert(NO, "C-SIDES", inst=inst, premises=(vl, vr)))
            b.set("sum_closed",
                  b.cert(NO, "C-SC-NO", inst=inst, premises=(vl, vr)))
        if square.is_yes:
            b.set("s_untranscendable",
                  b.cert(YES, "C-SQUARE", premises=(square,)))
            b.set("product_closed",
                  b.cert(YES, "C-SQUARE", premises=(square,)))

        self._homogeneity(b, ft)
        if b.fields["homogeneous"].is_yes:
            b.set("s_untranscendable",
                  b.cert(YES, "C-HOMOG",
                         premises=(b.fields["homogeneous"],)))

        if isinstance(t, (GeomOmega, GeomOmegaStar)):
            b.set("untranscendable", b.cert(YES, "C-GEOM"))
        if isinstance(t, Lambda):
            b.set("untranscendable", b.cert(YES, "C-CAT-LAMBDA"))
        if b.fields["s_untranscendable"].is_yes:
            b.set("untranscendable",
                  b.cert(YES, "C-S-UNTR-LIFT",
                         premises=(b.fields["s_untranscendable"],)))
        if (b.fields["indecomposable"].is_no and t != fin(2)
                and total_count(t) != 0):
            b.set("untranscendable",
                  b.cert(NO, "C-2ONLY",
                         premises=(b.fields["indecomposable"],)))

        if not b.decided("s_untranscendable"):
            for psi, tau in _sutr_candidates(t):
                prod = normalize(Prod(psi, tau))
                v0 = self.embeds(t, prod)
                v1 = self.embeds(t, psi)
                v2 = self.embeds(t, tau)
                if v0.is_yes and v1.is_no and v2.is_no:
                    b.set("s_untranscendable",
                          b.cert(NO, "C-SUTR-NO",
                                 inst={"psi": print_term(psi),
                                       "tau": print_term(tau)},
                                 premises=(v0, v1, v2)))
                    break

        if isinstance(t, Lambda):
            if self.use_choice:
                b.set("product_closed",
                      b.cert(NO, "C-LAMBDA-PC", axioms=("AC",)))
        elif not b.decided("product_closed"):
            self._product_closed_witness(b)

        if (b.fields["untranscendable"].is_yes and ft.countable
                and t != fin(2)):
            b.set("strongly_indecomposable",
                  b.cert(YES, "C-SIGMA-SI",
                         premises=(b.fields["untranscendable"],)))
        if not ft.countable and self.use_choice:
            vl = self.embeds(t, LAMBDA)
            if vl.is_yes:
                b.set("strongly_indecomposable",
                      b.cert(NO, "C-SIERPINSKI", premises=(vl,),
                             axioms=("AC",)))
        if b.fields["strongly_indecomposable"].is_yes:
            b.set("indecomposable",
                  b.cert(YES, "C-STRONG-LIFT",
                         premises=(b.fields["strongly_indecomposable"],)))

        self._strict_sides(b, double)

    def _decomposition_witness(self, t):
        for l, r in term_cuts(t):
            vl = self.embeds(t, l)
            if not vl.is_no:
                continue
            vr = self.embeds(t, r)
            if vr.is_no:
                return l, r, vl, vr
        return None

    def _homogeneity(self, b: _ProfileBuilder, ft):
        t = b.t
        catalogue = (fin(0), fin(1), fin(2), ETA, LAMBDA)
        if t in catalogue:
            b.set("homogeneous", b.cert(YES, "C-HOMOG",
                                        inst={"member": print_term(t)}))
            return
        for c in (ETA, LAMBDA):
            eq = self.equimorphic(t, c)
            if eq.is_yes:
                b.set("homogeneous",
                      b.cert(YES, "C-HOMOG",
                             inst={"transfer": print_term(c)},
                             premises=(eq,)))
                return
        if ft.size is not None and ft.size >= 3:
            b.set("homogeneous", b.cert(NO, "C-HOMOG",
                                        inst={"finite": ft.size}))
            return
        if ft.size is None and ft.scattered:
            # an infinite homogeneous type is dense, so nothing
            # equimorphic to a scattered type qualifies
            b.set("homogeneous", b.cert(NO, "C-HOMOG-SCAT"))

    def _product_closed_witness(self, b: _ProfileBuilder):
        t = b.t
        for psi, tau in _PC_CANDIDATES:
            if not (self.embeds(psi, t).is_yes and self.embeds(t, psi).is_no):
                continue
            if not (self.embeds(tau, t).is_yes and self.embeds(t, tau).is_no):
                continue
            prod = normalize(Prod(psi, tau))
            v = self.embeds(prod, t)
            if v.is_no:
                b.set("product_closed",
                      b.cert(NO, "C-PC-NO",
                             inst={"psi": print_term(psi),
                                   "tau": print_term(tau)},
                             premises=(v,)))
                return

    def _strict_sides(self, b: _ProfileBuilder, double: Verdict):
        t = b.t
        for l, r in term_cuts(t):
            if (not b.decided("strictly_indec_right")
                    and total_count(r) != 0):
                v = self.embeds(t, r)
                if v.is_no:
                    b.set("strictly_indec_right",
                          b.cert(NO, "C-SIDE-CUT",
                                 inst={"side": "right",
                                       "part": print_term(r)},
                                 premises=(v,)))
            if (not b.decided("strictly_indec_left")
                    and total_count(l) != 0):
                v = self.embeds(t, l)
                if v.is_no:
                    b.set("strictly_indec_left",
                          b.cert(NO, "C-SIDE-CUT",
                                 inst={"side": "left",
                                       "part": print_term(l)},
                                 premises=(v,)))
        if b.fields["indecomposable"].is_no:
            for side in ("strictly_indec_left", "strictly_indec_right"):
                b.set(side, b.cert(NO, "C-STRICT-NEEDS-INDEC",
                                   premises=(b.fields["indecomposable"],)))
        if b.fields["indecomposable"].is_yes and t != fin(1):
            self._trichotomy_closure(b, double)

    def _trichotomy_closure(self, b: _ProfileBuilder, double: Verdict):
        """For an indecomposable type other than the singleton, exactly
        one of {t+t =< t, strictly left, strictly right} holds; fill in
        whatever two decided alternatives force."""
        alts = {
            "double": double,
            "strictly_indec_left": b.fields["strictly_indec_left"],
            "strictly_indec_right": b.fields["strictly_indec_right"],
        }
        yes = [k for k, v in alts.items() if v.is_yes]
        no = [k for k, v in alts.items() if v.is_no]
        prem = tuple(v for v in alts.values() if v.decided and v.certificate)
        if len(yes) == 1:
            for k, v in alts.items():
                if k not in yes and not v.decided and k != "double":
                    b.set(k, b.cert(NO, "C-TRICH-EXCL",
                                    inst={"holds": yes[0]}, premises=prem))
        elif len(no) == 2:
            (rest,) = [k for k in alts if k not in no]
            if rest != "double" and not alts[rest].decided:
                b.set(rest, b.cert(YES, "C-TRICH-EXCL",
                                   inst={"excluded": no}, premises=prem))

    def _enforce_profile(self, t: Term, p: TypeProfile):
        errs = []
        if p.strongly_indecomposable.is_yes and p.indecomposable.is_no:
            errs.append("strongly indecomposable but decomposable")
        if p.s_untranscendable.is_yes and p.untranscendable.is_no:
            errs.append("s-untranscendable but transcendable")
        if p.product_closed.is_yes and p.untranscendable.is_no:
            errs.append("product closed but transcendable")
        if (p.untranscendable.is_yes and t != fin(2)
                and p.indecomposable.is_no):
            errs.append("untranscendable decomposable type other than 2")
        if p.indecomposable.is_yes and t != fin(1):
            double = self.embeds(_sumify([t, t]), t)
            trio = [double, p.strictly_indec_left, p.strictly_indec_right]
            if sum(1 for v in trio if v.is_yes) > 1:
                errs.append("more than one trichotomy alternative")
        if errs:
            raise InconsistencyError(
                f"profile for {print_term(t)}: " + "; ".join(errs)
            )

    # -- reports ---------------------------------------------------------

    def trichotomy_check(self, t: Term) -> dict:
        t = normalize(t)
        prof = self.classify_type(t)
        double = self.embeds(_sumify([t, t]), t)
        alts = {
            "double": double.answer,
            "strictly_left": prof.strictly_indec_left.answer,
            "strictly_right": prof.strictly_indec_right.answer,
        }
        reported = [k for k, v in alts.items() if v == YES]
        exception = t == fin(1)
        all_decided = all(v != UNKNOWN for v in alts.values())
        violation = (
            prof.indecomposable.answer == YES
            and not exception
            and all_decided
            and len(reported) != 1
        )
        return {
            "term": print_term(t),
            "indecomposable": prof.indecomposable.answer,
            "alternatives": alts,
            "reported": reported,
            "exception_one": exception,
            "all_decided": all_decided,
            "violation": violation,
        }

    def square_report(self, t: Term) -> dict:
        t = normalize(t)
        prof = self.classify_type(t)
        square_term = normalize(Prod(t, t))
        direct = self.embeds(square_term, t)
        h_sutr = prof.s_untranscendable
        h_right = self.embeds(_sumify([t, t]), t)          # t·2 = t + t
        h_left = self.embeds(normalize(Prod(fin(2), t)), t)
        hyps = {
            "s_untranscendable": h_sutr,
            "two_copies_right": h_right,
            "two_copies_left": h_left,
        }
        if h_sutr.is_yes and h_right.is_yes and h_left.is_yes:
            verdict = _cert(
                YES, "GARRETT", square_term, t,
                inst={
                    "homogenization": (
                        "the three hypotheses yield a homogeneous type "
                        "equimorphic to the input, whose square embeds "
                        "into itself and transfers back"
                    )
                },
                premises=(h_sutr, h_right, h_left),
            )
        elif direct.decided:
            verdict = direct
        else:
            verdict = UNK
        return {
            "term": print_term(t),
            "verdict": verdict,
            "hypotheses": hyps,
            "failed": [k for k, v in hyps.items() if v.is_no],
            "undecided": [k for k, v in hyps.items() if not v.decided],
            "direct": direct,
        }

    def square_pipeline(self, t: Term) -> Verdict:
        return self.square_report(t)["verdict"]


class Engine(EngineClassifier, _EngineCore):
    pass


# ---------------------------------------------------------------------------
# certificate replay
#
# Every validator recomputes its rule's side conditions from the terms
# printed in the certificate, checks that the recorded premises are the
# ones the rule requires, and recurses.  A tampered certificate fails.


class CertificateError(ValueError):
    pass


def _p(text: str) -> Term:
    return parse_normalized(text)


def _prem_triples(node):
    return [
        (_p(q["s"]), _p(q["t"]), q["answer"]) for q in node["premises"]
    ]


def _expect(cond, why):
    if not cond:
        raise CertificateError(why)


def _v_eq(node, s, t):
    prem = _prem_triples(node)
    if node["answer"] == YES:
        _expect(prem == [(s, t, YES), (t, s, YES)], "EQ premises")
    else:
        _expect(prem in ([(s, t, NO)], [(t, s, NO)]), "EQ premises")


def _v_r_empty(node, s, t):
    if node["answer"] == YES:
        _expect(total_count(s) == 0, "source not empty")
    else:
        _expect(total_count(t) == 0 and total_count(s) > 0, "target not empty")


def _v_r_refl(node, s, t):
    _expect(node["answer"] == YES and s == t, "not reflexive")


def _v_r_ord(node, s, t):
    a, b = pure_ordinal(s), pure_ordinal(t)
    _expect(a is not None and b is not None, "not ordinals")
    _expect(node["answer"] == (YES if a <= b else NO), "wrong comparison")


def _v_r_co_ord(node, s, t):
    a, b = co_ordinal(s), co_ordinal(t)
    _expect(a is not None and b is not None, "not reversed ordinals")
    _expect(node["answer"] == (YES if a <= b else NO), "wrong comparison")


def _v_r_fin(node, s, t):
    fs = facts(s)
    _expect(fs.size is not None, "source not finite")
    nt = total_count(t)
    want = YES if nt >= fs.size else NO
    _expect(node["answer"] == want, "wrong size comparison")


def _v_r_card(node, s, t):
    _expect(node["answer"] == NO, "answer")
    _expect(not facts(s).countable and facts(t).countable, "cardinality")


def _v_r_scat(node, s, t):
    _expect(node["answer"] == NO, "answer")
    _expect(not facts(s).scattered and facts(t).scattered, "scatteredness")


def _v_r_struct(node, s, t):
    _expect(node["answer"] == NO, "answer")
    fact = node["instantiation"].get("fact")
    _expect(fact in _HEREDITARY_FACTS, "unknown fact")
    _expect(
        getattr(facts(t), fact) and not getattr(facts(s), fact),
        "fact does not separate",
    )


def _v_r_eta_univ(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(t, (Eta, Lambda)), "target not dense leaf")
    _expect(facts(s).countable, "source uncountable")
    _expect("classical" in node["axioms"], "missing classical tag")


def _v_r_dense_abs(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(t, (Eta, Lambda)) and isinstance(s, Sum), "shape")
    _expect(
        _prem_triples(node) == [(p, t, YES) for p in s.parts], "premises"
    )


def _v_r_lambda_sep(node, s, t):
    _expect(node["answer"] == NO, "answer")
    _expect(isinstance(t, Lambda) and isinstance(s, Prod), "shape")
    _expect(total_count(s.inner) >= 2, "inner too small")
    _expect(not facts(s.index).countable, "index countable")


def _v_r_absorb(node, s, t):
    _expect(node["answer"] == YES, "answer")
    piece = _p(node["instantiation"]["piece"])
    _expect(piece in term_pieces(t), "piece not convex in target")
    _expect(_prem_triples(node) == [(s, piece, YES)], "premises")


def _v_r_sum_dp(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(s, Sum) and isinstance(t, Sum), "shape")
    segs = node["instantiation"]["segments"]
    prem = _prem_triples(node)
    _expect(len(segs) == len(prem), "segment count")
    pos = 0
    last_j = -1
    for (i, a, jj), (ps, pt, ans) in zip(segs, prem):
        _expect(i == pos and a >= 1 and jj > last_j, "segment order")
        _expect(jj < len(t.parts), "segment target")
        _expect(ps == _sumify(s.parts[i : i + a]), "segment source")
        _expect(pt == t.parts[jj] and ans == YES, "segment premise")
        pos = i + a
        last_j = jj
    _expect(pos == len(s.parts), "segments incomplete")


def _v_r_prod_mono(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(s, Prod) and isinstance(t, Prod), "shape")
    _expect(
        _prem_triples(node)
        == [(s.inner, t.inner, YES), (s.index, t.index, YES)],
        "premises",
    )


def _v_r_prod_sumfold(node, s, t):
    _expect(node["answer"] == YES, "answer")
    sc = (s.inner, s.index) if isinstance(s, Prod) else Engine._sum_of_prods_fold(s)
    tc = (t.inner, t.index) if isinstance(t, Prod) else Engine._sum_of_prods_fold(t)
    _expect(sc is not None and tc is not None, "no product form")
    _expect(isinstance(s, Sum) or isinstance(t, Sum), "nothing folded")
    _expect(
        _prem_triples(node) == [(sc[0], tc[0], YES), (sc[1], tc[1], YES)],
        "premises",
    )


def _v_r_psi_tau(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(s, Sum) and isinstance(t, Prod), "shape")
    i = node["instantiation"]["split"]
    _expect(0 < i < len(s.parts), "split")
    head = _sumify(s.parts[:i])
    rest = _sumify([ONE_T] + list(s.parts[i:]))
    _expect(
        _prem_triples(node) == [(head, t.inner, YES), (rest, t.index, YES)],
        "premises",
    )


def _v_r_geom_reindex(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(
        type(s) is type(t) and isinstance(s, (GeomOmega, GeomOmegaStar)),
        "shape",
    )
    _expect(_prem_triples(node) == [(s.base, t.base, YES)], "premises")


def _v_r_geom_prod(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(t, Prod), "shape")
    g = _geom_pure_base(s)
    _expect(g is not None, "base not ordinal-like")
    rho, star, rev_base = g
    gamma = co_ordinal(t.inner) if rev_base else pure_ordinal(t.inner)
    _expect(gamma is not None and rho ** OMEGA <= gamma, "block bound")
    marker = OMEGA_STAR if star else OMEGA_T
    _expect(_prem_triples(node) == [(marker, t.index, YES)], "premises")


def _v_r_geom(node, s, t):
    _expect(node["answer"] == YES, "answer")
    direction = node["instantiation"]["direction"]
    if direction == "omega":
        _expect(isinstance(s, GeomOmega), "shape")
        cond = _sumify([ONE_T, normalize(Prod(s.base, t))])
        _expect(_prem_triples(node) == [(cond, t, YES)], "premises")
    else:
        _expect(isinstance(s, GeomOmegaStar), "shape")
        rt = normalize(reverse_term(t))
        rb = normalize(reverse_term(s.base))
        cond = _sumify([ONE_T, normalize(Prod(rb, rt))])
        _expect(_prem_triples(node) == [(cond, rt, YES)], "premises")


def _v_r_revsum_omega(node, s, t):
    _expect(node["answer"] == YES, "answer")
    alpha = pure_ordinal(s)
    _expect(alpha is not None and not alpha.is_finite(), "source shape")
    _expect(isinstance(t, Prod), "target shape")
    c = t.inner
    ok = isinstance(c, SeqSumStar) and alpha <= c.limit
    if not ok:
        g = _geom_pure_base(c)
        ok = g is not None and g[1] and not g[2] and alpha <= g[0] ** OMEGA
    _expect(ok, "inner factor lacks cofinal blocks")
    _expect(_prem_triples(node) == [(OMEGA_T, t.index, YES)], "premises")


def _v_r_wo_revsum(node, s, t):
    _expect(node["answer"] == NO, "answer")
    alpha = pure_ordinal(s)
    _expect(
        alpha is not None
        and not alpha.is_finite()
        and alpha.is_additively_indecomposable(),
        "source shape",
    )
    if isinstance(t, SeqSumStar):
        _expect(t.limit <= alpha, "limit too large")
    else:
        g = _geom_pure_base(t)
        _expect(
            g is not None and g[1] and not g[2] and g[0] ** OMEGA <= alpha,
            "target shape",
        )


def _v_r_block_unbounded(node, s, t):
    _expect(node["answer"] == NO, "answer")
    side = _block_sum_structure(t)
    _expect(side == node["instantiation"]["side"], "target shape")
    i = node["instantiation"]["cut"]
    cuts = term_cuts(s)
    _expect(0 <= i < len(cuts), "cut index")
    a, b = cuts[i]
    _expect(
        print_term(a) == node["instantiation"]["left"]
        and print_term(b) == node["instantiation"]["right"],
        "cut mismatch",
    )
    if side == "left":
        _expect(
            total_count(a) != 0 and not facts(b).well_ordered,
            "cut does not obstruct",
        )
    else:
        _expect(
            total_count(b) != 0 and not facts(a).rev_well_ordered,
            "cut does not obstruct",
        )


def _v_r_sep_prod(node, s, t):
    _expect(node["answer"] == NO, "answer")
    _expect(isinstance(s, Prod) and isinstance(t, Prod), "shape")
    a, b, c, d = s.inner, s.index, t.inner, t.index
    prem = _prem_triples(node)
    variant = node["instantiation"]["variant"]
    if variant == "plain":
        _expect("AC" in node["axioms"], "missing AC tag")
        _expect(prem == [(a, c, NO), (b, d, NO)], "premises")
    else:
        probe = _sumify([ONE_T, a]) if variant == "one-left" else _sumify([a, ONE_T])
        _expect(total_count(a) != 0 or total_count(c) != 0, "degenerate")
        _expect(prem == [(probe, c, NO), (b, d, NO)], "premises")


def _v_r_sep_sum(node, s, t):
    _expect(node["answer"] == NO, "answer")
    inst = node["instantiation"]
    scuts, tcuts = term_cuts(s), term_cuts(t)
    _expect(0 <= inst["s_cut"] < len(scuts), "cut index")
    _expect(0 <= inst["t_cut"] < len(tcuts), "cut index")
    phi, psi = scuts[inst["s_cut"]]
    tau, rho = tcuts[inst["t_cut"]]
    prem = _prem_triples(node)
    if inst["variant"] == "plain":
        _expect(prem == [(phi, tau, NO), (psi, rho, NO)], "premises")
    else:
        _expect(
            prem == [(phi, tau, NO), (_sumify([ONE_T, psi]), rho, NO)],
            "premises",
        )


def _v_r_rev(node, s, t):
    rs, rt = normalize(reverse_term(s)), normalize(reverse_term(t))
    _expect(
        _prem_triples(node) == [(rs, rt, node["answer"])], "premises"
    )


def _v_garrett(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(s == normalize(Prod(t, t)), "source is not the square")
    prem = _prem_triples(node)
    _expect(len(prem) == 3, "premise count")
    p_sutr, p_right, p_left = node["premises"]
    _expect(
        p_sutr["answer"] == YES and p_sutr["rule"].startswith("C-"),
        "first premise must certify s-untranscendability",
    )
    _expect(prem[1] == (_sumify([t, t]), t, YES), "two-copies-right premise")
    _expect(
        prem[2] == (normalize(Prod(fin(2), t)), t, YES),
        "two-copies-left premise",
    )


def _ordinal_flag_answer(a: Ordinal, flag: str, swap: bool) -> Optional[str]:
    op = classify_ordinal(a)
    indec = op.additively_indecomposable or a.is_zero()
    table = {
        "indecomposable": indec,
        "sum_closed": indec,
        "strongly_indecomposable": indec,
        "untranscendable": op.untranscendable,
        "s_untranscendable": op.s_untranscendable,
        "product_closed": op.product_closed,
        "homogeneous": a.is_finite() and a.as_int() <= 2,
    }
    if flag in table:
        return YES if table[flag] else NO
    if a == ONE:
        left = right = True
    elif a.is_zero():
        return None
    elif a.is_finite() or not indec:
        left = right = False
    else:
        left, right = False, True
    if swap:
        left, right = right, left
    if flag == "strictly_indec_left":
        return YES if left else NO
    if flag == "strictly_indec_right":
        return YES if right else NO
    return None


def _v_c_ord(node, s, t, swap=False):
    inst = node["instantiation"]
    val = pure_ordinal(t) if not swap else co_ordinal(t)
    _expect(val is not None and str(val) == inst["ordinal"], "ordinal value")
    want = _ordinal_flag_answer(val, inst["flag"], swap)
    _expect(want == node["answer"], "flag answer")


def _v_c_double(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(_prem_triples(node) == [(_sumify([t, t]), t, YES)], "premises")


def _v_c_sides(node, s, t):
    _expect(node["answer"] == NO, "answer")
    l = _p(node["instantiation"]["left"])
    r = _p(node["instantiation"]["right"])
    _expect((l, r) in term_cuts(t), "not a cut")
    _expect(_prem_triples(node) == [(t, l, NO), (t, r, NO)], "premises")


def _v_c_square(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(
        _prem_triples(node) == [(normalize(Prod(t, t)), t, YES)], "premises"
    )


def _v_c_homog(node, s, t):
    inst = node["instantiation"]
    catalogue = (fin(0), fin(1), fin(2), ETA, LAMBDA)
    if node["answer"] == YES:
        if "member" in inst:
            _expect(t in catalogue, "not catalogued")
        elif "transfer" not in inst:
            # lift: s-untranscendability follows from an established
            # homogeneity verdict on the same subject
            p = node["premises"]
            _expect(len(p) == 1 and p[0]["answer"] == YES, "premise")
            _expect(_p(p[0]["s"]) == t and _p(p[0]["t"]) == t, "subject")
        else:
            c = _p(inst["transfer"])
            _expect(c in catalogue, "transfer target not catalogued")
            _expect(_prem_triples(node) == [(t, c, YES)], "premises")
            _expect(node["premises"][0]["rule"] == "EQ", "needs equimorphism")
    else:
        f = facts(t)
        _expect(f.size is not None and f.size >= 3, "finite bound")


def _v_c_homog_scat(node, s, t):
    _expect(node["answer"] == NO, "answer")
    f = facts(t)
    _expect(f.size is None and f.scattered, "not infinite scattered")


def _v_c_lift_yes(node, s, t):
    _expect(node["answer"] == YES, "answer")
    p = node["premises"]
    _expect(len(p) == 1 and p[0]["answer"] == YES, "premise")
    _expect(_p(p[0]["s"]) == t and _p(p[0]["t"]) == t, "premise subject")


def _v_c_2only(node, s, t):
    _expect(node["answer"] == NO, "answer")
    _expect(t != fin(2) and total_count(t) != 0, "side conditions")
    p = node["premises"]
    _expect(len(p) == 1 and p[0]["answer"] == NO, "needs decomposability")
    _expect(_p(p[0]["s"]) == t and _p(p[0]["t"]) == t, "premise subject")


def _v_c_sutr_no(node, s, t):
    _expect(node["answer"] == NO, "answer")
    psi = _p(node["instantiation"]["psi"])
    tau = _p(node["instantiation"]["tau"])
    prod = normalize(Prod(psi, tau))
    _expect(
        _prem_triples(node) == [(t, prod, YES), (t, psi, NO), (t, tau, NO)],
        "premises",
    )


def _v_c_cat_lambda(node, s, t):
    _expect(node["answer"] == YES and isinstance(t, Lambda), "shape")


def _v_c_lambda_pc(node, s, t):
    _expect(node["answer"] == NO and isinstance(t, Lambda), "shape")
    _expect("AC" in node["axioms"], "missing AC tag")


def _v_c_sigma_si(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(facts(t).countable and t != fin(2), "side conditions")
    p = node["premises"]
    _expect(len(p) == 1 and p[0]["answer"] == YES, "needs untranscendability")


def _v_c_sierpinski(node, s, t):
    _expect(node["answer"] == NO, "answer")
    _expect(not facts(t).countable, "countable")
    _expect("AC" in node["axioms"], "missing AC tag")
    _expect(_prem_triples(node) == [(t, LAMBDA, YES)], "premises")


def _v_c_pc_no(node, s, t):
    _expect(node["answer"] == NO, "answer")
    psi = _p(node["instantiation"]["psi"])
    tau = _p(node["instantiation"]["tau"])
    prod = normalize(Prod(psi, tau))
    _expect(_prem_triples(node) == [(prod, t, NO)], "premises")


def _v_c_sc_no(node, s, t):
    _v_c_sides(node, s, t)


def _v_c_side_cut(node, s, t):
    _expect(node["answer"] == NO, "answer")
    part = _p(node["instantiation"]["part"])
    side = node["instantiation"]["side"]
    cuts = term_cuts(t)
    ok = any(
        (side == "left" and l == part) or (side == "right" and r == part)
        for l, r in cuts
    )
    _expect(ok, "part is not a cut side")
    _expect(_prem_triples(node) == [(t, part, NO)], "premises")


def _v_c_strict_needs_indec(node, s, t):
    _expect(node["answer"] == NO, "answer")
    p = node["premises"]
    _expect(len(p) == 1 and p[0]["answer"] == NO, "needs decomposability")


def _v_c_trich_excl(node, s, t):
    # exactly-one theorem: with two alternatives refuted the third
    # holds, and with one established the others fail
    answers = [q["answer"] for q in node["premises"]]
    if node["answer"] == YES:
        _expect(answers.count(NO) >= 2, "needs two refuted alternatives")
    else:
        _expect(YES in answers, "needs an established alternative")


def _v_c_geom(node, s, t):
    _expect(node["answer"] == YES, "answer")
    _expect(isinstance(t, (GeomOmega, GeomOmegaStar)), "shape")


VALIDATORS = {
    "EQ": _v_eq,
    "R-EMPTY": _v_r_empty,
    "R-REFL": _v_r_refl,
    "R-ORD": _v_r_ord,
    "R-CO-ORD": _v_r_co_ord,
    "R-FIN": _v_r_fin,
    "R-CARD": _v_r_card,
    "R-SCAT": _v_r_scat,
    "R-STRUCT": _v_r_struct,
    "R-ETA-UNIV": _v_r_eta_univ,
    "R-DENSE-ABS": _v_r_dense_abs,
    "R-LAMBDA-SEP": _v_r_lambda_sep,
    "R-ABSORB": _v_r_absorb,
    "R-SUM-DP": _v_r_sum_dp,
    "R-PROD-MONO": _v_r_prod_mono,
    "R-PROD-SUMFOLD": _v_r_prod_sumfold,
    "R-PSI-TAU": _v_r_psi_tau,
    "R-GEOM-REINDEX": _v_r_geom_reindex,
    "R-GEOM-PROD": _v_r_geom_prod,
    "R-GEOM": _v_r_geom,
    "R-REVSUM-OMEGA": _v_r_revsum_omega,
    "R-WO-REVSUM": _v_r_wo_revsum,
    "R-BLOCK-UNBOUNDED": _v_r_block_unbounded,
    "R-SEP-PROD": _v_r_sep_prod,
    "R-SEP-SUM": _v_r_sep_sum,
    "R-REV": _v_r_rev,
    "GARRETT": _v_garrett,
    "C-ORD": lambda n, s, t: _v_c_ord(n, s, t, swap=False),
    "C-ORD-REV": lambda n, s, t: _v_c_ord(n, s, t, swap=True),
    "C-DOUBLE": _v_c_double,
    "C-SIDES": _v_c_sides,
    "C-SC-NO": _v_c_sc_no,
    "C-SQUARE": _v_c_square,
    "C-HOMOG": _v_c_homog,
    "C-HOMOG-SCAT": _v_c_homog_scat,
    "C-S-UNTR-LIFT": _v_c_lift_yes,
    "C-STRONG-LIFT": _v_c_lift_yes,
    "C-2ONLY": _v_c_2only,
    "C-SUTR-NO": _v_c_sutr_no,
    "C-GEOM": _v_c_geom,
    "C-CAT-LAMBDA": _v_c_cat_lambda,
    "C-LAMBDA-PC": _v_c_lambda_pc,
    "C-SIGMA-SI": _v_c_sigma_si,
    "C-SIERPINSKI": _v_c_sierpinski,
    "C-PC-NO": _v_c_pc_no,
    "C-SIDE-CUT": _v_c_side_cut,
    "C-STRICT-NEEDS-INDEC": _v_c_strict_needs_indec,
    "C-TRICH-EXCL": _v_c_trich_excl,
}


def replay_certificate(node: dict, _depth: int = 0) -> bool:
    """Revalidate a certificate tree; True when every node checks out."""
    try:
        _replay(node)
        return True
    except (CertificateError, KeyError, ValueError, TypeError):
        return False


def _replay(node: dict):
    _expect(isinstance(node, dict), "not a certificate node")
    rule = node.get("rule")
    _expect(rule in VALIDATORS, f"unknown rule {rule!r}")
    _expect(node.get("answer") in (YES, NO), "answer must be decided")
    s, t = _p(node["s"]), _p(node["t"])
    VALIDATORS[rule](node, s, t)
    for q in node["premises"]:
        _replay(q)
