import pytest

from ordtypes.condense import (
    CondensationAborted,
    e_y_condense,
    finite_condensation,
    self_similar_condense,
)
from ordtypes.finite import FiniteOrder
from ordtypes.terms import parse_normalized, print_term

T = parse_normalized


# ---------------------------------------------------------------------------
# finite-interval condensation


def test_finite_condensation_finite_carrier():
    r = finite_condensation(FiniteOrder(4))
    assert len(r.classes) == 1
    assert r.classes[0].tag == ("fin", 4)
    assert r.quotient == FiniteOrder(1)
    assert finite_condensation(FiniteOrder(0)).classes == ()


def test_finite_condensation_frozen_tags():
    r = finite_condensation(T("w + 1"))
    assert [c.tag for c in r.classes] == [("omega",), ("fin", 1)]
    r = finite_condensation(T("z*3"))
    assert [c.tag for c in r.classes] == [("zeta",)] * 3
    r = finite_condensation(T("w~ + w"))
    assert [c.tag for c in r.classes] == [("zeta",)]
    r = finite_condensation(T("geomrev(w)"))
    assert r.classes[-1].tag == ("fin", 1)
    assert all(c.tag == ("omega",) for c in r.classes[:-1])
    r = finite_condensation(T("q"))
    assert all(c.tag == ("fin", 1) for c in r.classes)


def test_finite_condensation_respects_window():
    t = T("w")
    from ordtypes.ordinals import Ordinal

    win = [Ordinal.from_int(i) for i in (0, 1, 5, 6)]
    r = finite_condensation(t, window=win)
    assert len(r.classes) == 1  # all within finite distance
    assert r.sampled


# ---------------------------------------------------------------------------
# E_Y condensation


def test_e_y_basic():
    r = e_y_condense(FiniteOrder(5), [1, 2, 4])
    assert [c.points for c in r.classes] == [(0,), (1, 2), (3,), (4,)]
    assert r.quotient == FiniteOrder(4)


def test_e_y_embedding_verified_exhaustively():
    for n in range(1, 6):
        for mask in range(1, 2**n):
            ys = [i for i in range(n) if mask >> i & 1]
            r = e_y_condense(FiniteOrder(n), ys)
            ys_sorted = sorted(ys)
            keys = [
                (c, ys_sorted.index(a))
                for a, c in (r.witness_map[i] for i in range(n))
            ]
            assert keys == sorted(keys) and len(set(keys)) == n


def test_e_y_dichotomy_small():
    for n in (1, 2):
        for mask in range(1, 2**n):
            ys = [i for i in range(n) if mask >> i & 1]
            r = e_y_condense(FiniteOrder(n), ys)
            assert r.dichotomy is not None
            assert r.dichotomy["holds"], (n, ys)
            assert r.dichotomy["arm"] in ("Y", "quotient")
    # a 3-chain with one distinguished point embeds in the quotient but
    # the helper only certifies the arms for |x| <= 2
    assert e_y_condense(FiniteOrder(3), [1]).dichotomy is None


def test_e_y_rejects_bad_subsets():
    with pytest.raises(ValueError):
        e_y_condense(FiniteOrder(3), [5])
    with pytest.raises(ValueError):
        e_y_condense(FiniteOrder(3), [])
    r = e_y_condense(FiniteOrder(3), [], empty_is_identity=True)
    assert r.trivial_branch and len(r.classes) == 3


# ---------------------------------------------------------------------------
# self-similar condensation


def test_self_similar_dense_carrier_all_singletons():
    r = self_similar_condense(T("q"), lambda p, q: "YES")
    assert print_term(r.quotient) == "q"
    assert all(len(c.points) == 1 for c in r.classes)
    assert not r.degenerate
    assert r.obligations  # homogeneity claims are reported, not checked


def test_self_similar_finite_degenerate():
    r = self_similar_condense(FiniteOrder(4), lambda p, q: "NO")
    assert len(r.classes) == 1 and r.degenerate
    assert r.quotient == FiniteOrder(1)


def test_self_similar_product_quotient_by_index():
    t = T("w*q")

    def oracle(p, q):
        # the carrier embeds into [p, q] exactly when the interval
        # spans more than one eta-index
        return "YES" if p[0] != q[0] else "NO"

    r = self_similar_condense(t, oracle)
    assert print_term(r.quotient) == "q"


def test_self_similar_unknown_aborts():
    with pytest.raises(CondensationAborted):
        self_similar_condense(T("q"), lambda p, q: "UNKNOWN")
