import itertools
import json
import random

import pytest

from ordtypes.engine import (
    DEFAULT_RULE_ORDER,
    Engine,
    PROFILE_FIELDS,
    replay_certificate,
)
from ordtypes.terms import (
    Sum,
    normalize,
    parse_normalized,
    print_term,
    reverse_term,
)

from helpers import REGRESSION_CORPUS, T

YES, NO, UNKNOWN = "YES", "NO", "UNKNOWN"


# frozen verdicts (answer, rule) for characteristic pairs
FROZEN_EMBEDS = {
    ("w", "z"): (YES, "R-ABSORB"),
    ("z", "w"): (NO, "R-STRUCT"),
    ("w~", "z"): (YES, "R-ABSORB"),
    ("q", "r"): (YES, "R-ETA-UNIV"),
    ("r", "q"): (NO, "R-CARD"),
    ("w^(2)", "w"): (NO, "R-ORD"),
    ("w", "w^(2)"): (YES, "R-ORD"),
    ("geom(w)", "q"): (YES, "R-ETA-UNIV"),
    ("z", "q"): (YES, "R-ETA-UNIV"),
    ("w*q", "q"): (YES, "R-ETA-UNIV"),
    ("q", "w*q"): (YES, "R-ABSORB"),
    ("geomrev(w)", "geomrev(w, 1)"): (YES, "R-ABSORB"),
    ("geomrev(w, 1)", "geomrev(w)"): (YES, "R-ABSORB"),
    ("w~", "w"): (NO, "R-STRUCT"),
    ("w", "w~"): (NO, "R-STRUCT"),
    ("1+q", "q"): (YES, "R-ETA-UNIV"),
    ("w*2", "w"): (NO, "R-ORD"),
    ("r*r", "r"): (NO, "R-LAMBDA-SEP"),
    ("q*q", "q"): (YES, "R-ETA-UNIV"),
    ("z*z", "z"): (NO, "R-STRUCT"),
    ("w^(3)", "w^(w)"): (YES, "R-ORD"),
}


def test_frozen_embeds(eng):
    for (s, t), (answer, rule) in FROZEN_EMBEDS.items():
        v = eng.embeds(T(s), T(t))
        assert v.answer == answer, (s, t)
        assert v.certificate["rule"] == rule, (s, t)


def test_embeds_reflexive(eng):
    for s in REGRESSION_CORPUS:
        assert eng.embeds(T(s), T(s)).is_yes, s


def test_embeds_no_decided_contradiction_with_transitivity(eng):
    # s <= t <= u and s <= u decided must not clash
    terms = [T(s) for s in REGRESSION_CORPUS]
    for a, b, c in itertools.product(terms[:14], repeat=3):
        ab, bc, ac = eng.embeds(a, b), eng.embeds(b, c), eng.embeds(a, c)
        if ab.is_yes and bc.is_yes:
            assert not ac.is_no, (
                print_term(a), print_term(b), print_term(c)
            )


def test_equimorphic_frozen(eng):
    assert eng.equimorphic(T("q"), T("1+q")).is_yes
    assert eng.equimorphic(T("q"), T("z*q")).is_yes
    assert eng.equimorphic(T("geomrev(w)"), T("geomrev(w, 1)")).is_yes
    assert eng.equimorphic(T("w"), T("w~")).is_no
    assert eng.equimorphic(T("w"), T("w^(2)")).is_no


# ---------------------------------------------------------------------------
# classification


def test_classify_frozen(eng):
    expect = {
        "w": dict(indecomposable=YES, untranscendable=YES,
                  s_untranscendable=YES, homogeneous=NO,
                  strictly_indec_left=NO, strictly_indec_right=YES),
        "q": dict(indecomposable=YES, untranscendable=YES,
                  s_untranscendable=YES, homogeneous=YES,
                  strictly_indec_left=NO, strictly_indec_right=NO),
        "r": dict(strongly_indecomposable=NO, untranscendable=YES,
                  s_untranscendable=YES, product_closed=NO,
                  homogeneous=YES),
        "2": dict(indecomposable=NO, untranscendable=YES,
                  s_untranscendable=YES, product_closed=YES),
        "w^(w)": dict(untranscendable=YES, s_untranscendable=NO,
                      strictly_indec_right=YES),
        "geomrev(w)": dict(indecomposable=YES, untranscendable=YES,
                           s_untranscendable=NO, product_closed=NO,
                           strictly_indec_left=YES,
                           strictly_indec_right=NO),
        "w~": dict(indecomposable=YES, strictly_indec_left=YES,
                   strictly_indec_right=NO),
    }
    for text, fields in expect.items():
        prof = eng.classify_type(T(text))
        for name, answer in fields.items():
            assert getattr(prof, name).answer == answer, (text, name)


def test_classify_profile_internal_consistency(eng):
    for text in REGRESSION_CORPUS:
        p = eng.classify_type(T(text))
        if p.s_untranscendable.is_yes:
            assert not p.untranscendable.is_no, text
        if p.strongly_indecomposable.is_yes:
            assert not p.indecomposable.is_no, text
        if p.sum_closed.is_yes:
            assert not p.indecomposable.is_no, text


def test_classification_is_equimorphism_invariant(eng):
    equis = [("q", "1+q"), ("q", "z*q"), ("q", "w*q"),
             ("geomrev(w)", "geomrev(w, 1)")]
    for a, b in equis:
        pa, pb = eng.classify_type(T(a)), eng.classify_type(T(b))
        for name in PROFILE_FIELDS:
            va, vb = getattr(pa, name), getattr(pb, name)
            if va.decided and vb.decided:
                assert va.answer == vb.answer, (a, b, name)


# ---------------------------------------------------------------------------
# trichotomy and square


def test_trichotomy_no_violations(eng):
    for text in REGRESSION_CORPUS:
        r = eng.trichotomy_check(T(text))
        assert not r["violation"], text


def test_trichotomy_frozen(eng):
    assert eng.trichotomy_check(T("w"))["reported"] == ["strictly_right"]
    assert eng.trichotomy_check(T("w~"))["reported"] == ["strictly_left"]
    assert eng.trichotomy_check(T("q"))["reported"] == ["double"]
    one = eng.trichotomy_check(T("1"))
    assert one["exception_one"] and len(one["reported"]) == 2


def test_square_report_frozen(eng):
    rep = eng.square_report(T("q"))
    assert rep["verdict"].answer == YES
    assert rep["verdict"].certificate["rule"] == "GARRETT"
    assert rep["failed"] == [] and rep["undecided"] == []

    rep = eng.square_report(T("r"))
    assert rep["verdict"].answer == NO
    assert rep["failed"] == ["two_copies_left"]
    assert rep["direct"].certificate["rule"] == "R-LAMBDA-SEP"

    rep = eng.square_report(T("w"))
    assert rep["verdict"].answer == NO
    assert rep["failed"] == ["two_copies_right"]

    rep = eng.square_report(T("w*r"))
    assert rep["failed"] == ["s_untranscendable"]
    assert rep["verdict"].answer in (NO, UNKNOWN)


# ---------------------------------------------------------------------------
# certificate replay


def _decided_verdicts(eng):
    out = []
    for s in REGRESSION_CORPUS:
        for t in REGRESSION_CORPUS:
            v = eng.embeds(T(s), T(t))
            if v.decided:
                out.append(v)
    for s in REGRESSION_CORPUS:
        p = eng.classify_type(T(s))
        for name in PROFILE_FIELDS:
            v = getattr(p, name)
            if v.decided:
                out.append(v)
    return out


def test_all_certificates_replay(eng):
    vs = _decided_verdicts(eng)
    assert len(vs) > 300
    for v in vs:
        assert v.certificate is not None
        assert replay_certificate(v.certificate), json.dumps(
            v.certificate, default=str
        )[:400]


def _corruptions(node):
    flip = dict(node)
    flip["answer"] = NO if node["answer"] == YES else YES
    yield flip
    swap = dict(node)
    swap["s"], swap["t"] = node["t"], node["s"]
    if node["s"] != node["t"]:
        yield swap
    if node["premises"]:
        deep = json.loads(json.dumps(node))
        prem = deep["premises"][0]
        prem["answer"] = NO if prem["answer"] == YES else YES
        yield deep


def test_corrupted_certificates_rejected(eng):
    checked = 0
    for v in _decided_verdicts(eng):
        for bad in _corruptions(v.certificate):
            if replay_certificate(bad):
                raise AssertionError(
                    "accepted corrupted certificate: "
                    + json.dumps(bad, default=str)[:400]
                )
            checked += 1
    assert checked > 300


def test_replay_rejects_garbage():
    assert not replay_certificate({})
    assert not replay_certificate({"rule": "NO-SUCH-RULE", "answer": YES})
    assert not replay_certificate(None)


# ---------------------------------------------------------------------------
# hygiene: reversal, equimorphism invariance, rule order


def test_reversal_conjugation(eng):
    # s embeds in t exactly when their reverses embed
    for s in REGRESSION_CORPUS:
        for t in REGRESSION_CORPUS:
            v = eng.embeds(T(s), T(t))
            w = eng.embeds(reverse_term(T(s)), reverse_term(T(t)))
            if v.decided and w.decided:
                assert v.answer == w.answer, (s, t)


def test_equimorphism_invariance_of_embeds(eng):
    equis = [("q", "1+q"), ("q", "z*q"), ("geomrev(w)", "geomrev(w, 1)")]
    for a, b in equis:
        assert eng.equimorphic(T(a), T(b)).is_yes
        for probe in REGRESSION_CORPUS:
            p = T(probe)
            va, vb = eng.embeds(p, T(a)), eng.embeds(p, T(b))
            if va.decided and vb.decided:
                assert va.answer == vb.answer, (probe, a, b)
            ua, ub = eng.embeds(T(a), p), eng.embeds(T(b), p)
            if ua.decided and ub.decided:
                assert ua.answer == ub.answer, (a, b, probe)


def test_rule_order_permutation_never_flips(eng):
    rng = random.Random(23)
    base = {}
    for s in REGRESSION_CORPUS:
        for t in REGRESSION_CORPUS:
            base[(s, t)] = eng.embeds(T(s), T(t)).answer
    for _ in range(3):
        order = list(DEFAULT_RULE_ORDER)
        rng.shuffle(order)
        other = Engine(rule_order=order)
        for (s, t), expect in base.items():
            got = other.embeds(T(s), T(t)).answer
            if expect != UNKNOWN and got != UNKNOWN:
                assert got == expect, (s, t, order[:5])


def test_unknown_rule_rejected():
    with pytest.raises(ValueError):
        Engine(rule_order=("R-BOGUS",))


def test_no_choice_engine_stays_sound(eng):
    restricted = Engine(use_choice=False)
    for s in REGRESSION_CORPUS[:12]:
        for t in REGRESSION_CORPUS[:12]:
            v, w = eng.embeds(T(s), T(t)), restricted.embeds(T(s), T(t))
            if v.decided and w.decided:
                assert v.answer == w.answer, (s, t)


def test_choice_axiom_tagged(eng):
    # the separability refutation itself is choice-free ...
    v = eng.embeds(T("r*r"), T("r"))
    assert v.is_no and v.certificate["axioms"] == []
    # ... but the product-closure refutation for the continuum is not
    prof = eng.classify_type(T("r"))
    assert prof.product_closed.is_no
    assert "AC" in prof.product_closed.certificate["axioms"]
    # without choice the engine withholds that classification
    restricted = Engine(use_choice=False)
    assert not restricted.classify_type(T("r")).product_closed.decided
