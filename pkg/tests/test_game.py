import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from ordtypes.game import (
    E0Result,
    Strategy,
    UndefinedPosition,
    concat,
    e0_equiv,
    exhaustive_verify,
    flip,
    play,
    random_strategy,
    transform_strategy,
    verify_flip_identity,
)

bits = st.lists(st.integers(0, 1), max_size=12).map(tuple)


# ---------------------------------------------------------------------------
# words


@given(bits)
def test_flip_involution(w):
    assert flip(flip(w)) == w
    assert len(flip(w)) == len(w)


def test_flip_rejects_non_bits():
    with pytest.raises(ValueError):
        flip((0, 2))


def test_concat():
    assert concat([(0, 1), (), (1,)]) == (0, 1, 1)
    assert concat([]) == ()


@given(bits)
def test_e0_reflexive(w):
    assert e0_equiv(w, w)


@given(bits, bits)
def test_e0_symmetric(x, y):
    if len(x) != len(y):
        with pytest.raises(ValueError):
            e0_equiv(x, y)
        return
    assert e0_equiv(x, y).answer == e0_equiv(y, x).answer


def test_e0_frozen():
    assert e0_equiv((), ())
    assert e0_equiv((0, 1), (1, 1))
    assert not e0_equiv((0, 1), (1, 0))
    r = e0_equiv((1,), (1,))
    assert isinstance(r, E0Result) and r.bounded


@given(bits, bits)
def test_e0_flip_congruence(x, y):
    if len(x) != len(y):
        return
    assert e0_equiv(x, y).answer == e0_equiv(flip(x), flip(y)).answer


# ---------------------------------------------------------------------------
# strategies


def test_strategy_table_and_fn():
    s = Strategy(table={((0,),): (1, 1)}, fn=lambda pos: (0,), depth=3)
    assert s.move(((0,),)) == (1, 1)  # table wins
    assert s.move(((1,),)) == (0,)  # fn fallback
    bare = Strategy(table={})
    with pytest.raises(UndefinedPosition):
        bare.move(((0,),))


def test_strategy_moves_must_be_nonempty():
    s = Strategy(fn=lambda pos: ())
    with pytest.raises(ValueError):
        s.move(())


def test_strategy_json_round_trip():
    s = Strategy(table={(): (1,), ((0, 1), (1,)): (0, 0)}, depth=4)
    t = Strategy.from_json(s.to_json())
    assert t.table == s.table and t.depth == 4
    with pytest.raises(ValueError):
        Strategy(fn=lambda pos: (1,)).to_json()


def test_random_strategy_deterministic_per_position():
    rng = random.Random(5)
    s = random_strategy(rng, depth=5)
    pos = ((0, 1), (1,))
    assert s.move(pos) == s.move(pos)


def test_transform_strategy_clauses():
    rho = Strategy(fn=lambda pos: (0, 1), depth=6)
    sigma = transform_strategy(rho)
    # opening clause: 1 followed by the flip of rho's answer to (0,)
    assert sigma.move(()) == (1, 1, 0)
    # later positions conjugate through the flip
    assert sigma.move(((1, 0), (1, 1))) == flip(rho.move(
        ((0,), (1,), (0, 0))
    ))
    with pytest.raises(UndefinedPosition):
        sigma.move(((1,),))  # opening move too short to split


def test_play_alternates():
    p1 = Strategy.constant((0,))
    p2 = Strategy.constant((1, 1))
    assert play((1,), p1, p2, rounds=2) == (1, 0, 1, 1, 0, 1, 1)


# ---------------------------------------------------------------------------
# the flip identity


def test_verify_flip_identity_zero_rounds_vacuous():
    assert verify_flip_identity(Strategy(table={}), [], 0)


def test_verify_flip_identity_needs_enough_moves():
    rho = Strategy.constant((1,))
    with pytest.raises(ValueError):
        verify_flip_identity(rho, [(0,)], 2)


def test_verify_flip_identity_constant_strategies():
    for word in ((1,), (0, 1), (1, 0, 1)):
        rho = Strategy.constant(word)
        assert verify_flip_identity(rho, [(0,), (1, 1)], 2)


def test_exhaustive_small():
    total, failures = exhaustive_verify(1, max_move=1)
    assert failures == [] and total == 2 * 2 * 2  # s1, adversary, reply
    total, failures = exhaustive_verify(1, max_move=2)
    assert failures == [] and total == 216


def test_seeded_random_instances():
    rng = random.Random(99)
    from ordtypes.game import _all_words

    words = _all_words(2)
    for _ in range(200):
        rho = random_strategy(rng, depth=7, max_move=2)
        adv = [words[rng.randrange(len(words))] for _ in range(3)]
        assert verify_flip_identity(rho, adv, 3)
