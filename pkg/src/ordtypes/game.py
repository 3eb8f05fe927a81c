"""Two-player word games on binary sequences: the flip involution,
bounded-precision eventual agreement, and the strategy conjugation that
turns a second-player strategy into a first-player strategy answering
with flipped words.

Players alternate appending nonempty finite 0/1 words to a growing
sequence.  No payoff is evaluated here — the point of the module is the
finitary bookkeeping: conjugating a strategy through the flip and
checking, move by move, that the conjugated play produces exactly the
flip of the original play (modulo the declared opening prefix, where
only eventual agreement is meaningful).

Conventions, fixed rather than inferred:

- a word is a tuple of 0/1 ints; positions in a play are tuples of
  words (all moves so far, both players');
- strategies answer positions of either parity, so one table can serve
  as either player;
- eventual agreement on equal-length finite words means the words agree
  on a nonempty final segment (or are both empty); a finite check can
  refute eventual agreement but never establish it, so results carry a
  ``bounded`` marker.
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

BitWord = Tuple[int, ...]


def _check_word(w, allow_empty: bool = True) -> BitWord:
    w = tuple(w)
    if not all(b in (0, 1) for b in w):
        raise ValueError(f"not a 0/1 word: {w!r}")
    if not allow_empty and not w:
        raise ValueError("moves must be nonempty")
    return w


def flip(wrd: Sequence[int]) -> BitWord:
    """Pointwise complement; an involution preserving length."""
    return tuple(1 - b for b in _check_word(wrd))


def concat(words: Sequence[Sequence[int]]) -> BitWord:
    out: List[int] = []
    for w in words:
        out.extend(w)
    return tuple(out)


@dataclass(frozen=True)
class E0Result:
    answer: bool
    bounded: bool = True  # finite truncation only refutes, never proves

    def __bool__(self) -> bool:
        return self.answer


def e0_equiv(x: Sequence[int], y: Sequence[int]) -> E0Result:
    """Eventual agreement of two equal-length finite words: they agree
    on a nonempty final segment, or are both empty."""
    x, y = _check_word(x), _check_word(y)
    if len(x) != len(y):
        raise ValueError("words must have equal length")
    if not x:
        return E0Result(True)
    return E0Result(x[-1] == y[-1])


class UndefinedPosition(KeyError):
    pass


@dataclass
class Strategy:
    """A move-supplier: either a finite table keyed by positions
    (tuples of moves played so far) or a backing function.  ``depth``
    declares how many moves deep the strategy promises to be defined."""

    table: Optional[Dict[Tuple[BitWord, ...], BitWord]] = None
    fn: Optional[Callable[[Tuple[BitWord, ...]], BitWord]] = None
    depth: int = 0

    def move(self, position: Sequence[Sequence[int]]) -> BitWord:
        pos = tuple(_check_word(w, allow_empty=False) for w in position)
        if self.table is not None and pos in self.table:
            return self.table[pos]
        if self.fn is not None:
            return _check_word(self.fn(pos), allow_empty=False)
        raise UndefinedPosition(f"strategy undefined at {pos!r}")

    # -- serialization: positions as comma-joined bit strings ----------

    def to_json(self) -> str:
        if self.table is None:
            raise ValueError("only table strategies serialize")
        enc = {
            ",".join("".join(map(str, w)) for w in pos):
                "".join(map(str, mv))
            for pos, mv in self.table.items()
        }
        return json.dumps({"depth": self.depth, "table": enc}, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Strategy":
        d = json.loads(text)
        table = {}
        for k, v in d["table"].items():
            pos = tuple(
                tuple(int(c) for c in w) for w in k.split(",") if w
            )
            table[pos] = tuple(int(c) for c in v)
        return cls(table=table, depth=d.get("depth", 0))

    @classmethod
    def constant(cls, word: Sequence[int], depth: int = 64) -> "Strategy":
        w = _check_word(word, allow_empty=False)
        return cls(fn=lambda pos: w, depth=depth)


def random_strategy(
    rng: random.Random, depth: int, max_move: int = 2
) -> Strategy:
    """A function-backed strategy whose answers are deterministic in
    the position (drawn from a position-seeded generator)."""
    seed = rng.getrandbits(64)

    def fn(pos: Tuple[BitWord, ...]) -> BitWord:
        r = random.Random(f"{seed}:{pos}")
        n = r.randint(1, max_move)
        return tuple(r.randint(0, 1) for _ in range(n))

    return Strategy(fn=fn, depth=depth)


def transform_strategy(rho: Strategy) -> Strategy:
    """Conjugate a responder strategy into an opener strategy.

    The opener's first move is 1 followed by the flip of the
    responder's answer to an opening 0.  At any later position the
    opener splits its recorded first move into its first bit j and
    remainder, flips every component of the history, asks the
    responder, and flips the answer."""

    def fn(pos: Tuple[BitWord, ...]) -> BitWord:
        if not pos:
            return (1,) + flip(rho.move(((0,),)))
        s0 = pos[0]
        if len(s0) < 2:
            raise UndefinedPosition(
                "conjugation needs an opening move of length >= 2"
            )
        j, rest = (s0[0],), s0[1:]
        conj = (flip(j), flip(rest)) + tuple(flip(w) for w in pos[1:])
        return flip(rho.move(conj))

    return Strategy(fn=fn, depth=max(rho.depth - 1, 0))


def play(
    prefix: Sequence[int],
    p1: Strategy,
    p2: Strategy,
    rounds: int,
) -> BitWord:
    """Alternate 2*rounds moves (p1 first) after the fixed prefix and
    return the concatenated word."""
    moves: List[BitWord] = []
    for _ in range(rounds):
        moves.append(p1.move(tuple(moves)))
        moves.append(p2.move(tuple(moves)))
    return _check_word(prefix) + concat(moves)


def verify_flip_identity(
    rho: Strategy,
    adversary_moves: Sequence[Sequence[int]],
    rounds: int,
) -> bool:
    """Check the flip-conjugation bookkeeping on one play.

    The responder strategy sigma answers from rho behind the opening
    move s' = rho(()):  sigma(h) = rho((s',) + h).  Play A runs the
    given adversary openers against sigma, producing y and the full
    word s'+y.  The conjugate play repeats the game with every move
    flipped: the adversary's moves are flipped and the responder's
    answers are computed through the flip conjugation of sigma (flip
    the history, ask sigma, flip the answer).  The function returns
    True when the conjugate play reproduces flip(y) move by move and
    the two full words s'+flip(y) and flip(s'+y) agree beyond the
    opening prefix while disagreeing on all of it — the bounded-depth
    shadow of eventual agreement between the two plays."""
    if rounds == 0:
        return True
    if len(adversary_moves) < rounds:
        raise ValueError("not enough adversary moves")
    s1 = rho.move(())

    def sigma(hist: Tuple[BitWord, ...]) -> BitWord:
        return rho.move((s1,) + hist)

    # play A
    t: List[BitWord] = []
    for k in range(rounds):
        t.append(_check_word(adversary_moves[k], allow_empty=False))
        t.append(sigma(tuple(t)))
    y = concat(t)

    # conjugate play: all moves flipped, responder answers through the
    # flip conjugation of sigma
    u: List[BitWord] = []
    for k in range(rounds):
        u.append(flip(adversary_moves[k]))
        resp = flip(sigma(tuple(flip(w) for w in u)))
        u.append(resp)
        if resp != flip(t[2 * k + 1]):
            return False
    y_conj = concat(u)
    if y_conj != flip(y):
        return False

    w_direct = s1 + flip(y)  # same opening, conjugate continuation
    w_flipped = flip(s1 + y)  # flip of the entire original play
    if w_direct[len(s1):] != w_flipped[len(s1):]:
        return False
    if s1 and any(
        a == b for a, b in zip(w_direct[: len(s1)], w_flipped[: len(s1)])
    ):
        return False
    return True


def _all_words(max_move: int) -> List[BitWord]:
    out: List[BitWord] = []
    frontier: List[BitWord] = [()]
    for _ in range(max_move):
        frontier = [w + (b,) for w in frontier for b in (0, 1)]
        out.extend(frontier)
    return out


def exhaustive_verify(
    rounds: int, max_move: int = 2
) -> Tuple[int, List[dict]]:
    """Run verify_flip_identity over every adversary move sequence and
    every responder table (enumerated lazily over the positions the
    check actually consults).  Returns (cases checked, failures)."""
    words = _all_words(max_move)
    total = 0
    failures: List[dict] = []

    def explore(adv: List[BitWord], assign: Dict) -> None:
        nonlocal total
        probe = Strategy(table=dict(assign), depth=2 * rounds + 1)
        try:
            ok = verify_flip_identity(probe, adv, rounds)
        except UndefinedPosition:
            missing = _first_missing(assign, adv, rounds)
            for w in words:
                assign[missing] = w
                explore(adv, assign)
            del assign[missing]
            return
        total += 1
        if not ok:
            failures.append({"table": dict(assign), "adversary": adv})

    def _first_missing(assign: Dict, adv: List[BitWord], r: int):
        missing = []

        def fn(pos):
            if pos in assign:
                return assign[pos]
            missing.append(pos)
            raise UndefinedPosition(pos)

        try:
            verify_flip_identity(Strategy(fn=fn, depth=2 * r + 1), adv, r)
        except UndefinedPosition:
            pass
        return missing[0]

    for adv in itertools.product(words, repeat=rounds):
        explore(list(adv), {})
    return total, failures
