"""Condensations: quotients of a linear order by convex equivalences.

Three constructions are provided.

- :func:`finite_condensation` groups points whose mutual interval is
  finite.  On finite carriers the classes are computed exactly; on term
  carriers a finite sampled window is condensed and each sampled class
  is tagged with its shape (finite n, omega, omega*, or zeta).
- :func:`e_y_condense` collapses the contiguous runs of a distinguished
  subset Y of a finite carrier and returns the explicit embedding of
  the carrier into Y * quotient, checked order-preserving point by
  point.
- :func:`self_similar_condense` groups points p, q whenever the whole
  carrier fails to embed into [p, q], with the embeddability question
  answered by an injected oracle.  The quotient of this condensation is
  homogeneous whenever the carrier embeds two copies of itself side by
  side; the per-interval embedding obligations implied by homogeneity
  are reported as checkable claims rather than verified on infinite
  carriers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .finite import FiniteOrder
from .points import (
    compare_points,
    interval_is_finite,
    pred_point,
    sample_points,
    succ_point,
)
from .terms import Eta, Lambda, Prod, Term, normalize, print_term

_WALK_BUDGET = 48


@dataclass(frozen=True)
class CondensationClass:
    """One convex class: its member points (or sampled members) and an
    optional shape tag ("fin", n) / ("omega",) / ("omega-star",) /
    ("zeta",)."""

    points: Tuple
    tag: Optional[Tuple] = None


@dataclass(frozen=True)
class CondensationResult:
    classes: Tuple[CondensationClass, ...]
    quotient: object  # FiniteOrder or Term or descriptive dict
    witness_map: Optional[Dict] = None
    dichotomy: Optional[Dict] = None
    obligations: Tuple[Dict, ...] = ()
    trivial_branch: bool = False
    degenerate: bool = False
    sampled: bool = False


class CondensationAborted(RuntimeError):
    """The injected oracle could not decide a required interval."""


# ---------------------------------------------------------------------------
# finite condensation


def _class_tag(t: Term, p) -> Tuple:
    """Shape of the finite-interval class of p: walk successors and
    predecessors with a budget; in this term language an unbounded walk
    means the class contains a copy of omega (or omega*) on that side."""
    up = 1
    q = p
    for _ in range(_WALK_BUDGET):
        s = succ_point(t, q)
        if s is None or not interval_is_finite(t, p, s)[0]:
            break
        q = s
        up += 1
    else:
        up = None
    down = 0
    q = p
    for _ in range(_WALK_BUDGET):
        s = pred_point(t, q)
        if s is None or not interval_is_finite(t, s, p)[0]:
            break
        q = s
        down += 1
    else:
        down = None
    if up is None and down is None:
        return ("zeta",)
    if up is None:
        return ("omega",)
    if down is None:
        return ("omega-star",)
    return ("fin", up + down)


def finite_condensation(
    x, window: Optional[Sequence] = None
) -> CondensationResult:
    """Condense by "the interval between the two points is finite".

    ``x`` is either a :class:`FiniteOrder` (exact computation) or a
    normalized :class:`Term` (the given window, default a structural
    sample, is condensed and each class tagged with its shape)."""
    if isinstance(x, FiniteOrder):
        if x.size == 0:
            return CondensationResult((), FiniteOrder(0))
        cls = CondensationClass(tuple(range(x.size)), ("fin", x.size))
        return CondensationResult((cls,), FiniteOrder(1))

    t = normalize(x)
    pts = list(window) if window is not None else sample_points(t)
    pts.sort(key=_sort_key(t))
    groups: List[List] = []
    for p in pts:
        if groups and interval_is_finite(t, groups[-1][-1], p)[0]:
            groups[-1].append(p)
        else:
            groups.append([p])
    classes = tuple(
        CondensationClass(tuple(g), _class_tag(t, g[0])) for g in groups
    )
    return CondensationResult(
        classes, FiniteOrder(len(classes)), sampled=True
    )


def _sort_key(t: Term):
    import functools

    return functools.cmp_to_key(lambda a, b: compare_points(t, a, b))


# ---------------------------------------------------------------------------
# E_Y condensation on finite carriers


def e_y_condense(
    x: FiniteOrder, y, empty_is_identity: bool = False
) -> CondensationResult:
    """Collapse contiguous runs of the subset y of {0,...,|x|-1}; each
    point outside y stays a singleton class.  Returns the quotient and
    the explicit embedding of x into y * quotient (anti-lexicographic
    pairs), verified order-preserving.

    For |x| <= 2 the result also reports which arm of the dichotomy
    "x embeds in y, or x embeds in the quotient" holds."""
    ys = sorted(set(y))
    if any(i < 0 or i >= x.size for i in ys):
        raise ValueError("subset out of range")
    if not ys:
        if not empty_is_identity:
            raise ValueError(
                "y must be nonempty; pass empty_is_identity=True for the "
                "identity condensation"
            )
        classes = tuple(
            CondensationClass((i,), ("fin", 1)) for i in range(x.size)
        )
        return CondensationResult(classes, x, trivial_branch=True)

    in_y = [i in ys for i in range(x.size)]
    groups: List[List[int]] = []
    for i in range(x.size):
        if in_y[i] and groups and groups[-1] and in_y[groups[-1][-1]] \
                and groups[-1][-1] == i - 1:
            groups[-1].append(i)
        else:
            groups.append([i])
    classes = tuple(
        CondensationClass(tuple(g), ("fin", len(g))) for g in groups
    )
    k = len(classes)
    class_of = {}
    for ci, c in enumerate(classes):
        for p in c.points:
            class_of[p] = ci

    # embedding into y * quotient: pairs (a, c) ordered by c first,
    # then a, with a ranging over the elements of y in carrier order
    y0 = ys[0]
    fmap = {
        i: ((i if in_y[i] else y0), class_of[i]) for i in range(x.size)
    }
    pairs = [fmap[i] for i in range(x.size)]
    for (a1, c1), (a2, c2) in zip(pairs, pairs[1:]):
        if not ((c1, ys.index(a1)) < (c2, ys.index(a2))):
            raise AssertionError(
                f"embedding not order-preserving at {(a1, c1)} < {(a2, c2)}"
            )

    dichotomy = None
    if x.size <= 2:
        arms = []
        if len(ys) >= x.size:
            arms.append("Y")
        if k >= x.size:
            arms.append("quotient")
        dichotomy = {"size": x.size, "holds": arms, "arm": arms[0]}
    return CondensationResult(
        classes, FiniteOrder(k), witness_map=fmap, dichotomy=dichotomy
    )


# ---------------------------------------------------------------------------
# self-similar condensation


def self_similar_condense(
    x,
    interval_oracle: Callable[[object, object], str],
    window: Optional[Sequence] = None,
) -> CondensationResult:
    """Group p with q when the carrier does not embed into [p, q],
    as decided by ``interval_oracle(p, q) -> "YES" | "NO" | "UNKNOWN"``
    (the answer to "the carrier embeds into the closed interval").

    Intended for carriers embedding two side-by-side copies of
    themselves, which makes the grouping a convex equivalence and the
    quotient homogeneous.  On a finite carrier the oracle is constantly
    NO and the single all-covering class is flagged ``degenerate``.
    The homogeneity obligations (quotient embeds between any two
    classes) are returned as claims, not verified."""
    if isinstance(x, FiniteOrder):
        pts = list(range(x.size))
        t = None
    else:
        t = normalize(x)
        pts = list(window) if window is not None else sample_points(t)
        pts.sort(key=_sort_key(t))

    groups: List[List] = []
    for p in pts:
        if groups:
            rep = groups[-1][0]
            ans = interval_oracle(rep, p)
            if ans == "UNKNOWN":
                raise CondensationAborted(
                    f"oracle undecided on interval [{rep!r}, {p!r}]"
                )
            if ans == "NO":
                groups[-1].append(p)
                continue
        groups.append([p])
    classes = tuple(CondensationClass(tuple(g)) for g in groups)
    k = len(classes)
    degenerate = k == 1 and len(pts) > 0

    quotient: object = FiniteOrder(k)
    if t is not None:
        if k == len(pts) and isinstance(t, (Eta, Lambda)):
            # all classes singletons on a dense carrier
            quotient = t
        elif isinstance(t, Prod) and _groups_by_index(groups):
            quotient = t.index

    obligations = tuple(
        {
            "between": (classes[i].points[0], classes[j].points[0]),
            "claim": "quotient embeds into the closed interval "
            "spanned by these two classes",
        }
        for i in range(k)
        for j in range(i + 1, k)
    )
    return CondensationResult(
        classes,
        quotient,
        obligations=obligations,
        degenerate=degenerate,
        sampled=t is not None,
    )


def _groups_by_index(groups: List[List]) -> bool:
    """True when each group is exactly the sample points sharing one
    index coordinate of a product carrier (points are (index, inner)
    pairs)."""
    seen = set()
    for g in groups:
        idxs = {p[0] for p in g if isinstance(p, tuple) and len(p) == 2}
        if len(idxs) != 1 or not all(
            isinstance(p, tuple) and len(p) == 2 for p in g
        ):
            return False
        (i,) = idxs
        if i in seen:
            return False
        seen.add(i)
    return True
