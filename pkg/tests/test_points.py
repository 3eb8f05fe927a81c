import random

import pytest

from ordtypes.ordinals import OMEGA, Ordinal
from ordtypes.points import (
    MalformedPoint,
    compare_points,
    finite_class_size,
    first_point,
    interval_count,
    interval_is_finite,
    last_point,
    pred_point,
    sample_points,
    succ_point,
    total_count,
    validate_point,
)
from ordtypes.terms import normalize, parse_normalized, print_term

from helpers import rand_scattered_term

T = parse_normalized
N = Ordinal.from_int

PROBES = ["w", "w + 1", "3", "w~", "z", "q", "z*3", "w*q", "geomrev(w)",
          "geom(w)", "w~ + 5 + w", "w^(2)", "z*w~"]


def _sorted_sample(t):
    pts = sample_points(t)
    import functools

    pts.sort(key=functools.cmp_to_key(lambda a, b: compare_points(t, a, b)))
    return pts


def test_total_count_frozen():
    assert total_count(T("5")) == 5
    assert total_count(T("0")) == 0
    assert total_count(T("w")) == float("inf")
    assert total_count(T("z*3")) == float("inf")


def test_sample_points_valid_and_distinct():
    for txt in PROBES:
        t = T(txt)
        pts = sample_points(t)
        assert pts
        for p in pts:
            validate_point(t, p)
        for p, q in zip(pts, pts[1:]):
            # sample_points returns distinct points
            assert compare_points(t, p, q) != 0


def test_compare_points_total_order():
    for txt in PROBES:
        t = T(txt)
        pts = _sorted_sample(t)
        for i, p in enumerate(pts):
            assert compare_points(t, p, p) == 0
            for q in pts[i + 1:]:
                assert compare_points(t, p, q) == -1
                assert compare_points(t, q, p) == 1


def test_first_last_points():
    t = T("w + 1")
    f, l = first_point(t), last_point(t)
    assert f == Ordinal() and l == OMEGA
    assert first_point(T("w~")) is None
    assert last_point(T("w")) is None
    assert first_point(T("q")) is None and last_point(T("q")) is None
    assert first_point(T("5")) == N(0) and last_point(T("5")) == N(4)


def test_succ_pred_inverse_on_samples():
    for txt in PROBES:
        t = T(txt)
        for p in sample_points(t):
            s = succ_point(t, p)
            if s is not None:
                assert compare_points(t, p, s) == -1
                back = pred_point(t, s)
                assert back is not None and compare_points(t, back, p) == 0
            q = pred_point(t, p)
            if q is not None:
                assert compare_points(t, q, p) == -1
                fwd = succ_point(t, q)
                assert fwd is not None and compare_points(t, fwd, p) == 0


def test_dense_types_have_no_neighbors():
    for txt in ("q", "r"):
        t = T(txt)
        for p in sample_points(t):
            assert succ_point(t, p) is None
            assert pred_point(t, p) is None


def test_interval_count_frozen():
    t = T("w")
    assert interval_count(t, N(2), N(5)) == 4  # closed interval
    assert interval_count(t, N(0), OMEGA) == float("inf")
    z = T("z")
    pts = _sorted_sample(z)
    lo, hi = pts[0], pts[-1]
    fin, cnt = interval_is_finite(z, lo, hi)
    assert fin and cnt == interval_count(z, lo, hi)


def test_interval_is_finite_consistency():
    rng = random.Random(6)
    for _ in range(50):
        t = normalize(rand_scattered_term(rng, 2))
        pts = _sorted_sample(t)
        if len(pts) < 2:
            continue
        for p, q in zip(pts, pts[1:]):
            fin, cnt = interval_is_finite(t, p, q)
            if fin:
                assert isinstance(cnt, int) and cnt >= 2
            else:
                assert cnt is None or cnt == float("inf")


def test_finite_class_size():
    assert finite_class_size(T("5"), N(2)) == 5
    t = T("w + 3 + w~")  # normalizes to (w + 3) + w~
    # the three points at w, w+1, w+2 form one finite class
    cls = finite_class_size(t, (0, OMEGA))
    assert cls == 3
    assert finite_class_size(T("w"), N(4)) is None  # infinite class


def test_validate_point_rejects_garbage():
    with pytest.raises(MalformedPoint):
        validate_point(T("w"), "bogus")
    with pytest.raises(MalformedPoint):
        validate_point(T("w"), OMEGA + N(1))  # beyond the carrier
    with pytest.raises(MalformedPoint):
        validate_point(T("5"), N(9))
