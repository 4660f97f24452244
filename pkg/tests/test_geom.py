import math
import random

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from mwt.geom import (
    BaseAngleConfig,
    Orientation,
    Point,
    Side,
    compare_sq_lengths,
    diamond_apex,
    diamond_test_bruteforce,
    in_diamond_triangle,
    orient,
    pseudo_angle,
    segments_properly_intersect,
)
from oracles import orient_q, proper_cross_q, sqdist_q

CFG = BaseAngleConfig()
# exactness is guaranteed away from the subnormal range
coord = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False).filter(
    lambda v: v == 0 or abs(v) > 1e-60
)
pt = st.tuples(coord, coord)


def test_orient_examples():
    assert orient((0, 0), (1, 0), (0, 1)) == Orientation.CCW
    assert orient((0, 0), (1, 1), (2, 2)) == Orientation.COLLINEAR
    assert orient((0, 0), (0, 1), (1, 0)) == Orientation.CW


def test_orient_near_degenerate_matches_rationals():
    # classic failure case for naive floating point orientation
    rng = random.Random(3)
    for _ in range(2000):
        x = 0.5 + rng.randrange(256) * 2.0**-53
        y = 0.5 + rng.randrange(256) * 2.0**-53
        a, b, c = (x, y), (12.0, 12.0), (24.0, 24.0)
        assert orient(a, b, c) == orient_q(a, b, c)


def _exact_collinear_triples(rng, count):
    out = []
    for _ in range(count):
        ax, ay = rng.randint(-2**20, 2**20), rng.randint(-2**20, 2**20)
        dx, dy = rng.randint(-2**10, 2**10), rng.randint(-2**10, 2**10)
        k1, k2 = rng.randint(-2**10, 2**10), rng.randint(-2**10, 2**10)
        s = 2.0**-7
        out.append(((ax * s, ay * s), ((ax + k1 * dx) * s, (ay + k1 * dy) * s), ((ax + k2 * dx) * s, (ay + k2 * dy) * s)))
    return out


def test_orient_antisymmetry_bulk():
    rng = random.Random(11)
    triples = _exact_collinear_triples(rng, 50_000)
    for _ in range(50_000):
        triples.append(tuple((rng.uniform(-1, 1), rng.uniform(-1, 1)) for _ in range(3)))
    for a, b, c in triples:
        o = int(orient(a, b, c))
        assert int(orient(b, a, c)) == -o
        assert int(orient(a, c, b)) == -o
        assert int(orient(c, b, a)) == -o
    for a, b, c in triples[:20_000]:
        assert int(orient(a, b, c)) == orient_q(a, b, c)


@given(pt, pt, pt)
def test_orient_matches_rationals(a, b, c):
    assert int(orient(a, b, c)) == orient_q(a, b, c)


@given(pt, pt, pt, pt)
def test_compare_sq_lengths_exact(a, b, c, d):
    got = compare_sq_lengths(*a, *b, *c, *d)
    diff = sqdist_q(a, b) - sqdist_q(c, d)
    assert got == (diff > 0) - (diff < 0)


def test_compare_sq_lengths_ties():
    assert compare_sq_lengths(0.1, 0.2, 0.4, 0.6, 1.1, 1.2, 1.4, 1.6) == int(
        np.sign(float(sqdist_q((0.1, 0.2), (0.4, 0.6)) - sqdist_q((1.1, 1.2), (1.4, 1.6))))
    )
    assert compare_sq_lengths(0, 0, 3, 4, 1, 1, 6, 1) == 0


def test_pseudo_angle_examples():
    assert pseudo_angle(1, 0) == 0
    assert pseudo_angle(0, 1) == 1
    assert pseudo_angle(-1, 0) == 2
    a = math.pi / 4.6
    assert pseudo_angle(math.cos(a), math.sin(a)) == pytest.approx(0.4486, abs=5e-5)
    assert CFG.pseudo_width == pytest.approx(0.4486, abs=5e-5)


def test_pseudo_angle_zero_vector():
    with pytest.raises(ValueError):
        pseudo_angle(0.0, 0.0)


def _branch_angle(dx, dy):
    # map the true polar angle into the same branch layout: [0, pi] then (-pi, 0)
    return mpmath.atan2(mpmath.mpf(dy), mpmath.mpf(dx)) if dy != 0 or dx < 0 else mpmath.mpf(0)


def test_pseudo_angle_order_matches_arbitrary_precision_atan():
    rng = np.random.default_rng(5)
    v = rng.normal(size=(100_000, 2))
    v[:500, 1] = 0.0
    v[500:1000, 0] = 0.0
    pa = np.array([pseudo_angle(x, y) for x, y in v])
    mpmath.mp.dps = 40
    ta = np.array([float(_branch_angle(x, y)) for x, y in v])
    order = np.lexsort((ta, pa))
    # sorting by pseudo-angle must sort the true angle too (ties only for equal angles)
    assert np.all(np.diff(ta[order]) >= 0)
    assert np.all(np.diff(pa[np.argsort(ta, kind="stable")]) >= 0)


def test_in_diamond_examples():
    s, t = (0, 0), (1, 0)
    assert in_diamond_triangle(s, t, (0.5, 0.05), Side.LEFT, CFG)
    assert not in_diamond_triangle(s, t, (0.5, -10), Side.LEFT, CFG)
    assert not in_diamond_triangle(s, t, (2, 0), Side.LEFT, CFG)
    ax, ay = diamond_apex(0.0, 0.0, 1.0, 0.0, True, 0.5 * CFG.tan_alpha)
    assert (ax, ay) == pytest.approx((0.5, 0.5 * math.tan(math.pi / 4.6)))
    assert ay == pytest.approx(0.407, abs=1e-3)


def test_boundary_points_are_outside():
    s, t = (0.0, 0.0), (1.0, 0.0)
    ax, ay = diamond_apex(0.0, 0.0, 1.0, 0.0, True, 0.5 * CFG.tan_alpha)
    assert not in_diamond_triangle(s, t, (ax, ay), Side.LEFT, CFG)
    assert not in_diamond_triangle(s, t, (0.5, 0.0), Side.LEFT, CFG)
    assert not in_diamond_triangle(s, t, (0.5, 0.0), Side.RIGHT, CFG)


def test_in_diamond_requires_distinct():
    with pytest.raises(ValueError):
        in_diamond_triangle((1, 1), (1, 1), (0, 0), Side.LEFT, CFG)


@given(pt, pt, pt)
def test_in_diamond_base_symmetry(s, t, p):
    if s == t:
        return
    for side, other in ((Side.LEFT, Side.RIGHT), (Side.RIGHT, Side.LEFT)):
        assert in_diamond_triangle(s, t, p, side, CFG) == in_diamond_triangle(t, s, p, other, CFG)


@given(pt, pt)
def test_in_diamond_apex_side(s, t):
    if s == t:
        return
    for left in (True, False):
        ax, ay = diamond_apex(*s, *t, left, 0.5 * CFG.tan_alpha)
        o = orient_q(s, t, (ax, ay))
        assert o in ((1, 0) if left else (-1, 0))


def test_bruteforce_examples():
    pts = [(0, 0), (1, 0), (0.3, 0.8)]
    for a in range(3):
        for b in range(3):
            if a != b:
                assert diamond_test_bruteforce(a, b, pts, CFG)
    both = [(0, 0), (1, 0), (0.5, 0.1), (0.5, -0.1)]
    assert in_diamond_triangle(both[0], both[1], both[2], Side.LEFT, CFG)
    assert in_diamond_triangle(both[0], both[1], both[3], Side.RIGHT, CFG)
    assert not diamond_test_bruteforce(0, 1, both, CFG)
    one = both[:3]
    assert diamond_test_bruteforce(0, 1, one, CFG)


def test_bruteforce_point_on_segment_blocks():
    assert not diamond_test_bruteforce(0, 1, [(0, 0), (2, 0), (1, 0), (1, 5)], CFG)


@given(st.lists(st.tuples(st.floats(0, 1), st.floats(0, 1)), min_size=3, max_size=25, unique=True))
def test_bruteforce_symmetric(pts):
    n = len(pts)
    for s in range(n):
        for t in range(s + 1, n):
            assert diamond_test_bruteforce(s, t, pts, CFG) == diamond_test_bruteforce(t, s, pts, CFG)


def test_segments_examples():
    assert segments_properly_intersect((0, 0), (2, 2), (0, 2), (2, 0))
    assert not segments_properly_intersect((0, 0), (1, 0), (1, 0), (2, 0))
    assert not segments_properly_intersect((0, 0), (1, 0), (0, 1), (1, 1))
    assert not segments_properly_intersect((0, 0), (2, 0), (1, 0), (1, 1))


@given(pt, pt, pt, pt)
def test_segments_match_rationals(a, b, c, d):
    assert segments_properly_intersect(a, b, c, d) == proper_cross_q(a, b, c, d)


def test_point_rejects_nonfinite():
    with pytest.raises(ValueError):
        Point(float("nan"), 0.0)
    with pytest.raises(ValueError):
        Point(0.0, float("inf"))


def test_alpha_range():
    with pytest.raises(ValueError):
        BaseAngleConfig(alpha=0.0)
    with pytest.raises(ValueError):
        BaseAngleConfig(alpha=1.2)
    BaseAngleConfig(alpha=math.pi / 3)
    assert BaseAngleConfig().alpha == pytest.approx(math.pi / 4.6)
