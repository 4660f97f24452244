"""Geometric primitives: exact orientation, pseudo-angles, diamond triangles.

Every predicate that decides combinatorial structure reduces to
:func:`orient_sign`, which uses a floating-point filter backed by exact
expansion arithmetic (Dekker/Knuth error-free transforms), so no decision is
ever flipped by rounding.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np
from numba import njit

_EPS = 2.0**-53
_CCW_ERRBOUND = (3.0 + 16.0 * _EPS) * _EPS
_SPLITTER = 134217729.0  # 2**27 + 1

DEFAULT_ALPHA = math.pi / 4.6


class Orientation(enum.IntEnum):
    CW = -1
    COLLINEAR = 0
    CCW = 1


class Side(enum.IntEnum):
    LEFT = 0
    RIGHT = 1


@dataclass(frozen=True)
class Point:
    x: float
    y: float
    id: int = -1

    def __post_init__(self):
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"non-finite coordinate in point {self.id}: ({self.x}, {self.y})")


@dataclass(frozen=True)
class BaseAngleConfig:
    """Base angle of the diamond property and derived constants."""

    alpha: float = DEFAULT_ALPHA
    tan_alpha: float = field(init=False)
    pseudo_width: float = field(init=False)
    # max over the open base-angle range of cos(th) + sin(th)/tan(alpha); a
    # point l at distance d blocks every edge s->q with q angularly within
    # alpha of l once |sq| exceeds radius_factor * d
    radius_factor: float = field(init=False)

    def __post_init__(self):
        if not (0.0 < self.alpha <= math.pi / 3 + 1e-15):
            raise ValueError(f"alpha must lie in (0, pi/3], got {self.alpha}")
        object.__setattr__(self, "tan_alpha", math.tan(self.alpha))
        object.__setattr__(
            self, "pseudo_width", pseudo_angle(math.cos(self.alpha), math.sin(self.alpha))
        )
        if self.alpha <= math.pi / 4:
            c = 2.0 * math.cos(self.alpha)
        else:
            c = 1.0 / math.sin(self.alpha)
        object.__setattr__(self, "radius_factor", c)


# ---------------------------------------------------------------------------
# error-free transforms and expansion sums


@njit(cache=True, inline="always")
def _two_sum(a, b):
    x = a + b
    bv = x - a
    av = x - bv
    return x, (a - av) + (b - bv)


@njit(cache=True, inline="always")
def _split(a):
    c = _SPLITTER * a
    abig = c - a
    hi = c - abig
    return hi, a - hi


@njit(cache=True, inline="always")
def _two_product(a, b):
    x = a * b
    ahi, alo = _split(a)
    bhi, blo = _split(b)
    err1 = x - ahi * bhi
    err2 = err1 - alo * bhi
    err3 = err2 - ahi * blo
    return x, alo * blo - err3


@njit(cache=True)
def _grow(e, m, b):
    """Add b to the nonoverlapping expansion e[:m] in place; returns new length."""
    q = b
    k = 0
    for i in range(m):
        q, h = _two_sum(q, e[i])
        if h != 0.0:
            e[k] = h
            k += 1
    if q != 0.0:
        e[k] = q
        k += 1
    return k


@njit(cache=True)
def exact_sign_of_products(fa, fb):
    """Exact sign of sum(fa[k] * fb[k])."""
    n = fa.shape[0]
    e = np.empty(2 * n + 2)
    m = 0
    for k in range(n):
        x, y = _two_product(fa[k], fb[k])
        m = _grow(e, m, y)
        m = _grow(e, m, x)
    if m == 0:
        return 0
    top = e[m - 1]
    return 1 if top > 0.0 else -1


@njit(cache=True)
def _orient_exact(ax, ay, bx, by, cx, cy):
    fa = np.empty(6)
    fb = np.empty(6)
    fa[0] = ax
    fb[0] = by
    fa[1] = -ax
    fb[1] = cy
    fa[2] = -ay
    fb[2] = bx
    fa[3] = ay
    fb[3] = cx
    fa[4] = bx
    fb[4] = cy
    fa[5] = -by
    fb[5] = cx
    return exact_sign_of_products(fa, fb)


@njit(cache=True)
def orient_sign(ax, ay, bx, by, cx, cy):
    """Sign of det(b - a, c - a): +1 counter-clockwise, -1 clockwise, 0 collinear."""
    detleft = (bx - ax) * (cy - ay)
    detright = (by - ay) * (cx - ax)
    det = detleft - detright
    bound = _CCW_ERRBOUND * (abs(detleft) + abs(detright))
    if det > bound:
        return 1
    if -det > bound:
        return -1
    if detleft == 0.0 and detright == 0.0:
        return 0
    return _orient_exact(ax, ay, bx, by, cx, cy)


@njit(cache=True)
def compare_sq_lengths(ax, ay, bx, by, cx, cy, dx, dy):
    """Exact sign of |ab|^2 - |cd|^2."""
    ux = bx - ax
    uy = by - ay
    vx = dx - cx
    vy = dy - cy
    l1 = ux * ux + uy * uy
    l2 = vx * vx + vy * vy
    diff = l1 - l2
    if abs(diff) > 1e-14 * (l1 + l2):
        return 1 if diff > 0.0 else -1
    fa = np.empty(12)
    fb = np.empty(12)
    k = 0
    for sgn, p, q in ((1.0, ax, bx), (1.0, ay, by), (-1.0, cx, dx), (-1.0, cy, dy)):
        hi, lo = _two_sum(q, -p)
        fa[k] = sgn * hi
        fb[k] = hi
        fa[k + 1] = sgn * 2.0 * hi
        fb[k + 1] = lo
        fa[k + 2] = sgn * lo
        fb[k + 2] = lo
        k += 3
    return exact_sign_of_products(fa, fb)


@njit(cache=True, inline="always")
def pseudo_angle_nb(dx, dy):
    p = 1.0 - dx / (abs(dx) + abs(dy))
    return p if dy >= 0.0 else -p


@njit(cache=True, inline="always")
def lex_less(ax, ay, bx, by):
    return ax < bx or (ax == bx and ay < by)


@njit(cache=True)
def diamond_apex(sx, sy, tx, ty, left, half_tan):
    """Apex of the isosceles triangle on base st; computed from the
    lexicographically ordered endpoints so that (s, t, left) and (t, s, right)
    give bit-identical results."""
    if lex_less(tx, ty, sx, sy):
        sx, sy, tx, ty = tx, ty, sx, sy
        left = not left
    mx = 0.5 * (sx + tx)
    my = 0.5 * (sy + ty)
    ux = tx - sx
    uy = ty - sy
    if left:
        return mx - half_tan * uy, my + half_tan * ux
    return mx + half_tan * uy, my - half_tan * ux


@njit(cache=True)
def in_diamond_triangle_nb(sx, sy, tx, ty, px, py, left, half_tan):
    ax, ay = diamond_apex(sx, sy, tx, ty, left, half_tan)
    if left:
        return (
            orient_sign(sx, sy, tx, ty, px, py) > 0
            and orient_sign(tx, ty, ax, ay, px, py) > 0
            and orient_sign(ax, ay, sx, sy, px, py) > 0
        )
    return (
        orient_sign(sx, sy, ax, ay, px, py) > 0
        and orient_sign(ax, ay, tx, ty, px, py) > 0
        and orient_sign(tx, ty, sx, sy, px, py) > 0
    )


@njit(cache=True)
def on_open_segment_nb(ax, ay, bx, by, px, py):
    if orient_sign(ax, ay, bx, by, px, py) != 0:
        return False
    if (px == ax and py == ay) or (px == bx and py == by):
        return False
    return min(ax, bx) <= px <= max(ax, bx) and min(ay, by) <= py <= max(ay, by)


@njit(cache=True)
def properly_intersect_nb(ax, ay, bx, by, cx, cy, dx, dy):
    o1 = orient_sign(ax, ay, bx, by, cx, cy)
    o2 = orient_sign(ax, ay, bx, by, dx, dy)
    if o1 == 0 or o2 == 0 or o1 == o2:
        return False
    o3 = orient_sign(cx, cy, dx, dy, ax, ay)
    o4 = orient_sign(cx, cy, dx, dy, bx, by)
    return o3 != 0 and o4 != 0 and o3 != o4


@njit(cache=True)
def diamond_blocked_nb(xs, ys, s, t, half_tan):
    """Brute force: True iff edge st fails the diamond test against all points.

    An edge with another point on its relative interior is never a valid
    triangulation edge and counts as failing.
    """
    sx, sy, tx, ty = xs[s], ys[s], xs[t], ys[t]
    lx, ly = diamond_apex(sx, sy, tx, ty, True, half_tan)
    rx, ry = diamond_apex(sx, sy, tx, ty, False, half_tan)
    xmin = min(sx, tx, lx, rx)
    xmax = max(sx, tx, lx, rx)
    ymin = min(sy, ty, ly, ry)
    ymax = max(sy, ty, ly, ry)
    left_hit = False
    right_hit = False
    for p in range(xs.shape[0]):
        if p == s or p == t:
            continue
        px = xs[p]
        py = ys[p]
        if px < xmin or px > xmax or py < ymin or py > ymax:
            continue
        if not left_hit and in_diamond_triangle_nb(sx, sy, tx, ty, px, py, True, half_tan):
            left_hit = True
        elif not right_hit and in_diamond_triangle_nb(sx, sy, tx, ty, px, py, False, half_tan):
            right_hit = True
        elif on_open_segment_nb(sx, sy, tx, ty, px, py):
            return True
        if left_hit and right_hit:
            return True
    return False


@njit(cache=True)
def diamond_edges_bruteforce_nb(xs, ys, half_tan):
    n = xs.shape[0]
    out = np.empty((n * 8 + 16, 2), dtype=np.int64)
    m = 0
    for s in range(n):
        for t in range(s + 1, n):
            if not diamond_blocked_nb(xs, ys, s, t, half_tan):
                if m == out.shape[0]:
                    bigger = np.empty((2 * m, 2), dtype=np.int64)
                    bigger[:m] = out[:m]
                    out = bigger
                out[m, 0] = s
                out[m, 1] = t
                m += 1
    return out[:m]


# ---------------------------------------------------------------------------
# Python-facing API


def _xy(p):
    if isinstance(p, Point):
        return float(p.x), float(p.y)
    return float(p[0]), float(p[1])


def orient(a, b, c) -> Orientation:
    ax, ay = _xy(a)
    bx, by = _xy(b)
    cx, cy = _xy(c)
    return Orientation(orient_sign(ax, ay, bx, by, cx, cy))


def pseudo_angle(dx: float, dy: float) -> float:
    """Monotone surrogate of the polar angle with range (-2, 2]."""
    if dx == 0.0 and dy == 0.0:
        raise ValueError("pseudo-angle of the zero vector is undefined")
    return float(pseudo_angle_nb(float(dx), float(dy)))


def in_diamond_triangle(s, t, p, side: Side, cfg: BaseAngleConfig = BaseAngleConfig()) -> bool:
    sx, sy = _xy(s)
    tx, ty = _xy(t)
    px, py = _xy(p)
    if sx == tx and sy == ty:
        raise ValueError("diamond triangle needs distinct base endpoints")
    return bool(
        in_diamond_triangle_nb(sx, sy, tx, ty, px, py, side == Side.LEFT, 0.5 * cfg.tan_alpha)
    )


def diamond_test_bruteforce(s: int, t: int, points, cfg: BaseAngleConfig = BaseAngleConfig()) -> bool:
    """True iff the edge between point indices s and t has the diamond property."""
    pts = np.asarray(points, dtype=np.float64)
    xs = np.ascontiguousarray(pts[:, 0])
    ys = np.ascontiguousarray(pts[:, 1])
    return not diamond_blocked_nb(xs, ys, int(s), int(t), 0.5 * cfg.tan_alpha)


def diamond_edges_bruteforce(points, cfg: BaseAngleConfig = BaseAngleConfig()) -> set[tuple[int, int]]:
    pts = np.asarray(points, dtype=np.float64)
    xs = np.ascontiguousarray(pts[:, 0])
    ys = np.ascontiguousarray(pts[:, 1])
    out = diamond_edges_bruteforce_nb(xs, ys, 0.5 * cfg.tan_alpha)
    return {(int(a), int(b)) for a, b in out}


def segments_properly_intersect(a, b, c, d) -> bool:
    ax, ay = _xy(a)
    bx, by = _xy(b)
    cx, cy = _xy(c)
    dx, dy = _xy(d)
    return bool(properly_intersect_nb(ax, ay, bx, by, cx, cy, dx, dy))
