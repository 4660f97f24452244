"""Hilbert-curve ordering and a quadtree over the ordered array.

The quadtree is built from prefixes of the Hilbert index, so every node owns a
contiguous slice of the sorted array. Levels in which all points share the
same quadrant are collapsed, and node boxes are tight bounding boxes.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Callable, Iterator

import numpy as np
from numba import njit

from mwt.geom import pseudo_angle_nb

HILBERT_LEVELS = 31
DEFAULT_LEAF_CAPACITY = 16


class DuplicatePointError(ValueError):
    pass


@dataclass(frozen=True)
class HilbertOrderedPointSet:
    xs: np.ndarray
    ys: np.ndarray
    original_index: np.ndarray  # sorted position -> input position
    bounds: tuple[float, float, float, float]  # xmin, ymin, xmax, ymax

    def __len__(self) -> int:
        return self.xs.shape[0]

    @property
    def coords(self) -> np.ndarray:
        return np.column_stack((self.xs, self.ys))

    @property
    def sorted_index(self) -> np.ndarray:
        """Input position -> sorted position."""
        inv = np.empty_like(self.original_index)
        inv[self.original_index] = np.arange(len(self), dtype=inv.dtype)
        return inv


@dataclass(frozen=True)
class QuadTree:
    xs: np.ndarray
    ys: np.ndarray
    lo: np.ndarray
    hi: np.ndarray
    box: np.ndarray  # (m, 4): xmin, ymin, xmax, ymax
    child_start: np.ndarray
    child_count: np.ndarray  # 0 for leaves
    leaf_capacity: int

    @property
    def num_nodes(self) -> int:
        return self.lo.shape[0]

    def is_leaf(self, node: int) -> bool:
        return self.child_count[node] == 0

    def leaves(self) -> np.ndarray:
        return np.flatnonzero(self.child_count == 0)


@njit(cache=True)
def _hilbert_codes(gx, gy, levels):
    n = gx.shape[0]
    out = np.empty(n, dtype=np.uint64)
    side = np.int64(1) << levels
    for k in range(n):
        x = np.int64(gx[k])
        y = np.int64(gy[k])
        d = np.uint64(0)
        s = side >> 1
        while s > 0:
            rx = 1 if (x & s) > 0 else 0
            ry = 1 if (y & s) > 0 else 0
            d += np.uint64(s) * np.uint64(s) * np.uint64((3 * rx) ^ ry)
            if ry == 0:
                if rx == 1:
                    x = side - 1 - x
                    y = side - 1 - y
                x, y = y, x
            s >>= 1
        out[k] = d
    return out


def hilbert_codes(xs: np.ndarray, ys: np.ndarray, levels: int = HILBERT_LEVELS) -> np.ndarray:
    """Hilbert index of each point on a square grid covering the bounding box."""
    xmin, ymin = xs.min(), ys.min()
    extent = max(xs.max() - xmin, ys.max() - ymin)
    top = float((1 << levels) - 1)
    if extent > 0:
        gx = np.floor((xs - xmin) / extent * top)
        gy = np.floor((ys - ymin) / extent * top)
    else:
        gx = np.zeros_like(xs)
        gy = np.zeros_like(ys)
    gx = np.clip(gx, 0, top).astype(np.int64)
    gy = np.clip(gy, 0, top).astype(np.int64)
    return _hilbert_codes(gx, gy, levels)


def hilbert_sort(points) -> HilbertOrderedPointSet:
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2 or pts.shape[0] == 0:
        raise ValueError("expected a nonempty (n, 2) coordinate array")
    if not np.all(np.isfinite(pts)):
        bad = int(np.flatnonzero(~np.all(np.isfinite(pts), axis=1))[0])
        raise ValueError(f"non-finite coordinate at point {bad}")
    xs = np.ascontiguousarray(pts[:, 0])
    ys = np.ascontiguousarray(pts[:, 1])
    codes = hilbert_codes(xs, ys)
    order = np.lexsort((ys, xs, codes))
    sx, sy = xs[order], ys[order]
    dup = np.flatnonzero((sx[1:] == sx[:-1]) & (sy[1:] == sy[:-1]))
    if dup.size:
        a, b = sorted((int(order[dup[0]]), int(order[dup[0] + 1])))
        raise DuplicatePointError(f"duplicate points at input positions {a} and {b}: ({sx[dup[0]]}, {sy[dup[0]]})")
    return HilbertOrderedPointSet(
        xs=np.ascontiguousarray(sx),
        ys=np.ascontiguousarray(sy),
        original_index=order.astype(np.int64),
        bounds=(float(xs.min()), float(ys.min()), float(xs.max()), float(ys.max())),
    )


@njit(cache=True)
def _build_tree(xs, ys, codes, cap, levels):
    n = xs.shape[0]
    maxn = 2 * n + 2
    lo = np.empty(maxn, dtype=np.int64)
    hi = np.empty(maxn, dtype=np.int64)
    lvl = np.empty(maxn, dtype=np.int64)
    box = np.empty((maxn, 4))
    cs = np.zeros(maxn, dtype=np.int64)
    cc = np.zeros(maxn, dtype=np.int64)
    lo[0] = 0
    hi[0] = n
    lvl[0] = 0
    m = 1
    k = 0
    while k < m:
        a = lo[k]
        b = hi[k]
        x0 = xs[a]
        x1 = xs[a]
        y0 = ys[a]
        y1 = ys[a]
        for p in range(a + 1, b):
            x0 = min(x0, xs[p])
            x1 = max(x1, xs[p])
            y0 = min(y0, ys[p])
            y1 = max(y1, ys[p])
        box[k, 0] = x0
        box[k, 1] = y0
        box[k, 2] = x1
        box[k, 3] = y1
        if b - a > cap:
            level = lvl[k]
            # skip levels where every point falls into the same quadrant
            while level < levels:
                shift = np.uint64(2 * (levels - 1 - level))
                if (codes[a] >> shift) != (codes[b - 1] >> shift):
                    break
                level += 1
            if level < levels:
                shift = np.uint64(2 * (levels - 1 - level))
                cs[k] = m
                start = a
                cur = codes[a] >> shift
                for p in range(a + 1, b + 1):
                    if p == b or (codes[p] >> shift) != cur:
                        lo[m] = start
                        hi[m] = p
                        lvl[m] = level + 1
                        m += 1
                        if p < b:
                            start = p
                            cur = codes[p] >> shift
                cc[k] = m - cs[k]
        k += 1
    return lo[:m].copy(), hi[:m].copy(), box[:m].copy(), cs[:m].copy(), cc[:m].copy()


def build_quadtree(pts: HilbertOrderedPointSet, leaf_capacity: int = DEFAULT_LEAF_CAPACITY) -> QuadTree:
    if leaf_capacity < 1:
        raise ValueError("leaf_capacity must be at least 1")
    codes = hilbert_codes(pts.xs, pts.ys)
    lo, hi, box, cs, cc = _build_tree(pts.xs, pts.ys, codes, leaf_capacity, HILBERT_LEVELS)
    return QuadTree(pts.xs, pts.ys, lo, hi, box, cs, cc, leaf_capacity)


@njit(cache=True, inline="always")
def box_sq_dist(sx, sy, x0, y0, x1, y1):
    dx = 0.0
    if sx < x0:
        dx = x0 - sx
    elif sx > x1:
        dx = sx - x1
    dy = 0.0
    if sy < y0:
        dy = y0 - sy
    elif sy > y1:
        dy = sy - y1
    return dx * dx + dy * dy


@njit(cache=True)
def box_pseudo_interval(sx, sy, x0, y0, x1, y1):
    """Smallest pseudo-angle arc (lo, hi) seen from s enclosing the box.

    Returns (lo, hi, full) where lo > hi marks an arc that wraps through the
    +-2 discontinuity and full=True means s lies in the closed box.
    """
    if x0 <= sx <= x1 and y0 <= sy <= y1:
        return -2.0, 2.0, True
    a0 = pseudo_angle_nb(x0 - sx, y0 - sy)
    a1 = pseudo_angle_nb(x1 - sx, y0 - sy)
    a2 = pseudo_angle_nb(x0 - sx, y1 - sy)
    a3 = pseudo_angle_nb(x1 - sx, y1 - sy)
    # sorting network
    if a0 > a1:
        a0, a1 = a1, a0
    if a2 > a3:
        a2, a3 = a3, a2
    if a0 > a2:
        a0, a2 = a2, a0
    if a1 > a3:
        a1, a3 = a3, a1
    if a1 > a2:
        a1, a2 = a2, a1
    # the box spans less than half a turn, so the arc is the complement of the
    # largest circular gap between corner angles
    best = a0 + 4.0 - a3
    lo = a0
    hi = a3
    if a1 - a0 > best:
        best = a1 - a0
        lo = a1
        hi = a0
    if a2 - a1 > best:
        best = a2 - a1
        lo = a2
        hi = a1
    if a3 - a2 > best:
        lo = a3
        hi = a2
    return lo, hi, False


PruneFn = Callable[[tuple[float, float]], bool]


def _query_xy(tree: QuadTree, s) -> tuple[float, float, int]:
    if isinstance(s, (int, np.integer)):
        return float(tree.xs[s]), float(tree.ys[s]), int(s)
    return float(s[0]), float(s[1]), -1


def incremental_nearest(tree: QuadTree, s, prune: PruneFn | None = None) -> Iterator[tuple[int, float]]:
    """Yield (point id, squared distance) in nondecreasing distance from s.

    `s` is a point id (skipped in the output) or an (x, y) location. Before a
    node or point is enqueued, `prune` receives its enclosing pseudo-angle
    interval (lo, hi) as seen from s; lo > hi denotes an arc across the +-2
    seam and (-2, 2) the full circle. A true result discards it.
    """
    sx, sy, sid = _query_xy(tree, s)
    box = tree.box
    heap: list[tuple[float, int, int]] = []

    def push_node(k: int) -> None:
        x0, y0, x1, y1 = box[k]
        lo, hi, _ = box_pseudo_interval(sx, sy, x0, y0, x1, y1)
        if prune is not None and prune((lo, hi)):
            return
        heapq.heappush(heap, (box_sq_dist(sx, sy, x0, y0, x1, y1), 0, k))

    push_node(0)
    while heap:
        d2, kind, k = heapq.heappop(heap)
        if kind == 1:
            yield k, d2
            continue
        c = int(tree.child_count[k])
        if c:
            first = int(tree.child_start[k])
            for ch in range(first, first + c):
                push_node(ch)
            continue
        for p in range(int(tree.lo[k]), int(tree.hi[k])):
            if p == sid:
                continue
            dx = float(tree.xs[p]) - sx
            dy = float(tree.ys[p]) - sy
            if prune is not None:
                if dx == 0.0 and dy == 0.0:
                    if prune((-2.0, 2.0)):
                        continue
                else:
                    a = float(pseudo_angle_nb(dx, dy))
                    if prune((a, a)):
                        continue
            heapq.heappush(heap, (dx * dx + dy * dy, 1, p))


def range_query(tree: QuadTree, x0: float, y0: float, x1: float, y1: float) -> list[int]:
    """Ids of points in the closed box [x0, x1] x [y0, y1]."""
    out = []
    stack = [0]
    while stack:
        k = stack.pop()
        bx0, by0, bx1, by1 = tree.box[k]
        if bx0 > x1 or bx1 < x0 or by0 > y1 or by1 < y0:
            continue
        c = int(tree.child_count[k])
        if c:
            first = int(tree.child_start[k])
            stack.extend(range(first, first + c))
            continue
        for p in range(int(tree.lo[k]), int(tree.hi[k])):
            if x0 <= tree.xs[p] <= x1 and y0 <= tree.ys[p] <= y1:
                out.append(p)
    return sorted(out)
