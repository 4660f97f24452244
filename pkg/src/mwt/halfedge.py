"""Compressed half-edge graph over the candidate edges.

Outgoing half-edges of vertex v occupy ids vertex_offsets[v] .. vertex_offsets[v+1]
and are sorted counter-clockwise by direction, starting just past angle pi
(the pseudo-angle order). Status lives once per undirected edge.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
from numba import njit

from mwt.diamond import CandidateEdgeSet
from mwt.geom import lex_less, orient_sign, pseudo_angle_nb
from mwt.spatial import HilbertOrderedPointSet

POSSIBLE = 0
CERTAIN = 1
IMPOSSIBLE = 2

SCAN_INIT = 0
SCAN_FOUND = 1
SCAN_DONE = 2


class EdgeStatus(enum.IntEnum):
    POSSIBLE = POSSIBLE
    CERTAIN = CERTAIN
    IMPOSSIBLE = IMPOSSIBLE


class CollinearPointsError(ValueError):
    pass


@dataclass
class HalfEdgeGraph:
    xs: np.ndarray
    ys: np.ndarray
    vertex_offsets: np.ndarray  # int64, n + 1
    source: np.ndarray  # int32 per half-edge
    target: np.ndarray
    twin: np.ndarray
    next: np.ndarray
    j_start: np.ndarray  # -1 when target has no neighbour left of the edge
    edge_id: np.ndarray  # undirected id per half-edge
    primary: np.ndarray  # half-edge id of the primary half of each undirected edge
    status: np.ndarray  # int8 per undirected edge
    hull: np.ndarray  # bool per undirected edge
    scan_i: np.ndarray
    scan_j: np.ndarray
    scan_state: np.ndarray  # int8 per half-edge

    @property
    def num_vertices(self) -> int:
        return self.vertex_offsets.shape[0] - 1

    @property
    def num_edges(self) -> int:
        return self.primary.shape[0]

    @property
    def num_half_edges(self) -> int:
        return self.target.shape[0]

    def is_primary(self) -> np.ndarray:
        flag = np.zeros(self.num_half_edges, dtype=bool)
        flag[self.primary] = True
        return flag

    def outgoing(self, v: int) -> range:
        return range(int(self.vertex_offsets[v]), int(self.vertex_offsets[v + 1]))

    def edges(self) -> np.ndarray:
        """(m, 2) array of (source, target) of each primary half-edge."""
        return np.column_stack((self.source[self.primary], self.target[self.primary])).astype(np.int64)

    def find(self, a: int, b: int) -> int:
        """Half-edge id of a -> b, or -1."""
        for h in self.outgoing(a):
            if self.target[h] == b:
                return h
        return -1

    def count(self, status: int) -> int:
        return int(np.count_nonzero(self.status == status))

    def reset_scan(self) -> None:
        self.scan_state[:] = SCAN_INIT

    def copy(self) -> "HalfEdgeGraph":
        mutable = ("status", "hull", "scan_i", "scan_j", "scan_state")
        return HalfEdgeGraph(**{
            k: (v.copy() if k in mutable else v) for k, v in self.__dict__.items()
        })

    def dump_lines(self) -> list[str]:
        names = {POSSIBLE: "possible", CERTAIN: "certain", IMPOSSIBLE: "impossible"}
        e = self.edges()
        return [
            f"{a} {b} {names[int(s)]} {int(h)}"
            for (a, b), s, h in zip(e.tolist(), self.status, self.hull)
        ]

    def validate(self) -> None:
        """Raise AssertionError if a structural invariant is broken."""
        ok = _validate(self.xs, self.ys, self.vertex_offsets, self.source, self.target, self.twin,
                       self.next, self.edge_id, self.primary)
        if ok != 0:
            raise AssertionError(f"half-edge graph invariant {ok} violated")
        if np.any(self.hull & (self.status == IMPOSSIBLE)):
            raise AssertionError("hull edge marked impossible")


@njit(cache=True, inline="always")
def _upper(dx, dy):
    # 0 for directions in the open lower half-plane, which come first in pseudo-angle order
    return 0 if dy < 0.0 else 1


@njit(cache=True)
def direction_before(xs, ys, s, a, b):
    """Exact test: direction s->a precedes s->b in pseudo-angle order."""
    ax = xs[a] - xs[s]
    ay = ys[a] - ys[s]
    bx = xs[b] - xs[s]
    by = ys[b] - ys[s]
    ha = _upper(ax, ay)
    hb = _upper(bx, by)
    if ha != hb:
        return ha < hb
    o = orient_sign(xs[s], ys[s], xs[a], ys[a], xs[b], ys[b])
    if o != 0:
        return o > 0
    # opposite directions on the x-axis: angle 0 precedes angle pi
    return ax > 0.0 and bx < 0.0


@njit(cache=True)
def _build(xs, ys, a, b):
    n = xs.shape[0]
    m = a.shape[0]
    h2 = 2 * m
    deg = np.zeros(n + 1, dtype=np.int64)
    for k in range(m):
        deg[a[k] + 1] += 1
        deg[b[k] + 1] += 1
    off = np.cumsum(deg)
    fill = off[:-1].copy()
    src = np.empty(h2, dtype=np.int32)
    tgt = np.empty(h2, dtype=np.int32)
    eid = np.empty(h2, dtype=np.int32)
    key = np.empty(h2)
    for k in range(m):
        for s, t in ((a[k], b[k]), (b[k], a[k])):
            h = fill[s]
            fill[s] += 1
            src[h] = s
            tgt[h] = t
            eid[h] = k
            key[h] = pseudo_angle_nb(xs[t] - xs[s], ys[t] - ys[s])
    # radial sort per vertex: float key first, then exact insertion-sort repair
    for v in range(n):
        lo = off[v]
        hi = off[v + 1]
        if hi - lo < 2:
            continue
        order = np.argsort(key[lo:hi], kind="mergesort")
        tt = tgt[lo:hi][order].copy()
        ee = eid[lo:hi][order].copy()
        for x in range(1, hi - lo):
            ct = tt[x]
            ce = ee[x]
            y = x - 1
            while y >= 0 and direction_before(xs, ys, v, ct, tt[y]):
                tt[y + 1] = tt[y]
                ee[y + 1] = ee[y]
                y -= 1
            tt[y + 1] = ct
            ee[y + 1] = ce
        tgt[lo:hi] = tt
        eid[lo:hi] = ee
    first = np.full(m, -1, dtype=np.int64)
    twin = np.empty(h2, dtype=np.int32)
    for h in range(h2):
        k = eid[h]
        if first[k] < 0:
            first[k] = h
        else:
            twin[h] = first[k]
            twin[first[k]] = h
    nxt = np.empty(h2, dtype=np.int32)
    for v in range(n):
        for h in range(off[v], off[v + 1]):
            nxt[h] = h + 1 if h + 1 < off[v + 1] else off[v]
    primary = np.empty(m, dtype=np.int64)
    for h in range(h2):
        s = src[h]
        t = tgt[h]
        if lex_less(xs[s], ys[s], xs[t], ys[t]):
            primary[eid[h]] = h
    js = np.full(h2, -1, dtype=np.int32)
    for h in range(h2):
        s = src[h]
        t = tgt[h]
        tw = twin[h]
        g = nxt[tw]
        while g != tw:
            u = tgt[g]
            if orient_sign(xs[s], ys[s], xs[t], ys[t], xs[u], ys[u]) > 0:
                js[h] = g
                break
            g = nxt[g]
    return off, src, tgt, twin, nxt, js, eid, primary


@njit(cache=True)
def _validate(xs, ys, off, src, tgt, twin, nxt, eid, primary):
    n = off.shape[0] - 1
    for v in range(n):
        for h in range(off[v], off[v + 1]):
            if src[h] != v:
                return 1
            if twin[twin[h]] != h or src[twin[h]] != tgt[h] or tgt[twin[h]] != v:
                return 2
            if eid[twin[h]] != eid[h]:
                return 3
            if nxt[h] < off[v] or nxt[h] >= off[v + 1]:
                return 4
            if h + 1 < off[v + 1] and not direction_before(xs, ys, v, tgt[h], tgt[h + 1]):
                return 5
    for k in range(primary.shape[0]):
        h = primary[k]
        if eid[h] != k or not lex_less(xs[src[h]], ys[src[h]], xs[tgt[h]], ys[tgt[h]]):
            return 6
    return 0


def build_graph(pts: HilbertOrderedPointSet, cand: CandidateEdgeSet) -> HalfEdgeGraph:
    n = len(pts)
    if n < 3:
        raise ValueError("need at least 3 points")
    if len(cand) == 0:
        raise ValueError("empty candidate edge set")
    a = np.ascontiguousarray(cand.edges[:, 0], dtype=np.int64)
    b = np.ascontiguousarray(cand.edges[:, 1], dtype=np.int64)
    off, src, tgt, twin, nxt, js, eid, primary = _build(pts.xs, pts.ys, a, b)
    m = a.shape[0]
    return HalfEdgeGraph(
        xs=pts.xs, ys=pts.ys, vertex_offsets=off, source=src, target=tgt, twin=twin, next=nxt,
        j_start=js, edge_id=eid, primary=primary,
        status=np.zeros(m, dtype=np.int8), hull=np.zeros(m, dtype=bool),
        scan_i=np.zeros(2 * m, dtype=np.int32), scan_j=np.zeros(2 * m, dtype=np.int32),
        scan_state=np.zeros(2 * m, dtype=np.int8),
    )


@njit(cache=True)
def _hull_chain(xs, ys, order):
    """Monotone chain keeping collinear boundary points; CCW, first vertex not repeated."""
    n = order.shape[0]
    out = np.empty(2 * n + 1, dtype=np.int64)
    k = 0
    for idx in range(n):
        p = order[idx]
        while k >= 2 and orient_sign(xs[out[k - 2]], ys[out[k - 2]], xs[out[k - 1]], ys[out[k - 1]],
                                     xs[p], ys[p]) < 0:
            k -= 1
        out[k] = p
        k += 1
    low = k + 1
    for idx in range(n - 2, -1, -1):
        p = order[idx]
        while k >= low and orient_sign(xs[out[k - 2]], ys[out[k - 2]], xs[out[k - 1]], ys[out[k - 1]],
                                       xs[p], ys[p]) < 0:
            k -= 1
        out[k] = p
        k += 1
    return out[: k - 1].copy()


@njit(cache=True)
def _all_collinear(xs, ys, order):
    a = order[0]
    b = order[order.shape[0] - 1]
    for p in order:
        if orient_sign(xs[a], ys[a], xs[b], ys[b], xs[p], ys[p]) != 0:
            return False
    return True


def convex_hull(xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
    """Vertex ids of the convex hull in CCW order, collinear boundary points included."""
    order = np.lexsort((ys, xs))
    if order.shape[0] < 3 or _all_collinear(xs, ys, order):
        raise CollinearPointsError("all points are collinear; no triangulation exists")
    return _hull_chain(xs, ys, order)


@njit(cache=True)
def _mark_hull(off, tgt, eid, hull_flags, cyc):
    k = cyc.shape[0]
    for x in range(k):
        a = cyc[x]
        b = cyc[(x + 1) % k]
        found = False
        for h in range(off[a], off[a + 1]):
            if tgt[h] == b:
                hull_flags[eid[h]] = True
                found = True
                break
        if not found:
            return x
    return -1


def mark_hull_edges(graph: HalfEdgeGraph, pts: HilbertOrderedPointSet | None = None) -> int:
    """Flag the convex hull edges; returns their number."""
    cyc = convex_hull(graph.xs, graph.ys)
    graph.hull[:] = False
    bad = _mark_hull(graph.vertex_offsets, graph.target, graph.edge_id, graph.hull, cyc)
    if bad >= 0:
        a, b = int(cyc[bad]), int(cyc[(bad + 1) % len(cyc)])
        raise AssertionError(f"hull edge {a}-{b} missing from the candidate set")
    return int(cyc.shape[0])
