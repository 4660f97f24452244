"""LMT-skeleton: certificate search, the invalidation loop, the crossing-free
pass that marks edges certain, and the stricter LMT+ refinement.

Triangle scans walk the full candidate graph and then discard triangles that
use an impossible edge ("static" scanning). The available triangles then only
shrink as edges die, so the fixpoint is unique and independent of processing
order or thread count. `skip_impossible=True` instead steps over impossible
edges during the walk itself.
"""
from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from mwt.geom import compare_sq_lengths, orient_sign, properly_intersect_nb
from mwt.halfedge import (
    CERTAIN, IMPOSSIBLE, POSSIBLE, SCAN_DONE, SCAN_FOUND, SCAN_INIT, HalfEdgeGraph,
)
from mwt.spatial import QuadTree


@dataclass(frozen=True)
class LmtOptions:
    skip_impossible: bool = False  # step over impossible edges while scanning


@dataclass
class LmtStats:
    n: int
    possible_after_lmt: int = 0
    possible_after_lmt_plus: int = 0
    certain_after_lmt: int = 0
    certain_after_lmt_plus: int = 0
    ms_init: float = 0.0
    ms_loop: float = 0.0
    ms_lmt_plus: float = 0.0
    root_deferred: int = 0  # edges handed to the partition root (0 when run serially)

    def row(self) -> dict:
        return dict(self.__dict__)


# ---------------------------------------------------------------------------
# triangle scan


@njit(cache=True)
def _scan_step(xs, ys, tgt, nxt, js, eid, status, h, s, t, i, j, state, skip):
    """Advance the scan of half-edge h = s->t to its next left triangle.

    (i, j) are the current half-edges out of s and t. Returns the new
    (state, i, j); state is SCAN_FOUND when tgt[i] == tgt[j].
    """
    if state == SCAN_DONE:
        return state, i, j
    if state == SCAN_INIT:
        i = nxt[h]
        j = js[h]
        if j < 0 or i == h:
            return SCAN_DONE, i, j
    else:
        i = nxt[i]
    sx = xs[s]
    sy = ys[s]
    tx = xs[t]
    ty = ys[t]
    while True:
        if i == h:
            return SCAN_DONE, i, j
        u = tgt[i]
        if orient_sign(sx, sy, tx, ty, xs[u], ys[u]) <= 0:
            return SCAN_DONE, i, j
        v = tgt[j]
        if orient_sign(sx, sy, tx, ty, xs[v], ys[v]) <= 0:
            return SCAN_DONE, i, j
        if skip:
            if status[eid[i]] == IMPOSSIBLE:
                i = nxt[i]
                continue
            if status[eid[j]] == IMPOSSIBLE:
                j = nxt[j]
                continue
        if u == v:
            if status[eid[i]] != IMPOSSIBLE and status[eid[j]] != IMPOSSIBLE:
                return SCAN_FOUND, i, j
            i = nxt[i]
            continue
        if orient_sign(tx, ty, xs[v], ys[v], xs[u], ys[u]) > 0:
            j = nxt[j]
        else:
            i = nxt[i]


@njit(cache=True, inline="always")
def _locally_minimal(sx, sy, tx, ty, ux, uy, wx, wy):
    """Edge st with apex u on its left and w on its right."""
    o1 = orient_sign(ux, uy, wx, wy, sx, sy)
    o2 = orient_sign(ux, uy, wx, wy, tx, ty)
    if o1 * o2 >= 0:
        return True  # quadrilateral not strictly convex
    return compare_sq_lengths(sx, sy, tx, ty, ux, uy, wx, wy) <= 0


@njit(cache=True, inline="always")
def _cert_uses(twin, eid, si, sj, sst, ph, k):
    tw = twin[ph]
    if sst[ph] != SCAN_FOUND or sst[tw] != SCAN_FOUND:
        return False
    return eid[si[ph]] == k or eid[sj[ph]] == k or eid[si[tw]] == k or eid[sj[tw]] == k


@njit(cache=True)
def _grow(a):
    b = np.empty(2 * a.shape[0] + 16, dtype=a.dtype)
    b[: a.shape[0]] = a
    return b


@njit(cache=True, nogil=True)
def _lmt_run(xs, ys, off, src, tgt, twin, nxt, js, eid, primary, status, hull, si, sj, sst, onstack,
             seeds, lo, hi, skip, dry, found_out):
    """Run the invalidation loop on edges with both endpoints in [lo, hi).

    Seeds and restacked edges outside the range are returned unprocessed.
    Returns (deferred edge ids, number of edges marked impossible). With
    `dry`, each seed is only checked: found_out[x] records whether seed x
    holds a certificate, and nothing is killed or restacked.

    The certificate search is written out in place: a helper taking the graph
    arrays would pay one reference-count round trip per array per call.
    """
    stack = np.empty(64, dtype=np.int64)
    sp = 0
    deferred = np.empty(64, dtype=np.int64)
    nd = 0
    killed = 0
    pos = 0
    ns = seeds.shape[0]
    while True:
        if sp > 0:
            sp -= 1
            k = stack[sp]
            onstack[k] = False
        elif pos < ns:
            k = seeds[pos]
            pos += 1
        else:
            break
        if hull[k]:
            if dry:
                found_out[pos - 1] = True
            continue
        if status[k] == IMPOSSIBLE:
            continue
        h = primary[k]
        s = src[h]
        t = tgt[h]
        if s < lo or s >= hi or t < lo or t >= hi:
            if nd == deferred.shape[0]:
                deferred = _grow(deferred)
            deferred[nd] = k
            nd += 1
            continue

        # nested scan: left triangles of h outside, left triangles of its twin inside
        tw = twin[h]
        sx = xs[s]
        sy = ys[s]
        tx = xs[t]
        ty = ys[t]
        cur = h
        step = False
        if sst[h] == SCAN_INIT:
            sst[tw] = SCAN_INIT
            step = True
        while True:
            if step:
                step = False
                st = sst[cur]
                if st != SCAN_DONE:
                    if cur == h:
                        ax, ay, bx, by = sx, sy, tx, ty
                    else:
                        ax, ay, bx, by = tx, ty, sx, sy
                    if st == SCAN_INIT:
                        i = nxt[cur]
                        j = js[cur]
                        st = SCAN_DONE if (j < 0 or i == cur) else SCAN_FOUND
                    else:
                        i = nxt[si[cur]]
                        j = sj[cur]
                    while st != SCAN_DONE:
                        if i == cur:
                            st = SCAN_DONE
                            break
                        u = tgt[i]
                        if orient_sign(ax, ay, bx, by, xs[u], ys[u]) <= 0:
                            st = SCAN_DONE
                            break
                        v = tgt[j]
                        if orient_sign(ax, ay, bx, by, xs[v], ys[v]) <= 0:
                            st = SCAN_DONE
                            break
                        if skip:
                            if status[eid[i]] == IMPOSSIBLE:
                                i = nxt[i]
                                continue
                            if status[eid[j]] == IMPOSSIBLE:
                                j = nxt[j]
                                continue
                        if u == v:
                            if status[eid[i]] != IMPOSSIBLE and status[eid[j]] != IMPOSSIBLE:
                                st = SCAN_FOUND
                                break
                            i = nxt[i]
                            continue
                        if orient_sign(bx, by, xs[v], ys[v], xs[u], ys[u]) > 0:
                            j = nxt[j]
                        else:
                            i = nxt[i]
                    si[cur] = i
                    sj[cur] = j
                    sst[cur] = st
            if sst[h] == SCAN_DONE:
                found = False
                break
            if status[eid[si[h]]] == IMPOSSIBLE or status[eid[sj[h]]] == IMPOSSIBLE:
                sst[tw] = SCAN_INIT
                cur = h
                step = True
                continue
            if sst[tw] == SCAN_INIT:
                cur = tw
                step = True
                continue
            if sst[tw] == SCAN_FOUND:
                if status[eid[si[tw]]] != IMPOSSIBLE and status[eid[sj[tw]]] != IMPOSSIBLE:
                    u = tgt[si[h]]
                    w = tgt[si[tw]]
                    if _locally_minimal(sx, sy, tx, ty, xs[u], ys[u], xs[w], ys[w]):
                        found = True
                        break
                cur = tw
                step = True
                continue
            sst[tw] = SCAN_INIT
            cur = h
            step = True

        if dry:
            found_out[pos - 1] = found
            continue
        if found:
            continue
        status[k] = IMPOSSIBLE
        killed += 1
        for v in (s, t):
            for g in range(off[v], off[v + 1]):
                f = eid[g]
                if f == k or status[f] == IMPOSSIBLE or hull[f] or onstack[f]:
                    continue
                pf = primary[f]
                tf = twin[pf]
                if sst[pf] != SCAN_FOUND or sst[tf] != SCAN_FOUND:
                    continue
                if eid[si[pf]] != k and eid[sj[pf]] != k and eid[si[tf]] != k and eid[sj[tf]] != k:
                    continue
                a = src[pf]
                b = tgt[pf]
                if a < lo or a >= hi or b < lo or b >= hi:
                    if nd == deferred.shape[0]:
                        deferred = _grow(deferred)
                    deferred[nd] = f
                    nd += 1
                else:
                    if sp == stack.shape[0]:
                        stack = _grow(stack)
                    stack[sp] = f
                    sp += 1
                    onstack[f] = True
    return deferred[:nd].copy(), killed


_NO_RESULTS = np.zeros(0, dtype=np.bool_)


def _arrays(g: HalfEdgeGraph):
    return (g.xs, g.ys, g.vertex_offsets, g.source, g.target, g.twin, g.next, g.j_start, g.edge_id,
            g.primary, g.status, g.hull, g.scan_i, g.scan_j, g.scan_state)


def initial_seeds(graph: HalfEdgeGraph, lo: int = 0, hi: int | None = None) -> np.ndarray:
    """Non-hull edges whose primary half-edge leaves a vertex in [lo, hi), in CSR order."""
    hi = graph.num_vertices if hi is None else hi
    a, b = graph.vertex_offsets[lo], graph.vertex_offsets[hi]
    hs = np.arange(a, b, dtype=np.int64)
    k = graph.edge_id[hs].astype(np.int64)
    keep = (graph.primary[k] == hs) & ~graph.hull[k]
    return k[keep]


def lmt_loop(graph: HalfEdgeGraph, stack=None, options: LmtOptions = LmtOptions()) -> int:
    """Invalidate edges until every survivor holds a certificate; returns the kill count.

    `stack` is an optional sequence of edge ids to examine (default: every
    non-hull edge in CSR order).
    """
    seeds = initial_seeds(graph) if stack is None else np.asarray(stack, dtype=np.int64)
    onstack = np.zeros(graph.num_edges, dtype=np.bool_)
    _, killed = _lmt_run(*_arrays(graph), onstack, seeds, 0, graph.num_vertices, options.skip_impossible,
                         False, _NO_RESULTS)
    return int(killed)


def advance(graph: HalfEdgeGraph, h: int, options: LmtOptions = LmtOptions()) -> tuple[int, int, int] | None:
    """Move the stored scan of half-edge h to its next left triangle.

    Returns (source, target, apex) or None once the scan is exhausted. The
    triangle need not be empty when some of its neighbours lack candidate edges.
    """
    g = graph
    st, i, j = _scan_step(g.xs, g.ys, g.target, g.next, g.j_start, g.edge_id, g.status, h, int(g.source[h]),
                          int(g.target[h]), int(g.scan_i[h]), int(g.scan_j[h]), int(g.scan_state[h]),
                          options.skip_impossible)
    g.scan_i[h], g.scan_j[h], g.scan_state[h] = i, j, st
    if st != SCAN_FOUND:
        return None
    return int(g.source[h]), int(g.target[h]), int(g.target[i])


def left_triangles(graph: HalfEdgeGraph, h: int, options: LmtOptions = LmtOptions()) -> list[int]:
    """Apexes of every triangle a fresh scan of h reports, without touching stored state."""
    g = graph
    out = []
    st, i, j = SCAN_INIT, 0, 0
    s, t = int(g.source[h]), int(g.target[h])
    while True:
        st, i, j = _scan_step(g.xs, g.ys, g.target, g.next, g.j_start, g.edge_id, g.status, h, s, t, i, j, st,
                              options.skip_impossible)
        if st != SCAN_FOUND:
            return out
        out.append(int(g.target[i]))


def find_certificate(graph: HalfEdgeGraph, k: int, options: LmtOptions = LmtOptions()) -> bool:
    """Resume the two-sided scan of edge k until a certificate turns up."""
    out = np.zeros(1, dtype=np.bool_)
    onstack = np.zeros(0, dtype=np.bool_)
    _lmt_run(*_arrays(graph), onstack, np.array([k], dtype=np.int64), 0, graph.num_vertices,
             options.skip_impossible, True, out)
    return bool(out[0])


def certificate(graph: HalfEdgeGraph, k: int) -> tuple[int, int] | None:
    """Apexes (left, right) of the certificate currently held by edge k."""
    h = graph.primary[k]
    tw = graph.twin[h]
    if graph.scan_state[h] != SCAN_FOUND or graph.scan_state[tw] != SCAN_FOUND:
        return None
    return int(graph.target[graph.scan_i[h]]), int(graph.target[graph.scan_i[tw]])


def restack_edges(graph: HalfEdgeGraph, k: int, stack: list[int], onstack: np.ndarray | None = None) -> None:
    """Push every live edge at either endpoint of k whose certificate uses k."""
    g = graph
    h = g.primary[k]
    for v in (int(g.source[h]), int(g.target[h])):
        for e in g.outgoing(v):
            f = int(g.edge_id[e])
            if f == k or g.status[f] == IMPOSSIBLE or g.hull[f]:
                continue
            if onstack is not None and onstack[f]:
                continue
            if not _cert_uses(g.twin, g.edge_id, g.scan_i, g.scan_j, g.scan_state, g.primary[f], k):
                continue
            if onstack is None:
                if f in stack:
                    continue
            else:
                onstack[f] = True
            stack.append(f)


# ---------------------------------------------------------------------------
# certain edges


@njit(cache=True)
def _edge_sq_len(xs, ys, src, tgt, primary):
    m = primary.shape[0]
    out = np.empty(m)
    for k in range(m):
        h = primary[k]
        dx = xs[tgt[h]] - xs[src[h]]
        dy = ys[tgt[h]] - ys[src[h]]
        out[k] = dx * dx + dy * dy
    return out


@njit(cache=True)
def _short_bounds(off, eid, short, sqlen, tlo, thi, tcs, tcc):
    """Per-node and per-vertex squared length of the longest short edge."""
    n = off.shape[0] - 1
    m = tlo.shape[0]
    nmax = np.zeros(m + n)
    for v in range(n):
        best = 0.0
        for g in range(off[v], off[v + 1]):
            f = eid[g]
            if short[f] and sqlen[f] > best:
                best = sqlen[f]
        nmax[m + v] = best
    for k in range(m - 1, -1, -1):
        best = 0.0
        if tcc[k] == 0:
            for p in range(tlo[k], thi[k]):
                best = max(best, nmax[m + p])
        else:
            for c in range(tcs[k], tcs[k] + tcc[k]):
                best = max(best, nmax[c])
        nmax[k] = best
    return nmax


@njit(cache=True, nogil=True)
def _cross_scan(xs, ys, off, src, tgt, eid, primary, status, short, crossed,
                tlo, thi, tbox, tcs, tcc, nmax, queries, mark_all):
    """Test query edges against every short live edge near them.

    A query that is crossed gets flagged. With mark_all, every possible short
    edge crossing a query is flagged as well (used for the long queries).
    """
    stack = np.empty(256, dtype=np.int64)
    nodes = tlo.shape[0]
    for x in range(queries.shape[0]):
        k = queries[x]
        h = primary[k]
        a = src[h]
        b = tgt[h]
        ax = xs[a]
        ay = ys[a]
        bx = xs[b]
        by = ys[b]
        x0 = min(ax, bx)
        x1 = max(ax, bx)
        y0 = min(ay, by)
        y1 = max(ay, by)
        ux = bx - ax
        uy = by - ay
        ulen2 = ux * ux + uy * uy
        done = False
        sp = 1
        stack[0] = 0
        while sp > 0 and not done:
            sp -= 1
            node = stack[sp]
            dx = max(0.0, max(tbox[node, 0] - x1, x0 - tbox[node, 2]))
            dy = max(0.0, max(tbox[node, 1] - y1, y0 - tbox[node, 3]))
            if dx * dx + dy * dy > nmax[node] * (1.0 + 1e-9):
                continue
            if tcc[node] > 0:
                if sp + tcc[node] > stack.shape[0]:
                    stack = _grow(stack)
                for c in range(tcs[node], tcs[node] + tcc[node]):
                    stack[sp] = c
                    sp += 1
                continue
            for p in range(tlo[node], thi[node]):
                if p == a or p == b:
                    continue
                px = xs[p]
                py = ys[p]
                dx = max(0.0, max(px - x1, x0 - px))
                dy = max(0.0, max(py - y1, y0 - py))
                vm = nmax[nodes + p] * (1.0 + 1e-9)
                if dx * dx + dy * dy > vm:
                    continue
                # a crossing edge has exactly one endpoint strictly left of a->b;
                # enumerate from that one (float side tests with generous slack)
                l1 = ux * (py - ay)
                l2 = uy * (px - ax)
                cp = l1 - l2
                tol = 1e-12 * (abs(l1) + abs(l2))
                if cp < -tol or cp * cp > vm * ulen2 * (1.0 + 1e-9) + tol * tol:
                    continue
                for g in range(off[p], off[p + 1]):
                    f = eid[g]
                    if not short[f]:
                        continue
                    q = tgt[g]
                    if q == a or q == b:
                        continue
                    qx = xs[q]
                    qy = ys[q]
                    l1 = ux * (qy - ay)
                    l2 = uy * (qx - ax)
                    if l1 - l2 > 1e-12 * (abs(l1) + abs(l2)):
                        continue
                    if max(px, qx) < x0 or min(px, qx) > x1 or max(py, qy) < y0 or min(py, qy) > y1:
                        continue
                    if not properly_intersect_nb(ax, ay, bx, by, px, py, qx, qy):
                        continue
                    crossed[k] = True
                    if not mark_all:
                        done = True
                        break
                    if status[f] == POSSIBLE:
                        crossed[f] = True
                if done:
                    break


@njit(cache=True)
def _cross_long(xs, ys, src, tgt, primary, status, crossed, longs):
    # long edges are few; compare all pairs
    L = longs.shape[0]
    for x in range(L):
        h = primary[longs[x]]
        a = src[h]
        b = tgt[h]
        for y in range(x + 1, L):
            g = primary[longs[y]]
            c = src[g]
            d = tgt[g]
            if c == a or c == b or d == a or d == b:
                continue
            if properly_intersect_nb(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c], xs[d], ys[d]):
                crossed[longs[x]] = True
                crossed[longs[y]] = True


LONG_EDGE_QUANTILE = 0.999


def crossed_edges(graph: HalfEdgeGraph, tree: QuadTree, threads: int = 1) -> np.ndarray:
    """Flag per edge: some live (non-impossible) edge properly crosses it.

    Only possible edges are guaranteed to carry a correct flag; hull edges
    cannot be crossed and are skipped.
    """
    g = graph
    sqlen = _edge_sq_len(g.xs, g.ys, g.source, g.target, g.primary)
    live = (g.status != IMPOSSIBLE) & ~g.hull
    crossed = np.zeros(g.num_edges, dtype=np.bool_)
    if not live.any():
        return crossed
    thr = np.quantile(sqlen[live], LONG_EDGE_QUANTILE)
    short = live & (sqlen <= thr)
    longs = np.flatnonzero(live & ~short).astype(np.int64)
    nmax = _short_bounds(g.vertex_offsets, g.edge_id, short, sqlen, tree.lo, tree.hi,
                         tree.child_start, tree.child_count)
    args = (g.xs, g.ys, g.vertex_offsets, g.source, g.target, g.edge_id, g.primary, g.status, short, crossed,
            tree.lo, tree.hi, tree.box, tree.child_start, tree.child_count, nmax)
    queries = np.flatnonzero(short & (g.status == POSSIBLE)).astype(np.int64)
    if threads <= 1 or queries.size < 10000:
        _cross_scan(*args, queries, False)
    else:
        parts = np.array_split(queries, 4 * threads)
        with ThreadPoolExecutor(threads) as ex:
            list(ex.map(lambda q: _cross_scan(*args, q, False), parts))
    # long edges mark the short edges they cross; serial, since flags of other edges are written
    _cross_scan(*args, longs, True)
    _cross_long(g.xs, g.ys, g.source, g.target, g.primary, g.status, crossed, longs)
    return crossed


def mark_certain_pass(graph: HalfEdgeGraph, tree: QuadTree, threads: int = 1) -> int:
    """Mark possible edges crossed by no live edge (and all hull edges) certain."""
    g = graph
    crossed = crossed_edges(g, tree, threads)
    target = (g.status == POSSIBLE) & (g.hull | ~crossed)
    g.status[target] = CERTAIN
    return int(np.count_nonzero(target))


# ---------------------------------------------------------------------------
# LMT+


@njit(cache=True)
def _supported(xs, ys, tgt, twin, nxt, js, eid, status, hull, src, f_half, x, skip):
    """Does edge f (half-edge f_half, triangle apex x on one side) have a
    locally minimal quadrilateral containing that triangle?"""
    k = eid[f_half]
    if hull[k]:
        return True
    a = src[f_half]
    b = tgt[f_half]
    # scan the side of f away from x
    h = f_half
    if orient_sign(xs[a], ys[a], xs[b], ys[b], xs[x], ys[x]) > 0:
        h = twin[f_half]
        a, b = b, a
    st = SCAN_INIT
    i = 0
    j = 0
    while True:
        st, i, j = _scan_step(xs, ys, tgt, nxt, js, eid, status, h, a, b, i, j, st, skip)
        if st != SCAN_FOUND:
            return False
        # y is left of a->b, x is right of it
        if _locally_minimal(xs[a], ys[a], xs[b], ys[b], xs[tgt[i]], ys[tgt[i]], xs[x], ys[x]):
            return True


@njit(cache=True)
def _lmt_plus_ok(xs, ys, src, tgt, twin, nxt, js, eid, status, hull, h, skip):
    tw = twin[h]
    s = src[h]
    t = tgt[h]
    st1 = SCAN_INIT
    i1 = 0
    j1 = 0
    while True:
        st1, i1, j1 = _scan_step(xs, ys, tgt, nxt, js, eid, status, h, s, t, i1, j1, st1, skip)
        if st1 != SCAN_FOUND:
            return False
        u = tgt[i1]
        if not _supported(xs, ys, tgt, twin, nxt, js, eid, status, hull, src, i1, t, skip):
            continue
        if not _supported(xs, ys, tgt, twin, nxt, js, eid, status, hull, src, j1, s, skip):
            continue
        st2 = SCAN_INIT
        i2 = 0
        j2 = 0
        while True:
            st2, i2, j2 = _scan_step(xs, ys, tgt, nxt, js, eid, status, tw, t, s, i2, j2, st2, skip)
            if st2 != SCAN_FOUND:
                break
            w = tgt[i2]
            if not _locally_minimal(xs[s], ys[s], xs[t], ys[t], xs[u], ys[u], xs[w], ys[w]):
                continue
            if not _supported(xs, ys, tgt, twin, nxt, js, eid, status, hull, src, i2, s, skip):
                continue
            if not _supported(xs, ys, tgt, twin, nxt, js, eid, status, hull, src, j2, t, skip):
                continue
            return True


@njit(cache=True)
def _lmt_plus_run(xs, ys, off, src, tgt, twin, nxt, js, eid, primary, status, hull, seeds, skip):
    m = primary.shape[0]
    onstack = np.zeros(m, dtype=np.bool_)
    stack = np.empty(seeds.shape[0] + 64, dtype=np.int64)
    sp = 0
    for x in range(seeds.shape[0] - 1, -1, -1):
        k = seeds[x]
        if not onstack[k]:
            stack[sp] = k
            sp += 1
            onstack[k] = True
    killed = 0
    while sp > 0:
        sp -= 1
        k = stack[sp]
        onstack[k] = False
        if status[k] != POSSIBLE or hull[k]:
            continue
        h = primary[k]
        if _lmt_plus_ok(xs, ys, src, tgt, twin, nxt, js, eid, status, hull, h, skip):
            continue
        status[k] = IMPOSSIBLE
        killed += 1
        # certificates of certificate edges reach one vertex further out
        for v in (src[h], tgt[h]):
            for g in range(off[v], off[v + 1]):
                if status[eid[g]] == IMPOSSIBLE:
                    continue
                u = tgt[g]
                for g2 in range(off[u], off[u + 1]):
                    f = eid[g2]
                    if status[f] != POSSIBLE or hull[f] or onstack[f]:
                        continue
                    if sp == stack.shape[0]:
                        stack = _grow(stack)
                    stack[sp] = f
                    sp += 1
                    onstack[f] = True
    return killed


def lmt_plus_pass(graph: HalfEdgeGraph, stack=None, options: LmtOptions = LmtOptions()) -> int:
    """Stricter fixpoint over the surviving possible edges; returns the kill count.

    Scans restart from scratch on every check and the stored scan state of the
    base loop is left stale afterwards.
    """
    g = graph
    if stack is None:
        seeds = np.flatnonzero((g.status == POSSIBLE) & ~g.hull).astype(np.int64)
    else:
        seeds = np.asarray(stack, dtype=np.int64)
    return int(_lmt_plus_run(g.xs, g.ys, g.vertex_offsets, g.source, g.target, g.twin, g.next, g.j_start,
                             g.edge_id, g.primary, g.status, g.hull, seeds, options.skip_impossible))


def possible_count(graph: HalfEdgeGraph) -> int:
    return int(np.count_nonzero((graph.status == POSSIBLE) & ~graph.hull))


def certain_count(graph: HalfEdgeGraph) -> int:
    return int(np.count_nonzero(graph.status == CERTAIN))


def run_skeleton(graph: HalfEdgeGraph, tree: QuadTree, lmt_plus: bool = True, threads: int = 1,
                 partition_depth: int | None = None, options: LmtOptions = LmtOptions()) -> LmtStats:
    """Base loop (optionally partitioned), certain pass, then optionally LMT+ and a second certain pass."""
    from mwt.partition import default_depth, parallel_lmt

    stats = LmtStats(n=graph.num_vertices)
    t0 = time.perf_counter()
    depth = default_depth(threads) if partition_depth is None else partition_depth
    if threads <= 1 and partition_depth is None:
        lmt_loop(graph, options=options)
    else:
        stats.root_deferred = parallel_lmt(graph, max_depth=depth, threads=threads, options=options).root_deferred
    mark_certain_pass(graph, tree, threads)
    t1 = time.perf_counter()
    stats.ms_loop = (t1 - t0) * 1e3
    stats.possible_after_lmt = possible_count(graph)
    stats.certain_after_lmt = certain_count(graph)
    if lmt_plus:
        lmt_plus_pass(graph, options=options)
        mark_certain_pass(graph, tree, threads)
        stats.ms_lmt_plus = (time.perf_counter() - t1) * 1e3
    stats.possible_after_lmt_plus = possible_count(graph)
    stats.certain_after_lmt_plus = certain_count(graph)
    return stats
