"""Candidate edges: all edges with the diamond property, via pruned NN scans.

For each source point s the quadtree is traversed in order of increasing
distance. Discovered points form a ring sorted by angle around s; each pair of
ring neighbours (r, l) spawns a dead sector of directions in which every
sufficiently distant point t is blocked (l lies in the left triangle of st, r
in the right one). Sectors wait in a FIFO until the scan radius passes their
activation distance, then join the set of dead pseudo-angle intervals that
prunes nodes and points. A scan ends once the dead set covers the circle.

Pruned points can still be blockers for later edges, so whenever the ring
reports an empty side whose angular span touches the dead set, that side is
re-checked exactly against the quadtree.
"""
from __future__ import annotations

import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from numba import njit

from mwt.geom import (
    BaseAngleConfig,
    diamond_apex,
    in_diamond_triangle_nb,
    lex_less,
    on_open_segment_nb,
    orient_sign,
    pseudo_angle_nb,
)
from mwt.spatial import HilbertOrderedPointSet, QuadTree, box_pseudo_interval, box_sq_dist

# angular slack used to keep float rounding on the conservative side
MARGIN = 1e-9
_RADIUS_SLACK = 1.0 + 1e-9
_ISET_CAP = 1024
_POINT_TAG = np.int64(1) << 40


@dataclass(frozen=True)
class DeadSector:
    lo: float
    hi: float  # lo > hi marks an arc across the +-2 seam
    squared_radius: float


@dataclass(frozen=True)
class CandidateEdgeSet:
    edges: np.ndarray  # (m, 2) sorted-index pairs with a < b, sorted
    offsets: np.ndarray  # edges[offsets[v]:offsets[v+1]] have a == v

    def __len__(self) -> int:
        return self.edges.shape[0]

    def as_set(self) -> set[tuple[int, int]]:
        return {(int(a), int(b)) for a, b in self.edges}


@dataclass(frozen=True)
class DiamondStats:
    n: int
    edges: int
    edges_per_point: float
    aborted_early: int
    wall_ms: float
    max_intervals: int = 0
    verifications: int = 0
    overturned: int = 0
    degenerate_queries: int = 0
    points_popped: int = 0
    nodes_expanded: int = 0

    def row(self) -> dict:
        return {
            "n": self.n,
            "edges": self.edges,
            "edges_per_point": self.edges_per_point,
            "aborted_early": self.aborted_early,
            "wall_ms": self.wall_ms,
        }


class AngularIntervalSet:
    """Sorted disjoint closed pseudo-angle intervals on the circle (-2, 2]."""

    def __init__(self):
        self.lo = np.empty(_ISET_CAP)
        self.hi = np.empty(_ISET_CAP)
        self.count = 0

    def insert(self, lo: float, hi: float) -> None:
        if lo <= hi:
            self.count = _iset_insert(self.lo, self.hi, self.count, lo, hi)
        else:
            self.count = _iset_insert(self.lo, self.hi, self.count, lo, 2.0)
            self.count = _iset_insert(self.lo, self.hi, self.count, -2.0, hi)

    def covers(self, lo: float, hi: float, margin: float = 0.0) -> bool:
        return bool(_arc_covered(self.lo, self.hi, self.count, lo, hi, margin))

    def is_full(self) -> bool:
        return bool(_iset_full(self.lo, self.hi, self.count))

    def intervals(self) -> list[tuple[float, float]]:
        return [(float(self.lo[i]), float(self.hi[i])) for i in range(self.count)]


# ---------------------------------------------------------------------------
# interval-set kernels


@njit(cache=True)
def _iset_insert(ilo, ihi, cnt, lo, hi):
    i = 0
    while i < cnt and ihi[i] < lo:
        i += 1
    j = i
    nlo = lo
    nhi = hi
    while j < cnt and ilo[j] <= nhi:
        if ilo[j] < nlo:
            nlo = ilo[j]
        if ihi[j] > nhi:
            nhi = ihi[j]
        j += 1
    removed = j - i
    if removed == 0:
        for k in range(cnt, i, -1):
            ilo[k] = ilo[k - 1]
            ihi[k] = ihi[k - 1]
    elif removed > 1:
        d = removed - 1
        for k in range(i + 1, cnt - d):
            ilo[k] = ilo[k + d]
            ihi[k] = ihi[k + d]
    ilo[i] = nlo
    ihi[i] = nhi
    return cnt - removed + 1


@njit(cache=True)
def _iset_full(ilo, ihi, cnt):
    return cnt == 1 and ilo[0] <= -2.0 and ihi[0] >= 2.0


@njit(cache=True, inline="always")
def _arc_parts(lo, hi, m):
    """Split the arc lo -> hi widened by m into at most two plain segments."""
    if lo <= hi:
        a = lo - m
        b = hi + m
        if a < -2.0:
            return -2.0, b, a + 4.0, 2.0, True
        if b > 2.0:
            return a, 2.0, -2.0, b - 4.0, True
        return a, b, 0.0, 0.0, False
    return lo - m, 2.0, -2.0, hi + m, True


@njit(cache=True)
def _arc_covered(ilo, ihi, cnt, lo, hi, m):
    """Is the arc from lo to hi (CCW, widened by m each way) inside the set?"""
    a1, b1, a2, b2, two = _arc_parts(lo, hi, m)
    ok1 = False
    ok2 = not two
    for k in range(cnt):
        u = ilo[k]
        v = ihi[k]
        if u <= a1 and v >= b1:
            ok1 = True
        if u <= a2 and v >= b2:
            ok2 = True
    return ok1 and ok2


@njit(cache=True)
def _arc_hits(ilo, ihi, cnt, lo, hi, m):
    """Does the widened arc intersect the set?"""
    a1, b1, a2, b2, two = _arc_parts(lo, hi, m)
    for k in range(cnt):
        u = ilo[k]
        v = ihi[k]
        if u <= b1 and v >= a1:
            return True
        if two and u <= b2 and v >= a2:
            return True
    return False


# ---------------------------------------------------------------------------
# dead sectors


@njit(cache=True)
def _rotate(dx, dy, c, s):
    return c * dx - s * dy, s * dx + c * dy


@njit(cache=True)
def _sector(sx, sy, rx, ry, d2r, lx, ly, d2l, alpha, cos_a, sin_a, c2, m):
    """Dead sector for ring neighbours r (clockwise) and l (counter-clockwise).

    Returns (ok, lo, hi, squared_radius). Endpoints at the exact directions
    of r and l are stored closed: a point on those rays beyond r or l has r
    or l on its edge and is blocked. Rotated endpoints are pulled inward by m.
    """
    if orient_sign(sx, sy, rx, ry, lx, ly) <= 0:
        return False, 0.0, 0.0, 0.0
    ux = rx - sx
    uy = ry - sy
    vx = lx - sx
    vy = ly - sy
    gap = math.atan2(ux * vy - uy * vx, ux * vx + uy * vy)
    if gap >= 2.0 * alpha:
        return False, 0.0, 0.0, 0.0
    pr = pseudo_angle_nb(ux, uy)
    if gap < alpha - 1e-12:
        lo = pr
        hi = pseudo_angle_nb(vx, vy)
    else:
        ax, ay = _rotate(vx, vy, cos_a, -sin_a)
        bx, by = _rotate(ux, uy, cos_a, sin_a)
        lo = pseudo_angle_nb(ax, ay) + m
        hi = pseudo_angle_nb(bx, by) - m
    # check nonemptiness relative to r's direction
    rl = lo - pr
    if rl < -1e-12:
        rl += 4.0
    rh = hi - pr
    if rh < -1e-12:
        rh += 4.0
    if rh < rl or rh > 2.0:
        return False, 0.0, 0.0, 0.0
    if lo > 2.0:
        lo -= 4.0
    if hi <= -2.0:
        hi += 4.0
    return True, lo, hi, c2 * max(d2r, d2l) * _RADIUS_SLACK


def dead_sector_from_pair(s, l, r, cfg: BaseAngleConfig = BaseAngleConfig()) -> DeadSector | None:
    """Dead sector spanned by l and r around s (r clockwise of l), or None."""
    sx, sy = map(float, s)
    lx, ly = map(float, l)
    rx, ry = map(float, r)
    if (lx, ly) == (rx, ry) or (lx, ly) == (sx, sy) or (rx, ry) == (sx, sy):
        return None
    d2l = (lx - sx) ** 2 + (ly - sy) ** 2
    d2r = (rx - sx) ** 2 + (ry - sy) ** 2
    ok, lo, hi, r2 = _sector(
        sx, sy, rx, ry, d2r, lx, ly, d2l, cfg.alpha, math.cos(cfg.alpha), math.sin(cfg.alpha),
        cfg.radius_factor**2, MARGIN,
    )
    return DeadSector(lo, hi, r2) if ok else None


# ---------------------------------------------------------------------------
# exact triangle check against the whole point set


@njit(cache=True)
def _triangle_query(xs, ys, tlo, thi, tbox, tcs, tcc, s, t, left, half_tan, stack):
    """(0, -1) if the diamond triangle on `left` of st is empty, (1, p) if p
    lies strictly inside, (2, p) if p lies on the open segment st."""
    sx = xs[s]
    sy = ys[s]
    tx = xs[t]
    ty = ys[t]
    ax, ay = diamond_apex(sx, sy, tx, ty, left, half_tan)
    x0 = min(sx, tx, ax)
    x1 = max(sx, tx, ax)
    y0 = min(sy, ty, ay)
    y1 = max(sy, ty, ay)
    top = 0
    stack[0] = 0
    top = 1
    while top > 0:
        top -= 1
        k = stack[top]
        if tbox[k, 0] > x1 or tbox[k, 2] < x0 or tbox[k, 1] > y1 or tbox[k, 3] < y0:
            continue
        c = tcc[k]
        if c > 0:
            for ch in range(tcs[k], tcs[k] + c):
                stack[top] = ch
                top += 1
            continue
        for p in range(tlo[k], thi[k]):
            if p == s or p == t:
                continue
            px = xs[p]
            py = ys[p]
            if px < x0 or px > x1 or py < y0 or py > y1:
                continue
            if on_open_segment_nb(sx, sy, tx, ty, px, py):
                return 2, p
            if in_diamond_triangle_nb(sx, sy, tx, ty, px, py, left, half_tan):
                return 1, p
    return 0, -1


# ---------------------------------------------------------------------------
# the scan kernel


@njit(cache=True)
def _heap_push(hd, ht, size, d, t):
    i = size
    hd[i] = d
    ht[i] = t
    while i > 0:
        p = (i - 1) >> 1
        if hd[p] < hd[i] or (hd[p] == hd[i] and ht[p] <= ht[i]):
            break
        hd[p], hd[i] = hd[i], hd[p]
        ht[p], ht[i] = ht[i], ht[p]
        i = p
    return size + 1


@njit(cache=True)
def _heap_pop(hd, ht, size):
    d = hd[0]
    t = ht[0]
    size -= 1
    hd[0] = hd[size]
    ht[0] = ht[size]
    i = 0
    while True:
        a = 2 * i + 1
        if a >= size:
            break
        b = a + 1
        c = a
        if b < size and (hd[b] < hd[a] or (hd[b] == hd[a] and ht[b] < ht[a])):
            c = b
        if hd[c] < hd[i] or (hd[c] == hd[i] and ht[c] < ht[i]):
            hd[c], hd[i] = hd[i], hd[c]
            ht[c], ht[i] = ht[i], ht[c]
            i = c
        else:
            break
    return d, t, size


@njit(cache=True)
def _ring_before(xs, ys, sx, sy, pa, d2, p, qpa, qd2, q):
    """Exact angular order around s: is ring point p before point q?"""
    if pa != qpa:
        return pa < qpa
    o = orient_sign(sx, sy, xs[p], ys[p], xs[q], ys[q])
    if o != 0:
        return o > 0
    if d2 != qd2:
        return d2 < qd2
    return p < q


@njit(cache=True)
def _ring_add(xs, ys, sx, sy, rid, rpa, rd2, rn, p, pa, d2, qlo, qhi, qr2, qt, prune,
              alpha, cos_a, sin_a, c2, m):
    """Insert p into the angular ring and queue sectors with its neighbours.

    Returns (position, ring size, queue tail, prune flag). Pruning is turned
    off for the rest of the scan if p's pseudo-angle ties a neighbour of a
    different direction, since float endpoints could then hide a true gap.
    """
    px = xs[p]
    py = ys[p]
    lo_b = 0
    hi_b = rn
    while lo_b < hi_b:
        mid = (lo_b + hi_b) >> 1
        if _ring_before(xs, ys, sx, sy, rpa[mid], rd2[mid], rid[mid], pa, d2, p):
            lo_b = mid + 1
        else:
            hi_b = mid
    pos = lo_b
    if rn > 0:
        pred = pos - 1 if pos > 0 else rn - 1
        succ = pos if pos < rn else 0
        if prune:
            for nb in (pred, succ):
                if rpa[nb] == pa and orient_sign(sx, sy, xs[rid[nb]], ys[rid[nb]], px, py) != 0:
                    prune = False
            if (pa == 1.0 or pa == -1.0) and px != sx:
                prune = False
        if prune:
            q = rid[pred]
            ok, lo, hi, r2 = _sector(sx, sy, xs[q], ys[q], rd2[pred], px, py, d2, alpha, cos_a, sin_a, c2, m)
            if ok:
                qlo[qt] = lo
                qhi[qt] = hi
                qr2[qt] = r2
                qt += 1
            q = rid[succ]
            ok, lo, hi, r2 = _sector(sx, sy, px, py, d2, xs[q], ys[q], rd2[succ], alpha, cos_a, sin_a, c2, m)
            if ok:
                qlo[qt] = lo
                qhi[qt] = hi
                qr2[qt] = r2
                qt += 1
    for k in range(rn, pos, -1):
        rid[k] = rid[k - 1]
        rpa[k] = rpa[k - 1]
        rd2[k] = rd2[k - 1]
    rid[pos] = p
    rpa[pos] = pa
    rd2[pos] = d2
    return pos, rn + 1, qt, prune


@njit(cache=True, nogil=True)
def _scan_range(
    xs, ys, tlo, thi, tbox, tcs, tcc, s_begin, s_end,
    alpha, half_tan, cos_a, sin_a, c2, m, init_lo, init_hi, out_cap,
):
    span_tan = math.tan(alpha + 1e-9)
    n = xs.shape[0]
    nn = tlo.shape[0]
    cap = nn + n + 1
    hd = np.empty(cap)
    ht = np.empty(cap, dtype=np.int64)
    ilo = np.empty(_ISET_CAP + 4)
    ihi = np.empty(_ISET_CAP + 4)
    rid = np.empty(n + 1, dtype=np.int64)
    rpa = np.empty(n + 1)
    rd2 = np.empty(n + 1)
    qlo = np.empty(4 * n + 4)
    qhi = np.empty(4 * n + 4)
    qr2 = np.empty(4 * n + 4)
    stack = np.empty(nn + 8, dtype=np.int64)
    mark = np.full(n, -1, dtype=np.int64)
    out_s = np.empty(out_cap, dtype=np.int64)
    out_t = np.empty(out_cap, dtype=np.int64)
    stopped = s_end
    m_out = 0
    aborted = 0
    max_cnt = 0
    verifs = 0
    overturned = 0
    degenerate = 0
    pops = 0
    expanded = 0

    for s in range(s_begin, s_end):
        if out_cap - m_out < n:
            # not enough room for a worst-case scan; the caller resumes here
            stopped = s
            break
        sx = xs[s]
        sy = ys[s]
        cnt = 0
        for k in range(init_lo.shape[0]):
            cnt = _iset_insert(ilo, ihi, cnt, init_lo[k], init_hi[k])
        prune = True
        rn = 0
        qh = 0
        qt = 0
        size = 0
        if _iset_full(ilo, ihi, cnt):
            aborted += 1
            continue
        size = _heap_push(hd, ht, size, box_sq_dist(sx, sy, tbox[0, 0], tbox[0, 1], tbox[0, 2], tbox[0, 3]), 0)
        while size > 0:
            d2, tag, size = _heap_pop(hd, ht, size)
            # activate pending sectors the scan radius has passed
            while qh < qt and qr2[qh] < d2:
                if qlo[qh] <= qhi[qh]:
                    cnt = _iset_insert(ilo, ihi, cnt, qlo[qh], qhi[qh])
                else:
                    cnt = _iset_insert(ilo, ihi, cnt, qlo[qh], 2.0)
                    cnt = _iset_insert(ilo, ihi, cnt, -2.0, qhi[qh])
                qh += 1
                if cnt > max_cnt:
                    max_cnt = cnt
                if cnt >= _ISET_CAP - 2:
                    prune = False
                    qh = qt
            if prune and _iset_full(ilo, ihi, cnt):
                aborted += 1
                break
            if tag < _POINT_TAG:
                k = tag
                expanded += 1
                if prune:
                    lo, hi, full = box_pseudo_interval(sx, sy, tbox[k, 0], tbox[k, 1], tbox[k, 2], tbox[k, 3])
                    if not full and _arc_covered(ilo, ihi, cnt, lo, hi, m):
                        continue
                c = tcc[k]
                if c > 0:
                    for ch in range(tcs[k], tcs[k] + c):
                        bd = box_sq_dist(sx, sy, tbox[ch, 0], tbox[ch, 1], tbox[ch, 2], tbox[ch, 3])
                        if prune:
                            lo, hi, full = box_pseudo_interval(
                                sx, sy, tbox[ch, 0], tbox[ch, 1], tbox[ch, 2], tbox[ch, 3]
                            )
                            if not full and _arc_covered(ilo, ihi, cnt, lo, hi, m):
                                continue
                        size = _heap_push(hd, ht, size, bd, ch)
                else:
                    for p in range(tlo[k], thi[k]):
                        if p == s:
                            continue
                        dx = xs[p] - sx
                        dy = ys[p] - sy
                        if prune:
                            a = pseudo_angle_nb(dx, dy)
                            if _arc_covered(ilo, ihi, cnt, a, a, m):
                                continue
                        size = _heap_push(hd, ht, size, dx * dx + dy * dy, _POINT_TAG + p)
                continue

            t = tag - _POINT_TAG
            tx = xs[t]
            ty = ys[t]
            dx = tx - sx
            dy = ty - sy
            pa = pseudo_angle_nb(dx, dy)
            if mark[t] == s or (prune and _arc_covered(ilo, ihi, cnt, pa, pa, m)):
                continue

            pops += 1
            mark[t] = s
            was = prune
            pos, rn, qt, prune = _ring_add(xs, ys, sx, sy, rid, rpa, rd2, rn, t, pa, d2,
                                           qlo, qhi, qr2, qt, prune, alpha, cos_a, sin_a, c2, m)
            if was and not prune:
                degenerate += 1

            if not lex_less(sx, sy, tx, ty):
                continue

            # diamond test against the ring members in the angular span of st
            lb = False
            rb = False
            onseg = False
            for direction in (1, -1):
                k = pos
                for _ in range(rn - 1):
                    k += direction
                    if k == rn:
                        k = 0
                    elif k < 0:
                        k = rn - 1
                    q = rid[k]
                    qx = xs[q]
                    qy = ys[q]
                    # stop once q leaves the angular span of the diamond (with slack)
                    qdx = qx - sx
                    qdy = qy - sy
                    dot = dx * qdx + dy * qdy
                    crs = (dx * qdy - dy * qdx) * direction
                    if dot <= 0.0 or crs > span_tan * dot or crs < -1e-9 * dot:
                        break
                    if on_open_segment_nb(sx, sy, tx, ty, qx, qy):
                        onseg = True
                        break
                    if not lb and in_diamond_triangle_nb(sx, sy, tx, ty, qx, qy, True, half_tan):
                        lb = True
                    elif not rb and in_diamond_triangle_nb(sx, sy, tx, ty, qx, qy, False, half_tan):
                        rb = True
                if onseg:
                    break
            if onseg or (lb and rb):
                continue

            # exact re-check of empty sides whose span may hide pruned points
            ok_edge = True
            for side in range(2):
                left = side == 0
                if (lb if left else rb):
                    continue
                if left:
                    ex, ey = _rotate(dx, dy, cos_a, sin_a)
                    span_lo = pa
                    span_hi = pseudo_angle_nb(ex, ey)
                else:
                    ex, ey = _rotate(dx, dy, cos_a, -sin_a)
                    span_lo = pseudo_angle_nb(ex, ey)
                    span_hi = pa
                if not _arc_hits(ilo, ihi, cnt, span_lo, span_hi, m) and prune:
                    continue
                verifs += 1
                res, q = _triangle_query(xs, ys, tlo, thi, tbox, tcs, tcc, s, t, left, half_tan, stack)
                if res != 0 and mark[q] != s:
                    # a pruned blocker: remember it so its sectors help prune
                    mark[q] = s
                    qdx = xs[q] - sx
                    qdy = ys[q] - sy
                    was = prune
                    _, rn, qt, prune = _ring_add(
                        xs, ys, sx, sy, rid, rpa, rd2, rn, q, pseudo_angle_nb(qdx, qdy),
                        qdx * qdx + qdy * qdy, qlo, qhi, qr2, qt, prune, alpha, cos_a, sin_a, c2, m,
                    )
                    if was and not prune:
                        degenerate += 1
                if res == 2:
                    ok_edge = False
                    overturned += 1
                    break
                if res == 1:
                    overturned += 1
                    if left:
                        lb = True
                    else:
                        rb = True
            if not ok_edge or (lb and rb):
                continue
            out_s[m_out] = s
            out_t[m_out] = t
            m_out += 1
    stats = np.array([aborted, max_cnt, verifs, overturned, degenerate, pops, expanded], dtype=np.int64)
    return out_s[:m_out].copy(), out_t[:m_out].copy(), stats, stopped


# closed left half-plane; points exactly straight up survive via the point margin
DEFAULT_INITIAL_DEAD = ((1.0, 2.0), (-2.0, -1.0))


def _finalize(n: int, s: np.ndarray, t: np.ndarray) -> CandidateEdgeSet:
    a = np.minimum(s, t)
    b = np.maximum(s, t)
    order = np.lexsort((b, a))
    edges = np.column_stack((a[order], b[order])).astype(np.int64)
    offsets = np.zeros(n + 1, dtype=np.int64)
    np.add.at(offsets, edges[:, 0] + 1, 1)
    np.cumsum(offsets, out=offsets)
    return CandidateEdgeSet(edges=edges, offsets=offsets)


def candidate_edges(
    pts: HilbertOrderedPointSet,
    tree: QuadTree,
    cfg: BaseAngleConfig = BaseAngleConfig(),
    threads: int = 1,
    initial_dead=DEFAULT_INITIAL_DEAD,
) -> tuple[CandidateEdgeSet, DiamondStats]:
    """Every edge with the diamond property, plus scan statistics.

    `initial_dead` lists (lo, hi) pseudo-angle intervals dead from the start.
    The default is the closed left half-plane, so each edge is found once from
    its lexicographically smaller endpoint.
    """
    n = len(pts)
    t0 = time.perf_counter()
    init = np.asarray(initial_dead, dtype=np.float64).reshape(-1, 2)
    args = (
        cfg.alpha, 0.5 * cfg.tan_alpha, math.cos(cfg.alpha), math.sin(cfg.alpha),
        cfg.radius_factor**2, MARGIN, np.ascontiguousarray(init[:, 0]), np.ascontiguousarray(init[:, 1]),
    )
    geo = (pts.xs, pts.ys, tree.lo, tree.hi, tree.box, tree.child_start, tree.child_count)

    def run(a: int, b: int):
        parts = []
        while a < b:
            cap = 16 * (b - a) + n + 64
            out_s, out_t, st, stop = _scan_range(*geo, a, b, *args, cap)
            parts.append((out_s, out_t, st))
            a = int(stop)
        return parts

    threads = max(1, int(threads))
    if threads == 1 or n < 2000:
        results = run(0, n)
    else:
        chunks = np.linspace(0, n, 8 * threads + 1).astype(np.int64)
        with ThreadPoolExecutor(threads) as ex:
            futs = [ex.submit(run, int(a), int(b)) for a, b in zip(chunks, chunks[1:])]
            results = [part for f in futs for part in f.result()]
    s = np.concatenate([r[0] for r in results])
    t = np.concatenate([r[1] for r in results])
    st = np.sum([r[2] for r in results], axis=0)
    max_cnt = max(int(r[2][1]) for r in results)
    cand = _finalize(n, s, t)
    ms = (time.perf_counter() - t0) * 1e3
    stats = DiamondStats(
        n=n, edges=len(cand), edges_per_point=len(cand) / n, aborted_early=int(st[0]), wall_ms=ms,
        max_intervals=max_cnt, verifications=int(st[2]), overturned=int(st[3]), degenerate_queries=int(st[4]),
        points_popped=int(st[5]), nodes_expanded=int(st[6]),
    )
    return cand, stats


def scan_stats(run: tuple[CandidateEdgeSet, DiamondStats]) -> DiamondStats:
    return run[1]
