"""Independent reference implementations used only by the tests.

Everything here uses exact rational arithmetic or exhaustive enumeration and
shares no code with the package.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache


def orient_q(a, b, c) -> int:
    # float determinant with a deliberately loose error bound; exact rationals otherwise
    l = (float(b[0]) - float(a[0])) * (float(c[1]) - float(a[1]))
    r = (float(b[1]) - float(a[1])) * (float(c[0]) - float(a[0]))
    d = l - r
    if abs(d) > 1e-12 * (abs(l) + abs(r)):
        return 1 if d > 0 else -1
    ax, ay = Fraction(a[0]), Fraction(a[1])
    bx, by = Fraction(b[0]), Fraction(b[1])
    cx, cy = Fraction(c[0]), Fraction(c[1])
    d = (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
    return (d > 0) - (d < 0)


def sqdist_q(a, b) -> Fraction:
    dx = Fraction(b[0]) - Fraction(a[0])
    dy = Fraction(b[1]) - Fraction(a[1])
    return dx * dx + dy * dy


def proper_cross_q(a, b, c, d) -> bool:
    o1, o2 = orient_q(a, b, c), orient_q(a, b, d)
    o3, o4 = orient_q(c, d, a), orient_q(c, d, b)
    return o1 * o2 < 0 and o3 * o4 < 0


def on_open_segment_q(a, b, p) -> bool:
    if orient_q(a, b, p) != 0 or tuple(p) == tuple(a) or tuple(p) == tuple(b):
        return False
    return min(a[0], b[0]) <= p[0] <= max(a[0], b[0]) and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])


def monotone_chain_hull(points) -> list[int]:
    """Indices of hull vertices in CCW order, keeping collinear boundary points."""
    idx = sorted(range(len(points)), key=lambda i: (points[i][0], points[i][1]))
    if len(idx) < 3:
        return idx

    def build(seq):
        h = []
        for i in seq:
            while len(h) >= 2 and orient_q(points[h[-2]], points[h[-1]], points[i]) < 0:
                h.pop()
            h.append(i)
        return h

    lower = build(idx)
    upper = build(reversed(idx))
    return lower[:-1] + upper[:-1]


def hull_edges(points) -> set[tuple[int, int]]:
    h = monotone_chain_hull(points)
    return {tuple(sorted((h[k], h[(k + 1) % len(h)]))) for k in range(len(h))}


def _triangle_empty(pts, a, b, c, candidates) -> bool:
    for p in candidates:
        if p in (a, b, c):
            continue
        q = pts[p]
        o1 = orient_q(pts[a], pts[b], q)
        o2 = orient_q(pts[b], pts[c], q)
        o3 = orient_q(pts[c], pts[a], q)
        if o1 >= 0 and o2 >= 0 and o3 >= 0:
            return False
    return True


def exhaustive_mwt(points):
    """Exact MWT by memoized recursion over (polygon, interior points).

    The polygon is the convex hull (collinear hull points kept). For a fixed
    boundary edge (v0, v1) every triangulation contains exactly one triangle
    on it; its apex is an interior point or another polygon vertex. Returns
    (weight, sorted list of undirected edges) with the weight computed by
    fsum over the edge set.
    """
    pts = [tuple(map(float, p)) for p in points]
    n = len(pts)
    hull = monotone_chain_hull(pts)
    if len(hull) < 3:
        raise ValueError("collinear input")
    inner = frozenset(set(range(n)) - set(hull))

    def length(a, b):
        return math.hypot(pts[a][0] - pts[b][0], pts[a][1] - pts[b][1])

    @lru_cache(maxsize=None)
    def solve(poly: tuple, interior: frozenset):
        k = len(poly)
        if k == 3 and not interior:
            return 0.0, frozenset(_e(poly[i], poly[(i + 1) % 3]) for i in range(3))
        v0, v1 = poly[0], poly[1]
        best = (math.inf, frozenset())
        options = [(poly[ci], ci) for ci in range(2, k)] + [(p, -1) for p in sorted(interior)]
        for apex, ci in options:
            if orient_q(pts[v0], pts[v1], pts[apex]) <= 0:
                continue
            if not _triangle_empty(pts, v0, v1, apex, list(interior) + list(poly)):
                continue
            if ci < 0:
                if any(on_open_segment_q(pts[v0], pts[apex], pts[p]) or on_open_segment_q(pts[v1], pts[apex], pts[p]) for p in range(n) if p not in (v0, v1, apex)):
                    continue
                if _crosses_boundary(pts, poly, v0, apex) or _crosses_boundary(pts, poly, v1, apex):
                    continue
                new_poly = (v0, apex) + poly[1:]
                sub = solve(*_canon(new_poly, interior - {apex}, pts))
                if sub[0] == math.inf:
                    continue
                edges = sub[1] | {_e(v0, apex), _e(v1, apex)}
            else:
                left = poly[1: ci + 1]
                right = (poly[ci],) + poly[ci + 1:] + (poly[0],)
                if not _chord_ok(pts, poly, v1, apex) or not _chord_ok(pts, poly, apex, v0):
                    continue
                lin = frozenset(p for p in interior if _inside(pts, left, p))
                rin = frozenset(p for p in interior if _inside(pts, right, p))
                if len(lin) + len(rin) != len(interior):
                    continue
                edges = {_e(v0, apex), _e(v1, apex)}
                ok = True
                for part, pin in ((left, lin), (right, rin)):
                    if len(part) < 3:
                        if pin:
                            ok = False
                        continue
                    sub = solve(*_canon(part, pin, pts))
                    if sub[0] == math.inf:
                        ok = False
                        break
                    edges |= sub[1]
                if not ok:
                    continue
            edges = frozenset(edges) | {_e(poly[i], poly[(i + 1) % k]) for i in range(k)}
            w = math.fsum(length(a, b) for a, b in edges)
            if w < best[0] - 1e-12 or (abs(w - best[0]) <= 1e-12 and sorted(edges) < sorted(best[1])):
                best = (w, edges)
        return best

    w, edges = solve(*_canon(tuple(hull), inner, pts))
    all_edges = set(edges) | hull_edges(pts)
    return math.fsum(length(a, b) for a, b in all_edges), sorted(all_edges)


def _e(a, b):
    return (a, b) if a < b else (b, a)


def _canon(poly, interior, pts):
    m = min(range(len(poly)), key=lambda i: poly[i])
    return tuple(poly[m:] + poly[:m]), frozenset(interior)


def _crosses_boundary(pts, poly, a, b) -> bool:
    k = len(poly)
    for i in range(k):
        u, v = poly[i], poly[(i + 1) % k]
        if proper_cross_q(pts[a], pts[b], pts[u], pts[v]):
            return True
    return False


def _inside(pts, poly, p) -> bool:
    """Strict point-in-simple-polygon test by exact ray casting."""
    k = len(poly)
    q = pts[p]
    for i in range(k):
        if on_open_segment_q(pts[poly[i]], pts[poly[(i + 1) % k]], q):
            return False
    inside = False
    qx, qy = Fraction(q[0]), Fraction(q[1])
    for i in range(k):
        a = pts[poly[i]]
        b = pts[poly[(i + 1) % k]]
        ay, by = Fraction(a[1]), Fraction(b[1])
        if (ay > qy) != (by > qy):
            ax, bx = Fraction(a[0]), Fraction(b[0])
            x = ax + (qy - ay) * (bx - ax) / (by - ay)
            if x > qx:
                inside = not inside
    return inside


def _chord_ok(pts, poly, a, b) -> bool:
    """Segment ab between two polygon vertices (or a boundary edge) lies inside poly."""
    k = len(poly)
    ia, ib = poly.index(a), poly.index(b)
    if (ia + 1) % k == ib or (ib + 1) % k == ia:
        return True
    if _crosses_boundary(pts, poly, a, b):
        return False
    for p in poly:
        if p not in (a, b) and on_open_segment_q(pts[a], pts[b], pts[p]):
            return False
    # midpoint inside the polygon
    mid = ((Fraction(pts[a][0]) + Fraction(pts[b][0])) / 2, (Fraction(pts[a][1]) + Fraction(pts[b][1])) / 2)
    tmp = list(pts) + [mid]
    return _inside(tmp, poly, len(pts))


def polygon_triangulations(poly_pts):
    """All triangulations of a simple polygon given as a CCW vertex list."""
    k = len(poly_pts)
    pts = [tuple(p) for p in poly_pts]
    poly = tuple(range(k))

    @lru_cache(maxsize=None)
    def rec(sub):
        if len(sub) < 3:
            return [frozenset()]
        if len(sub) == 3:
            return [frozenset()]
        v0, v1 = sub[0], sub[1]
        out = []
        for ci in range(2, len(sub)):
            c = sub[ci]
            if orient_q(pts[v0], pts[v1], pts[c]) <= 0:
                continue
            if not _chord_ok(pts, sub, v1, c) or not _chord_ok(pts, sub, c, v0):
                continue
            if not _triangle_empty(pts, v0, v1, c, list(sub)):
                continue
            left = sub[1: ci + 1]
            right = (sub[ci],) + sub[ci + 1:] + (sub[0],)
            chords = set()
            if len(left) >= 3:
                chords.add(_e(v1, c))
            if len(right) >= 3:
                chords.add(_e(c, v0))
            for a in rec(left):
                for b in rec(right):
                    out.append(frozenset(chords) | a | b)
        return out

    return rec(poly)


def bruteforce_empty_triangles(points, edges) -> set[tuple[int, int, int]]:
    """All triangles whose three sides are in `edges` and that contain no
    other point (closed, minus vertices). Returned as sorted index triples."""
    adj = {}
    for a, b in edges:
        adj.setdefault(a, set()).add(b)
        adj.setdefault(b, set()).add(a)
    out = set()
    for a, b in edges:
        for c in adj[a] & adj[b]:
            tri = tuple(sorted((a, b, c)))
            if tri in out:
                continue
            u, v, w = tri
            if orient_q(points[u], points[v], points[w]) == 0:
                continue
            if orient_q(points[u], points[v], points[w]) < 0:
                v, w = w, v
            if _triangle_empty(points, u, v, w, range(len(points))):
                out.add(tri)
    return out
