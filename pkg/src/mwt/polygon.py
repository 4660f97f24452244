"""Faces of the skeleton (certain and hull edges) and their minimum-weight
completion by interval dynamic programming over the remaining possible edges.

A face boundary is the closed walk that keeps the face on its left. The walk
may visit a vertex more than once (a dangling skeleton edge is walked out and
back, and two parts of a face may touch at a cut vertex). Such faces are still
simply connected, and the dynamic program runs over walk positions rather than
vertex ids, with every chord tied to the pair of positions whose wedges it
leaves from. Only faces that enclose another skeleton component or an isolated
point cannot be completed this way; they are reported as non-simple.
"""
from __future__ import annotations

import enum
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterator, Sequence

import numpy as np
from numba import njit

from mwt.geom import orient_sign
from mwt.halfedge import CERTAIN, POSSIBLE, HalfEdgeGraph


class FaceKind(enum.IntEnum):
    SIMPLE = 0
    NON_SIMPLE = 1


class InfeasibleFaceError(RuntimeError):
    """The chord pool of a simple face admits no triangulation."""


@dataclass(frozen=True)
class PolygonFace:
    boundary: tuple[int, ...]  # CCW walk, face on the left
    kind: FaceKind
    chord_pool: tuple[tuple[int, int], ...]  # vertex pairs
    # the same chords as boundary position pairs; needed when a vertex repeats
    chord_slots: tuple[tuple[int, int], ...] | None = None

    def __len__(self) -> int:
        return len(self.boundary)

    @property
    def pinched(self) -> bool:
        return len(set(self.boundary)) != len(self.boundary)


@dataclass(frozen=True)
class FaceSet(Sequence[PolygonFace]):
    """Interior faces of the skeleton in flat arrays; indexing builds PolygonFace views."""

    offsets: np.ndarray  # face f has vertices verts[offsets[f]:offsets[f+1]]
    verts: np.ndarray
    kind: np.ndarray  # int8 FaceKind per face
    pinched: np.ndarray  # bool: some boundary vertex repeats
    chord_offsets: np.ndarray
    slots: np.ndarray  # (c, 2) boundary positions, first < second

    def __len__(self) -> int:
        return self.offsets.shape[0] - 1

    def chords_of(self, f: int) -> np.ndarray:
        """Chord pool of face f as (c, 2) vertex pairs."""
        s = self.slots[self.chord_offsets[f]:self.chord_offsets[f + 1]]
        return self.verts[self.offsets[f] + s]

    def __getitem__(self, f):
        if isinstance(f, slice):
            return [self[i] for i in range(*f.indices(len(self)))]
        if f < 0:
            f += len(self)
        if not 0 <= f < len(self):
            raise IndexError(f)
        bnd = tuple(self.verts[self.offsets[f]:self.offsets[f + 1]].tolist())
        slots = self.slots[self.chord_offsets[f]:self.chord_offsets[f + 1]]
        pool = tuple(map(tuple, self.chords_of(f).tolist()))
        return PolygonFace(bnd, FaceKind(int(self.kind[f])), pool, tuple(map(tuple, slots.tolist())))

    def __iter__(self) -> Iterator[PolygonFace]:
        return (self[f] for f in range(len(self)))

    @property
    def sizes(self) -> np.ndarray:
        return np.diff(self.offsets)

    @property
    def num_simple(self) -> int:
        return int(np.count_nonzero(self.kind == FaceKind.SIMPLE))

    @property
    def num_nonsimple(self) -> int:
        return len(self) - self.num_simple

    @property
    def num_pinched(self) -> int:
        return int(np.count_nonzero(self.pinched))

    def num_to_solve(self) -> int:
        """Simple faces that are not already triangles."""
        return int(np.count_nonzero((self.kind == FaceKind.SIMPLE) & (self.sizes > 3)))


@dataclass(frozen=True)
class Triangulation:
    edges: np.ndarray  # (m, 2) vertex pairs, a < b, sorted
    weight: float
    complete: bool  # False: some faces were non-simple and are left untriangulated
    nonsimple_faces: int = 0

    def __len__(self) -> int:
        return self.edges.shape[0]


# ---------------------------------------------------------------------------
# face walk


@njit(cache=True)
def _grow(a):
    b = np.empty(2 * a.shape[0] + 16, dtype=a.dtype)
    b[: a.shape[0]] = a
    return b


@njit(cache=True)
def _walk_faces(xs, ys, off, src, tgt, twin, nxt, eid, skel, status):
    H = tgt.shape[0]
    n = xs.shape[0]
    seen = np.zeros(H, dtype=np.bool_)
    mark = np.full(n, -1, dtype=np.int64)
    hstamp = np.full(H, -1, dtype=np.int64)
    hpos = np.zeros(H, dtype=np.int64)
    foff = np.zeros(64, dtype=np.int64)
    fverts = np.empty(256, dtype=np.int64)
    fhalf = np.empty(256, dtype=np.int64)
    fpinch = np.zeros(64, dtype=np.bool_)
    farea = np.empty(64)
    coff = np.zeros(64, dtype=np.int64)
    ca = np.empty(256, dtype=np.int64)
    cb = np.empty(256, dtype=np.int64)
    nf = 0
    nv = 0
    nc = 0
    for h0 in range(H):
        if seen[h0] or not skel[eid[h0]]:
            continue
        start = nv
        h = h0
        while True:
            seen[h] = True
            if nv == fverts.shape[0]:
                fverts = _grow(fverts)
                fhalf = _grow(fhalf)
            fverts[nv] = src[h]
            fhalf[nv] = h
            nv += 1
            v = tgt[h]
            g = twin[h]
            while True:  # clockwise to the next skeleton edge
                g = g - 1 if g > off[v] else off[v + 1] - 1
                if skel[eid[g]]:
                    break
            h = g
            if h == h0:
                break
        k = nv - start
        # orientation of the walk: exact for triangles, shoelace otherwise
        x0 = xs[fverts[start]]
        y0 = ys[fverts[start]]
        area = 0.0
        err = 0.0
        for q in range(start, nv):
            a = fverts[q]
            b = fverts[q + 1] if q + 1 < nv else fverts[start]
            t1 = (xs[a] - x0) * (ys[b] - y0)
            t2 = (xs[b] - x0) * (ys[a] - y0)
            area += t1 - t2
            err += abs(t1) + abs(t2)
        if k == 3:
            a = fverts[start]
            b = fverts[start + 1]
            c = fverts[start + 2]
            interior = orient_sign(xs[a], ys[a], xs[b], ys[b], xs[c], ys[c]) > 0
        else:
            interior = area > 1e-12 * err
        if not interior:
            nv = start
            continue
        if nf + 1 == foff.shape[0]:
            foff = _grow(foff)
            coff = _grow(coff)
            fpinch = _grow(fpinch)
            farea = _grow(farea)
        pinch = False
        for q in range(start, nv):
            if mark[fverts[q]] == nf:
                pinch = True
            mark[fverts[q]] = nf
        fpinch[nf] = pinch
        farea[nf] = 0.5 * area
        if k > 3:
            # possible half-edges strictly inside the face's wedge at each position
            for q in range(start, nv):
                hin = fhalf[q - 1] if q > start else fhalf[nv - 1]
                g = nxt[fhalf[q]]
                stop = twin[hin]
                while g != stop:
                    if status[eid[g]] == POSSIBLE and mark[tgt[g]] == nf:
                        hstamp[g] = nf
                        hpos[g] = q - start
                    g = nxt[g]
            # a chord is usable when both of its halves leave from wedges of this face
            for q in range(start, nv):
                hin = fhalf[q - 1] if q > start else fhalf[nv - 1]
                g = nxt[fhalf[q]]
                stop = twin[hin]
                while g != stop:
                    if hstamp[g] == nf and hstamp[twin[g]] == nf and hpos[g] < hpos[twin[g]]:
                        if nc == ca.shape[0]:
                            ca = _grow(ca)
                            cb = _grow(cb)
                        ca[nc] = hpos[g]
                        cb[nc] = hpos[twin[g]]
                        nc += 1
                    g = nxt[g]
        nf += 1
        foff[nf] = nv
        coff[nf] = nc
    return (foff[: nf + 1].copy(), fverts[:nv].copy(), fpinch[:nf].copy(), farea[:nf].copy(),
            coff[: nf + 1].copy(), ca[:nc].copy(), cb[:nc].copy())


@njit(cache=True)
def _components(n, src, tgt, eid, skel):
    parent = np.arange(n)
    for h in range(src.shape[0]):
        if not skel[eid[h]]:
            continue
        a = src[h]
        b = tgt[h]
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        if a != b:
            parent[max(a, b)] = min(a, b)
    for v in range(n):
        r = v
        while parent[r] != r:
            r = parent[r]
        parent[v] = r
    return parent


@njit(cache=True)
def _locate(xs, ys, foff, fverts, farea, reps):
    """Smallest interior face strictly containing each representative point (-1 if none)."""
    nf = foff.shape[0] - 1
    bx0 = np.empty(nf)
    bx1 = np.empty(nf)
    by0 = np.empty(nf)
    by1 = np.empty(nf)
    for f in range(nf):
        bx0[f] = np.inf
        bx1[f] = -np.inf
        by0[f] = np.inf
        by1[f] = -np.inf
        for q in range(foff[f], foff[f + 1]):
            v = fverts[q]
            bx0[f] = min(bx0[f], xs[v])
            bx1[f] = max(bx1[f], xs[v])
            by0[f] = min(by0[f], ys[v])
            by1[f] = max(by1[f], ys[v])
    out = np.full(reps.shape[0], -1, dtype=np.int64)
    for r in range(reps.shape[0]):
        p = reps[r]
        px = xs[p]
        py = ys[p]
        best = np.inf
        for f in range(nf):
            if px < bx0[f] or px > bx1[f] or py < by0[f] or py > by1[f] or farea[f] >= best:
                continue
            wind = 0
            a0 = foff[f]
            a1 = foff[f + 1]
            on_boundary = False
            for q in range(a0, a1):
                a = fverts[q]
                b = fverts[q + 1] if q + 1 < a1 else fverts[a0]
                if a == p or b == p:
                    on_boundary = True
                    break
                if ys[a] <= py:
                    if ys[b] > py and orient_sign(xs[a], ys[a], xs[b], ys[b], px, py) > 0:
                        wind += 1
                elif ys[b] <= py and orient_sign(xs[a], ys[a], xs[b], ys[b], px, py) < 0:
                    wind -= 1
            if not on_boundary and wind != 0:
                best = farea[f]
                out[r] = f
    return out


def skeleton_mask(graph: HalfEdgeGraph) -> np.ndarray:
    return (graph.status == CERTAIN) | graph.hull


def extract_faces(graph: HalfEdgeGraph) -> FaceSet:
    """Interior faces of the certain + hull subgraph, classified simple or not."""
    g = graph
    skel = skeleton_mask(g)
    foff, fverts, pinched, area, coff, ca, cb = _walk_faces(
        g.xs, g.ys, g.vertex_offsets, g.source, g.target, g.twin, g.next, g.edge_id, skel, g.status)
    kind = np.zeros(foff.shape[0] - 1, dtype=np.int8)
    comp = _components(g.num_vertices, g.source, g.target, g.edge_id, skel)
    hull_vertex = int(g.source[g.primary[np.flatnonzero(g.hull)[0]]])
    roots = np.unique(comp)
    others = roots[roots != comp[hull_vertex]].astype(np.int64)
    if others.size:
        # any vertex of a component represents it, and roots are vertices
        for f in _locate(g.xs, g.ys, foff, fverts, area, others):
            if f >= 0:
                kind[f] = FaceKind.NON_SIMPLE
    return FaceSet(foff, fverts, kind, pinched, coff, np.column_stack((ca, cb)).astype(np.int64))


# ---------------------------------------------------------------------------
# dynamic programming


@njit(cache=True, nogil=True)
def _dp_face(xs, ys, verts, pa, pb, out, nout):
    """Minimum-weight triangulation of one face walk using chords between positions pa[c], pb[c].

    Writes the chosen chords (vertex pairs) into out[nout:] and returns
    (new nout, chord weight), or (-1, inf) when no triangulation exists.
    """
    k = verts.shape[0]
    avail = np.zeros((k, k), dtype=np.bool_)
    for q in range(k - 1):
        avail[q, q + 1] = True
    avail[0, k - 1] = True
    wlen = np.zeros((k, k))
    for c in range(pa.shape[0]):
        i = min(pa[c], pb[c])
        j = max(pa[c], pb[c])
        avail[i, j] = True
        wlen[i, j] = math.hypot(xs[verts[j]] - xs[verts[i]], ys[verts[j]] - ys[verts[i]])
    W = np.full((k, k), np.inf)
    arg = np.full((k, k), -1, dtype=np.int64)
    for i in range(k - 1):
        W[i, i + 1] = 0.0
    for span in range(2, k):
        for i in range(k - span):
            j = i + span
            if not avail[i, j]:
                continue
            best = np.inf
            bm = -1
            for m in range(i + 1, j):
                if not (avail[i, m] and avail[m, j]):
                    continue
                c = W[i, m] + W[m, j] + wlen[i, m] + wlen[m, j]
                if c < best:
                    best = c
                    bm = m
            W[i, j] = best
            arg[i, j] = bm
    if not W[0, k - 1] < np.inf:
        return -1, np.inf
    st = np.empty((k, 2), dtype=np.int64)
    st[0, 0] = 0
    st[0, 1] = k - 1
    sp = 1
    while sp > 0:
        sp -= 1
        i = st[sp, 0]
        j = st[sp, 1]
        if j - i < 2:
            continue
        if not (i == 0 and j == k - 1):
            out[nout, 0] = min(verts[i], verts[j])
            out[nout, 1] = max(verts[i], verts[j])
            nout += 1
        m = arg[i, j]
        st[sp, 0] = i
        st[sp, 1] = m
        st[sp + 1, 0] = m
        st[sp + 1, 1] = j
        sp += 2
    return nout, W[0, k - 1]


@njit(cache=True, nogil=True)
def _dp_range(xs, ys, foff, fverts, kind, coff, pa, pb, outoff, out, weights, f0, f1):
    """Solve faces f0..f1-1 into their own slices of `out`; returns the first infeasible face or -1."""
    for f in range(f0, f1):
        k = foff[f + 1] - foff[f]
        if kind[f] != 0 or k <= 3:
            continue
        nout, w = _dp_face(xs, ys, fverts[foff[f]:foff[f + 1]], pa[coff[f]:coff[f + 1]],
                           pb[coff[f]:coff[f + 1]], out, outoff[f])
        if nout < 0:
            return f
        weights[f] = w
    return -1


def triangulate_face(face: PolygonFace, pts) -> tuple[list[tuple[int, int]], float]:
    """Optimal chords of one simple face and their total length.

    `pts` is an (n, 2) coordinate array or anything with xs/ys attributes.
    Without `chord_slots` the boundary vertices must be distinct.
    """
    if face.kind != FaceKind.SIMPLE:
        raise ValueError("only simple faces can be triangulated")
    xs, ys = _coords(pts)
    k = len(face.boundary)
    if k < 3:
        raise ValueError("a face needs at least 3 vertices")
    if k == 3:
        return [], 0.0
    if face.chord_slots is not None:
        slots = np.asarray(face.chord_slots, dtype=np.int64).reshape(-1, 2)
    else:
        if face.pinched:
            raise ValueError("a face with repeated vertices needs chord_slots")
        where = {v: i for i, v in enumerate(face.boundary)}
        slots = np.array([(where[a], where[b]) for a, b in face.chord_pool], dtype=np.int64).reshape(-1, 2)
    verts = np.asarray(face.boundary, dtype=np.int64)
    out = np.empty((k - 3, 2), dtype=np.int64)
    nout, w = _dp_face(xs, ys, verts, np.ascontiguousarray(slots[:, 0]), np.ascontiguousarray(slots[:, 1]),
                       out, 0)
    if nout < 0:
        raise InfeasibleFaceError(f"no triangulation of face {face.boundary} from its chord pool")
    chords = sorted(map(tuple, out[:nout].tolist()))
    return chords, math.fsum(math.hypot(xs[b] - xs[a], ys[b] - ys[a]) for a, b in chords)


def triangulate_faces(faces: FaceSet, pts, threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Chords for every simple face; returns (chords (c, 2), chord weight per face).

    Faces are independent, so with several threads contiguous blocks of faces
    are solved concurrently; the output does not depend on the thread count.
    """
    xs, ys = _coords(pts)
    todo = (faces.kind == FaceKind.SIMPLE) & (faces.sizes > 3)
    per = np.where(todo, faces.sizes - 3, 0)
    outoff = np.concatenate(([0], np.cumsum(per)))
    out = np.empty((int(outoff[-1]), 2), dtype=np.int64)
    weights = np.zeros(len(faces))
    args = (xs, ys, faces.offsets, faces.verts, faces.kind, faces.chord_offsets,
            np.ascontiguousarray(faces.slots[:, 0]), np.ascontiguousarray(faces.slots[:, 1]),
            outoff, out, weights)
    nf = len(faces)
    threads = max(1, int(threads))
    if threads == 1 or nf < 1000:
        bad = [_dp_range(*args, 0, nf)]
    else:
        cuts = np.linspace(0, nf, 4 * threads + 1).astype(np.int64)
        with ThreadPoolExecutor(threads) as ex:
            bad = list(ex.map(lambda ab: _dp_range(*args, int(ab[0]), int(ab[1])), zip(cuts, cuts[1:])))
    bad = [b for b in bad if b >= 0]
    if bad:
        raise InfeasibleFaceError(f"no triangulation of face {min(bad)} from its chord pool")
    return out, weights


def _coords(pts) -> tuple[np.ndarray, np.ndarray]:
    if hasattr(pts, "xs"):
        return np.asarray(pts.xs, dtype=np.float64), np.asarray(pts.ys, dtype=np.float64)
    a = np.asarray(pts, dtype=np.float64)
    return np.ascontiguousarray(a[:, 0]), np.ascontiguousarray(a[:, 1])


def edge_lengths(xs: np.ndarray, ys: np.ndarray, edges: np.ndarray) -> np.ndarray:
    return np.hypot(xs[edges[:, 1]] - xs[edges[:, 0]], ys[edges[:, 1]] - ys[edges[:, 0]])


def assemble(graph: HalfEdgeGraph, faces: FaceSet, chords: np.ndarray) -> Triangulation:
    """Skeleton edges plus the chosen chords; weight is the correctly rounded sum of lengths."""
    sk = np.sort(graph.edges()[skeleton_mask(graph)], axis=1)
    chords = np.asarray(chords, dtype=np.int64).reshape(-1, 2)
    edges = np.concatenate((sk, np.sort(chords, axis=1)))
    edges = edges[np.lexsort((edges[:, 1], edges[:, 0]))]
    weight = math.fsum(edge_lengths(graph.xs, graph.ys, edges).tolist())
    bad = faces.num_nonsimple
    return Triangulation(edges=edges, weight=weight, complete=bad == 0, nonsimple_faces=bad)


def expected_edge_count(n: int, hull_size: int) -> int:
    return 3 * n - hull_size - 3
