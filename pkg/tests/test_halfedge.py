import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mwt.diamond import CandidateEdgeSet
from mwt.geom import orient, pseudo_angle
from mwt.halfedge import (
    CERTAIN,
    IMPOSSIBLE,
    POSSIBLE,
    CollinearPointsError,
    EdgeStatus,
    build_graph,
    convex_hull,
    mark_hull_edges,
)
from mwt.lmt import left_triangles
from mwt.spatial import hilbert_sort
from oracles import bruteforce_empty_triangles, hull_edges, orient_q
from helpers import graph_of, random_points


def test_triangle_structure():
    pts, _, g = graph_of([(0, 0), (1, 0), (0, 1)])
    assert g.num_half_edges == 6 and g.num_edges == 3
    for v in range(3):
        hs = list(g.outgoing(v))
        assert len(hs) == 2
        assert g.next[hs[0]] == hs[1] and g.next[hs[1]] == hs[0]
    assert g.hull.all()


def test_square_corners_radially_sorted():
    pts, _, g = graph_of([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert g.num_half_edges == 12
    for v in range(4):
        hs = list(g.outgoing(v))
        assert len(hs) == 3
        ang = [pseudo_angle(g.xs[g.target[h]] - g.xs[v], g.ys[g.target[h]] - g.ys[v]) for h in hs]
        assert ang == sorted(ang) and len(set(ang)) == 3
    assert int(g.hull.sum()) == 4


@pytest.mark.parametrize("kind", ["uniform", "grid", "normal"])
def test_structural_invariants(kind):
    for seed in range(5):
        pts, _, g = graph_of(random_points(seed, 150, kind))
        g.validate()
        # CSR round trip: every candidate edge seen once per direction
        pairs = sorted((int(g.source[h]), int(g.target[h])) for h in range(g.num_half_edges))
        e = g.edges()
        expected = sorted([(a, b) for a, b in e.tolist()] + [(b, a) for a, b in e.tolist()])
        assert pairs == expected
        assert np.all(g.edge_id[g.twin] == g.edge_id)
        assert np.all(g.primary[g.edge_id[g.primary]] == g.primary)
        # exactly one primary per twin pair
        prim = g.is_primary()
        assert np.all(prim ^ prim[g.twin])


def test_radial_order_pseudo_angles_strictly_increase():
    pts, _, g = graph_of(random_points(3, 300))
    for v in range(g.num_vertices):
        hs = list(g.outgoing(v))
        ang = [pseudo_angle(g.xs[g.target[h]] - g.xs[v], g.ys[g.target[h]] - g.ys[v]) for h in hs]
        assert all(a < b for a, b in zip(ang, ang[1:]))


def test_left_scan_finds_every_empty_triangle():
    # the merge walk may step over a shared neighbour whose triangle holds
    # other points, but never over an empty one
    for seed in (4, 5):
        pts, _, g = graph_of(random_points(seed, 100))
        P = list(zip(g.xs.tolist(), g.ys.tolist()))
        E = g.edges().tolist()
        empty = bruteforce_empty_triangles(P, E)
        adj = [set() for _ in range(g.num_vertices)]
        for a, b in E:
            adj[a].add(b)
            adj[b].add(a)
        for h in range(g.num_half_edges):
            s, t = int(g.source[h]), int(g.target[h])
            shared = {u for u in adj[s] & adj[t] if orient_q(P[s], P[t], P[u]) > 0}
            got = left_triangles(g, h)
            assert len(got) == len(set(got))
            assert set(got) <= shared
            assert {u for u in shared if tuple(sorted((s, t, u))) in empty} <= set(got)


def test_j_start_is_first_left_neighbour_of_target():
    pts, _, g = graph_of(random_points(8, 120))
    P = list(zip(g.xs.tolist(), g.ys.tolist()))
    for h in range(g.num_half_edges):
        s, t = int(g.source[h]), int(g.target[h])
        x = g.next[g.twin[h]]
        first = -1
        while x != g.twin[h]:
            if orient(P[s], P[t], P[g.target[x]]) > 0:
                first = int(x)
                break
            x = g.next[x]
        assert g.j_start[h] == first


def test_hull_matches_monotone_chain_oracle():
    for seed in range(6):
        p = random_points(seed, 100, "grid" if seed % 2 else "uniform")
        pts, _, g = graph_of(p)
        got = {tuple(sorted(e)) for e in pts.original_index[g.edges()[g.hull]].tolist()}
        assert got == hull_edges([tuple(x) for x in p])


def test_hull_keeps_collinear_boundary_points():
    p = [(0, 0), (1, 0), (2, 0), (2, 2), (0, 2), (1, 1)]
    pts, _, g = graph_of(p)
    assert int(g.hull.sum()) == 5
    assert len(convex_hull(pts.xs, pts.ys)) == 5


def test_errors():
    pts = hilbert_sort(np.array([(0, 0), (1, 0)], dtype=float))
    with pytest.raises(ValueError):
        build_graph(pts, CandidateEdgeSet(np.array([[0, 1]]), np.array([0, 1, 1])))
    pts = hilbert_sort(np.array([(0, 0), (1, 0), (0, 1)], dtype=float))
    with pytest.raises(ValueError):
        build_graph(pts, CandidateEdgeSet(np.zeros((0, 2), dtype=np.int64), np.zeros(4, dtype=np.int64)))
    with pytest.raises(CollinearPointsError):
        convex_hull(np.array([0.0, 1, 2, 3]), np.array([0.0, 1, 2, 3]))


def test_dump_lines_and_status_enum():
    pts, _, g = graph_of([(0, 0), (1, 0), (1, 1), (0, 1)])
    g.status[:] = POSSIBLE
    k = int(np.flatnonzero(~g.hull)[0])
    g.status[k] = IMPOSSIBLE
    lines = g.dump_lines()
    assert len(lines) == g.num_edges
    a, b, s, h = lines[k].split()
    assert s == "impossible" and h == "0"
    assert EdgeStatus(CERTAIN).name == "CERTAIN"
    assert all(len(line.split()) == 4 for line in lines)


def test_validate_detects_impossible_hull_edge():
    pts, _, g = graph_of([(0, 0), (1, 0), (1, 1), (0, 1)])
    g.status[int(np.flatnonzero(g.hull)[0])] = IMPOSSIBLE
    with pytest.raises(AssertionError):
        g.validate()


def test_mark_hull_count():
    _, _, g = graph_of([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert mark_hull_edges(g) == 4


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-20, 20), st.integers(-20, 20)), min_size=3, max_size=60, unique=True))
def test_invariants_property(raw):
    p = np.array(raw, dtype=np.float64)
    if np.linalg.matrix_rank(p - p[0]) < 2:
        return
    _, _, g = graph_of(p)
    g.validate()
