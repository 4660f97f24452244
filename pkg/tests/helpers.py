"""Small builders shared by the test modules."""
import numpy as np

from mwt.diamond import candidate_edges
from mwt.halfedge import build_graph, mark_hull_edges
from mwt.spatial import build_quadtree, hilbert_sort


def graph_of(points, leaf_capacity=4):
    """(sorted point set, quadtree, half-edge graph with hull flags)."""
    pts = hilbert_sort(np.asarray(points, dtype=np.float64))
    tree = build_quadtree(pts, leaf_capacity)
    cand, _ = candidate_edges(pts, tree)
    g = build_graph(pts, cand)
    mark_hull_edges(g, pts)
    return pts, tree, g


def sorted_id(pts, original):
    """Position of input point `original` in the Hilbert-sorted set."""
    return int(pts.sorted_index[original])


def edge_ids(g, pts, pairs):
    """Undirected edge ids of input-index pairs."""
    out = []
    for a, b in pairs:
        h = g.find(sorted_id(pts, a), sorted_id(pts, b))
        assert h >= 0, (a, b)
        out.append(int(g.edge_id[h]))
    return out


def random_points(seed, n, kind="uniform"):
    rng = np.random.default_rng(seed)
    if kind == "uniform":
        p = rng.random((n, 2))
    elif kind == "normal":
        p = rng.normal(size=(n, 2))
    elif kind == "grid":
        p = np.round(rng.random((n, 2)) * 6) / 6
    else:
        raise ValueError(kind)
    return np.unique(p, axis=0)


def in_oracle_order(pts, edges_sorted_ids):
    """Map sorted-id edges back to input ids as a set of (min, max) tuples."""
    e = pts.original_index[np.asarray(edges_sorted_ids, dtype=np.int64).reshape(-1, 2)]
    return {(int(min(a, b)), int(max(a, b))) for a, b in e}
