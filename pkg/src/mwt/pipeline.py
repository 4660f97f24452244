"""Instance generation and the end-to-end solver."""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from mwt.diamond import CandidateEdgeSet, candidate_edges
from mwt.geom import DEFAULT_ALPHA, BaseAngleConfig
from mwt.halfedge import HalfEdgeGraph, build_graph, mark_hull_edges
from mwt.lmt import LmtOptions, run_skeleton
from mwt.polygon import FaceSet, Triangulation, assemble, extract_faces, triangulate_faces
from mwt.spatial import HilbertOrderedPointSet, QuadTree, build_quadtree, hilbert_sort


def _rng(seed: int) -> np.random.Generator:
    # PCG64 via numpy's default_rng: the same seed gives the same stream everywhere
    return np.random.default_rng(seed)


def generate_uniform(n: int, seed: int = 0, extent: float = 1.0) -> np.ndarray:
    """n points drawn uniformly from the square of side `extent` centered at the origin."""
    if n < 3:
        raise ValueError("n must be at least 3")
    half = 0.5 * extent
    return _fill_distinct(n, _rng(seed), lambda g, k: g.uniform(-half, half, size=(k, 2)))


def generate_normal(n: int, seed: int = 0, sigma: float = 1.0) -> np.ndarray:
    """n points with independent N(0, sigma^2) coordinates."""
    if n < 3:
        raise ValueError("n must be at least 3")
    return _fill_distinct(n, _rng(seed), lambda g, k: g.normal(0.0, sigma, size=(k, 2)))


def _fill_distinct(n, rng, draw) -> np.ndarray:
    """Draw n points, redrawing any that repeat an earlier point."""
    pts = draw(rng, n)
    while True:
        _, first = np.unique(pts, axis=0, return_index=True)
        if first.size == n:
            return pts
        keep = np.zeros(n, dtype=bool)
        keep[first] = True
        bad = np.flatnonzero(~keep)
        pts[bad] = draw(rng, bad.size)


@dataclass(frozen=True)
class PipelineOptions:
    alpha: float = DEFAULT_ALPHA
    lmt_plus: bool = True
    threads: int = 1
    partition_depth: int | None = None  # None: serial loop for one thread, else derived from threads
    leaf_capacity: int = 16
    skip_impossible: bool = False
    solve_faces: bool = True  # False stops after the skeleton


@dataclass
class StageStats:
    instance: str = ""
    n: int = 0
    alpha: float = DEFAULT_ALPHA
    cand_edges: int = 0
    possible_lmt: int = 0
    certain_lmt: int = 0
    possible_lmtp: int = 0
    certain_lmtp: int = 0
    faces_simple: int = 0
    faces_nonsimple: int = 0
    weight: float = math.nan
    ms_dt: float = 0.0
    ms_init: float = 0.0
    ms_loop: float = 0.0
    ms_lmtp: float = 0.0
    ms_dp: float = 0.0
    ms_total: float = 0.0
    hull_size: int = 0
    faces_to_solve: int = 0
    faces_pinched: int = 0  # simple faces whose boundary walk repeats a vertex
    root_deferred: int = 0

    def row(self) -> dict:
        return dict(self.__dict__)


@dataclass
class PipelineResult:
    points: HilbertOrderedPointSet
    tree: QuadTree
    candidates: CandidateEdgeSet
    graph: HalfEdgeGraph
    stats: StageStats
    faces: FaceSet | None = None
    triangulation: Triangulation | None = None
    extra: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.triangulation is not None and self.triangulation.complete

    def edges_input_order(self) -> np.ndarray:
        """Triangulation edges as input ids, each row sorted, rows sorted."""
        if self.triangulation is None:
            raise ValueError("faces were not solved")
        return to_input_ids(self.points, self.triangulation.edges)


def to_input_ids(pts: HilbertOrderedPointSet, edges: np.ndarray) -> np.ndarray:
    e = pts.original_index[np.asarray(edges, dtype=np.int64)]
    e = np.sort(e.reshape(-1, 2), axis=1)
    return e[np.lexsort((e[:, 1], e[:, 0]))]


def run_pipeline(points, options: PipelineOptions = PipelineOptions(), instance: str = "") -> PipelineResult:
    """Diamond filter, skeleton, faces and dynamic programming, with per-stage timings."""
    t_start = time.perf_counter()
    pts = hilbert_sort(points)
    if len(pts) < 3:
        raise ValueError("need at least 3 points")
    tree = build_quadtree(pts, options.leaf_capacity)
    cfg = BaseAngleConfig(options.alpha)
    cand, dstats = candidate_edges(pts, tree, cfg, threads=options.threads)
    t_dt = time.perf_counter()

    graph = build_graph(pts, cand)
    hull = mark_hull_edges(graph, pts)
    t_init = time.perf_counter()

    lst = run_skeleton(graph, tree, lmt_plus=options.lmt_plus, threads=options.threads,
                       partition_depth=options.partition_depth,
                       options=LmtOptions(skip_impossible=options.skip_impossible))
    st = StageStats(
        instance=instance, n=len(pts), alpha=options.alpha, cand_edges=len(cand),
        possible_lmt=lst.possible_after_lmt, certain_lmt=lst.certain_after_lmt,
        possible_lmtp=lst.possible_after_lmt_plus, certain_lmtp=lst.certain_after_lmt_plus,
        ms_dt=(t_dt - t_start) * 1e3, ms_init=(t_init - t_dt) * 1e3,
        ms_loop=lst.ms_loop, ms_lmtp=lst.ms_lmt_plus, hull_size=hull,
        root_deferred=lst.root_deferred,
    )
    res = PipelineResult(pts, tree, cand, graph, st, extra={"diamond": dstats, "lmt": lst})
    if options.solve_faces:
        t0 = time.perf_counter()
        faces = extract_faces(graph)
        chords, _ = triangulate_faces(faces, pts, threads=options.threads)
        tri = assemble(graph, faces, chords)
        st.ms_dp = (time.perf_counter() - t0) * 1e3
        st.faces_simple = faces.num_simple
        st.faces_nonsimple = faces.num_nonsimple
        st.faces_to_solve = faces.num_to_solve()
        st.faces_pinched = faces.num_pinched
        st.weight = tri.weight
        res.faces = faces
        res.triangulation = tri
    st.ms_total = (time.perf_counter() - t_start) * 1e3
    return res
