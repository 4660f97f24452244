"""Acceptance checks, one printed PASS/FAIL line per criterion.

The large-instance criteria carry the `slow` marker; run them with
`pytest tests/test_acceptance.py -s` to see the report lines live.
"""
import math
import os
import time
from pathlib import Path

import numpy as np
import pytest

from mwt.diamond import candidate_edges
from mwt.geom import diamond_edges_bruteforce, segments_properly_intersect
from mwt.halfedge import CERTAIN, IMPOSSIBLE, build_graph, mark_hull_edges
from mwt.io import read_points
from mwt.lmt import run_skeleton
from mwt.pipeline import PipelineOptions, generate_normal, generate_uniform, run_pipeline
from mwt.polygon import triangulate_face
from mwt.spatial import build_quadtree, hilbert_sort
from oracles import exhaustive_mwt
from test_polygon import enumerated_minimum, polygon_face, star_polygon


@pytest.fixture
def report(capsys):
    def emit(tag, ok, detail):
        with capsys.disabled():
            print(f"\n{tag} {'PASS' if ok else 'FAIL'}: {detail}")
        return ok
    return emit


@pytest.fixture(scope="module", autouse=True)
def compiled_kernels():
    # compile the numba kernels once so the timed criteria measure the algorithms, not the JIT
    p = generate_uniform(50, seed=0)
    run_pipeline(p)
    diamond_edges_bruteforce([tuple(x) for x in p])


def _input_edges(pts, cand):
    e = pts.original_index[cand.edges]
    return {tuple(sorted(x)) for x in e.tolist()}


# -- AC-1 ------------------------------------------------------------------------------


def test_ac1_diamond_filter_matches_bruteforce(report):
    t0 = time.perf_counter()
    bad = []
    total = 0
    for n in (50, 200, 500):
        for kind, gen in (("uniform", generate_uniform), ("normal", generate_normal)):
            for seed in range(50):
                p = gen(n, seed=1000 * n + seed)
                pts = hilbert_sort(p)
                cand, _ = candidate_edges(pts, build_quadtree(pts, 16))
                if _input_edges(pts, cand) != diamond_edges_bruteforce([tuple(x) for x in p]):
                    bad.append((n, kind, seed))
                total += 1
    dt = time.perf_counter() - t0
    ok = not bad and dt < 30
    report("AC-1", ok, f"{total - len(bad)}/{total} instances equal the brute-force set, {dt:.1f}s (limit 30s)")
    assert not bad, bad[:5]
    assert dt < 30


# -- AC-2 ------------------------------------------------------------------------------


@pytest.mark.slow
def test_ac2_candidates_per_point(report):
    t0 = time.perf_counter()
    n = 100_000
    per = []
    for seed in range(5):
        pts = hilbert_sort(generate_uniform(n, seed=seed))
        cand, _ = candidate_edges(pts, build_quadtree(pts, 16))
        per.append(len(cand) / n)
    dt = time.perf_counter() - t0
    mean = float(np.mean(per))
    ok = 11.0 <= mean <= 11.5847 and dt < 60
    report("AC-2", ok, f"mean candidate edges per point {mean:.4f} (range [11.0, 11.5847]), {dt:.1f}s (limit 60s)")
    assert 11.0 <= mean <= 11.5847
    assert dt < 60


# -- AC-3 ------------------------------------------------------------------------------

TSPLIB_EXPECTED = {
    # name: (candidates, possible LMT, possible LMT+, certain LMT, certain LMT+)
    "a280": (2444, 414, 379, 642, 643),
    "ts225": (None, 2592, 2144, 240, 304),
    "eil51": (320, 2, 2, 139, 139),
}


def _tsplib_file(name):
    roots = [os.environ.get("MWT_TSPLIB_DIR"), Path(__file__).parent / "data" / "tsplib"]
    for root in filter(None, roots):
        for fname in (f"{name}.tsp", f"{name}.tsp.gz"):
            path = Path(root) / fname
            if path.exists():
                return path
    return None


@pytest.mark.parametrize("name", sorted(TSPLIB_EXPECTED))
def test_ac3_tsplib_regression(report, name):
    path = _tsplib_file(name)
    if path is None:
        report(f"AC-3[{name}]", False, f"{name}.tsp not found (set MWT_TSPLIB_DIR or add tests/data/tsplib)")
        pytest.fail(f"TSPLIB instance {name} unavailable")
    if path.suffix == ".gz":
        import gzip
        import tempfile
        with tempfile.NamedTemporaryFile("wb", suffix=".tsp", delete=False) as fh:
            fh.write(gzip.decompress(path.read_bytes()))
        path = Path(fh.name)
    res = run_pipeline(read_points(path, "tsplib"), instance=name)
    st = res.stats
    got = (st.cand_edges, st.possible_lmt, st.possible_lmtp, st.certain_lmt, st.certain_lmtp)
    want = TSPLIB_EXPECTED[name]
    ok = all(w is None or g == w for g, w in zip(got, want))
    report(f"AC-3[{name}]", ok, f"got {got}, expected {want}")
    assert ok


# -- AC-4 ------------------------------------------------------------------------------


def test_ac4_exhaustive_oracle(report):
    t0 = time.perf_counter()
    rng = np.random.default_rng(2024)
    worst = 0.0
    unsound = 0
    done = 0
    while done < 200:
        n = int(rng.integers(4, 11))
        p = rng.random((n, 2))
        if np.linalg.matrix_rank(p - p[0]) < 2:
            continue
        res = run_pipeline(p)
        w, edges = exhaustive_mwt([tuple(x) for x in p])
        mwt = set(edges)
        worst = max(worst, abs(res.triangulation.weight - w) / w)
        g = res.graph
        for k, e in enumerate(res.points.original_index[g.edges()].tolist()):
            e = tuple(sorted(e))
            if (g.status[k] == CERTAIN and e not in mwt) or (g.status[k] == IMPOSSIBLE and e in mwt):
                unsound += 1
        done += 1
    dt = time.perf_counter() - t0
    ok = worst <= 1e-9 and unsound == 0 and dt < 60
    report("AC-4", ok, f"200 instances, max relative weight error {worst:.2e} (limit 1e-9), "
                       f"{unsound} unsound statuses, {dt:.1f}s (limit 60s)")
    assert worst <= 1e-9 and unsound == 0
    assert dt < 60


# -- AC-5 ------------------------------------------------------------------------------


@pytest.mark.slow
def test_ac5_parallel_determinism(report):
    t0 = time.perf_counter()
    pts = hilbert_sort(generate_uniform(1_000_000, seed=0))
    tree = build_quadtree(pts, 16)
    cand, _ = candidate_edges(pts, tree)
    base = build_graph(pts, cand)
    mark_hull_edges(base, pts)
    status = {}
    fraction = math.nan
    for threads in (1, 2, 8):
        g = base.copy()
        st = run_skeleton(g, tree, threads=threads)
        status[threads] = g.status
        if threads == 8:
            fraction = st.root_deferred / g.num_edges
    dt = time.perf_counter() - t0
    same = all(np.array_equal(status[1], status[t]) for t in (2, 8))
    ok = same and fraction < 0.01 and dt < 300
    report("AC-5", ok, f"statuses identical for threads 1/2/8: {same}, root-deferred fraction "
                       f"{100 * fraction:.3f}% (limit 1%), {dt:.0f}s (limit 300s, {os.cpu_count()} cpu)")
    assert same and fraction < 0.01
    assert dt < 300


# -- AC-6 ------------------------------------------------------------------------------


@pytest.mark.slow
def test_ac6_skeleton_density(report):
    res = run_pipeline(generate_uniform(100_000, seed=0), PipelineOptions(solve_faces=False))
    st = res.stats
    certain = st.certain_lmtp / (3 * st.n - st.hull_size - 3)
    possible = st.possible_lmtp / st.cand_edges
    ok = 0.80 <= certain <= 0.86 and abs(possible - 0.11) <= 0.03
    report("AC-6", ok, f"certain / (3n-h-3) = {certain:.4f} (range [0.80, 0.86]), "
                       f"possible / candidates = {100 * possible:.2f}% (11% +- 3)")
    assert ok


# -- AC-7 ------------------------------------------------------------------------------


@pytest.mark.slow
def test_ac7_million_points(report):
    clean = 0
    times = []
    nonsimple = []
    for seed in range(5):
        res = run_pipeline(generate_uniform(1_000_000, seed=seed))
        times.append(res.stats.ms_total / 1e3)
        nonsimple.append(res.stats.faces_nonsimple)
        clean += res.stats.faces_nonsimple == 0
    ok = clean >= 4 and max(times) < 300
    report("AC-7", ok, f"non-simple faces per seed {nonsimple}, seconds per run "
                       f"{[round(t) for t in times]} (limit 300s)")
    assert clean >= 4
    assert max(times) < 300


# -- AC-8 ------------------------------------------------------------------------------


def _untangled_polygon(rng, k):
    """Random simple polygon: random points in random order, crossings removed by 2-opt."""
    p = rng.random((k, 2))
    order = list(rng.permutation(k))
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(i + 2, k):
                if i == 0 and j == k - 1:
                    continue
                a, b = p[order[i]], p[order[i + 1]]
                c, d = p[order[j]], p[order[(j + 1) % k]]
                if segments_properly_intersect(tuple(a), tuple(b), tuple(c), tuple(d)):
                    order[i + 1: j + 1] = order[i + 1: j + 1][::-1]
                    changed = True
    poly = [tuple(map(float, p[v])) for v in order]
    area = sum(poly[i][0] * poly[i - 1][1] - poly[i - 1][0] * poly[i][1] for i in range(k))
    return poly[::-1] if area > 0 else poly


def test_ac8_polygon_dp_matches_enumeration(report):
    rng = np.random.default_rng(88)
    mismatch = 0
    for trial in range(100):
        k = int(rng.integers(4, 13))
        poly = star_polygon(rng, k) if trial % 2 else _untangled_polygon(rng, k)
        _, w = triangulate_face(polygon_face(poly), np.array(poly))
        mismatch += w != enumerated_minimum(poly)
    report("AC-8", mismatch == 0, f"{100 - mismatch}/100 random simple polygons (k <= 12) match exactly")
    assert mismatch == 0
