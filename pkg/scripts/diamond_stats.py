"""Candidate edges per point for growing uniform and normal instances."""
import argparse
import csv
import sys

from mwt.diamond import candidate_edges
from mwt.pipeline import generate_normal, generate_uniform
from mwt.spatial import build_quadtree, hilbert_sort


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[1000, 10_000, 100_000])
    ap.add_argument("--seeds", type=int, default=3)
    ap.add_argument("--threads", type=int, default=1)
    args = ap.parse_args(argv)

    out = csv.writer(sys.stdout)
    out.writerow(["dist", "n", "seed", "edges", "edges_per_point", "aborted_early", "wall_ms"])
    for dist, gen in (("uniform", generate_uniform), ("normal", generate_normal)):
        for n in args.sizes:
            for seed in range(args.seeds):
                pts = hilbert_sort(gen(n, seed=seed))
                _, st = candidate_edges(pts, build_quadtree(pts, 16), threads=args.threads)
                out.writerow([dist, n, seed, st.edges, f"{st.edges_per_point:.4f}", st.aborted_early,
                              f"{st.wall_ms:.1f}"])
                sys.stdout.flush()


if __name__ == "__main__":
    main()
