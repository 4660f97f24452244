"""Skeleton statistics (possible and certain counts, stage timings) on generated instances."""
import argparse
import sys

from mwt.io import write_stats_csv
from mwt.pipeline import PipelineOptions, generate_normal, generate_uniform, run_pipeline


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--sizes", type=int, nargs="+", default=[10_000, 100_000])
    ap.add_argument("--seeds", type=int, default=1)
    ap.add_argument("--dist", choices=["uniform", "normal"], default="uniform")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("--skeleton-only", action="store_true", help="skip the face dynamic programming")
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    gen = generate_uniform if args.dist == "uniform" else generate_normal
    opts = PipelineOptions(threads=args.threads, solve_faces=not args.skeleton_only)
    rows = []
    for n in args.sizes:
        for seed in range(args.seeds):
            res = run_pipeline(gen(n, seed=seed), opts, instance=f"{args.dist}-{n}-{seed}")
            st = res.stats
            print(f"{st.instance}: certain {st.certain_lmtp / (3 * n - st.hull_size - 3):.4f} of a full "
                  f"triangulation, possible {st.possible_lmtp}, non-simple faces {st.faces_nonsimple}, "
                  f"{st.ms_total / 1e3:.1f}s", file=sys.stderr)
            rows.append(st)
    write_stats_csv(rows, sys.stdout if args.output == "-" else args.output)


if __name__ == "__main__":
    main()
