"""Candidate, possible and certain counts for a directory of TSPLIB instances."""
import argparse
import sys
from pathlib import Path

from mwt.io import read_points, write_stats_csv
from mwt.pipeline import PipelineOptions, run_pipeline


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("directory", type=Path)
    ap.add_argument("names", nargs="*", help="instance names; default: every .tsp file")
    ap.add_argument("--threads", type=int, default=1)
    ap.add_argument("-o", "--output", default="-")
    args = ap.parse_args(argv)

    files = [args.directory / f"{n}.tsp" for n in args.names] or sorted(args.directory.glob("*.tsp"))
    rows = []
    for path in files:
        try:
            pts = read_points(path, "tsplib")
        except (OSError, ValueError) as exc:
            print(f"skip {path.name}: {exc}", file=sys.stderr)
            continue
        rows.append(run_pipeline(pts, PipelineOptions(threads=args.threads), instance=path.stem).stats)
    if not rows:
        sys.exit("no readable instances")
    write_stats_csv(rows, sys.stdout if args.output == "-" else args.output)


if __name__ == "__main__":
    main()
