"""Command line entry point: `mwt <verb> ...`.

Exit status is 0 for a complete triangulation, 2 when non-simple faces were
left unsolved, and 1 on errors.
"""
from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from mwt.geom import DEFAULT_ALPHA
from mwt.io import read_edges, read_points, write_edges, write_points, write_stats_csv
from mwt.pipeline import PipelineOptions, generate_normal, generate_uniform, run_pipeline, to_input_ids
from mwt.svg import write_skeleton_svg, write_svg

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_PARTIAL = 2

log = logging.getLogger("mwt")


def _add_solver_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("input", help="point file")
    p.add_argument("--format", choices=("auto", "tsplib", "xy"), default="auto")
    p.add_argument("--alpha", type=float, default=DEFAULT_ALPHA, help="diamond base angle in radians")
    p.add_argument("--no-lmt-plus", action="store_true", help="skip the LMT+ pass")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--partition-depth", type=int, default=None)
    p.add_argument("--stats", metavar="CSV", help="write one stats row to this file")
    p.add_argument("--svg", metavar="FILE", help="render the result")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mwt", description="Minimum-weight triangulation of planar point sets.")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="verb", required=True)

    g = sub.add_parser("gen-uniform", help="uniform points in a square centered at the origin")
    g.add_argument("n", type=int)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--extent", type=float, default=1.0, help="side length of the square")

    g = sub.add_parser("gen-normal", help="points with N(0, sigma^2) coordinates")
    g.add_argument("n", type=int)
    g.add_argument("-o", "--output", required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--sigma", type=float, default=1.0)

    s = sub.add_parser("solve", help="full pipeline; writes the edge list")
    _add_solver_flags(s)
    s.add_argument("-o", "--output", help="edge list file (header 'MWT n m weight')")

    s = sub.add_parser("skeleton", help="stop before the dynamic program; writes edge statuses")
    _add_solver_flags(s)
    s.add_argument("-o", "--output", help="lines 'src dst status hull'")

    r = sub.add_parser("render", help="render an edge list file to SVG")
    r.add_argument("input", help="point file")
    r.add_argument("edges", help="edge list written by solve")
    r.add_argument("-o", "--output", required=True)
    r.add_argument("--format", choices=("auto", "tsplib", "xy"), default="auto")

    t = sub.add_parser("stats", help="run the pipeline on several files and write a stats table")
    t.add_argument("inputs", nargs="+")
    t.add_argument("-o", "--output", required=True)
    t.add_argument("--format", choices=("auto", "tsplib", "xy"), default="auto")
    t.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    t.add_argument("--no-lmt-plus", action="store_true")
    t.add_argument("--threads", type=int, default=1)
    t.add_argument("--partition-depth", type=int, default=None)
    return ap


def _options(args, solve: bool) -> PipelineOptions:
    return PipelineOptions(alpha=args.alpha, lmt_plus=not args.no_lmt_plus, threads=args.threads,
                           partition_depth=args.partition_depth, solve_faces=solve)


def _solve(args, solve: bool) -> int:
    pts = read_points(args.input, args.format)
    res = run_pipeline(pts, _options(args, solve), instance=Path(args.input).stem)
    st = res.stats
    log.info("n=%d candidates=%d possible=%d/%d certain=%d/%d", st.n, st.cand_edges, st.possible_lmt,
             st.possible_lmtp, st.certain_lmt, st.certain_lmtp)
    if args.stats:
        write_stats_csv([st], args.stats)
    if not solve:
        if args.output:
            g = res.graph
            e = res.points.original_index[g.edges()]
            names = ("possible", "certain", "impossible")
            with open(args.output, "w") as fh:
                for (a, b), s, h in zip(e.tolist(), g.status.tolist(), g.hull.tolist()):
                    fh.write(f"{a} {b} {names[s]} {int(h)}\n")
        if args.svg:
            write_skeleton_svg(res.graph, args.svg)
        return EXIT_OK
    tri = res.triangulation
    edges = res.edges_input_order()
    if args.output:
        write_edges(edges, st.n, tri.weight, args.output)
    else:
        print(f"MWT {st.n} {len(edges)} {tri.weight!r}")
    if args.svg:
        write_svg(pts, edges, args.svg, hull_edges=to_input_ids(res.points, res.graph.edges()[res.graph.hull]))
    if not tri.complete:
        log.warning("%d non-simple face(s) left untriangulated", st.faces_nonsimple)
        return EXIT_PARTIAL
    return EXIT_OK


def _stats(args) -> int:
    rows = []
    code = EXIT_OK
    for path in args.inputs:
        pts = read_points(path, args.format)
        res = run_pipeline(pts, _options(args, True), instance=Path(path).stem)
        rows.append(res.stats)
        if not res.complete:
            code = EXIT_PARTIAL
    write_stats_csv(rows, args.output)
    return code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        if args.verb == "gen-uniform":
            write_points(generate_uniform(args.n, args.seed, args.extent), args.output)
            return EXIT_OK
        if args.verb == "gen-normal":
            write_points(generate_normal(args.n, args.seed, args.sigma), args.output)
            return EXIT_OK
        if args.verb in ("solve", "skeleton"):
            return _solve(args, args.verb == "solve")
        if args.verb == "render":
            pts = read_points(args.input, args.format)
            _, _, edges = read_edges(args.edges)
            write_svg(pts, edges, args.output)
            return EXIT_OK
        if args.verb == "stats":
            return _stats(args)
    except (OSError, ValueError, RuntimeError, AssertionError) as exc:
        print(f"mwt: error: {exc}", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
