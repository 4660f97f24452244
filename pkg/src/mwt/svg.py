"""SVG rendering of triangulations and skeletons."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from mwt.halfedge import CERTAIN, IMPOSSIBLE, HalfEdgeGraph


@dataclass(frozen=True)
class SvgStyle:
    possible: str = "#c0392b"
    certain: str = "#1f3a93"
    hull: str = "#000000"
    edge: str = "#1f3a93"
    width: float = 1.0  # stroke width in output pixels
    size: float = 1000.0  # longer side of the image in pixels
    margin: float = 0.02


def _write(path, xs, ys, segments, classes, style: SvgStyle) -> None:
    if len(segments) == 0:
        raise ValueError("nothing to render: empty edge set")
    used = np.unique(segments)
    x0, x1 = float(xs[used].min()), float(xs[used].max())
    y0, y1 = float(ys[used].min()), float(ys[used].max())
    w = max(x1 - x0, 1e-300)
    h = max(y1 - y0, 1e-300)
    mx, my = style.margin * w, style.margin * h
    vb = (x0 - mx, -(y1 + my), w + 2 * mx, h + 2 * my)  # y flipped
    scale = style.size / max(vb[2], vb[3])
    sw = style.width / scale
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{vb[2] * scale:.1f}" height="{vb[3] * scale:.1f}" '
        f'viewBox="{vb[0]!r} {vb[1]!r} {vb[2]!r} {vb[3]!r}">',
        "<style>",
        f"line {{ stroke-width: {sw!r}; stroke-linecap: round; }}",
        f".edge {{ stroke: {style.edge}; }}",
        f".certain {{ stroke: {style.certain}; }}",
        f".possible {{ stroke: {style.possible}; }}",
        f".hull {{ stroke: {style.hull}; stroke-width: {2 * sw!r}; }}",
        "</style>",
    ]
    xs = np.asarray(xs, dtype=np.float64).tolist()
    ys = np.asarray(ys, dtype=np.float64).tolist()
    for (a, b), c in zip(np.asarray(segments).tolist(), classes):
        out.append(f'<line class="{c}" x1="{xs[a]!r}" y1="{-ys[a]!r}" x2="{xs[b]!r}" y2="{-ys[b]!r}"/>')
    out.append("</svg>")
    with open(path, "w") as fh:
        fh.write("\n".join(out) + "\n")


def write_svg(points, edges, path, style: SvgStyle = SvgStyle(), hull_edges=None) -> None:
    """Render an edge list over an (n, 2) coordinate array."""
    pts = np.asarray(points, dtype=np.float64)
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    hull = set() if hull_edges is None else {tuple(sorted(e)) for e in np.asarray(hull_edges).tolist()}
    classes = ["hull" if tuple(sorted(e)) in hull else "edge" for e in edges.tolist()]
    _write(path, pts[:, 0], pts[:, 1], edges, classes, style)


def write_skeleton_svg(graph: HalfEdgeGraph, path, style: SvgStyle = SvgStyle()) -> None:
    """Render live edges of a skeleton: hull, certain and possible by stroke class."""
    live = graph.status != IMPOSSIBLE
    e = graph.edges()[live]
    cls = np.where(graph.hull[live], "hull", np.where(graph.status[live] == CERTAIN, "certain", "possible"))
    _write(path, graph.xs, graph.ys, e, cls.tolist(), style)
