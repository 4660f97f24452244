"""Point files (TSPLIB and plain xy), edge lists and statistics CSV."""
from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

STATS_COLUMNS = (
    "instance", "n", "alpha", "cand_edges", "possible_lmt", "certain_lmt", "possible_lmtp",
    "certain_lmtp", "faces_simple", "faces_nonsimple", "weight",
    "ms_dt", "ms_init", "ms_loop", "ms_lmtp", "ms_dp", "ms_total",
)


class PointFileError(ValueError):
    def __init__(self, path, line: int, msg: str):
        super().__init__(f"{path}:{line}: {msg}")
        self.path = path
        self.line = line


def _check_duplicates(path, pts: np.ndarray, lines: list[int]) -> None:
    if pts.shape[0] < 2:
        return
    order = np.lexsort((pts[:, 1], pts[:, 0]))
    s = pts[order]
    dup = np.flatnonzero(np.all(s[1:] == s[:-1], axis=1))
    if dup.size:
        a, b = sorted((int(order[dup[0]]), int(order[dup[0] + 1])))
        raise PointFileError(path, lines[b], f"duplicate point ({s[dup[0], 0]}, {s[dup[0], 1]}), "
                                             f"first seen on line {lines[a]}")


def _coord(path, lineno: int, tok: str) -> float:
    try:
        v = float(tok)
    except ValueError:
        raise PointFileError(path, lineno, f"non-numeric coordinate {tok!r}") from None
    if not np.isfinite(v):
        raise PointFileError(path, lineno, f"non-finite coordinate {tok!r}")
    return v


def read_xy(path) -> np.ndarray:
    """One "x y" pair per line; blank lines and lines starting with # are skipped."""
    pts, lines = [], []
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            s = raw.strip()
            if not s or s.startswith("#"):
                continue
            tok = s.replace(",", " ").split()
            if len(tok) != 2:
                raise PointFileError(path, lineno, f"expected 2 coordinates, got {len(tok)}")
            pts.append((_coord(path, lineno, tok[0]), _coord(path, lineno, tok[1])))
            lines.append(lineno)
    arr = np.array(pts, dtype=np.float64).reshape(-1, 2)
    _check_duplicates(path, arr, lines)
    return arr


def read_tsplib(path) -> np.ndarray:
    """Coordinates of a TSPLIB file, taken verbatim from NODE_COORD_SECTION."""
    dim = None
    wtype = None
    pts, lines = [], []
    in_coords = False
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            s = raw.strip()
            if not s:
                continue
            if s == "EOF":
                break
            if in_coords:
                tok = s.split()
                if len(tok) != 3:
                    if ":" in s or s.isupper():
                        in_coords = False  # another section starts
                        continue
                    raise PointFileError(path, lineno, f"expected 'id x y', got {s!r}")
                pts.append((_coord(path, lineno, tok[1]), _coord(path, lineno, tok[2])))
                lines.append(lineno)
                continue
            if s.startswith("NODE_COORD_SECTION"):
                in_coords = True
                continue
            if ":" in s:
                key, _, val = s.partition(":")
                key, val = key.strip().upper(), val.strip()
                if key == "DIMENSION":
                    try:
                        dim = int(val)
                    except ValueError:
                        raise PointFileError(path, lineno, f"bad DIMENSION {val!r}") from None
                elif key == "EDGE_WEIGHT_TYPE":
                    wtype = val.upper()
                continue
            if s.endswith("_SECTION"):
                continue
            raise PointFileError(path, lineno, f"unrecognized header line {s!r}")
    if wtype is not None and wtype not in ("EUC_2D", "CEIL_2D", "ATT", "GEO", "MAN_2D", "MAX_2D"):
        raise PointFileError(path, 1, f"EDGE_WEIGHT_TYPE {wtype} has no planar coordinates")
    if not pts:
        raise PointFileError(path, 1, "no NODE_COORD_SECTION found")
    if dim is not None and dim != len(pts):
        raise PointFileError(path, lines[-1], f"DIMENSION is {dim} but {len(pts)} coordinates were read")
    arr = np.array(pts, dtype=np.float64)
    _check_duplicates(path, arr, lines)
    return arr


def detect_format(path) -> str:
    p = Path(path)
    if p.suffix.lower() == ".tsp":
        return "tsplib"
    with open(p) as fh:
        head = fh.read(4096)
    return "tsplib" if "NODE_COORD_SECTION" in head else "xy"


def read_points(path, format: str = "auto") -> np.ndarray:
    fmt = detect_format(path) if format == "auto" else format
    if fmt == "tsplib":
        return read_tsplib(path)
    if fmt == "xy":
        return read_xy(path)
    raise ValueError(f"unknown point format {format!r}")


def write_points(points: np.ndarray, path) -> None:
    with open(path, "w") as fh:
        for x, y in np.asarray(points, dtype=np.float64).tolist():
            fh.write(f"{x!r} {y!r}\n")


def write_edges(edges: np.ndarray, n: int, weight: float, path) -> None:
    """Header "MWT n m weight", then one "src dst" pair per line."""
    edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
    with open(path, "w") as fh:
        fh.write(f"MWT {n} {edges.shape[0]} {float(weight)!r}\n")
        fh.writelines(f"{a} {b}\n" for a, b in edges.tolist())


def read_edges(path) -> tuple[int, float, np.ndarray]:
    with open(path) as fh:
        head = fh.readline().split()
        if len(head) != 4 or head[0] != "MWT":
            raise ValueError(f"{path}:1: expected header 'MWT n m weight'")
        n, m, w = int(head[1]), int(head[2]), float(head[3])
        edges = np.loadtxt(fh, dtype=np.int64, ndmin=2).reshape(-1, 2)
    if edges.shape[0] != m:
        raise ValueError(f"{path}: header announces {m} edges, found {edges.shape[0]}")
    return n, w, edges


def write_stats_csv(rows, path) -> None:
    """`rows` are mappings keyed by STATS_COLUMNS (or objects with a .row() method).

    `path` may also be an open text stream.
    """
    if hasattr(path, "write"):
        _stats_rows(rows, path)
        return
    with open(path, "w", newline="") as fh:
        _stats_rows(rows, fh)


def _stats_rows(rows, fh) -> None:
    wr = csv.DictWriter(fh, fieldnames=STATS_COLUMNS, extrasaction="ignore", lineterminator="\n")
    wr.writeheader()
    for r in rows:
        wr.writerow(r.row() if hasattr(r, "row") else r)
