"""Exact minimum-weight triangulation of planar point sets."""
from mwt.geom import BaseAngleConfig, Orientation, Point, Side, orient, pseudo_angle
from mwt.io import read_points, write_edges, write_stats_csv
from mwt.pipeline import (
    PipelineOptions, PipelineResult, StageStats, generate_normal, generate_uniform, run_pipeline,
)
from mwt.polygon import FaceKind, PolygonFace, Triangulation, assemble, extract_faces, triangulate_face
from mwt.svg import write_svg

__all__ = [
    "BaseAngleConfig", "FaceKind", "Orientation", "PipelineOptions", "PipelineResult", "Point",
    "PolygonFace", "Side", "StageStats", "Triangulation", "assemble", "extract_faces", "generate_normal",
    "generate_uniform", "orient", "pseudo_angle", "read_points", "run_pipeline", "triangulate_face",
    "write_edges", "write_stats_csv", "write_svg",
]
