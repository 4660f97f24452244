"""Fork-join execution of the LMT loop over a bisection of the Hilbert-ordered
vertex range. Edges that leave a node's range are handed up to its parent,
which processes them after both children have finished.
"""
from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from mwt.halfedge import HalfEdgeGraph
from mwt.lmt import _NO_RESULTS, LmtOptions, _arrays, _lmt_run, initial_seeds


@dataclass
class PartitionNode:
    lo: int
    hi: int
    children: tuple["PartitionNode", "PartitionNode"] | None = None
    deferred: np.ndarray = field(default_factory=lambda: np.empty(0, dtype=np.int64))
    received: int = 0  # distinct edges handed up from the children

    @property
    def is_leaf(self) -> bool:
        return self.children is None


@dataclass(frozen=True)
class PartitionStats:
    depth: int
    leaves: int
    edges: int
    root_deferred: int

    @property
    def root_fraction(self) -> float:
        return self.root_deferred / self.edges if self.edges else 0.0


def default_depth(threads: int | None = None) -> int:
    threads = threads or os.cpu_count() or 1
    return math.ceil(math.log2(max(1, threads))) + 1


def build_tree(lo: int, hi: int, depth: int) -> PartitionNode:
    if depth <= 0 or hi - lo < 2:
        return PartitionNode(lo, hi)
    mid = (lo + hi) // 2
    return PartitionNode(lo, hi, (build_tree(lo, mid, depth - 1), build_tree(mid, hi, depth - 1)))


def _levels(root: PartitionNode) -> list[list[PartitionNode]]:
    levels = [[root]]
    while any(not nd.is_leaf for nd in levels[-1]):
        levels.append([c for nd in levels[-1] if not nd.is_leaf for c in nd.children])
    return levels


def _unique_in_order(a: np.ndarray) -> np.ndarray:
    if a.size == 0:
        return a
    _, first = np.unique(a, return_index=True)
    return a[np.sort(first)]


def process_range(graph: HalfEdgeGraph, seeds, lo: int, hi: int, onstack: np.ndarray | None = None,
                  options: LmtOptions = LmtOptions()) -> np.ndarray:
    """Run the loop on `seeds`, touching only edges with both endpoints in [lo, hi).

    Returns the seeds (and restacked edges) that leave the range, in discovery order.
    """
    if onstack is None:
        onstack = np.zeros(graph.num_edges, dtype=np.bool_)
    seeds = np.ascontiguousarray(seeds, dtype=np.int64)
    deferred, _ = _lmt_run(*_arrays(graph), onstack, seeds, int(lo), int(hi), options.skip_impossible,
                           False, _NO_RESULTS)
    return deferred


def parallel_lmt(graph: HalfEdgeGraph, max_depth: int = 0, threads: int = 1,
                 options: LmtOptions = LmtOptions()) -> PartitionStats:
    """Same fixpoint as `lmt_loop`, computed over a partition tree of depth `max_depth`.

    Children of a node own disjoint vertex ranges and may run concurrently; an
    edge is processed at the deepest node whose range holds both endpoints.
    """
    n = graph.num_vertices
    root = build_tree(0, n, max(0, int(max_depth)))
    onstack = np.zeros(graph.num_edges, dtype=np.bool_)

    def run(nd: PartitionNode) -> PartitionNode:
        if nd.is_leaf:
            seeds = initial_seeds(graph, nd.lo, nd.hi)
        else:
            seeds = _unique_in_order(np.concatenate([c.deferred for c in nd.children]))
            nd.received = int(seeds.size)
        nd.deferred = process_range(graph, seeds, nd.lo, nd.hi, onstack, options)
        return nd

    levels = _levels(root)
    with ThreadPoolExecutor(max(1, int(threads))) as ex:
        for level in reversed(levels):
            list(ex.map(run, level))
    leaves = sum(1 for level in levels for nd in level if nd.is_leaf)
    return PartitionStats(depth=len(levels) - 1, leaves=leaves, edges=graph.num_edges,
                          root_deferred=root.received)
