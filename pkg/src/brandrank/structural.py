"""Weighted out-degree, betweenness and the combined network-structure score."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from brandrank import kernels
from brandrank.graph_model import WeightedDigraph
from brandrank.paths import ShortestPathTable, through_count


@dataclass(frozen=True)
class StructuralScores:
    nodes: tuple[str, ...]
    outdegree: np.ndarray
    betweenness: np.ndarray
    outdegree_norm: np.ndarray
    betweenness_norm: np.ndarray
    score_network: np.ndarray

    def as_dict(self):
        return dict(zip(self.nodes, self.score_network.tolist()))


def outdegree(g: WeightedDigraph, u: str) -> float:
    """Sum of original interaction weights on edges leaving ``u``."""
    if u not in g:
        raise KeyError(f"unknown node {u!r}")
    return float(sum(w for (s, _), w in g.edges.items() if s == u))


def outdegree_all(g: WeightedDigraph) -> np.ndarray:
    out = np.zeros(len(g))
    if g.n_edges:
        src, _, w = g.edge_arrays()
        np.add.at(out, src, w.astype(np.float64))
    return out


def betweenness(t: ShortestPathTable, u: str) -> float:
    """Betweenness of one node over ordered pairs (j, k) that are connected.

    Straight summation of through-counts; use :func:`betweenness_all` for the
    whole population.
    """
    total = 0.0
    for j in t.nodes:
        if j == u:
            continue
        for k in t.nodes:
            if k == u or k == j:
                continue
            g_jk = t.paths(j, k)
            if g_jk == 0:
                continue
            total += through_count(t, j, u, k) / g_jk
    return total


def betweenness_all(t: ShortestPathTable) -> np.ndarray:
    return kernels.betweenness(np.asarray(t.dist), np.asarray(t.count))


def minmax_normalize(values) -> np.ndarray:
    """Min-max scaling to [0, 1]; a constant input maps to all zeros."""
    x = np.asarray(values, dtype=np.float64)
    if x.size == 0:
        raise ValueError("cannot normalize an empty list")
    lo, hi = x.min(), x.max()
    if hi == lo:
        return np.zeros_like(x)
    return np.clip((x - lo) / (hi - lo), 0.0, 1.0)


def network_score(g: WeightedDigraph, t: ShortestPathTable) -> StructuralScores:
    if tuple(g.nodes) != tuple(t.nodes):
        raise ValueError("shortest-path table was built on a different node set")
    od = outdegree_all(g)
    bc = betweenness_all(t)
    od_n = minmax_normalize(od) if od.size else od
    bc_n = minmax_normalize(bc) if bc.size else bc
    return StructuralScores(g.nodes, od, bc, od_n, bc_n, (od_n + bc_n) / 2.0)
