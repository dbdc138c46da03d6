"""Entropy-weight fusion of structure and brand scores into node values."""

from __future__ import annotations

import math
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

import numpy as np

from brandrank.graph_model import DistanceWeights, WeightedDigraph
from brandrank.structural import StructuralScores, minmax_normalize


@dataclass(frozen=True)
class ScoreMatrix:
    """Rows are nodes; columns are (network score, normalized brand score)."""

    nodes: tuple[str, ...]
    values: np.ndarray
    raw_brand: np.ndarray | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2 or v.shape[1] != 2 or v.shape[0] != len(self.nodes):
            raise ValueError(f"score matrix must be {len(self.nodes)}x2, got {v.shape}")
        if v.shape[0] == 0:
            raise ValueError("score matrix needs at least one node")
        if np.any(v < 0) or not np.all(np.isfinite(v)):
            raise ValueError("score matrix entries must be finite and non-negative")
        object.__setattr__(self, "values", v)


@dataclass(frozen=True)
class EntropyWeights:
    w1: float
    w2: float
    h1: float = float("nan")
    h2: float = float("nan")

    def as_array(self):
        return np.array([self.w1, self.w2])


@dataclass(frozen=True)
class DualWeightedDigraph:
    base: WeightedDigraph
    distances: DistanceWeights
    node_values: Mapping[str, float]

    @property
    def nodes(self):
        return self.base.nodes

    def value_array(self) -> np.ndarray:
        return np.array([self.node_values[u] for u in self.base.nodes], dtype=np.float64)


def build_score_matrix(structural: StructuralScores, brand: Mapping[str, float]) -> ScoreMatrix:
    s_nodes = set(structural.nodes)
    b_nodes = set(brand)
    if s_nodes != b_nodes:
        diff = sorted(s_nodes ^ b_nodes)
        raise ValueError(f"node populations differ: {diff}")
    raw = np.array([brand[u] for u in structural.nodes], dtype=np.float64)
    # brand scores can be negative; shift them into [0, 1] like the structural metrics
    col2 = minmax_normalize(raw)
    return ScoreMatrix(structural.nodes, np.column_stack([structural.score_network, col2]), raw)


def column_entropy(col: np.ndarray) -> float:
    n = col.size
    if n == 1:
        return 0.0
    total = col.sum()
    if total <= 0:
        # contentless criterion
        return 1.0
    f = col / total
    nz = f[f > 0]
    h = -float(np.sum(nz * np.log(nz))) / math.log(n)
    return min(max(h, 0.0), 1.0)


def entropy_weights(m: ScoreMatrix) -> EntropyWeights:
    h1 = column_entropy(m.values[:, 0])
    h2 = column_entropy(m.values[:, 1])
    denom = 2.0 - h1 - h2
    if denom <= 0.0:
        return EntropyWeights(0.5, 0.5, h1, h2)
    w1 = (1.0 - h1) / denom
    w1 = min(max(w1, 0.0), 1.0)
    return EntropyWeights(w1, 1.0 - w1, h1, h2)


def individual_values(m: ScoreMatrix, w: EntropyWeights) -> dict[str, float]:
    v = m.values @ w.as_array()
    v = np.clip(v, 0.0, 1.0)
    return dict(zip(m.nodes, v.tolist()))


def attach_values(
    g: WeightedDigraph, d: DistanceWeights | None, values: Mapping[str, float]
) -> DualWeightedDigraph:
    missing = [u for u in g.nodes if u not in values]
    if missing:
        raise KeyError(f"no individual value for nodes {missing}")
    if d is None:
        d = DistanceWeights({}, 0)
    vals = {u: float(values[u]) for u in g.nodes}
    bad = [u for u, x in vals.items() if not math.isfinite(x) or x < 0]
    if bad:
        raise ValueError(f"individual values must be finite and >= 0: {bad}")
    return DualWeightedDigraph(g, d, MappingProxyType(vals))
