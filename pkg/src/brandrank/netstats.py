"""Small-world and scale-free characterization of an interaction graph."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import shortest_path

from brandrank.graph_model import WeightedDigraph


class InsufficientSupportError(ValueError):
    pass


@dataclass(frozen=True)
class NetworkSummary:
    node_count: int
    edge_count: int
    density: float
    avg_path_length: float
    avg_weighted_degree: float
    clustering_coefficient: float
    random_reference_clustering: float
    assortativity: float

    def to_dict(self):
        return asdict(self)


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    c: float
    r_squared: float
    points: tuple[tuple[float, float], ...]


def _undirected_neighbors(g: WeightedDigraph):
    nbrs = [set() for _ in g.nodes]
    idx = g.index
    for s, t in g.edges:
        i, j = idx[s], idx[t]
        nbrs[i].add(j)
        nbrs[j].add(i)
    return nbrs


def avg_hop_path_length(g: WeightedDigraph) -> float:
    """Mean directed hop distance over ordered reachable pairs (i != j)."""
    n = len(g)
    if n < 2 or g.n_edges == 0:
        return 0.0
    src, dst, _ = g.edge_arrays()
    a = csr_matrix((np.ones(src.size), (src, dst)), shape=(n, n))
    hops = shortest_path(a, method="D", directed=True, unweighted=True)
    mask = np.isfinite(hops) & ~np.eye(n, dtype=bool)
    return float(hops[mask].mean()) if mask.any() else 0.0


def clustering(nbrs) -> float:
    """Average local clustering; nodes with fewer than two neighbours count as 0."""
    n = len(nbrs)
    if n == 0:
        return 0.0
    total = 0.0
    for i, ns in enumerate(nbrs):
        k = len(ns)
        if k < 2:
            continue
        links = sum(len(nbrs[j] & ns) for j in ns) / 2
        total += links / (k * (k - 1) / 2)
    return total / n


def assortativity(nbrs) -> float:
    """Newman's degree correlation over undirected edges; 0 if undefined."""
    deg = np.array([len(ns) for ns in nbrs], dtype=np.float64)
    xs, ys = [], []
    for i, ns in enumerate(nbrs):
        for j in ns:
            if i < j:
                xs.append(deg[i])
                ys.append(deg[j])
    if not xs:
        return 0.0
    x = np.array(xs)
    y = np.array(ys)
    m = x.size
    prod = np.sum(x * y) / m
    mean_sq = (np.sum(0.5 * (x + y)) / m) ** 2
    var = np.sum(0.5 * (x * x + y * y)) / m
    den = var - mean_sq
    if den <= 0:
        return 0.0
    return float(min(max((prod - mean_sq) / den, -1.0), 1.0))


def summarize(g: WeightedDigraph) -> NetworkSummary:
    n = len(g)
    if n == 0:
        raise ValueError("cannot summarize an empty graph")
    m = g.n_edges
    density = m / (n * (n - 1)) if n > 1 else 0.0
    avg_wdeg = 2.0 * sum(g.edges.values()) / n
    nbrs = _undirected_neighbors(g)
    mean_deg = sum(len(ns) for ns in nbrs) / n
    rand_c = min(mean_deg / n, 1.0)
    return NetworkSummary(
        node_count=n,
        edge_count=m,
        density=density,
        avg_path_length=avg_hop_path_length(g),
        avg_weighted_degree=avg_wdeg,
        clustering_coefficient=clustering(nbrs),
        random_reference_clustering=rand_c,
        assortativity=assortativity(nbrs),
    )


def ccdf_points(degrees) -> list[tuple[float, float]]:
    """Empirical P[X > x] at each distinct positive value x."""
    d = np.asarray(degrees, dtype=np.float64)
    if d.size == 0:
        return []
    xs = np.unique(d[d > 0])
    srt = np.sort(d)
    greater = d.size - np.searchsorted(srt, xs, side="right")
    return [(float(x), float(c) / d.size) for x, c in zip(xs, greater)]


def fit_powerlaw(degrees) -> PowerLawFit:
    """Least-squares line through (ln x, ln CCDF) for CCDF > 0."""
    d = np.asarray(degrees, dtype=np.float64)
    if np.unique(d[d > 0]).size < 3:
        raise InsufficientSupportError("insufficient support: need >= 3 distinct positive values")
    pts = ccdf_points(d)
    used = [(x, y) for x, y in pts if y > 0]
    if len(used) < 2:
        raise InsufficientSupportError("insufficient support: CCDF has fewer than 2 positive points")
    lx = np.log([x for x, _ in used])
    ly = np.log([y for _, y in used])
    slope, intercept = np.polyfit(lx, ly, 1)
    resid = ly - (slope * lx + intercept)
    ss_tot = float(np.sum((ly - ly.mean()) ** 2))
    r2 = 1.0 - float(np.sum(resid**2)) / ss_tot if ss_tot > 0 else 1.0
    return PowerLawFit(float(-slope), float(math.exp(intercept)), r2, tuple(pts))
