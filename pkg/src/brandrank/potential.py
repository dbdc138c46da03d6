"""Value-weighted topological potential and influential-node ranking.

For node ``i`` with value ``v_i`` and directed shortest distance ``d_ij``::

    phi(i) = sum_j v_i * v_j * exp(-(d_ij / sigma) ** 2)

The ``j = i`` term contributes ``v_i ** 2`` and unreachable ``j`` contribute 0.
``sigma`` is chosen where the Shannon entropy of the normalized potentials is
smallest. (The classic unweighted field uses ``m_j * exp(-d_ij / sigma)``;
only the Gaussian form above is implemented.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from brandrank import kernels
from brandrank.paths import ShortestPathTable
from brandrank.valuation import DualWeightedDigraph

GRID_POINTS = 100
_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


class DegenerateFieldError(ValueError):
    pass


@dataclass(frozen=True)
class PotentialField:
    nodes: tuple[str, ...]
    sigma: float
    phi: np.ndarray
    entropy: float

    def as_dict(self):
        return dict(zip(self.nodes, self.phi.tolist()))


@dataclass(frozen=True)
class RankEntry:
    node: str
    score: float
    score_network: float | None = None
    score_brand: float | None = None
    value_indv: float | None = None


@dataclass(frozen=True)
class RankingResult:
    method: str
    entries: tuple[RankEntry, ...]
    sigma: float | None = None
    threshold: float = 0.0
    top_percent: float = 100.0
    extra: dict = field(default_factory=dict)

    @property
    def nodes(self) -> list[str]:
        return [e.node for e in self.entries]

    def __len__(self):
        return len(self.entries)


class _Field:
    """Distances binned by value so each sigma costs O(n * levels)."""

    def __init__(self, values: np.ndarray, dist: np.ndarray):
        self.values = values
        self.levels, self.mass = kernels.distance_mass(dist, values)
        self._levels_f = self.levels.astype(np.float64)

    def phi(self, sigma: float) -> np.ndarray:
        kern = np.exp(-((self._levels_f / sigma) ** 2))
        return self.values * (self.values + self.mass @ kern)

    def entropy(self, sigma: float) -> float:
        return potential_entropy_of(self.phi(sigma))


def _aligned(g: DualWeightedDigraph, t: ShortestPathTable):
    if tuple(g.nodes) != tuple(t.nodes):
        raise ValueError("shortest-path table was built on a different node set")
    return g.value_array(), np.asarray(t.dist)


def potential_entropy_of(phi: np.ndarray) -> float:
    z = float(np.sum(phi))
    if not z > 0:
        raise DegenerateFieldError("degenerate field: every potential is zero")
    p = phi[phi > 0] / z
    h = -float(np.sum(p * np.log(p)))
    return max(h, 0.0)


def topological_potential(
    g: DualWeightedDigraph, t: ShortestPathTable, sigma: float
) -> PotentialField:
    if not sigma > 0:
        raise ValueError(f"sigma must be positive, got {sigma}")
    values, dist = _aligned(g, t)
    phi = _Field(values, dist).phi(sigma)
    try:
        h = potential_entropy_of(phi)
    except DegenerateFieldError:
        h = float("nan")
    return PotentialField(g.nodes, float(sigma), phi, h)


def potential_entropy(field: PotentialField) -> float:
    return potential_entropy_of(field.phi)


def sigma_grid(t: ShortestPathTable, points: int = GRID_POINTS) -> np.ndarray:
    """Log-spaced candidates over [d_min / 10, 3 * d_max] of finite positive distances."""
    dist = np.asarray(t.dist)
    pos = dist[dist > 0]
    if pos.size == 0:
        raise DegenerateFieldError("disconnected field: no finite positive distances")
    return np.geomspace(pos.min() / 10.0, 3.0 * pos.max(), points)


def _golden_min(f, lo, hi, rel_tol):
    """Golden-section search on log(sigma) in [lo, hi]."""
    a, b = math.log(lo), math.log(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = f(math.exp(c)), f(math.exp(d))
    while (b - a) > rel_tol:
        if fc <= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = f(math.exp(c))
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = f(math.exp(d))
    return (math.exp(c), fc) if fc <= fd else (math.exp(d), fd)


def entropy_curve(g: DualWeightedDigraph, t: ShortestPathTable, sigmas: Sequence[float]):
    values, dist = _aligned(g, t)
    fld = _Field(values, dist)
    return np.array([fld.entropy(float(s)) for s in sigmas])


def optimize_sigma(
    g: DualWeightedDigraph,
    t: ShortestPathTable,
    rel_tol: float = 1e-4,
    return_curve: bool = False,
):
    """Sigma minimizing the potential entropy.

    Scans :func:`sigma_grid`, then refines inside the bracketing grid cell by
    golden-section search. The result is never worse than the best grid point.
    """
    values, dist = _aligned(g, t)
    if np.count_nonzero(values > 0) < 2:
        raise DegenerateFieldError("need at least two nodes with positive value")
    grid = sigma_grid(t)
    fld = _Field(values, dist)
    curve = np.array([fld.entropy(float(s)) for s in grid])
    k = int(np.argmin(curve))
    best_sigma, best_h = float(grid[k]), float(curve[k])
    lo = grid[max(k - 1, 0)]
    hi = grid[min(k + 1, grid.size - 1)]
    if hi > lo:
        # log-width tolerance equals relative tolerance on sigma
        s, h = _golden_min(fld.entropy, lo, hi, math.log1p(rel_tol))
        if h < best_h:
            best_sigma, best_h = s, h
    if return_curve:
        return best_sigma, best_h, grid, curve
    return best_sigma


def _top_slice(n_kept: int, top_percent: float) -> int:
    if not 0 < top_percent <= 100:
        raise ValueError(f"top_percent must be in (0, 100], got {top_percent}")
    # round first so 2.5% of 200 is exactly 5, not 5.000000001 -> 6
    return min(n_kept, math.ceil(round(n_kept * top_percent / 100.0, 9)))


def order_by_score(nodes: Sequence[str], scores: Sequence[float]) -> list[int]:
    """Indices sorted by descending score, ties by ascending node id."""
    return sorted(range(len(nodes)), key=lambda i: (-scores[i], nodes[i]))


def rank_influential(
    g: DualWeightedDigraph,
    t: ShortestPathTable,
    threshold: float = 0.0,
    top_percent: float = 2.5,
    sigma: float | None = None,
    score_network: dict | None = None,
    score_brand: dict | None = None,
) -> RankingResult:
    """Keep nodes with potential >= ``threshold``, sort descending, return the top slice."""
    if len(g.nodes) == 0:
        raise ValueError("cannot rank an empty graph")
    if threshold < 0:
        raise ValueError("threshold must be >= 0")
    if sigma is None:
        sigma = optimize_sigma(g, t)
    fld = topological_potential(g, t, sigma)
    phi = fld.phi.tolist()
    kept = [i for i in order_by_score(g.nodes, phi) if phi[i] >= threshold]
    kept = kept[: _top_slice(len(kept), top_percent)] if kept else kept
    entries = tuple(
        RankEntry(
            g.nodes[i],
            phi[i],
            None if score_network is None else score_network[g.nodes[i]],
            None if score_brand is None else score_brand[g.nodes[i]],
            g.node_values[g.nodes[i]],
        )
        for i in kept
    )
    return RankingResult("potential", entries, sigma, threshold, top_percent,
                         {"entropy": fld.entropy})
