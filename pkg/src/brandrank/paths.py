"""All-pairs shortest distances with shortest-path multiplicities."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from brandrank import kernels
from brandrank.graph_model import DistanceWeights
from brandrank.kernels import UNREACHABLE


@dataclass(frozen=True)
class ShortestPathTable:
    """``dist[j, k]`` is the shortest j->k length (``UNREACHABLE`` if none) and
    ``count[j, k]`` the number of distinct shortest paths (0 if unreachable).

    ``count`` is int64 unless some count exceeded the int64 budget, in which
    case it is an object array of Python ints.
    """

    nodes: tuple[str, ...]
    dist: np.ndarray
    count: np.ndarray

    def __post_init__(self):
        self.dist.setflags(write=False)
        self.count.setflags(write=False)
        object.__setattr__(self, "_index", {u: i for i, u in enumerate(self.nodes)})

    @property
    def index(self) -> Mapping[str, int]:
        return self._index

    @property
    def reachable(self):
        return self.dist >= 0

    def distance(self, j, k):
        d = int(self.dist[self._index[j], self._index[k]])
        return None if d == UNREACHABLE else d

    def paths(self, j, k) -> int:
        return int(self.count[self._index[j], self._index[k]])


def all_pairs_shortest(d: DistanceWeights, nodes: Iterable[str]) -> ShortestPathTable:
    """Path-counting Floyd over positive integer edge lengths.

    A strictly shorter route through the pivot replaces the count with the
    product of the two leg counts; an equally short one adds that product.
    """
    nodes = tuple(sorted(set(nodes)))
    index = {u: i for i, u in enumerate(nodes)}
    n = len(nodes)
    dist = np.full((n, n), UNREACHABLE, dtype=np.int64)
    count = np.zeros((n, n), dtype=np.int64)
    np.fill_diagonal(dist, 0)
    np.fill_diagonal(count, 1)
    for (s, t), w in d.edges.items():
        if w < 1:
            raise ValueError(f"edge ({s!r}, {t!r}) has non-positive length {w}")
        i, j = index[s], index[t]
        dist[i, j] = w
        count[i, j] = 1
    count = kernels.floyd_count(dist, count)
    return ShortestPathTable(nodes, dist, count)


def through_count(t: ShortestPathTable, j, i, k) -> int:
    """Number of shortest j->k paths that pass through ``i``."""
    a, b, c = t.index[j], t.index[i], t.index[k]
    dji, dik, djk = int(t.dist[a, b]), int(t.dist[b, c]), int(t.dist[a, c])
    if dji < 0 or dik < 0 or djk < 0 or dji + dik != djk:
        return 0
    return int(t.count[a, b]) * int(t.count[b, c])
