"""Verified-user ratio and one-hop coverage curves for comparing rankers."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from brandrank.graph_model import WeightedDigraph
from brandrank.potential import RankingResult

DEFAULT_GRID = (2.5, 5.0, 10.0, 20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0)


@dataclass(frozen=True)
class CoverageCurve:
    method: str
    points: tuple[tuple[float, float], ...]

    def at(self, n_percent: float) -> float:
        for x, y in self.points:
            if x == n_percent:
                return y
        raise KeyError(n_percent)


@dataclass(frozen=True)
class VerifiedRatio:
    method: str
    verified_count: int
    total: int

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.verified_count, self.total)


@dataclass(frozen=True)
class ComparisonReport:
    curves: tuple[CoverageCurve, ...]
    verified: tuple[VerifiedRatio, ...] | None


def verified_ratio(result: RankingResult | Sequence[str], verified: Iterable[str]) -> Fraction:
    """Share of ranked users carrying the verified flag, as an exact fraction."""
    nodes = result.nodes if isinstance(result, RankingResult) else list(result)
    if not nodes:
        raise ValueError("verified ratio of an empty result is undefined")
    vset = set(verified)
    return Fraction(sum(1 for u in nodes if u in vset), len(nodes))


def _prefix_size(n_nodes: int, n_percent: float) -> int:
    if not 0 < n_percent <= 100:
        raise ValueError(f"n_percent must be in (0, 100], got {n_percent}")
    return min(n_nodes, math.ceil(round(n_nodes * n_percent / 100.0, 9)))


def coverage_ratio(
    g: WeightedDigraph, ranked: Sequence[str], n_percent: float,
    _out: Mapping[str, list[str]] | None = None,
) -> float:
    """Fraction of nodes in the top slice or one hop downstream of it."""
    n = len(g)
    if n == 0:
        return 0.0
    out = g.out_neighbors() if _out is None else _out
    chosen = list(ranked)[: _prefix_size(n, n_percent)]
    covered = set(chosen)
    for u in chosen:
        covered.update(out.get(u, ()))
    return len(covered) / n


def coverage_curve(
    g: WeightedDigraph, method: str, ranked: Sequence[str], grid: Sequence[float] = DEFAULT_GRID
) -> CoverageCurve:
    out = g.out_neighbors()
    return CoverageCurve(method, tuple((float(p), coverage_ratio(g, ranked, p, out)) for p in grid))


def compare_methods(
    g: WeightedDigraph,
    rankers: Mapping[str, Sequence[str]],
    grid: Sequence[float] = DEFAULT_GRID,
    verified: Iterable[str] | None = None,
    verified_top_percent: float = 2.5,
) -> ComparisonReport:
    """Coverage curves on a shared grid, plus verified ratios of each top slice.

    ``verified=None`` means no verification data: ratios are reported as
    not applicable rather than zero.
    """
    expected = set(g.nodes)
    for name, order in rankers.items():
        if set(order) != expected or len(order) != len(expected):
            raise ValueError(f"ordering for {name!r} does not cover the graph's node set")
    curves = tuple(coverage_curve(g, name, order, grid) for name, order in rankers.items())
    ratios = None
    if verified is not None:
        vset = set(verified)
        ratios = []
        for name, order in rankers.items():
            top = list(order)[: _prefix_size(len(order), verified_top_percent)]
            ratios.append(VerifiedRatio(name, sum(1 for u in top if u in vset), len(top)))
        ratios = tuple(ratios)
    return ComparisonReport(curves, ratios)
