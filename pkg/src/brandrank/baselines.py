"""Weighted PageRank and HITS, for comparison with the potential ranking."""

from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal

import numpy as np
import scipy.sparse as sp

from brandrank.graph_model import WeightedDigraph
from brandrank.potential import RankEntry, RankingResult, _top_slice, order_by_score


@dataclass(frozen=True)
class BaselineScores:
    method: str
    nodes: tuple[str, ...]
    scores: np.ndarray
    iterations: int
    residual: float
    converged: bool

    def as_dict(self):
        return dict(zip(self.nodes, self.scores.tolist()))


def _adjacency(g: WeightedDigraph, weighted: bool):
    n = len(g)
    src, dst, w = g.edge_arrays()
    data = w.astype(np.float64) if weighted else np.ones(src.size)
    return sp.csr_matrix((data, (src, dst)), shape=(n, n))


def pagerank_operator(g: WeightedDigraph, d: float):
    """Return ``F`` with ``F(x) = (1 - d) + d * sum_{v->u} x_v * w_vu / C_v``.

    ``C_v`` is the total out-weight of ``v``. Dangling mass is not redistributed.
    ``1 - d`` is taken in decimal so that d = 0.85 teleports exactly 0.15.
    """
    base = float(Decimal(1) - Decimal(repr(float(d))))
    a = _adjacency(g, weighted=True)
    out_w = np.asarray(a.sum(axis=1)).ravel()
    inv = np.divide(1.0, out_w, out=np.zeros_like(out_w), where=out_w > 0)
    # transition[u, v] = w_vu / C_v
    transition = (sp.diags(inv) @ a).T.tocsr()

    def step(x):
        return base + d * (transition @ x)

    return step


def pagerank(
    g: WeightedDigraph, d: float = 0.85, tol: float = 1e-8, max_iter: int = 200
) -> BaselineScores:
    if not 0 < d < 1:
        raise ValueError(f"damping must be in (0, 1), got {d}")
    step = pagerank_operator(g, d)
    x = np.ones(len(g))
    residual = float("inf")
    it = 0
    for it in range(1, max_iter + 1):
        nxt = step(x)
        residual = float(np.max(np.abs(nxt - x))) if x.size else 0.0
        x = nxt
        if residual <= tol:
            break
    # report the residual of the vector actually returned
    final = float(np.max(np.abs(step(x) - x))) if x.size else 0.0
    return BaselineScores("pagerank", g.nodes, x, it, final, residual <= tol)


def _unit(v):
    norm = np.linalg.norm(v)
    return v / norm if norm > 0 else v


def hits(g: WeightedDigraph, tol: float = 1e-8, max_iter: int = 200):
    """Unweighted HITS; returns ``(authority, hub)``, each L2-normalized."""
    n = len(g)
    if n == 0:
        raise ValueError("HITS needs a non-empty graph")
    a = _adjacency(g, weighted=False)
    at = a.T.tocsr()
    hub = _unit(np.ones(n))
    auth = _unit(at @ hub)
    residual = float("inf")
    it = 0
    for it in range(1, max_iter + 1):
        new_hub = _unit(a @ auth)
        new_auth = _unit(at @ new_hub)
        residual = max(
            float(np.max(np.abs(new_hub - hub))), float(np.max(np.abs(new_auth - auth)))
        )
        hub, auth = new_hub, new_auth
        if residual <= tol:
            break
    converged = residual <= tol
    auth_res = float(np.max(np.abs(_unit(at @ hub) - auth)))
    hub_res = float(np.max(np.abs(_unit(a @ auth) - hub)))
    return (
        BaselineScores("hits-authority", g.nodes, auth, it, auth_res, converged),
        BaselineScores("hits-hub", g.nodes, hub, it, hub_res, converged),
    )


def rank_by(scores: BaselineScores, top_percent: float = 100.0, threshold: float = 0.0) -> RankingResult:
    vals = scores.scores.tolist()
    order = [i for i in order_by_score(scores.nodes, vals) if vals[i] >= threshold]
    order = order[: _top_slice(len(order), top_percent)] if order else order
    entries = tuple(RankEntry(scores.nodes[i], vals[i]) for i in order)
    return RankingResult(scores.method, entries, None, threshold, top_percent,
                         {"iterations": scores.iterations, "residual": scores.residual,
                          "converged": scores.converged})
