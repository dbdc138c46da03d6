"""Interaction records and the weighted interaction digraph.

Edges point in the direction information spreads: if ``b`` follows ``a`` or
comments on ``a``'s post, the edge is ``a -> b``. Edge weight counts the
interactions folded into that pair.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

import numpy as np


class ReferentialIntegrityError(ValueError):
    """A comment points at a post or parent comment that does not exist."""


class EmptyGraphError(ValueError):
    pass


def _check_sign(value, what):
    if value not in (1, -1):
        raise ValueError(f"{what}: polarity must be +1 or -1, got {value!r}")


@dataclass(frozen=True)
class Post:
    post_id: str
    author: str
    polarity: int = 1
    likes: int = 0
    favorites: int = 0
    text: str | None = None

    def __post_init__(self):
        if not self.author:
            raise ValueError(f"post {self.post_id!r}: empty author")
        _check_sign(self.polarity, f"post {self.post_id!r}")
        if self.likes < 0 or self.favorites < 0:
            raise ValueError(f"post {self.post_id!r}: negative reaction count")


@dataclass(frozen=True)
class Comment:
    comment_id: str
    post_id: str
    author: str
    parent_comment_id: str | None = None
    polarity: int | None = None
    text: str | None = None

    def __post_init__(self):
        if not self.author:
            raise ValueError(f"comment {self.comment_id!r}: empty author")
        if self.polarity is not None:
            _check_sign(self.polarity, f"comment {self.comment_id!r}")


@dataclass(frozen=True)
class FollowRelation:
    follower: str
    followee: str

    def __post_init__(self):
        if not self.follower or not self.followee:
            raise ValueError("follow relation with empty endpoint")
        if self.follower == self.followee:
            raise ValueError(f"user {self.follower!r} cannot follow themselves")


@dataclass(frozen=True)
class WeightedDigraph:
    """Immutable weighted digraph with string node ids.

    ``nodes`` is kept sorted so that every array view (``index``, ``adjacency``)
    is deterministic for a given node/edge set.
    """

    nodes: tuple[str, ...]
    edges: Mapping[tuple[str, str], int]
    verified: frozenset[str] = frozenset()
    _index: Mapping[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        nodes = tuple(sorted(set(self.nodes)))
        node_set = set(nodes)
        edges = {}
        for (s, t), w in sorted(self.edges.items()):
            if s == t:
                raise ValueError(f"self-loop on {s!r}")
            if s not in node_set or t not in node_set:
                raise ValueError(f"edge ({s!r}, {t!r}) references unknown node")
            w = int(w)
            if w < 1:
                raise ValueError(f"edge ({s!r}, {t!r}) has weight {w} < 1")
            edges[(s, t)] = w
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "edges", MappingProxyType(edges))
        object.__setattr__(self, "verified", frozenset(self.verified) & node_set)
        object.__setattr__(
            self, "_index", MappingProxyType({u: i for i, u in enumerate(nodes)})
        )

    @property
    def index(self) -> Mapping[str, int]:
        return self._index

    def __len__(self):
        return len(self.nodes)

    def __contains__(self, node):
        return node in self._index

    @property
    def n_edges(self):
        return len(self.edges)

    def edge_arrays(self):
        """(sources, targets, weights) as index/int arrays in sorted edge order."""
        m = len(self.edges)
        src = np.empty(m, dtype=np.int64)
        dst = np.empty(m, dtype=np.int64)
        w = np.empty(m, dtype=np.int64)
        for e, ((s, t), wt) in enumerate(self.edges.items()):
            src[e] = self._index[s]
            dst[e] = self._index[t]
            w[e] = wt
        return src, dst, w

    def out_neighbors(self) -> dict[str, list[str]]:
        out = {u: [] for u in self.nodes}
        for s, t in self.edges:
            out[s].append(t)
        return out

    def out_degree_counts(self):
        deg = Counter(s for s, _ in self.edges)
        return np.array([deg.get(u, 0) for u in self.nodes], dtype=np.int64)

    def in_degree_counts(self):
        deg = Counter(t for _, t in self.edges)
        return np.array([deg.get(u, 0) for u in self.nodes], dtype=np.int64)

    def subgraph(self, keep: Iterable[str], edges=None) -> "WeightedDigraph":
        keep = set(keep)
        if edges is None:
            edges = self.edges
        kept = {(s, t): w for (s, t), w in edges.items() if s in keep and t in keep}
        return WeightedDigraph(tuple(keep), kept, self.verified)


@dataclass(frozen=True)
class DistanceWeights:
    """Inverted edge lengths ``w' = w_max + 1 - w`` for one source graph."""

    edges: Mapping[tuple[str, str], int]
    w_max: int

    def __post_init__(self):
        object.__setattr__(self, "edges", MappingProxyType(dict(sorted(self.edges.items()))))


def build_graph(
    posts: Iterable[Post],
    comments: Iterable[Comment],
    follows: Iterable[FollowRelation],
    verified: Iterable[str] = (),
) -> WeightedDigraph:
    """Fold posts, comments and follows into a weighted interaction digraph.

    * a top-level comment by ``c`` on a post by ``a`` adds 1 to ``a -> c``;
    * a reply by ``c`` to a comment written by ``k`` adds 1 to ``k -> c``
      (the post author gets nothing from replies);
    * ``f`` following ``a`` adds 1 to ``a -> f`` when ``a`` authored a post or
      comment; follows between two non-authors are outside the community;
    * self-interactions are dropped.

    Record order does not matter; duplicates in ``follows`` count once.
    """
    posts = list(posts)
    comments = list(comments)
    post_by_id = {}
    for p in posts:
        if p.post_id in post_by_id:
            raise ReferentialIntegrityError(f"duplicate post_id {p.post_id!r}")
        post_by_id[p.post_id] = p
    comment_by_id = {}
    for c in comments:
        if c.comment_id in comment_by_id:
            raise ReferentialIntegrityError(f"duplicate comment_id {c.comment_id!r}")
        comment_by_id[c.comment_id] = c

    for c in comments:
        if c.post_id not in post_by_id:
            raise ReferentialIntegrityError(
                f"comment {c.comment_id!r} references missing post {c.post_id!r}"
            )
        if c.parent_comment_id is not None:
            parent = comment_by_id.get(c.parent_comment_id)
            if parent is None:
                raise ReferentialIntegrityError(
                    f"comment {c.comment_id!r} replies to missing comment "
                    f"{c.parent_comment_id!r}"
                )
            if parent.post_id != c.post_id:
                raise ReferentialIntegrityError(
                    f"comment {c.comment_id!r} replies to comment "
                    f"{c.parent_comment_id!r} on a different post"
                )

    authors = {p.author for p in posts} | {c.author for c in comments}
    nodes = set(authors)
    weights: dict[tuple[str, str], int] = defaultdict(int)

    for c in comments:
        if c.parent_comment_id is None:
            src = post_by_id[c.post_id].author
        else:
            src = comment_by_id[c.parent_comment_id].author
        if src != c.author:
            weights[(src, c.author)] += 1

    for f in set(follows):
        if f.followee in authors:
            nodes.add(f.follower)
            weights[(f.followee, f.follower)] += 1

    return WeightedDigraph(tuple(nodes), dict(weights), frozenset(verified))


def prune(g: WeightedDigraph, min_weight: int = 2) -> WeightedDigraph:
    """Noise reduction run to a fixpoint.

    Each round removes sink nodes (in-degree > 0, out-degree 0), drops edges
    lighter than ``min_weight`` and then drops isolated nodes.
    """
    if min_weight < 1:
        raise ValueError("min_weight must be >= 1")
    nodes = set(g.nodes)
    edges = dict(g.edges)
    while True:
        before = (len(nodes), len(edges))
        has_out = {s for s, _ in edges}
        has_in = {t for _, t in edges}
        sinks = has_in - has_out
        if sinks:
            nodes -= sinks
            edges = {e: w for e, w in edges.items() if e[0] in nodes and e[1] in nodes}
        edges = {e: w for e, w in edges.items() if w >= min_weight}
        touched = {s for s, _ in edges} | {t for _, t in edges}
        nodes &= touched
        if (len(nodes), len(edges)) == before:
            break
    return WeightedDigraph(tuple(nodes), edges, g.verified)


def invert_weights(g: WeightedDigraph) -> DistanceWeights:
    """Turn interaction strength into edge length: heavier edge, shorter hop."""
    if not g.edges:
        raise EmptyGraphError("no edges to invert")
    w_max = max(g.edges.values())
    return DistanceWeights({e: w_max + 1 - w for e, w in g.edges.items()}, w_max)
