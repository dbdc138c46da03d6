"""Seeded synthetic brand community with planted influencers.

Follows grow by preferential attachment (newcomers follow popular users, some
are followed back). Planted influencers are more attractive to newcomers and
publish well-received, mostly positive brand posts; everybody else posts
sparsely and draws little engagement.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from brandrank.graph_model import Comment, FollowRelation, Post

_POS_WORDS = ("great", "love", "excellent", "recommend", "smooth", "reliable")
_NEG_WORDS = ("laggy", "overpriced", "disappointed", "broken", "slow", "bug")


@dataclass(frozen=True)
class SyntheticSpec:
    node_count: int = 2000
    edges_per_node: int = 2
    planted_influencer_count: int = 20
    planted_intensity: float = 20.0
    brand_post_rate: float = 0.5
    follow_back_prob: float = 0.35
    reply_prob: float = 0.3
    seed: int = 20201

    def __post_init__(self):
        if self.node_count < self.edges_per_node + 2:
            raise ValueError("node_count too small for the attachment parameter")
        if self.edges_per_node < 1:
            raise ValueError("edges_per_node must be >= 1")
        if not 0 <= self.planted_influencer_count < self.node_count:
            raise ValueError("planted_influencer_count must be in [0, node_count)")
        if self.planted_intensity < 1:
            raise ValueError("planted_intensity must be >= 1")


@dataclass(frozen=True)
class SyntheticCommunity:
    users: tuple[str, ...]
    posts: tuple[Post, ...]
    comments: tuple[Comment, ...]
    follows: tuple[FollowRelation, ...]
    planted: frozenset[str]
    verified: frozenset[str]


def _user_id(i, width):
    return f"u{i:0{width}d}"


def _follow_backbone(spec: SyntheticSpec, rng, is_planted):
    """Directed preferential attachment; returns (follower, followee) index pairs."""
    n, m = spec.node_count, spec.edges_per_node
    followers = np.zeros(n)
    boost = np.where(is_planted, spec.planted_intensity, 1.0)
    pairs = []
    seen = set()

    def add(a, b):
        if a != b and (a, b) not in seen:
            seen.add((a, b))
            pairs.append((a, b))
            followers[b] += 1

    core = m + 1
    for a in range(core):
        for b in range(core):
            add(a, b)
    for t in range(core, n):
        attract = (followers[:t] + 1.0) * boost[:t]
        targets = rng.choice(t, size=m, replace=False, p=attract / attract.sum())
        for b in sorted(int(x) for x in targets):
            add(t, b)
            if rng.random() < spec.follow_back_prob * (0.5 if is_planted[b] else 1.0):
                add(b, t)
    return pairs


def generate_synthetic(spec: SyntheticSpec = SyntheticSpec()) -> SyntheticCommunity:
    rng = np.random.default_rng(spec.seed)
    n = spec.node_count
    width = len(str(n - 1))
    users = tuple(_user_id(i, width) for i in range(n))
    planted_idx = set(int(i) for i in rng.choice(n, size=spec.planted_influencer_count, replace=False))
    is_planted = np.array([i in planted_idx for i in range(n)])

    pairs = _follow_backbone(spec, rng, is_planted)
    followers_of: dict[int, list[int]] = {i: [] for i in range(n)}
    for a, b in pairs:
        followers_of[b].append(a)

    posts: list[Post] = []
    posts_of: dict[int, list[int]] = {i: [] for i in range(n)}
    for i in range(n):
        if is_planted[i]:
            k = 3 + rng.poisson(spec.brand_post_rate * spec.planted_intensity)
        else:
            k = 1 + rng.poisson(spec.brand_post_rate)
        for _ in range(k):
            if is_planted[i]:
                pol = 1 if rng.random() < 0.95 else -1
                likes = int(rng.poisson(4.0 * spec.planted_intensity))
                favs = int(rng.poisson(2.0 * spec.planted_intensity))
            else:
                pol = 1 if rng.random() < 0.55 else -1
                likes = int(rng.poisson(1.0))
                favs = int(rng.poisson(0.3))
            posts_of[i].append(len(posts))
            posts.append(Post(f"p{len(posts):06d}", users[i], pol, likes, favs, None))

    comments: list[Comment] = []

    def comment(post_idx, author, parent, positive):
        cid = f"c{len(comments):07d}"
        words = _POS_WORDS if positive else _NEG_WORDS
        text = "this is " + words[int(rng.integers(len(words)))]
        # half the comments carry an explicit polarity, the rest rely on the lexicon
        pol = (1 if positive else -1) if rng.random() < 0.5 else None
        comments.append(Comment(cid, posts[post_idx].post_id, users[author], parent, pol, text))
        return cid

    for b in range(n):
        author_posts = posts_of[b]
        p_comment = 0.9 if is_planted[b] else 0.5
        p_positive = 0.9 if is_planted[b] else 0.55
        for f in followers_of[b]:
            for pidx in author_posts:
                if rng.random() >= p_comment:
                    continue
                cid = comment(pidx, f, None, rng.random() < p_positive)
                if rng.random() < spec.reply_prob:
                    comment(pidx, b, cid, rng.random() < 0.8)

    follows = tuple(FollowRelation(users[a], users[b]) for a, b in pairs)
    planted = frozenset(users[i] for i in planted_idx)
    verified = frozenset(
        u for i, u in enumerate(users) if rng.random() < (0.9 if is_planted[i] else 0.05)
    )
    return SyntheticCommunity(users, tuple(posts), tuple(comments), follows, planted, verified)


def write_community(outdir, com: SyntheticCommunity):
    """posts/comments/follows/users CSVs plus ``planted.csv`` (ground truth)."""
    from pathlib import Path

    from brandrank import io

    outdir = Path(outdir)
    io.write_dataset(outdir, com.posts, com.comments, com.follows,
                     [(u, u in com.verified) for u in com.users])
    with open(outdir / "planted.csv", "w", encoding="utf-8", newline="") as fh:
        fh.write("user_id\n")
        for u in sorted(com.planted):
            fh.write(u + "\n")
    return outdir
