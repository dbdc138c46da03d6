"""Brand engagement: comment polarity, post support rate, per-user brand score."""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Mapping

from brandrank.graph_model import Comment, Post

_TOKEN = re.compile(r"\w+", re.UNICODE)


@dataclass(frozen=True)
class SentimentLexicon:
    entries: Mapping[str, int]

    def __post_init__(self):
        clean = {}
        for term, sign in self.entries.items():
            key = " ".join(_TOKEN.findall(term.lower()))
            if not key:
                raise ValueError(f"empty lexicon term {term!r}")
            if sign not in (1, -1):
                raise ValueError(f"term {term!r}: polarity must be +1 or -1")
            if key in clean and clean[key] != sign:
                raise ValueError(f"term {term!r} listed with both polarities")
            clean[key] = sign
        if not clean:
            raise ValueError("lexicon is empty")
        object.__setattr__(self, "entries", MappingProxyType(clean))
        phrases = [t for t in clean if " " in t]
        object.__setattr__(self, "_phrases", phrases)

    @classmethod
    def from_csv(cls, path) -> "SentimentLexicon":
        with open(path, newline="", encoding="utf-8") as fh:
            return cls._from_rows(csv.DictReader(fh), str(path))

    @classmethod
    def default(cls) -> "SentimentLexicon":
        text = resources.files("brandrank").joinpath("data/lexicon.csv").read_text("utf-8")
        return cls._from_rows(csv.DictReader(text.splitlines()), "lexicon.csv")

    @classmethod
    def _from_rows(cls, reader, source):
        if reader.fieldnames is None or not {"term", "polarity"} <= set(reader.fieldnames):
            raise ValueError(f"{source}: header must contain term,polarity")
        entries = {}
        for lineno, row in enumerate(reader, start=2):
            raw = (row["polarity"] or "").strip()
            if raw not in ("1", "+1", "-1"):
                raise ValueError(f"{source}:{lineno}: bad polarity {raw!r}")
            entries[row["term"]] = int(raw)
        return cls(entries)


def classify_polarity(text: str | None, lex: SentimentLexicon) -> int:
    """Sign of the summed lexicon hits (whole words, case-insensitive).

    Zero or no hits falls in the non-negative bucket.
    """
    if not text:
        return 1
    tokens = _TOKEN.findall(text.lower())
    score = sum(lex.entries.get(tok, 0) for tok in tokens)
    if lex._phrases:
        joined = " " + " ".join(tokens) + " "
        for phrase in lex._phrases:
            score += lex.entries[phrase] * joined.count(" " + phrase + " ")
    return -1 if score < 0 else 1


@dataclass(frozen=True)
class PostSupport:
    post_id: str
    n_pos_com: int
    n_neg_com: int
    n_favorite: int
    n_like: int

    @property
    def n_com(self):
        return self.n_pos_com + self.n_neg_com

    @property
    def n_pos(self):
        return self.n_pos_com + self.n_favorite + self.n_like

    @property
    def n_total(self):
        return self.n_com + self.n_favorite + self.n_like

    @property
    def p_support(self) -> float:
        # an unread post supports nothing
        total = self.n_total
        return self.n_pos / total if total else 0.0


def comment_polarity(c: Comment, lex: SentimentLexicon | None) -> int:
    if c.polarity is not None:
        return c.polarity
    if lex is None:
        raise ValueError(f"comment {c.comment_id!r} has no polarity and no lexicon was given")
    return classify_polarity(c.text, lex)


def support_rate(
    post: Post, comments: Iterable[Comment], lex: SentimentLexicon | None = None
) -> PostSupport:
    pos = neg = 0
    for c in comments:
        if c.post_id != post.post_id:
            raise ValueError(f"comment {c.comment_id!r} does not belong to post {post.post_id!r}")
        if comment_polarity(c, lex) < 0:
            neg += 1
        else:
            pos += 1
    return PostSupport(post.post_id, pos, neg, post.favorites, post.likes)


def brand_score(user: str, posts: Iterable[tuple[Post, PostSupport]]) -> float:
    """Signed sum of post polarity times support rate over ``user``'s posts."""
    total = 0.0
    for post, support in posts:
        if post.author != user:
            raise ValueError(f"post {post.post_id!r} is not authored by {user!r}")
        total += post.polarity * support.p_support
    return total


def brand_scores(
    users: Iterable[str],
    posts: Iterable[Post],
    comments: Iterable[Comment],
    lex: SentimentLexicon | None = None,
) -> dict[str, float]:
    """Brand score for every user in ``users``; users without posts score 0.

    Replies count toward the support of the post they sit under.
    """
    by_post: dict[str, list[Comment]] = {}
    for c in comments:
        by_post.setdefault(c.post_id, []).append(c)
    mine: dict[str, list[tuple[Post, PostSupport]]] = {}
    for p in posts:
        mine.setdefault(p.author, []).append((p, support_rate(p, by_post.get(p.post_id, ()), lex)))
    return {u: brand_score(u, mine.get(u, ())) for u in users}


def load_lexicon(path: str | Path | None) -> SentimentLexicon:
    return SentimentLexicon.default() if path is None else SentimentLexicon.from_csv(path)
