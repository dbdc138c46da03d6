"""CSV ingestion with row-level diagnostics, and the report writers/readers.

Floats are written with ``repr`` so every emitted file re-reads to the exact
same values.
"""

from __future__ import annotations

import csv
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from brandrank.graph_model import Comment, FollowRelation, Post, WeightedDigraph
from brandrank.potential import RankEntry, RankingResult

log = logging.getLogger(__name__)

POSTS_HEADER = ("post_id", "author_id", "polarity", "likes", "favorites", "text")
COMMENTS_HEADER = ("comment_id", "post_id", "author_id", "parent_comment_id", "polarity", "text")
FOLLOWS_HEADER = ("follower_id", "followee_id")
USERS_HEADER = ("user_id", "verified")
RANKING_HEADER = ("rank", "user_id", "phi", "score_network", "score_brand", "value_indv")
BASELINE_HEADER = ("rank", "user_id", "score", "method")
SCORES_HEADER = ("user_id", "score_network", "score_brand", "value_indv")
GRAPH_HEADER = ("source_id", "target_id", "weight")


@dataclass(frozen=True)
class Diagnostic:
    file: str
    line: int
    column: str | None
    message: str

    def __str__(self):
        col = f", column {self.column}" if self.column else ""
        return f"{self.file}:{self.line}{col}: {self.message}"


class IngestError(ValueError):
    def __init__(self, diagnostics: Sequence[Diagnostic]):
        self.diagnostics = list(diagnostics)
        shown = "\n".join(str(d) for d in self.diagnostics[:20])
        more = len(self.diagnostics) - 20
        if more > 0:
            shown += f"\n... and {more} more"
        super().__init__(shown)


@dataclass(frozen=True)
class Dataset:
    posts: tuple[Post, ...]
    comments: tuple[Comment, ...]
    follows: tuple[FollowRelation, ...]
    verified: frozenset[str] | None = None


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _sign(x: int) -> str:
    return "+1" if x > 0 else "-1"


def _parse_float(s: str):
    return None if s == "" else float(s)


def _rows(path: Path, header: Sequence[str], diags: list[Diagnostic]):
    """Yield (line, row) pairs; a missing required column is a hard error."""
    fh = open(path, newline="", encoding="utf-8")
    with fh:
        reader = csv.DictReader(fh)
        fields = reader.fieldnames or []
        missing = [h for h in header if h not in fields]
        if missing:
            raise IngestError([Diagnostic(path.name, 1, ",".join(missing),
                                          "missing required header column(s)")])
        for row in reader:
            if None in row:
                diags.append(Diagnostic(path.name, reader.line_num, None, "too many fields"))
                continue
            yield reader.line_num, {k: (v if v is not None else "") for k, v in row.items()}


def _required(row, col, name, line, diags):
    val = row[col].strip()
    if not val:
        diags.append(Diagnostic(name, line, col, "required value is empty"))
        return None
    return val


def _polarity(raw, name, line, col, diags, optional=False):
    raw = raw.strip()
    if raw == "" and optional:
        return None
    if raw in ("1", "+1"):
        return 1
    if raw == "-1":
        return -1
    diags.append(Diagnostic(name, line, col, f"polarity must be +1 or -1, got {raw!r}"))
    return None


def _count(raw, name, line, col, diags):
    raw = raw.strip()
    try:
        v = int(raw)
    except ValueError:
        diags.append(Diagnostic(name, line, col, f"expected a non-negative integer, got {raw!r}"))
        return None
    if v < 0:
        diags.append(Diagnostic(name, line, col, f"count must be >= 0, got {v}"))
        return None
    return v


def read_posts(path) -> list[Post]:
    path = Path(path)
    diags: list[Diagnostic] = []
    posts = []
    seen = set()
    for line, row in _rows(path, POSTS_HEADER, diags):
        pid = _required(row, "post_id", path.name, line, diags)
        author = _required(row, "author_id", path.name, line, diags)
        pol = _polarity(row["polarity"], path.name, line, "polarity", diags)
        likes = _count(row["likes"], path.name, line, "likes", diags)
        favs = _count(row["favorites"], path.name, line, "favorites", diags)
        if None in (pid, author, pol, likes, favs):
            continue
        if pid in seen:
            diags.append(Diagnostic(path.name, line, "post_id", f"duplicate post_id {pid!r}"))
            continue
        seen.add(pid)
        posts.append(Post(pid, author, pol, likes, favs, row["text"] or None))
    if diags:
        raise IngestError(diags)
    return posts


def read_comments(path) -> list[Comment]:
    return _read_comments(path)[0]


def _read_comments(path):
    path = Path(path)
    lines = {}
    diags: list[Diagnostic] = []
    out = []
    seen = set()
    for line, row in _rows(path, COMMENTS_HEADER, diags):
        cid = _required(row, "comment_id", path.name, line, diags)
        pid = _required(row, "post_id", path.name, line, diags)
        author = _required(row, "author_id", path.name, line, diags)
        pol = _polarity(row["polarity"], path.name, line, "polarity", diags, optional=True)
        if None in (cid, pid, author) or (row["polarity"].strip() and pol is None):
            continue
        if cid in seen:
            diags.append(Diagnostic(path.name, line, "comment_id", f"duplicate comment_id {cid!r}"))
            continue
        seen.add(cid)
        lines[cid] = line
        parent = row["parent_comment_id"].strip() or None
        out.append(Comment(cid, pid, author, parent, pol, row["text"] or None))
    if diags:
        raise IngestError(diags)
    return out, lines


def read_follows(path) -> list[FollowRelation]:
    path = Path(path)
    diags: list[Diagnostic] = []
    out = []
    seen = set()
    dupes = 0
    for line, row in _rows(path, FOLLOWS_HEADER, diags):
        a = _required(row, "follower_id", path.name, line, diags)
        b = _required(row, "followee_id", path.name, line, diags)
        if a is None or b is None:
            continue
        if a == b:
            diags.append(Diagnostic(path.name, line, "followee_id", "user follows themselves"))
            continue
        rel = FollowRelation(a, b)
        if rel in seen:
            dupes += 1
            continue
        seen.add(rel)
        out.append(rel)
    if diags:
        raise IngestError(diags)
    if dupes:
        log.warning("%s: %d duplicate follow row(s) ignored", path.name, dupes)
    return out


def read_users(path) -> tuple[list[str], frozenset[str]]:
    path = Path(path)
    diags: list[Diagnostic] = []
    users, verified = [], set()
    for line, row in _rows(path, USERS_HEADER, diags):
        uid = _required(row, "user_id", path.name, line, diags)
        flag = row["verified"].strip()
        if flag not in ("0", "1"):
            diags.append(Diagnostic(path.name, line, "verified", f"expected 0 or 1, got {flag!r}"))
            continue
        if uid is None:
            continue
        users.append(uid)
        if flag == "1":
            verified.add(uid)
    if diags:
        raise IngestError(diags)
    return users, frozenset(verified)


def check_references(posts, comments, comments_file="comments.csv", lines=None):
    """Referential integrity of comments, reported per offending comment."""
    post_ids = {p.post_id for p in posts}
    by_id = {c.comment_id: c for c in comments}
    diags = []
    for pos, c in enumerate(comments, start=2):
        line = lines.get(c.comment_id, pos) if lines else pos
        if c.post_id not in post_ids:
            diags.append(Diagnostic(comments_file, line, "post_id",
                                    f"comment {c.comment_id!r} references missing post {c.post_id!r}"))
        if c.parent_comment_id is not None:
            parent = by_id.get(c.parent_comment_id)
            if parent is None:
                diags.append(Diagnostic(comments_file, line, "parent_comment_id",
                                        f"comment {c.comment_id!r} replies to missing comment "
                                        f"{c.parent_comment_id!r}"))
            elif parent.post_id != c.post_id:
                diags.append(Diagnostic(comments_file, line, "parent_comment_id",
                                        f"parent {c.parent_comment_id!r} is on a different post"))
    if diags:
        raise IngestError(diags)


def ingest(posts_path, comments_path, follows_path, users_path=None) -> Dataset:
    for p in (posts_path, comments_path, follows_path, users_path):
        if p is not None and not Path(p).is_file():
            raise IngestError([Diagnostic(str(p), 0, None, "file not found")])
    posts = read_posts(posts_path)
    comments, lines = _read_comments(comments_path)
    follows = read_follows(follows_path)
    check_references(posts, comments, Path(comments_path).name, lines)
    verified = None
    if users_path is not None:
        _, verified = read_users(users_path)
    return Dataset(tuple(posts), tuple(comments), tuple(follows), verified)


def _write(path, header, rows):
    path = Path(path)
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for r in rows:
            w.writerow([_fmt(x) for x in r])
    return path


def write_dataset(outdir, posts, comments, follows, users=None):
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    _write(outdir / "posts.csv", POSTS_HEADER,
           ((p.post_id, p.author, _sign(p.polarity), p.likes, p.favorites, p.text) for p in posts))
    _write(outdir / "comments.csv", COMMENTS_HEADER,
           ((c.comment_id, c.post_id, c.author, c.parent_comment_id,
             None if c.polarity is None else _sign(c.polarity), c.text) for c in comments))
    _write(outdir / "follows.csv", FOLLOWS_HEADER, ((f.follower, f.followee) for f in follows))
    if users is not None:
        _write(outdir / "users.csv", USERS_HEADER, ((u, int(v)) for u, v in users))


def write_graph(path, g: WeightedDigraph):
    return _write(path, GRAPH_HEADER, ((s, t, w) for (s, t), w in g.edges.items()))


def read_graph(path, verified=frozenset()) -> WeightedDigraph:
    path = Path(path)
    diags: list[Diagnostic] = []
    nodes, edges = set(), {}
    for line, row in _rows(path, GRAPH_HEADER, diags):
        s, t = row["source_id"].strip(), row["target_id"].strip()
        w = _count(row["weight"], path.name, line, "weight", diags)
        if not s or not t or w is None or w < 1 or s == t:
            diags.append(Diagnostic(path.name, line, None, "invalid edge row"))
            continue
        nodes.update((s, t))
        edges[(s, t)] = edges.get((s, t), 0) + w
    if diags:
        raise IngestError(diags)
    return WeightedDigraph(tuple(nodes), edges, verified)


def write_ranking(path, result: RankingResult):
    return _write(path, RANKING_HEADER, (
        (r, e.node, e.score, e.score_network, e.score_brand, e.value_indv)
        for r, e in enumerate(result.entries, start=1)))


def read_ranking(path) -> list[RankEntry]:
    out = []
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.append(RankEntry(row["user_id"], float(row["phi"]),
                                 _parse_float(row["score_network"]),
                                 _parse_float(row["score_brand"]),
                                 _parse_float(row["value_indv"])))
    return out


def write_baseline(path, results: Iterable[RankingResult]):
    return _write(path, BASELINE_HEADER, (
        (r, e.node, e.score, res.method)
        for res in results for r, e in enumerate(res.entries, start=1)))


def read_baseline(path) -> dict[str, list[tuple[str, float]]]:
    out: dict[str, list[tuple[str, float]]] = {}
    with open(path, newline="", encoding="utf-8") as fh:
        for row in csv.DictReader(fh):
            out.setdefault(row["method"], []).append((row["user_id"], float(row["score"])))
    return out


def write_scores(path, nodes, score_network, score_brand, value_indv):
    return _write(path, SCORES_HEADER, (
        (u, float(score_network[u]), float(score_brand[u]), float(value_indv[u])) for u in nodes))


def read_scores(path) -> dict[str, tuple[float, float, float]]:
    with open(path, newline="", encoding="utf-8") as fh:
        return {row["user_id"]: (float(row["score_network"]), float(row["score_brand"]),
                                 float(row["value_indv"])) for row in csv.DictReader(fh)}


def write_comparison(path, report):
    return _write(path, ("method", "n_percent", "coverage"), (
        (c.method, x, y) for c in report.curves for x, y in c.points))


def write_verified(path, report):
    return _write(path, ("method", "verified_count", "total"), (
        (v.method, v.verified_count, v.total) for v in (report.verified or ())))


def write_ccdf(path, points):
    return _write(path, ("x", "ccdf"), points)


def write_json(path, obj):
    path = Path(path)
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    return path
