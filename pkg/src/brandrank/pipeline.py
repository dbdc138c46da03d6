"""End-to-end driver: records -> graph -> values -> potential ranking -> reports."""

from __future__ import annotations

import json
import logging
import shutil
import tempfile
import time
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path

from brandrank import baselines, engagement, evaluation, io, netstats, potential
from brandrank.graph_model import WeightedDigraph, build_graph, invert_weights, prune
from brandrank.paths import all_pairs_shortest
from brandrank.structural import network_score
from brandrank.valuation import attach_values, build_score_matrix, entropy_weights, individual_values

log = logging.getLogger(__name__)

ARTIFACTS = ("ranking.csv", "baseline.csv", "scores.csv", "stats.json", "comparison.csv", "run.json")


class StageError(RuntimeError):
    def __init__(self, stage: str, cause: BaseException):
        self.stage = stage
        self.cause = cause
        super().__init__(f"stage {stage!r} failed: {cause}")


class GraphTooLargeError(ValueError):
    pass


@dataclass
class PipelineConfig:
    posts: str | None = None
    comments: str | None = None
    follows: str | None = None
    users: str | None = None
    lexicon: str | None = None
    prune_min_weight: int = 2
    damping: float = 0.85
    top_percent: float = 2.5
    phi_threshold: float = 0.0
    tol: float = 1e-8
    max_iter: int = 200
    sigma_rel_tol: float = 1e-4
    seed: int = 0
    node_cap: int = 5000
    output: str = "out"
    coverage_grid: tuple[float, ...] = evaluation.DEFAULT_GRID

    def validate(self):
        missing = [k for k in ("posts", "comments", "follows") if getattr(self, k) is None]
        if missing:
            raise ValueError(f"missing input path(s): {', '.join(missing)}")
        for k in ("posts", "comments", "follows", "users", "lexicon"):
            p = getattr(self, k)
            if p is not None and not Path(p).is_file():
                raise FileNotFoundError(f"{k}: no such file {p}")
        if self.prune_min_weight < 1:
            raise ValueError("prune_min_weight must be >= 1")
        if not 0 < self.damping < 1:
            raise ValueError("damping must be in (0, 1)")
        if not 0 < self.top_percent <= 100:
            raise ValueError("top_percent must be in (0, 100]")
        if self.phi_threshold < 0:
            raise ValueError("phi_threshold must be >= 0")
        return self

    @classmethod
    def from_file(cls, path, **overrides):
        """``key = value`` lines; ``#`` starts a comment. Overrides win."""
        known = {f.name: f for f in fields(cls)}
        values = {}
        for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, val = (s.strip() for s in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in known:
                raise ValueError(f"{path}:{lineno}: unknown key {key!r}")
            values[key] = _coerce(key, val)
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


def _coerce(key, val):
    default = getattr(PipelineConfig, key, None)
    if key == "coverage_grid":
        return tuple(float(x) for x in val.split(","))
    if isinstance(default, bool):
        return val.lower() in ("1", "true", "yes")
    if isinstance(default, int):
        return int(val)
    if isinstance(default, float):
        return float(val)
    return val


@dataclass
class Analysis:
    raw_graph: WeightedDigraph
    graph: WeightedDigraph
    ranking: potential.RankingResult
    full_order: list[str]
    baselines: dict[str, baselines.BaselineScores]
    score_network: dict[str, float]
    score_brand: dict[str, float]
    value_indv: dict[str, float]
    weights: object
    sigma: float
    entropy: float
    summary: netstats.NetworkSummary
    powerlaw: netstats.PowerLawFit | None
    comparison: evaluation.ComparisonReport
    timings: dict[str, float] = field(default_factory=dict)


class _Stages:
    def __init__(self):
        self.timings = {}

    def __call__(self, name, fn, *args, **kwargs):
        t0 = time.perf_counter()
        try:
            out = fn(*args, **kwargs)
        except StageError:
            raise
        except Exception as exc:
            raise StageError(name, exc) from exc
        self.timings[name] = time.perf_counter() - t0
        log.info("%-12s %.3fs", name, self.timings[name])
        return out


def analyze(dataset: io.Dataset, config: PipelineConfig, lexicon=None) -> Analysis:
    """Run every computation stage in memory."""
    stage = _Stages()
    if lexicon is None:
        lexicon = engagement.load_lexicon(config.lexicon)
    raw = stage("build_graph", build_graph, dataset.posts, dataset.comments, dataset.follows,
                dataset.verified or ())
    g = stage("prune", prune, raw, config.prune_min_weight)
    if len(g) == 0:
        raise StageError("prune", ValueError("graph is empty after pruning"))
    if len(g) > config.node_cap:
        raise GraphTooLargeError(
            f"{len(g)} nodes exceeds node_cap={config.node_cap}; exact all-pairs "
            "shortest paths are O(n^3). Raise node_cap or prune harder.")
    dist_w = stage("invert", invert_weights, g)
    table = stage("paths", all_pairs_shortest, dist_w, g.nodes)
    struct = stage("structural", network_score, g, table)
    brand = stage("engagement", engagement.brand_scores, g.nodes, dataset.posts,
                  dataset.comments, lexicon)
    matrix = stage("score_matrix", build_score_matrix, struct, brand)
    weights = stage("entropy", entropy_weights, matrix)
    values = stage("values", individual_values, matrix, weights)
    dual = attach_values(g, dist_w, values)
    sigma, h_min, _, _ = stage("sigma", potential.optimize_sigma, dual, table,
                               config.sigma_rel_tol, True)
    net = struct.as_dict()
    full = stage("rank", potential.rank_influential, dual, table, 0.0, 100.0, sigma, net, brand)
    top = potential.rank_influential(dual, table, config.phi_threshold, config.top_percent,
                                     sigma, net, brand)

    pr = stage("pagerank", baselines.pagerank, g, config.damping, config.tol, config.max_iter)
    auth, hub = stage("hits", baselines.hits, g, config.tol, config.max_iter)
    for b in (pr, auth, hub):
        if not b.converged:
            log.warning("%s did not converge (residual %.3g)", b.method, b.residual)
    base_scores = {b.method: b for b in (pr, auth, hub)}

    summary = stage("netstats", netstats.summarize, g)
    try:
        fit = netstats.fit_powerlaw(g.out_degree_counts())
    except netstats.InsufficientSupportError:
        fit = None
    orders = {"potential": full.nodes}
    orders.update({m: baselines.rank_by(b, 100.0).nodes for m, b in base_scores.items()})
    report = stage("evaluation", evaluation.compare_methods, g, orders, config.coverage_grid,
                   dataset.verified, config.top_percent)
    return Analysis(raw, g, top, full.nodes, base_scores, net, brand, values, weights, sigma,
                    h_min, summary, fit, report, stage.timings)


def _stats_payload(a: Analysis):
    out = a.summary.to_dict()
    out["raw_node_count"] = len(a.raw_graph)
    out["raw_edge_count"] = a.raw_graph.n_edges
    if a.powerlaw is not None:
        out["outdegree_powerlaw"] = {"alpha": a.powerlaw.alpha, "c": a.powerlaw.c,
                                     "r_squared": a.powerlaw.r_squared}
    return out


def write_reports(a: Analysis, config: PipelineConfig, outdir: Path):
    io.write_ranking(outdir / "ranking.csv", a.ranking)
    base_top = [baselines.rank_by(b, config.top_percent) for b in a.baselines.values()]
    io.write_baseline(outdir / "baseline.csv", base_top)
    io.write_scores(outdir / "scores.csv", a.graph.nodes, a.score_network, a.score_brand,
                    a.value_indv)
    io.write_json(outdir / "stats.json", _stats_payload(a))
    if a.powerlaw is not None:
        io.write_ccdf(outdir / "ccdf.csv", a.powerlaw.points)
    io.write_comparison(outdir / "comparison.csv", a.comparison)
    if a.comparison.verified is not None:
        io.write_verified(outdir / "verified.csv", a.comparison)
    meta = {
        "sigma": a.sigma,
        "potential_entropy": a.entropy,
        "threshold": config.phi_threshold,
        "top_percent": config.top_percent,
        "entropy_weights": {"network": a.weights.w1, "brand": a.weights.w2,
                            "h_network": a.weights.h1, "h_brand": a.weights.h2},
        "config": {k: v for k, v in asdict(config).items() if k != "output"},
        "nodes_ranked": len(a.graph),
        "selected": len(a.ranking),
    }
    io.write_json(outdir / "run.json", meta)


def run_pipeline(config: PipelineConfig) -> Analysis:
    """Ingest, analyze and write every artifact under ``config.output``.

    Files are staged in a temporary directory and moved into place only after
    every stage succeeded, so a failed run leaves no partial outputs.
    """
    config.validate()
    dataset = io.ingest(config.posts, config.comments, config.follows, config.users)
    lexicon = engagement.load_lexicon(config.lexicon)
    analysis = analyze(dataset, config, lexicon)
    outdir = Path(config.output)
    outdir.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=".staging-", dir=outdir))
    try:
        write_reports(analysis, config, staging)
        for f in sorted(staging.iterdir()):
            f.replace(outdir / f.name)
    except Exception as exc:
        raise StageError("write", exc) from exc
    finally:
        shutil.rmtree(staging, ignore_errors=True)
    return analysis


def with_overrides(config: PipelineConfig, **kw) -> PipelineConfig:
    return replace(config, **{k: v for k, v in kw.items() if v is not None})
