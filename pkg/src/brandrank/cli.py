"""``brandrank`` command line.

Exit codes: 0 success, 1 validation error, 2 computation error.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from brandrank import baselines, engagement, evaluation, io, netstats, pipeline
from brandrank.graph_model import build_graph, prune
from brandrank.pipeline import PipelineConfig
from brandrank.synthetic import SyntheticSpec, generate_synthetic, write_community

EXIT_OK, EXIT_VALIDATION, EXIT_COMPUTE = 0, 1, 2

log = logging.getLogger("brandrank")


def _data_args(p):
    p.add_argument("--config", help="key = value config file; flags override it")
    p.add_argument("--data", help="directory holding posts.csv, comments.csv, follows.csv "
                                  "and optionally users.csv")
    p.add_argument("--posts")
    p.add_argument("--comments")
    p.add_argument("--follows")
    p.add_argument("--users")
    p.add_argument("--lexicon")
    p.add_argument("--out", dest="output")
    p.add_argument("--prune-min-weight", type=int)
    p.add_argument("--node-cap", type=int)
    p.add_argument("--seed", type=int)


def _rank_args(p):
    p.add_argument("--top-percent", type=float)
    p.add_argument("--phi-threshold", type=float)


def _iter_args(p):
    p.add_argument("--damping", type=float)
    p.add_argument("--tol", type=float)
    p.add_argument("--max-iter", type=int)


def build_parser():
    ap = argparse.ArgumentParser(prog="brandrank", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="write a seeded synthetic community")
    p.add_argument("--out", required=True)
    p.add_argument("--nodes", type=int, default=SyntheticSpec.node_count)
    p.add_argument("--edges-per-node", type=int, default=SyntheticSpec.edges_per_node)
    p.add_argument("--planted", type=int, default=SyntheticSpec.planted_influencer_count)
    p.add_argument("--intensity", type=float, default=SyntheticSpec.planted_intensity)
    p.add_argument("--brand-post-rate", type=float, default=SyntheticSpec.brand_post_rate)
    p.add_argument("--seed", type=int, default=SyntheticSpec.seed)

    p = sub.add_parser("build", help="build and prune the graph; write graph.csv and stats.json")
    _data_args(p)
    p = sub.add_parser("stats", help="network characterization: stats.json and ccdf.csv")
    _data_args(p)
    p = sub.add_parser("rank", help="potential ranking: ranking.csv, scores.csv, run.json")
    _data_args(p)
    _rank_args(p)
    p = sub.add_parser("baseline", help="PageRank or HITS ranking: baseline.csv")
    _data_args(p)
    _iter_args(p)
    p.add_argument("--method", choices=("pagerank", "hits"), default="pagerank")
    p.add_argument("--top-percent", type=float)
    p = sub.add_parser("compare", help="coverage/verified comparison of all methods")
    _data_args(p)
    _rank_args(p)
    _iter_args(p)
    p = sub.add_parser("run", help="full pipeline, every artifact")
    _data_args(p)
    _rank_args(p)
    _iter_args(p)
    return ap


_CONFIG_KEYS = ("posts", "comments", "follows", "users", "lexicon", "output", "prune_min_weight",
                "node_cap", "seed", "top_percent", "phi_threshold", "damping", "tol", "max_iter")


def make_config(args) -> PipelineConfig:
    overrides = {k: getattr(args, k, None) for k in _CONFIG_KEYS}
    if getattr(args, "data", None):
        d = Path(args.data)
        for name in ("posts", "comments", "follows"):
            overrides[name] = overrides[name] or str(d / f"{name}.csv")
        if overrides["users"] is None and (d / "users.csv").is_file():
            overrides["users"] = str(d / "users.csv")
    if args.config:
        cfg = PipelineConfig.from_file(args.config, **overrides)
    else:
        cfg = PipelineConfig(**{k: v for k, v in overrides.items() if v is not None})
    return cfg.validate()


def _table(rows, headers):
    widths = [max(len(str(x)) for x in col) for col in zip(headers, *rows)]
    line = "  ".join(h.ljust(w) for h, w in zip(headers, widths))
    out = [line, "  ".join("-" * w for w in widths)]
    out += ["  ".join(str(x).ljust(w) for x, w in zip(r, widths)) for r in rows]
    return "\n".join(out)


def _fmt(x):
    return "" if x is None else f"{x:.6g}"


def _graphs(cfg):
    ds = io.ingest(cfg.posts, cfg.comments, cfg.follows, cfg.users)
    raw = build_graph(ds.posts, ds.comments, ds.follows, ds.verified or ())
    return ds, raw, prune(raw, cfg.prune_min_weight)


def _outdir(cfg):
    out = Path(cfg.output)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_gen(args):
    spec = SyntheticSpec(args.nodes, args.edges_per_node, args.planted, args.intensity,
                         args.brand_post_rate, seed=args.seed)
    com = generate_synthetic(spec)
    write_community(args.out, com)
    print(f"wrote {len(com.users)} users, {len(com.posts)} posts, {len(com.comments)} comments, "
          f"{len(com.follows)} follows to {args.out}")


def _print_summary(s: netstats.NetworkSummary):
    print(_table([(k, _fmt(v) if isinstance(v, float) else v) for k, v in s.to_dict().items()],
                 ("metric", "value")))


def cmd_build(args):
    cfg = make_config(args)
    _, raw, g = _graphs(cfg)
    out = _outdir(cfg)
    io.write_graph(out / "graph.csv", g)
    summary = netstats.summarize(g)
    payload = summary.to_dict()
    payload.update(raw_node_count=len(raw), raw_edge_count=raw.n_edges)
    io.write_json(out / "stats.json", payload)
    print(f"raw graph: {len(raw)} nodes, {raw.n_edges} edges; "
          f"pruned (min weight {cfg.prune_min_weight}): {len(g)} nodes, {g.n_edges} edges")
    _print_summary(summary)


def cmd_stats(args):
    cfg = make_config(args)
    _, _, g = _graphs(cfg)
    out = _outdir(cfg)
    summary = netstats.summarize(g)
    payload = summary.to_dict()
    for label, degs in (("outdegree", g.out_degree_counts()), ("indegree", g.in_degree_counts())):
        try:
            fit = netstats.fit_powerlaw(degs)
        except netstats.InsufficientSupportError:
            continue
        payload[f"{label}_powerlaw"] = {"alpha": fit.alpha, "c": fit.c, "r_squared": fit.r_squared}
        if label == "outdegree":
            io.write_ccdf(out / "ccdf.csv", fit.points)
    io.write_json(out / "stats.json", payload)
    _print_summary(summary)


def _analysis(cfg):
    ds = io.ingest(cfg.posts, cfg.comments, cfg.follows, cfg.users)
    return pipeline.analyze(ds, cfg, engagement.load_lexicon(cfg.lexicon))


def _print_ranking(result, limit=20):
    rows = [(i, e.node, _fmt(e.score), _fmt(e.score_network), _fmt(e.score_brand),
             _fmt(e.value_indv)) for i, e in enumerate(result.entries[:limit], start=1)]
    print(_table(rows, ("rank", "user_id", "score", "network", "brand", "value")))


def cmd_rank(args):
    cfg = make_config(args)
    a = _analysis(cfg)
    out = _outdir(cfg)
    io.write_ranking(out / "ranking.csv", a.ranking)
    io.write_scores(out / "scores.csv", a.graph.nodes, a.score_network, a.score_brand, a.value_indv)
    io.write_json(out / "run.json", {"sigma": a.sigma, "potential_entropy": a.entropy,
                                     "threshold": cfg.phi_threshold,
                                     "top_percent": cfg.top_percent})
    print(f"sigma* = {a.sigma:.6g}, potential entropy = {a.entropy:.6g}, "
          f"entropy weights = ({a.weights.w1:.4f}, {a.weights.w2:.4f})")
    _print_ranking(a.ranking)


def cmd_baseline(args):
    cfg = make_config(args)
    _, _, g = _graphs(cfg)
    if args.method == "pagerank":
        results = [baselines.pagerank(g, cfg.damping, cfg.tol, cfg.max_iter)]
    else:
        results = list(baselines.hits(g, cfg.tol, cfg.max_iter))
    ranked = [baselines.rank_by(r, cfg.top_percent) for r in results]
    io.write_baseline(_outdir(cfg) / "baseline.csv", ranked)
    for r, res in zip(results, ranked):
        state = "converged" if r.converged else "NOT converged"
        print(f"{r.method}: {state} after {r.iterations} iterations (residual {r.residual:.3g})")
        _print_ranking(res)
    if not all(r.converged for r in results):
        return EXIT_COMPUTE
    return EXIT_OK


def cmd_compare(args):
    cfg = make_config(args)
    a = _analysis(cfg)
    out = _outdir(cfg)
    io.write_comparison(out / "comparison.csv", a.comparison)
    if a.comparison.verified is not None:
        io.write_verified(out / "verified.csv", a.comparison)
    _print_comparison(a.comparison)


def _print_comparison(report: evaluation.ComparisonReport):
    grid = [x for x, _ in report.curves[0].points]
    rows = [[c.method] + [f"{y:.3f}" for _, y in c.points] for c in report.curves]
    print(_table(rows, ["method"] + [f"{x:g}%" for x in grid]))
    if report.verified is None:
        print("verified ratio: n/a (no users.csv)")
    else:
        for v in report.verified:
            print(f"verified ratio {v.method}: {v.verified_count}/{v.total}")


def cmd_run(args):
    cfg = make_config(args)
    a = pipeline.run_pipeline(cfg)
    print(f"graph: {len(a.raw_graph)} -> {len(a.graph)} nodes after pruning; "
          f"sigma* = {a.sigma:.6g}")
    _print_ranking(a.ranking)
    _print_comparison(a.comparison)
    print(f"artifacts written to {cfg.output}")


COMMANDS = {"gen": cmd_gen, "build": cmd_build, "stats": cmd_stats, "rank": cmd_rank,
            "baseline": cmd_baseline, "compare": cmd_compare, "run": cmd_run}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        code = COMMANDS[args.command](args)
    except (io.IngestError, FileNotFoundError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except pipeline.StageError as exc:
        print(f"computation error in stage {exc.stage}: {exc.cause}", file=sys.stderr)
        return EXIT_COMPUTE
    except pipeline.GraphTooLargeError as exc:
        print(f"refusing to run: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    return code or EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
