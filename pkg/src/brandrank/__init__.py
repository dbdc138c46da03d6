"""Influential-node identification for brand communication on social-interaction graphs."""

from brandrank.graph_model import (
    Comment,
    DistanceWeights,
    FollowRelation,
    Post,
    WeightedDigraph,
    build_graph,
    invert_weights,
    prune,
)
from brandrank.paths import UNREACHABLE, ShortestPathTable, all_pairs_shortest, through_count
from brandrank.potential import (
    RankingResult,
    optimize_sigma,
    potential_entropy,
    rank_influential,
    topological_potential,
)
from brandrank.valuation import attach_values, build_score_matrix, entropy_weights, individual_values

__version__ = "0.1.0"
