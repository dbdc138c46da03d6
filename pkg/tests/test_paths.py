import numpy as np
import pytest

from brandrank.graph_model import DistanceWeights
from brandrank.paths import UNREACHABLE, all_pairs_shortest, through_count

from oracles import enumerate_shortest, random_digraph


def table(edges, nodes=None):
    nodes = nodes or sorted({u for e in edges for u in e})
    return all_pairs_shortest(DistanceWeights(edges, max(edges.values(), default=0)), nodes)


def test_chain():
    t = table({("A", "B"): 1, ("B", "C"): 1})
    assert t.distance("A", "C") == 2 and t.paths("A", "C") == 1
    assert through_count(t, "A", "B", "C") == 1


def test_diamond(backend):
    t = table({("A", "B"): 1, ("A", "C"): 1, ("B", "D"): 1, ("C", "D"): 1})
    assert t.distance("A", "D") == 2 and t.paths("A", "D") == 2
    assert through_count(t, "A", "B", "D") == 1
    assert through_count(t, "A", "C", "D") == 1


def test_unreachable_sentinel():
    t = table({("A", "B"): 1, ("B", "C"): 2})
    for x in ("B", "C"):
        assert t.distance(x, "A") is None
        assert t.paths(x, "A") == 0
        assert t.dist[t.index[x], t.index["A"]] == UNREACHABLE


def test_off_path_node_has_zero_through_count():
    t = table({("A", "B"): 1, ("B", "C"): 1, ("A", "D"): 5})
    assert through_count(t, "A", "D", "C") == 0


def test_diagonal_and_immutability():
    t = table({("A", "B"): 2})
    assert np.all(np.diag(t.dist) == 0) and np.all(np.diag(t.count) == 1)
    with pytest.raises(ValueError):
        t.dist[0, 1] = 7


def test_longer_but_fewer_hops_loses():
    t = table({("A", "C"): 5, ("A", "B"): 2, ("B", "C"): 2})
    assert t.distance("A", "C") == 4 and t.paths("A", "C") == 1


@pytest.mark.parametrize("seed", range(40))
def test_matches_path_enumeration(seed, backend):
    rng = np.random.default_rng(seed)
    nodes, edges = random_digraph(rng, int(rng.integers(2, 7)))
    t = table(edges, nodes)
    dist, count, _ = enumerate_shortest(nodes, edges)
    for j in nodes:
        for k in nodes:
            assert t.distance(j, k) == dist.get((j, k))
            assert t.paths(j, k) == count.get((j, k), 0)


@pytest.mark.parametrize("seed", range(20))
def test_table_invariants(seed):
    rng = np.random.default_rng(1000 + seed)
    nodes, edges = random_digraph(rng, 8, p=0.3)
    t = table(edges, nodes)
    n = len(nodes)
    reach = t.dist >= 0
    assert np.array_equal(reach, t.count >= 1)
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if reach[j, i] and reach[i, k]:
                    assert reach[j, k] and t.dist[j, k] <= t.dist[j, i] + t.dist[i, k]


@pytest.mark.parametrize("seed", range(10))
def test_through_counts_bounded_by_interior_length(seed):
    rng = np.random.default_rng(2000 + seed)
    nodes, edges = random_digraph(rng, 6, wmax=1)
    t = table(edges, nodes)
    for j in nodes:
        for k in nodes:
            if j == k or t.paths(j, k) == 0:
                continue
            total = sum(through_count(t, j, i, k) for i in nodes if i not in (j, k))
            assert total <= (t.distance(j, k) - 1) * t.paths(j, k)
