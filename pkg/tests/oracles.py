"""Independent reference implementations used only by the tests.

Nothing here imports the code paths it checks.
"""

import math
from fractions import Fraction

import numpy as np


def enumerate_shortest(nodes, lengths):
    """Exhaustive DFS over simple paths.

    ``lengths`` maps (s, t) -> positive int. Returns (dist, count, paths) dicts
    keyed by (j, k); unreachable pairs are absent from ``dist``.
    """
    out = {u: [] for u in nodes}
    for (s, t), w in lengths.items():
        out[s].append((t, w))
    dist, paths = {}, {}
    for src in nodes:
        found = {}

        def dfs(u, length, visited, trail):
            found.setdefault(u, []).append((length, tuple(trail)))
            for v, w in out[u]:
                if v not in visited:
                    visited.add(v)
                    trail.append(v)
                    dfs(v, length + w, visited, trail)
                    trail.pop()
                    visited.discard(v)

        dfs(src, 0, {src}, [src])
        for dst, entries in found.items():
            best = min(e[0] for e in entries)
            dist[(src, dst)] = best
            paths[(src, dst)] = [p for l, p in entries if l == best]
    count = {key: len(v) for key, v in paths.items()}
    return dist, count, paths


def betweenness_by_paths(nodes, paths):
    """Exact betweenness (Fractions) from explicit shortest-path lists."""
    bc = {u: Fraction(0) for u in nodes}
    for (j, k), plist in paths.items():
        if j == k:
            continue
        total = len(plist)
        for u in nodes:
            if u in (j, k):
                continue
            through = sum(1 for p in plist if u in p[1:-1])
            bc[u] += Fraction(through, total)
    return bc


def direct_potential(nodes, dist, values, sigma):
    """Double loop over node pairs; ``dist`` from :func:`enumerate_shortest`."""
    phi = {}
    for i in nodes:
        acc = 0.0
        for j in nodes:
            if (i, j) in dist:
                acc += values[i] * values[j] * math.exp(-((dist[(i, j)] / sigma) ** 2))
        phi[i] = acc
    return phi


def dense_hits(adj, iters=5000):
    """Dominant eigenvectors of A^T A and A A^T by plain dense power iteration."""
    a = np.asarray(adj, dtype=float)
    ata = a.T @ a
    aat = a @ a.T
    auth = a.T @ np.ones(a.shape[0])
    auth /= np.linalg.norm(auth)
    hub = a @ auth
    hub /= np.linalg.norm(hub)
    for _ in range(iters):
        auth = ata @ auth
        auth /= np.linalg.norm(auth)
        hub = aat @ hub
        hub /= np.linalg.norm(hub)
    return auth, hub


def random_digraph(rng, n, p=0.4, wmax=4):
    nodes = [f"n{i}" for i in range(n)]
    edges = {}
    for i in range(n):
        for j in range(n):
            if i != j and rng.random() < p:
                edges[(nodes[i], nodes[j])] = int(rng.integers(1, wmax + 1))
    return nodes, edges
