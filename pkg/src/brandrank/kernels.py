"""Hot O(n^3) loops: path-counting Floyd, betweenness, distance-binned mass.

Each kernel has a numba version (``*_nb``) and a vectorized numpy version
(``*_np``). The public wrappers pick one according to :mod:`brandrank._accel`.
Distances are int64 with ``UNREACHABLE = -1``; path counts are int64 and the
wrappers switch to Python ints (object arrays) if int64 would overflow.
"""

import numpy as np

from brandrank._accel import HAVE_NUMBA, njit, use_numba  # noqa: F401

UNREACHABLE = -1

# int64 headroom for path-count products and sums
_COUNT_LIMIT = (1 << 62)


class CountOverflow(ArithmeticError):
    pass


@njit(cache=True)
def floyd_count_nb(dist, count):
    n = dist.shape[0]
    limit = 1 << 62
    for k in range(n):
        for i in range(n):
            if i == k:
                continue
            dik = dist[i, k]
            if dik < 0:
                continue
            cik = count[i, k]
            for j in range(n):
                if j == k or j == i:
                    continue
                dkj = dist[k, j]
                if dkj < 0:
                    continue
                ckj = count[k, j]
                if cik > limit // ckj:
                    return True
                cand = dik + dkj
                dij = dist[i, j]
                if dij < 0 or cand < dij:
                    dist[i, j] = cand
                    count[i, j] = cik * ckj
                elif cand == dij:
                    c = count[i, j] + cik * ckj
                    if c > limit:
                        return True
                    count[i, j] = c
    return False


def floyd_count_np(dist, count):
    """Vectorized pivot loop; ``count`` may be int64 or object (exact ints)."""
    n = dist.shape[0]
    exact = count.dtype == object
    for k in range(n):
        rows = np.flatnonzero(dist[:, k] >= 0)
        rows = rows[rows != k]
        cols = np.flatnonzero(dist[k, :] >= 0)
        cols = cols[cols != k]
        if rows.size == 0 or cols.size == 0:
            continue
        ix = np.ix_(rows, cols)
        cand = dist[rows, k][:, None] + dist[k, cols][None, :]
        sub = dist[ix]
        shorter = (sub < 0) | (cand < sub)
        equal = cand == sub
        if not (shorter.any() or equal.any()):
            continue
        cik = count[rows, k]
        ckj = count[k, cols]
        prod = cik[:, None] * ckj[None, :]
        subc = count[ix]
        if not exact:
            fprod = cik.astype(np.float64)[:, None] * ckj.astype(np.float64)[None, :]
            fsum = np.where(equal, subc.astype(np.float64), 0.0) + fprod
            if np.any((shorter | equal) & (fsum > _COUNT_LIMIT)):
                return True
        dist[ix] = np.where(shorter, cand, sub)
        count[ix] = np.where(shorter, prod, np.where(equal, subc + prod, subc))
    return False


def floyd_count(dist, count):
    """Run the path-counting Floyd in place; returns the (possibly promoted) count array."""
    backup = (dist.copy(), count.copy())
    if use_numba():
        overflow = floyd_count_nb(dist, count)
    else:
        overflow = floyd_count_np(dist, count)
    if not overflow:
        return count
    dist[...] = backup[0]
    count = backup[1].astype(object)
    for idx in np.ndindex(count.shape):
        count[idx] = int(count[idx])
    floyd_count_np(dist, count)
    return count


@njit(cache=True)
def betweenness_nb(dist, count):
    n = dist.shape[0]
    out = np.zeros(n)
    for i in range(n):
        acc = 0.0
        for j in range(n):
            if j == i:
                continue
            dji = dist[j, i]
            if dji < 0:
                continue
            cji = float(count[j, i])
            for k in range(n):
                if k == i or k == j:
                    continue
                dik = dist[i, k]
                djk = dist[j, k]
                if dik < 0 or djk < 0:
                    continue
                if dji + dik == djk:
                    acc += cji * float(count[i, k]) / float(count[j, k])
        out[i] = acc
    return out


def betweenness_np(dist, count):
    n = dist.shape[0]
    exact = count.dtype == object
    cnt = count if exact else count.astype(np.float64)
    reach = dist >= 0
    offdiag = ~np.eye(n, dtype=bool)
    out = np.zeros(n)
    for i in range(n):
        dj = dist[:, i]
        dk = dist[i, :]
        on_path = (
            reach
            & (dj >= 0)[:, None]
            & (dk >= 0)[None, :]
            & (dj[:, None] + dk[None, :] == dist)
            & offdiag
        )
        on_path[i, :] = False
        on_path[:, i] = False
        if not on_path.any():
            continue
        jj, kk = np.nonzero(on_path)
        num = cnt[jj, i] * cnt[i, kk]
        den = cnt[jj, kk]
        if exact:
            out[i] = float(sum(a / b for a, b in zip(num, den)))
        else:
            out[i] = float(np.sum(num / den))
    return out


def betweenness(dist, count):
    if count.dtype != object and use_numba():
        return betweenness_nb(dist, count)
    return betweenness_np(dist, count)


@njit(cache=True)
def distance_mass_nb(dist, values, lut, n_bins):
    n = dist.shape[0]
    out = np.zeros((n, n_bins))
    for i in range(n):
        for j in range(n):
            d = dist[i, j]
            if d > 0:
                out[i, lut[d]] += values[j]
    return out


def distance_mass_np(dist, values, lut, n_bins):
    n = dist.shape[0]
    ii, jj = np.nonzero(dist > 0)
    flat = ii * n_bins + lut[dist[ii, jj]]
    mass = np.bincount(flat, weights=values[jj], minlength=n * n_bins)
    return mass.reshape(n, n_bins)


def distance_mass(dist, values):
    """Bin each row's target values by exact distance.

    Returns ``(levels, mass)`` where ``levels`` are the distinct positive finite
    distances (ascending) and ``mass[i, b] = sum(values[j] for j with dist[i, j] == levels[b])``.
    """
    values = np.ascontiguousarray(values, dtype=np.float64)
    levels = np.unique(dist[dist > 0])
    n = dist.shape[0]
    if levels.size == 0:
        return levels.astype(np.int64), np.zeros((n, 0))
    lut = np.full(int(levels[-1]) + 1, -1, dtype=np.int64)
    lut[levels] = np.arange(levels.size)
    if use_numba():
        mass = distance_mass_nb(dist, values, lut, levels.size)
    else:
        mass = distance_mass_np(dist, values, lut, levels.size)
    return levels.astype(np.int64), mass
