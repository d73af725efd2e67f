"""Greedy equal-intensity centroid initialisation for k-means."""
from __future__ import annotations

import numpy as np

from .core import as_samples, knn_indices, nearest_other, paired_distance


def partition_sizes(n: int, k: int) -> np.ndarray:
    """Split ``n`` samples into ``k`` near-equal groups.

    The first ``n % k`` groups hold one extra sample.

    >>> partition_sizes(1003, 50)[:4].tolist()
    [21, 21, 21, 20]
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if k > n:
        raise ValueError(f"cannot split {n} samples into {k} groups")
    sizes = np.full(k, n // k, dtype=np.int64)
    sizes[: n % k] += 1
    return sizes


def greedy_groups(data, k: int) -> np.ndarray:
    """Group labels from the greedy equal-intensity sweep.

    Each round picks the remaining sample that is farthest from its own
    nearest remaining neighbour (lowest index on ties), claims it together
    with its nearest remaining neighbours, and removes them from the pool.
    Group ``j`` has ``partition_sizes(n, k)[j]`` members.
    """
    data = as_samples(data, "data")
    n = data.shape[0]
    sizes = partition_sizes(n, k)
    labels = np.full(n, -1, dtype=np.intp)
    pool = np.arange(n)
    if n >= 2:
        # Removing samples can only change the nearest neighbour of a sample
        # whose neighbour was removed, so only those are re-queried.
        nn_idx = nearest_other(data, pool)
        nn_dist = paired_distance(data[nn_idx], data)
    for group, size in enumerate(sizes):
        if size == pool.size:
            # Final round: the whole pool is the group.
            labels[pool] = group
            break
        anchor = int(np.argmax(nn_dist[pool]))
        members = pool[knn_indices(anchor, data[pool], int(size))]
        labels[members] = group
        pool = pool[labels[pool] < 0]
        stale = pool[labels[nn_idx[pool]] >= 0]
        if stale.size and pool.size >= 2:
            local = nearest_other(data[pool], np.searchsorted(pool, stale))
            nn_idx[stale] = pool[local]
            nn_dist[stale] = paired_distance(data[nn_idx[stale]], data[stale])
    return labels


def greedy_centroids(data, k: int, max_samples: int | None = None, rng=None) -> np.ndarray:
    """Initial centroids for k-means, one per equal-size greedy group.

    ``max_samples`` optionally runs the sweep on a random subset to bound
    the cost on large training sets; ``rng`` seeds that draw.
    """
    data = as_samples(data, "data")
    if max_samples is not None and data.shape[0] > max_samples:
        rng = np.random.default_rng(rng)
        keep = np.sort(rng.choice(data.shape[0], size=max_samples, replace=False))
        data = data[keep]
    labels = greedy_groups(data, k)
    return np.stack([data[labels == j].mean(axis=0) for j in range(k)])
