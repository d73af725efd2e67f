"""Euclidean geometry and exact nearest-neighbour primitives.

Samples are plain ``(n, d)`` float arrays. Every function here is
deterministic; neighbour ties are always resolved in favour of the lower
row index.
"""
from __future__ import annotations

import numpy as np
from scipy.spatial import cKDTree


def as_samples(data, name: str = "samples") -> np.ndarray:
    """Validate and return ``data`` as a 2-D float64 sample matrix.

    A 1-D input is read as ``n`` one-dimensional samples.
    """
    arr = np.asarray(data, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"{name} must have at least one row and one column, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite values")
    return arr


def pairwise_distance(a, b) -> np.ndarray:
    """Euclidean distances between every row of ``a`` and every row of ``b``.

    Computed from explicit coordinate differences (not the
    ``|a|^2 + |b|^2 - 2ab`` expansion) so that zero distances are exact.
    Squared differences are summed column by column, left to right, the
    same order as a scalar loop.
    """
    a = as_samples(a, "a")
    b = as_samples(b, "b")
    if a.shape[1] != b.shape[1]:
        raise ValueError(f"dimension mismatch: {a.shape[1]} vs {b.shape[1]}")
    out = np.subtract.outer(a[:, 0], b[:, 0])
    out *= out
    if a.shape[1] > 1:
        tmp = np.empty_like(out)
        for j in range(1, a.shape[1]):
            np.subtract.outer(a[:, j], b[:, j], out=tmp)
            tmp *= tmp
            out += tmp
    return np.sqrt(out, out=out)


def paired_distance(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Distance between row ``i`` of ``a`` and row ``i`` of ``b``."""
    out = a[:, 0] - b[:, 0]
    out *= out
    for j in range(1, a.shape[1]):
        diff = a[:, j] - b[:, j]
        diff *= diff
        out += diff
    return np.sqrt(out, out=out)


def nearest_other(data: np.ndarray, rows: np.ndarray) -> np.ndarray:
    """Index of the nearest other sample for each of ``data[rows]``.

    Only the distance to the returned neighbour is guaranteed; among
    equidistant neighbours any may be returned.
    """
    _, idx = cKDTree(data).query(data[rows], k=2)
    # With duplicates the tree may report the twin first and self second.
    return np.where(idx[:, 0] == rows, idx[:, 1], idx[:, 0])


def nn_distances(data) -> np.ndarray:
    """Distance from each sample to its nearest *other* sample.

    A k-d tree finds the neighbour; the distance itself is recomputed with
    the same arithmetic as :func:`pairwise_distance`, so results agree
    bit-for-bit with a brute-force scan.
    """
    data = as_samples(data, "data")
    n = data.shape[0]
    if n < 2:
        raise ValueError("nn_distances needs at least 2 samples")
    return paired_distance(data[nearest_other(data, np.arange(n))], data)


def knn_indices(anchor_index: int, data, k: int) -> np.ndarray:
    """Indices of the ``k`` samples nearest to ``data[anchor_index]``.

    The anchor is always first. The rest are ordered by distance, then
    by index.
    """
    data = as_samples(data, "data")
    n = data.shape[0]
    if not 0 <= anchor_index < n:
        raise IndexError(f"anchor_index {anchor_index} out of range for {n} samples")
    if k < 1 or k > n:
        raise ValueError(f"k must be in [1, {n}], got {k}")
    dist = paired_distance(data, np.broadcast_to(data[anchor_index], data.shape))
    order = np.lexsort((np.arange(n), dist))
    order = order[order != anchor_index]
    return np.concatenate(([anchor_index], order[: k - 1])).astype(np.intp)
