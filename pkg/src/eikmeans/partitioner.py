"""Equal-intensity k-means space partitioning.

The histogram is a set of k-means centroids plus one positive coefficient
per centroid. A sample falls in the bin whose centroid has the smallest
*amplified* distance ``coefficient[k] * ||x - centroid[k]||``. Coefficients
above 1 shrink an over-populated cluster, below 1 grow a sparse one.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import as_samples, pairwise_distance
from .greedy_init import greedy_centroids, partition_sizes

DEFAULT_BETA = 50
DEFAULT_THETA_GRID = tuple(np.round(np.arange(0, 31) * 0.05, 2))
DEFAULT_MAX_ITER = 100
DEFAULT_TOL = 1e-6


def _frozen(arr, dtype) -> np.ndarray:
    out = np.array(arr, dtype=dtype, copy=True)
    out.setflags(write=False)
    return out


@dataclass(frozen=True, eq=False)
class PartitionModel:
    """A fitted equal-intensity histogram.

    ``theta`` is the grid value that met the bin-size constraint (0 for the
    fallback model). ``fallback`` is True when no (K, theta) pair satisfied
    ``min(train_counts) >= beta`` and a random-init k-means was used instead.
    """

    centroids: np.ndarray
    coefficients: np.ndarray
    train_counts: np.ndarray
    beta: int
    theta: float
    fallback: bool
    seed: int | None = None

    def __post_init__(self):
        c = _frozen(self.centroids, np.float64)
        if c.ndim != 2 or c.shape[0] < 1:
            raise ValueError(f"centroids must be a non-empty 2-D array, got shape {c.shape}")
        coef = _frozen(self.coefficients, np.float64)
        counts = _frozen(self.train_counts, np.int64)
        if coef.shape != (c.shape[0],) or counts.shape != (c.shape[0],):
            raise ValueError("coefficients and train_counts must have one entry per centroid")
        if not np.all(np.isfinite(c)) or not np.all(np.isfinite(coef)) or np.any(coef <= 0):
            raise ValueError("centroids must be finite and coefficients finite and positive")
        if np.any(counts < 0):
            raise ValueError("train_counts must be nonnegative")
        object.__setattr__(self, "centroids", c)
        object.__setattr__(self, "coefficients", coef)
        object.__setattr__(self, "train_counts", counts)
        object.__setattr__(self, "theta", float(self.theta))
        object.__setattr__(self, "beta", int(self.beta))
        object.__setattr__(self, "fallback", bool(self.fallback))

    @property
    def k(self) -> int:
        return self.centroids.shape[0]

    @property
    def d(self) -> int:
        return self.centroids.shape[1]

    @property
    def n_train(self) -> int:
        return int(self.train_counts.sum())

    def assign(self, data) -> np.ndarray:
        """Bin label of each row of ``data``."""
        return amplified_assign(data, self.centroids, self.coefficients)

    def counts(self, data) -> np.ndarray:
        """Per-bin counts of ``data``."""
        return np.bincount(self.assign(data), minlength=self.k)


def _nearest(dist: np.ndarray) -> np.ndarray:
    # np.argmin returns the first minimum, i.e. the lowest centroid index.
    return np.argmin(dist, axis=1)


def lloyd_kmeans(data, init, max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL):
    """Lloyd's k-means started from ``init``.

    Iterates assign/update until no centroid moves more than ``tol`` or
    ``max_iter`` updates have run. A cluster that goes empty is reseeded at
    the sample farthest from its current centroid.

    Returns ``(centroids, labels)`` where ``labels`` are the nearest-centroid
    assignments for the returned centroids.
    """
    data = as_samples(data, "data")
    centroids = as_samples(init, "init").copy()
    if centroids.shape[1] != data.shape[1]:
        raise ValueError(f"dimension mismatch: data has {data.shape[1]} columns, init has {centroids.shape[1]}")
    k = centroids.shape[0]
    if k > data.shape[0]:
        raise ValueError(f"cannot fit {k} clusters to {data.shape[0]} samples")
    if max_iter < 1:
        raise ValueError("max_iter must be >= 1")
    if tol < 0:
        raise ValueError("tol must be >= 0")

    for _ in range(max_iter):
        dist = pairwise_distance(data, centroids)
        labels = _nearest(dist)
        counts = np.bincount(labels, minlength=k)
        sums = np.stack([np.bincount(labels, weights=col, minlength=k) for col in data.T], axis=1)
        updated = centroids.copy()
        filled = counts > 0
        updated[filled] = sums[filled] / counts[filled, None]
        if not filled.all():
            own = dist[np.arange(data.shape[0]), labels].copy()
            for j in np.flatnonzero(~filled):
                far = int(np.argmax(own))
                updated[j] = data[far]
                own[far] = -1.0
        shift = np.sqrt(((updated - centroids) ** 2).sum(axis=1)).max()
        centroids = updated
        if shift <= tol:
            break
    labels = _nearest(pairwise_distance(data, centroids))
    return centroids, labels


def intensity_vector(counts, expected) -> np.ndarray:
    """Observed-over-expected bin occupancy; 1 means an exact equal share."""
    counts = np.asarray(counts, dtype=np.float64)
    expected = np.asarray(expected, dtype=np.float64)
    if counts.shape != expected.shape:
        raise ValueError("counts and expected must have the same shape")
    if np.any(expected <= 0):
        raise ValueError("expected counts must be positive")
    return counts / expected


def amplify_coefficients(v_r, theta: float) -> np.ndarray:
    """Per-cluster distance multipliers ``exp(theta * (v_r - 1))``."""
    if theta < 0:
        raise ValueError(f"theta must be >= 0, got {theta}")
    v_r = np.asarray(v_r, dtype=np.float64)
    if not np.all(np.isfinite(v_r)) or not np.isfinite(theta):
        raise ValueError("intensity ratios and theta must be finite")
    return np.exp(theta * (v_r - 1.0))


def amplified_assign(data, centroids, coefficients) -> np.ndarray:
    """Label each sample by the centroid with the least amplified distance."""
    centroids = as_samples(centroids, "centroids")
    coefficients = np.asarray(coefficients, dtype=np.float64)
    if coefficients.shape != (centroids.shape[0],):
        raise ValueError(f"expected {centroids.shape[0]} coefficients, got shape {coefficients.shape}")
    if np.any(coefficients <= 0):
        raise ValueError("coefficients must be positive")
    return _nearest(pairwise_distance(data, centroids) * coefficients)


def intensity_stddev(counts, n: int | None = None) -> float:
    """Population std-dev of the bin intensities ``counts / n``."""
    counts = np.asarray(counts, dtype=np.float64)
    n = counts.sum() if n is None else n
    if n <= 0:
        raise ValueError("n must be positive")
    return float(np.std(counts / n))


def theta_sweep(dist: np.ndarray, v_r: np.ndarray, theta_grid: Sequence[float]):
    """Yield ``(theta, coefficients, counts)`` for each grid value in order.

    ``dist`` is the sample-to-centroid distance matrix; it is reused across
    the whole grid.
    """
    k = dist.shape[1]
    for theta in theta_grid:
        coef = amplify_coefficients(v_r, theta)
        counts = np.bincount(_nearest(dist * coef), minlength=k)
        yield float(theta), coef, counts


def _check_grid(theta_grid) -> np.ndarray:
    grid = np.asarray(theta_grid, dtype=np.float64)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("theta_grid must be a non-empty 1-D sequence")
    if np.any(grid < 0) or np.any(np.diff(grid) <= 0):
        raise ValueError("theta_grid must be nonnegative and strictly ascending")
    return grid


def kmeans_stage(data, k: int, max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL,
                 max_samples: int | None = None, rng=None):
    """Greedy-initialised k-means at a fixed ``k``.

    Returns ``(centroids, dist, v_r)``: the converged centroids, the
    sample-to-centroid distance matrix and the intensity ratios against
    equal shares.
    """
    data = as_samples(data, "data")
    init = greedy_centroids(data, k, max_samples=max_samples, rng=rng)
    centroids, labels = lloyd_kmeans(data, init, max_iter=max_iter, tol=tol)
    counts = np.bincount(labels, minlength=k)
    v_r = intensity_vector(counts, partition_sizes(data.shape[0], k))
    return centroids, pairwise_distance(data, centroids), v_r


def fit_partition(data, beta: int = DEFAULT_BETA, theta_grid=DEFAULT_THETA_GRID,
                  max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL,
                  seed: int | None = None, max_samples: int | None = None) -> PartitionModel:
    """Fit the equal-intensity histogram to ``data``.

    Starts from ``K = n // beta`` clusters. For each K, greedy-initialised
    k-means is followed by a sweep over ``theta_grid`` (ascending); the first
    theta whose amplified assignment leaves every bin with at least ``beta``
    training samples is accepted. Otherwise K is decreased, down to 2. If no
    pair works, plain k-means from a random start at the initial K is
    returned with unit coefficients and ``fallback=True``.

    ``seed`` drives the random start of the fallback and the optional
    ``max_samples`` subsample of the greedy initialisation.
    """
    data = as_samples(data, "data")
    if beta < 1:
        raise ValueError(f"beta must be >= 1, got {beta}")
    grid = _check_grid(theta_grid)
    n = data.shape[0]
    k_init = n // beta

    if k_init <= 1:
        return PartitionModel(
            centroids=data.mean(axis=0, keepdims=True),
            coefficients=np.ones(1),
            train_counts=np.array([n]),
            beta=beta,
            theta=0.0,
            fallback=n < beta,
            seed=seed,
        )

    rng = np.random.default_rng(seed)
    for k in range(k_init, 1, -1):
        centroids, dist, v_r = kmeans_stage(data, k, max_iter, tol, max_samples, rng)
        for theta, coef, counts in theta_sweep(dist, v_r, grid):
            if counts.min() >= beta:
                return PartitionModel(centroids, coef, counts, beta, theta, False, seed)

    start = data[np.sort(rng.choice(n, size=k_init, replace=False))]
    centroids, labels = lloyd_kmeans(data, start, max_iter=max_iter, tol=tol)
    return PartitionModel(
        centroids=centroids,
        coefficients=np.ones(k_init),
        train_counts=np.bincount(labels, minlength=k_init),
        beta=beta,
        theta=0.0,
        fallback=True,
        seed=seed,
    )
