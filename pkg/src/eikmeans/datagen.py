"""Seeded synthetic drift data sets.

Families (``delta`` is the drift margin, applied only when ``drifted``):

========== ============================================================
U-mean     uniform on ``[0, 1 + delta] x [0, 1]``
1G-mean    ``N([delta, 0], I)``
1G-var     ``N([delta, 0], (1 + delta) I)``
1G-cov     ``N([delta, 0], [[1, delta], [delta, 1]])``
2G-mean    equal mix of ``N([0, 0], I)`` and ``N([delta, 0], I)``
4G-mean    equal mix of unit Gaussians at ``[0,0] [5,0] [0,5] [5-delta,5]``
========== ============================================================

The 1G-var and 1G-cov rows shift the mean as well; pass
``shift_mean=False`` to drift only the (co)variance.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

FAMILIES = ("U-mean", "1G-mean", "1G-var", "1G-cov", "2G-mean", "4G-mean", "custom-mixture")

DEFAULT_DELTA = {
    "U-mean": 0.06,
    "1G-mean": 0.3,
    "1G-var": 0.2,
    "1G-cov": 0.2,
    "2G-mean": 0.4,
    "4G-mean": 0.8,
}

HIGHDIM_DELTA = {"1G-mean": 0.5, "4G-mean": 1.0}
HIGHDIM_DIMS = (4, 6, 8, 10, 20)

EXPERIMENT1_SIZES = {"1G": (1350,), "3G-111": (450, 450, 450), "3G-135": (150, 450, 750)}
EXPERIMENT1_MEANS = ([-5.0, 0.0], [0.0, 0.0], [5.0, 0.0])


def family_name(name: str) -> str:
    """Normalise ``"2d-1G-mean"`` / ``"1g-mean"`` to the canonical family key."""
    key = name.strip()
    if key.lower().startswith("2d-"):
        key = key[3:]
    for fam in FAMILIES:
        if fam.lower() == key.lower():
            return fam
    raise ValueError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    n: int
    seed: int | None = None
    drifted: bool = False
    delta: float | None = None
    extra_dims: int = 0
    weights: Sequence[float] | None = None
    means: Sequence[Sequence[float]] | None = None
    shift_mean: bool = True

    def __post_init__(self):
        object.__setattr__(self, "family", family_name(self.family))
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if self.extra_dims < 0:
            raise ValueError("extra_dims must be >= 0")
        if self.delta is not None and self.delta < 0:
            raise ValueError(f"delta must be >= 0, got {self.delta}")
        if self.weights is not None:
            w = np.asarray(self.weights, dtype=np.float64)
            if np.any(w <= 0) or abs(w.sum() - 1.0) > 1e-9:
                raise ValueError("weights must be positive and sum to 1")
        if self.family == "custom-mixture" and self.means is None:
            raise ValueError("custom-mixture needs component means")

    @property
    def margin(self) -> float:
        """The drift margin actually applied (0 for a stationary set)."""
        if not self.drifted:
            return 0.0
        if self.delta is not None:
            return float(self.delta)
        return DEFAULT_DELTA.get(self.family, 0.0)


def _rng(seed) -> np.random.Generator:
    return np.random.default_rng(seed)


def _cholesky(cov: np.ndarray) -> np.ndarray:
    if cov.ndim != 2 or cov.shape[0] != cov.shape[1]:
        raise ValueError(f"covariance must be square, got shape {cov.shape}")
    if not np.allclose(cov, cov.T):
        raise ValueError("covariance must be symmetric")
    try:
        return np.linalg.cholesky(cov)
    except np.linalg.LinAlgError:
        raise ValueError("covariance must be positive definite") from None


def _gaussian(rng: np.random.Generator, n: int, mean, cov) -> np.ndarray:
    mean = np.atleast_1d(np.asarray(mean, dtype=np.float64))
    cov = np.atleast_2d(np.asarray(cov, dtype=np.float64))
    if cov.shape[0] != mean.size:
        raise ValueError(f"mean has {mean.size} entries but covariance is {cov.shape}")
    factor = _cholesky(cov)
    return mean + rng.standard_normal((n, mean.size)) @ factor.T


def gen_gaussian(n: int, mean, cov, seed=None) -> np.ndarray:
    """``n`` draws from ``N(mean, cov)``."""
    return _gaussian(_rng(seed), n, mean, cov)


def component_sizes(n: int, weights: Sequence[float]) -> np.ndarray:
    """Deterministic integer split of ``n`` by ``weights``.

    Floors of ``n * w`` with the leftover handed to the first components,
    so equal weights reproduce an even split.
    """
    w = np.asarray(weights, dtype=np.float64)
    sizes = np.floor(n * w + 1e-9).astype(np.int64)
    sizes[: n - sizes.sum()] += 1
    return sizes


def _mixture(rng, n: int, means, weights=None, cov=None):
    means = np.asarray(means, dtype=np.float64)
    m, d = means.shape
    weights = np.full(m, 1.0 / m) if weights is None else weights
    cov = np.eye(d) if cov is None else cov
    sizes = component_sizes(n, weights)
    out = np.vstack([_gaussian(rng, size, mu, cov) for mu, size in zip(means, sizes)])
    order = rng.permutation(n)
    return out[order], np.repeat(np.arange(m), sizes)[order]


def gen_dataset(spec: GeneratorSpec, return_labels: bool = False):
    """Draw ``spec.n`` samples of the configured family.

    With ``return_labels`` the mixture component of each row is returned as
    well (all zeros for single-component families).
    """
    rng = _rng(spec.seed)
    labels = np.zeros(spec.n, dtype=np.intp)
    delta = spec.margin
    shift = delta if spec.shift_mean else 0.0
    fam = spec.family
    n = spec.n
    if fam == "U-mean":
        base = rng.uniform(size=(n, 2)) * np.array([1.0 + delta, 1.0])
    elif fam == "1G-mean":
        base = _gaussian(rng, n, [delta, 0.0], np.eye(2))
    elif fam == "1G-var":
        base = _gaussian(rng, n, [shift, 0.0], (1.0 + delta) * np.eye(2))
    elif fam == "1G-cov":
        base = _gaussian(rng, n, [shift, 0.0], [[1.0, delta], [delta, 1.0]])
    elif fam == "2G-mean":
        base, labels = _mixture(rng, n, [[0.0, 0.0], [delta, 0.0]])
    elif fam == "4G-mean":
        base, labels = _mixture(rng, n, [[0.0, 0.0], [5.0, 0.0], [0.0, 5.0], [5.0 - delta, 5.0]])
    else:
        base, labels = _mixture(rng, n, spec.means, spec.weights)
    if spec.extra_dims:
        base = np.hstack([base, rng.standard_normal((n, spec.extra_dims))])
    return (base, labels) if return_labels else base


def gen_experiment1_sets(variant: str, seed=None, return_labels: bool = False):
    """Partition-comparison sets: ``1G``, ``3G-111`` or ``3G-135`` (1350 rows).

    The three-cluster variants put unit Gaussians at x = -5, 0, 5 with
    450/450/450 or 150/450/750 members. Rows are shuffled; with
    ``return_labels`` the generating component of each row is returned too.
    """
    if variant not in EXPERIMENT1_SIZES:
        raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(EXPERIMENT1_SIZES)}")
    rng = _rng(seed)
    sizes = EXPERIMENT1_SIZES[variant]
    means = [[0.0, 0.0]] if variant == "1G" else EXPERIMENT1_MEANS
    data = np.vstack([_gaussian(rng, size, mu, np.eye(2)) for mu, size in zip(means, sizes)])
    labels = np.repeat(np.arange(len(sizes)), sizes)
    order = rng.permutation(data.shape[0])
    if return_labels:
        return data[order], labels[order]
    return data[order]


def gen_highdim(base_family: str, total_dims: int, drifted: bool, n: int, seed=None) -> np.ndarray:
    """A 2-D base family padded with independent ``N(0, 1)`` columns.

    Drifted sets use the larger high-dimensional margins (0.5 for 1G-mean,
    1.0 for 4G-mean).
    """
    fam = family_name(base_family)
    if fam not in HIGHDIM_DELTA:
        raise ValueError(f"high-dimensional sets are built on 1G-mean or 4G-mean, not {base_family!r}")
    if total_dims < 2:
        raise ValueError(f"total_dims must be >= 2, got {total_dims}")
    spec = GeneratorSpec(fam, n, seed=seed, drifted=drifted, delta=HIGHDIM_DELTA[fam],
                         extra_dims=total_dims - 2)
    return gen_dataset(spec)
