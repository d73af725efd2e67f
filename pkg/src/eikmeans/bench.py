"""Monte-Carlo estimation of detector error rates and partition diagnostics.

Seeding: repetition ``r`` of a trial with ``base_seed`` draws its training
set from ``(base_seed, r, 0)``, stationary test set ``i`` from
``(base_seed, r, 1, i)`` and drifted test set ``i`` from
``(base_seed, r, 2, i)``; each tuple seeds its own ``numpy`` generator.
The histogram's fit seed is ``SeedSequence([base_seed, r])``'s first word.
Any single repetition can therefore be rerun on its own, and two trials
that differ only in ``n_train`` or ``alpha`` see the same seeds.
"""
from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .datagen import GeneratorSpec, family_name, gen_dataset, gen_experiment1_sets
from .detector import Detector
from .partitioner import (
    DEFAULT_BETA,
    DEFAULT_THETA_GRID,
    intensity_stddev,
    kmeans_stage,
    lloyd_kmeans,
    theta_sweep,
)

MAX_WORKERS_ENV = "EIKMEANS_MAX_WORKERS"


@dataclass(frozen=True)
class TrialConfig:
    family: str
    delta: float | None = None
    n_train: int = 2000
    n_test: int = 200
    n_stationary_sets: int = 250
    n_drift_sets: int = 250
    repetitions: int = 10
    alpha: float = 0.05
    beta: int = DEFAULT_BETA
    base_seed: int = 0
    extra_dims: int = 0
    theta_grid: tuple = DEFAULT_THETA_GRID

    def __post_init__(self):
        object.__setattr__(self, "family", family_name(self.family))
        for name in ("n_train", "n_test", "repetitions", "beta"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be >= 1")
        if self.n_stationary_sets < 0 or self.n_drift_sets < 0:
            raise ValueError("set counts must be >= 0")
        if self.n_stationary_sets + self.n_drift_sets == 0:
            raise ValueError("need at least one test set")
        if not 0 < self.alpha < 1:
            raise ValueError(f"alpha must be in (0, 1), got {self.alpha}")

    def spec(self, n: int, seed, drifted: bool) -> GeneratorSpec:
        return GeneratorSpec(self.family, n, seed=seed, drifted=drifted, delta=self.delta,
                             extra_dims=self.extra_dims)


@dataclass(frozen=True)
class RepetitionResult:
    repetition: int
    k: int
    theta: float
    fallback: bool
    p_stationary: np.ndarray
    p_drift: np.ndarray

    def type1(self, alpha: float) -> float:
        if self.p_stationary.size == 0:
            return float("nan")
        return 100.0 * float(np.mean(self.p_stationary < alpha))

    def type2(self, alpha: float) -> float:
        if self.p_drift.size == 0:
            return float("nan")
        return 100.0 * float(np.mean(self.p_drift >= alpha))


def _std(x: np.ndarray) -> float:
    return float(np.std(x, ddof=1)) if x.size > 1 else 0.0


@dataclass(frozen=True)
class TrialResult:
    """Per-repetition error rates (percent) and their mean and std-dev.

    The raw p-values are kept, so :meth:`at_alpha` re-thresholds the same
    trial without rerunning it.
    """

    config: TrialConfig
    repetitions: tuple[RepetitionResult, ...]
    wall_time: float
    alpha: float = field(default=None)

    def __post_init__(self):
        if self.alpha is None:
            object.__setattr__(self, "alpha", self.config.alpha)

    def at_alpha(self, alpha: float) -> "TrialResult":
        return replace(self, alpha=alpha)

    @property
    def type1_rates(self) -> np.ndarray:
        return np.array([r.type1(self.alpha) for r in self.repetitions])

    @property
    def type2_rates(self) -> np.ndarray:
        return np.array([r.type2(self.alpha) for r in self.repetitions])

    @property
    def type1_mean(self) -> float:
        return float(np.mean(self.type1_rates))

    @property
    def type1_std(self) -> float:
        return _std(self.type1_rates)

    @property
    def type2_mean(self) -> float:
        return float(np.mean(self.type2_rates))

    @property
    def type2_std(self) -> float:
        return _std(self.type2_rates)

    def summary(self) -> str:
        c = self.config
        return (f"{c.family} n_train={c.n_train} n_test={c.n_test} reps={len(self.repetitions)} "
                f"alpha={self.alpha:g}: Type-I {self.type1_mean:.2f}+-{self.type1_std:.2f}  "
                f"Type-II {self.type2_mean:.2f}+-{self.type2_std:.2f}  ({self.wall_time:.1f}s)")


def repetition_fit_seed(base_seed: int, repetition: int) -> int:
    return int(np.random.SeedSequence([base_seed, repetition]).generate_state(1)[0])


def run_repetition(cfg: TrialConfig, r: int) -> RepetitionResult:
    """One repetition: fit on a fresh training set, test every window."""
    base = cfg.base_seed
    train = gen_dataset(cfg.spec(cfg.n_train, (base, r, 0), drifted=False))
    det = Detector.fit(train, beta=cfg.beta, theta_grid=cfg.theta_grid,
                       seed=repetition_fit_seed(base, r))
    p_stat = [det.detect(gen_dataset(cfg.spec(cfg.n_test, (base, r, 1, i), False)), cfg.alpha).p_value
              for i in range(cfg.n_stationary_sets)]
    p_drift = [det.detect(gen_dataset(cfg.spec(cfg.n_test, (base, r, 2, i), True)), cfg.alpha).p_value
               for i in range(cfg.n_drift_sets)]
    m = det.model
    return RepetitionResult(r, m.k, m.theta, m.fallback, np.array(p_stat), np.array(p_drift))


def _workers(n_jobs: int | None) -> int:
    n = n_jobs or 1
    cap = os.environ.get(MAX_WORKERS_ENV)
    if cap:
        n = min(n, max(1, int(cap)))
    return max(1, n)


def run_trial(cfg: TrialConfig, n_jobs: int | None = 1) -> TrialResult:
    """Estimate Type-I and Type-II error rates over ``cfg.repetitions`` runs."""
    start = time.perf_counter()
    reps = range(cfg.repetitions)
    workers = _workers(n_jobs)
    if workers == 1:
        results = [run_repetition(cfg, r) for r in reps]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_repetition, [cfg] * cfg.repetitions, reps))
    results.sort(key=lambda res: res.repetition)
    return TrialResult(cfg, tuple(results), time.perf_counter() - start)


def run_training_size_sweep(cfg: TrialConfig, sizes, n_jobs: int | None = 1) -> list[TrialResult]:
    """:func:`run_trial` at each training size, with matched seeds."""
    sizes = list(sizes)
    if not sizes:
        raise ValueError("sizes must be non-empty")
    return [run_trial(replace(cfg, n_train=int(n)), n_jobs=n_jobs) for n in sizes]


def _ei_counts(data, k, beta, theta_grid, select):
    _, dist, v_r = kmeans_stage(data, k)
    sweep = list(theta_sweep(dist, v_r, theta_grid))
    if select == "constraint":
        for _, _, counts in sweep:
            if counts.min() >= beta:
                return counts
    elif select != "balance":
        raise ValueError(f"select must be 'constraint' or 'balance', got {select!r}")
    # No theta met the constraint, or the most balanced split was asked for.
    return min((counts for _, _, counts in sweep), key=lambda c: intensity_stddev(c))


def run_partition_diagnostic(variant: str, k: int = 9, seeds=range(20), beta: int = DEFAULT_BETA,
                             theta_grid=DEFAULT_THETA_GRID, select: str = "constraint"):
    """Mean bin-intensity std-dev of EI-kMeans vs random-init k-means at fixed ``k``.

    For each seed the same data set is partitioned both ways. The EI side
    runs greedy-initialised k-means and the amplify-shrink sweep; with
    ``select="constraint"`` it keeps the first theta where every bin holds
    ``beta`` samples, with ``"balance"`` the theta with the flattest counts.

    Returns ``(ei_std, kmeans_std)``.
    """
    seeds = list(seeds)
    ei, plain = [], []
    for seed in seeds:
        data = gen_experiment1_sets(variant, seed=seed)
        n = data.shape[0]
        if k == 1:
            ei.append(0.0)
            plain.append(0.0)
            continue
        ei.append(intensity_stddev(_ei_counts(data, k, beta, theta_grid, select), n))
        rng = np.random.default_rng(seed)
        start = data[np.sort(rng.choice(n, size=k, replace=False))]
        _, labels = lloyd_kmeans(data, start)
        plain.append(intensity_stddev(np.bincount(labels, minlength=k), n))
    return float(np.mean(ei)), float(np.mean(plain))
