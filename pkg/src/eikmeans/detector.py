"""Drift detection against a fitted equal-intensity histogram."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .chi2 import chi2_test, contingency_expected
from .core import as_samples
from .partitioner import DEFAULT_BETA, DEFAULT_THETA_GRID, PartitionModel, fit_partition

LOW_OBSERVED = "low-observed"
LOW_EXPECTED = "low-expected"

# Sample-size guidance for the chi-square approximation.
MIN_OBSERVED = 50
MIN_EXPECTED = 5


class DegenerateModelError(ValueError):
    """The histogram has a single bin, so the chi-square test has no degrees of freedom."""


@dataclass(frozen=True)
class DriftReport:
    drift: bool
    p_value: float
    statistic: float
    df: int
    alpha: float
    train_counts: tuple[int, ...]
    test_counts: tuple[int, ...]
    warnings: tuple[str, ...] = ()

    @property
    def n_test(self) -> int:
        return sum(self.test_counts)

    def to_dict(self) -> dict:
        return {
            "drift": self.drift,
            "p_value": self.p_value,
            "statistic": self.statistic,
            "df": self.df,
            "alpha": self.alpha,
            "train_counts": list(self.train_counts),
            "test_counts": list(self.test_counts),
            "warnings": list(self.warnings),
        }


def validity_warnings(table, expected) -> tuple[str, ...]:
    """Flags for cells where the chi-square approximation is doubtful."""
    flags = []
    if np.any(np.asarray(table) <= MIN_OBSERVED):
        flags.append(LOW_OBSERVED)
    if np.any(np.asarray(expected) < MIN_EXPECTED):
        flags.append(LOW_EXPECTED)
    return tuple(flags)


class Detector:
    """A fitted histogram plus the cached training bin counts.

    Immutable after construction; :meth:`detect` only reads.
    """

    def __init__(self, model: PartitionModel):
        self.model = model

    @classmethod
    def fit(cls, train, beta: int = DEFAULT_BETA, theta_grid=DEFAULT_THETA_GRID,
            seed: int | None = None, **kwargs) -> "Detector":
        return cls(fit_partition(train, beta=beta, theta_grid=theta_grid, seed=seed, **kwargs))

    @property
    def train_counts(self) -> np.ndarray:
        return self.model.train_counts

    def detect(self, test, alpha: float = 0.05) -> DriftReport:
        """Chi-square test of the test window's bin counts against training."""
        model = self.model
        if model.k < 2:
            raise DegenerateModelError(
                f"model has a single bin (n_train={model.n_train}, beta={model.beta}); "
                "the chi-square test needs at least 2"
            )
        test = as_samples(test, "test")
        if test.shape[1] != model.d:
            raise ValueError(f"dimension mismatch: model expects {model.d} columns, test has {test.shape[1]}")
        test_counts = model.counts(test)
        table = np.vstack([model.train_counts, test_counts])
        # Bins empty in both samples carry no information and would make the
        # expected count zero; they are dropped from the table.
        table = table[:, table.sum(axis=0) > 0]
        if table.shape[1] < 2:
            # All mass of both samples in a single bin: distributions agree.
            result_p, stat, df, reject = 1.0, 0.0, 0, False
            expected = table
        else:
            reject, result_p, stat, df = chi2_test(table, alpha)
            expected = contingency_expected(table)
        return DriftReport(
            drift=bool(reject),
            p_value=float(result_p),
            statistic=float(stat),
            df=int(df),
            alpha=float(alpha),
            train_counts=tuple(int(c) for c in model.train_counts),
            test_counts=tuple(int(c) for c in test_counts),
            warnings=validity_warnings(table, expected),
        )


def fit(train, beta: int = DEFAULT_BETA, theta_grid=DEFAULT_THETA_GRID, seed: int | None = None,
        **kwargs) -> Detector:
    return Detector.fit(train, beta=beta, theta_grid=theta_grid, seed=seed, **kwargs)


def detect(detector: Detector, test, alpha: float = 0.05) -> DriftReport:
    return detector.detect(test, alpha)


def run_stream(detector: Detector, windows: Iterable, alpha: float = 0.05,
               refit_on_drift: bool = False, beta: int = DEFAULT_BETA,
               theta_grid=DEFAULT_THETA_GRID, seed: int | None = None) -> list[DriftReport]:
    """Test consecutive non-overlapping windows against the reference.

    With ``refit_on_drift`` a window that raises an alarm becomes the new
    training set before the next window is tested; otherwise the reference
    histogram never changes.
    """
    reports = []
    current = detector
    for window in windows:
        report = current.detect(window, alpha)
        reports.append(report)
        if refit_on_drift and report.drift:
            current = Detector.fit(window, beta=beta, theta_grid=theta_grid, seed=seed)
    return reports
