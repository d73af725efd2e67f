"""Pearson chi-square test of homogeneity for a 2 x K contingency table."""
from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

_EPS = 1e-16
_TINY = 1e-300
_MAX_TERMS = 10_000


def _lower_series(a: float, x: float) -> float:
    """Regularised lower incomplete gamma P(a, x) by its power series."""
    term = 1.0 / a
    total = term
    ap = a
    for _ in range(_MAX_TERMS):
        ap += 1.0
        term *= x / ap
        total += term
        if abs(term) < abs(total) * _EPS:
            break
    else:
        raise ArithmeticError(f"series for P({a}, {x}) did not converge")
    return total * math.exp(-x + a * math.log(x) - math.lgamma(a))


def _upper_fraction(a: float, x: float) -> float:
    """Regularised upper incomplete gamma Q(a, x) by modified Lentz."""
    b = x + 1.0 - a
    c = 1.0 / _TINY
    d = 1.0 / b
    h = d
    for i in range(1, _MAX_TERMS):
        an = -i * (i - a)
        b += 2.0
        d = an * d + b
        if abs(d) < _TINY:
            d = _TINY
        c = b + an / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            break
    else:
        raise ArithmeticError(f"continued fraction for Q({a}, {x}) did not converge")
    return math.exp(-x + a * math.log(x) - math.lgamma(a)) * h


def gammaincc(a: float, x: float) -> float:
    """Regularised upper incomplete gamma function Q(a, x)."""
    if a <= 0:
        raise ValueError(f"a must be positive, got {a}")
    if x < 0:
        raise ValueError(f"x must be nonnegative, got {x}")
    if x == 0:
        return 1.0
    if math.isinf(x):
        return 0.0
    if x < a + 1.0:
        return min(1.0, max(0.0, 1.0 - _lower_series(a, x)))
    return min(1.0, max(0.0, _upper_fraction(a, x)))


def chi2_pvalue(x: float, df: int) -> float:
    """Upper-tail probability P(X >= x) for X ~ chi-square(df)."""
    if df < 1:
        raise ValueError(f"df must be >= 1, got {df}")
    if not x >= 0:
        raise ValueError(f"chi-square statistic must be nonnegative, got {x}")
    return gammaincc(df / 2.0, x / 2.0)


def degrees_of_freedom(rows: int, cols: int) -> int:
    if rows < 2 or cols < 2:
        raise ValueError(f"need at least 2 rows and 2 columns, got {rows}x{cols}")
    return (rows - 1) * (cols - 1)


def _as_table(table) -> np.ndarray:
    t = np.asarray(table)
    if t.ndim != 2:
        raise ValueError(f"contingency table must be 2-D, got shape {t.shape}")
    if t.shape[0] < 2 or t.shape[1] < 2:
        raise ValueError(f"contingency table needs at least 2 rows and 2 columns, got {t.shape}")
    if np.any(t < 0) or not np.all(np.isfinite(t)):
        raise ValueError("contingency table counts must be finite and nonnegative")
    if np.any(t != np.round(t)):
        raise ValueError("contingency table counts must be integers")
    return t.astype(np.int64)


def contingency_expected(table) -> np.ndarray:
    """Expected cell counts ``row_sum * col_sum / total`` under homogeneity.

    Zero cells are fine; a zero row or column margin is not.
    """
    t = _as_table(table)
    rows = t.sum(axis=1)
    cols = t.sum(axis=0)
    if np.any(rows == 0):
        raise ValueError(f"contingency table has an empty row (row sums {rows.tolist()})")
    if np.any(cols == 0):
        raise ValueError(f"contingency table has empty column(s) {np.flatnonzero(cols == 0).tolist()}")
    return np.outer(rows, cols).astype(np.float64) / t.sum()


def chi2_statistic(observed, expected) -> float:
    o = np.asarray(observed, dtype=np.float64)
    e = np.asarray(expected, dtype=np.float64)
    if o.shape != e.shape:
        raise ValueError(f"shape mismatch: observed {o.shape}, expected {e.shape}")
    if np.any(e <= 0):
        raise ValueError("expected counts must be positive")
    return float(np.sum((o - e) ** 2 / e))


class Chi2Result(NamedTuple):
    reject: bool
    p_value: float
    statistic: float
    df: int


def chi2_test(table, alpha: float = 0.05) -> Chi2Result:
    """Pearson chi-square homogeneity test; rejects when ``p < alpha``.

    No continuity correction is applied.
    """
    if not 0 < alpha < 1:
        raise ValueError(f"alpha must be in (0, 1), got {alpha}")
    t = _as_table(table)
    expected = contingency_expected(t)
    stat = chi2_statistic(t, expected)
    df = degrees_of_freedom(*t.shape)
    p = chi2_pvalue(stat, df)
    return Chi2Result(p < alpha, p, stat, df)
