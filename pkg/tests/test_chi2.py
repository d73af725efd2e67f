import math
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eikmeans.chi2 import (
    chi2_pvalue,
    chi2_statistic,
    chi2_test,
    contingency_expected,
    degrees_of_freedom,
    gammaincc,
)

from oracles import density_tail, loop_expected, loop_statistic


def test_expected_uniform():
    assert contingency_expected([[10, 10], [10, 10]]).tolist() == [[10.0, 10.0], [10.0, 10.0]]


def test_expected_symmetric():
    assert contingency_expected([[50, 30], [30, 50]]).tolist() == [[40.0, 40.0], [40.0, 40.0]]


def test_expected_zero_cells_allowed():
    assert contingency_expected([[20, 0], [0, 20]]).tolist() == [[10.0, 10.0], [10.0, 10.0]]


@pytest.mark.parametrize("table", [[[0, 0], [3, 4]], [[0, 5], [0, 4]]])
def test_expected_zero_margin(table):
    with pytest.raises(ValueError, match="empty"):
        contingency_expected(table)


def test_expected_preserves_row_sums():
    t = np.array([[3, 9, 14], [7, 1, 20]])
    np.testing.assert_allclose(contingency_expected(t).sum(axis=1), t.sum(axis=1))


def test_statistic_zero():
    e = np.array([[4.0, 6.0], [2.0, 3.0]])
    assert chi2_statistic(e, e) == 0.0


def test_statistic_hand():
    assert chi2_statistic([[50, 30], [30, 50]], np.full((2, 2), 40.0)) == 10.0


def test_statistic_matches_loop():
    rng = np.random.default_rng(0)
    t = rng.integers(1, 90, size=(2, 13))
    e = contingency_expected(t)
    assert chi2_statistic(t, e) == pytest.approx(loop_statistic(t.tolist(), loop_expected(t.tolist())), abs=1e-10)


def test_statistic_rejects_nonpositive_expected():
    with pytest.raises(ValueError):
        chi2_statistic([[1, 2]], [[1.0, 0.0]])


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31))
def test_statistic_column_permutation(seed):
    rng = np.random.default_rng(seed)
    t = rng.integers(1, 60, size=(2, 8))
    perm = rng.permutation(8)
    e = contingency_expected(t)
    assert chi2_statistic(t[:, perm], e[:, perm]) == pytest.approx(chi2_statistic(t, e), rel=1e-12)


@pytest.mark.parametrize("shape,df", [((2, 2), 1), ((2, 40), 39), ((3, 4), 6)])
def test_dof(shape, df):
    assert degrees_of_freedom(*shape) == df


def test_dof_invalid():
    with pytest.raises(ValueError):
        degrees_of_freedom(1, 5)


def test_pvalue_zero():
    for df in (1, 2, 7, 60):
        assert chi2_pvalue(0.0, df) == 1.0


def test_pvalue_critical_value():
    assert chi2_pvalue(3.841459, 1) == pytest.approx(0.05, abs=1e-4)
    assert chi2_pvalue(3.841459, 1) == pytest.approx(density_tail(3.841459, 1), abs=1e-8)


def test_pvalue_df10():
    assert chi2_pvalue(10.0, 10) == pytest.approx(0.4405, abs=1e-4)
    assert chi2_pvalue(10.0, 10) == pytest.approx(density_tail(10.0, 10), abs=1e-8)


def test_pvalue_negative():
    with pytest.raises(ValueError):
        chi2_pvalue(-0.1, 3)


def test_pvalue_accuracy_grid():
    worst = 0.0
    for df, x in product(range(1, 61, 3), [0.1, 0.5, 1, 2, 5, 10, 20, 35, 50, 80, 120]):
        worst = max(worst, abs(chi2_pvalue(x, df) - density_tail(x, df)))
    assert worst < 1e-8


def test_pvalue_monotone():
    xs = np.linspace(0.01, 80, 300)
    for df in (1, 5, 39):
        p = [chi2_pvalue(x, df) for x in xs]
        assert all(a >= b for a, b in zip(p, p[1:]))
        # Strict wherever the value is not pinned at 1.0 or 0.0 by rounding.
        assert all(a > b for a, b in zip(p, p[1:]) if 0 < b and a < 1)
    for x in (0.5, 7.0, 30.0):
        p = [chi2_pvalue(x, df) for df in range(1, 40)]
        assert all(a <= b for a, b in zip(p, p[1:]))
        assert all(a < b for a, b in zip(p, p[1:]) if b < 1)


def test_gammaincc_special_cases():
    # Q(1, x) = exp(-x)
    for x in (0.1, 1.0, 3.0, 25.0):
        assert gammaincc(1.0, x) == pytest.approx(math.exp(-x), rel=1e-13)
    assert gammaincc(3.0, math.inf) == 0.0


def test_test_proportional_rows():
    r = chi2_test([[10, 20, 30], [20, 40, 60]], 0.05)
    assert r.statistic == 0.0 and r.p_value == 1.0 and not r.reject


def test_test_hand_example():
    r = chi2_test([[50, 30], [30, 50]], 0.05)
    assert r.statistic == 10.0
    assert r.df == 1
    # Q(1/2, 5) = erfc(sqrt(5))
    assert r.p_value == pytest.approx(math.erfc(math.sqrt(5.0)), abs=1e-12)
    assert r.p_value == pytest.approx(0.001565, abs=1e-6)
    assert r.reject


def test_test_alpha_boundary():
    r = chi2_test([[10, 20, 30], [21, 40, 60]], 1 - 1e-12)
    assert r.reject == (r.p_value < 1 - 1e-12)
    r = chi2_test([[10, 20, 30], [20, 40, 60]], 1 - 1e-12)
    assert not r.reject


def test_test_invalid_alpha():
    with pytest.raises(ValueError):
        chi2_test([[1, 2], [3, 4]], 1.0)


def test_calibration_under_null():
    rng = np.random.default_rng(2024)
    probs = rng.dirichlet(np.full(10, 20.0))
    alpha, sims = 0.05, 10_000
    rejections = 0
    for _ in range(sims):
        table = np.vstack([rng.multinomial(2000, probs), rng.multinomial(2000, probs)])
        rejections += chi2_test(table, alpha).reject
    band = 3 * math.sqrt(alpha * (1 - alpha) / sims)
    assert abs(rejections / sims - alpha) <= band
