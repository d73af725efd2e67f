import numpy as np
import pytest

from eikmeans.datagen import (
    DEFAULT_DELTA,
    GeneratorSpec,
    component_sizes,
    family_name,
    gen_dataset,
    gen_experiment1_sets,
    gen_gaussian,
    gen_highdim,
)


def test_table_margins():
    assert DEFAULT_DELTA == {"U-mean": 0.06, "1G-mean": 0.3, "1G-var": 0.2, "1G-cov": 0.2,
                             "2G-mean": 0.4, "4G-mean": 0.8}


@pytest.mark.parametrize("name,canon", [("2d-1G-mean", "1G-mean"), ("u-mean", "U-mean"), ("4G-mean", "4G-mean")])
def test_family_names(name, canon):
    assert family_name(name) == canon


def test_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        GeneratorSpec("5G-mean", 10)


def test_gaussian_mean_clt():
    x = gen_gaussian(10_000, [0.0, 0.0], np.eye(2), seed=1)
    assert np.all(np.abs(x.mean(0)) < 4 / np.sqrt(10_000))


def test_gaussian_single_row_reproducible():
    a = gen_gaussian(1, [1.0, 2.0], np.eye(2), seed=9)
    assert a.shape == (1, 2)
    assert np.array_equal(a, gen_gaussian(1, [1.0, 2.0], np.eye(2), seed=9))


def test_gaussian_covariance():
    x = gen_gaussian(20_000, [0.0, 0.0], [[1, 0.2], [0.2, 1]], seed=3)
    assert np.cov(x.T)[0, 1] == pytest.approx(0.2, abs=0.03)


def test_gaussian_rejects_non_spd():
    with pytest.raises(ValueError, match="positive definite"):
        gen_gaussian(5, [0, 0], [[1, 2], [2, 1]])


def test_uniform_support_stationary():
    x = gen_dataset(GeneratorSpec("U-mean", 5000, seed=0))
    assert x.min() >= 0 and x.max() <= 1


def test_uniform_support_drifted():
    x = gen_dataset(GeneratorSpec("U-mean", 20_000, seed=0, drifted=True))
    assert 1.0 < x[:, 0].max() <= 1.06
    assert x[:, 1].max() <= 1.0


def test_four_gaussians_drifted_component():
    x, comp = gen_dataset(GeneratorSpec("4G-mean", 4000, seed=2, drifted=True), return_labels=True)
    assert np.bincount(comp).tolist() == [1000] * 4
    np.testing.assert_allclose(x[comp == 3].mean(0), [4.2, 5.0], atol=0.15)


@pytest.mark.parametrize("family,mean,var", [
    ("1G-mean", [0.3, 0.0], [1.0, 1.0]),
    ("1G-var", [0.2, 0.0], [1.2, 1.2]),
    ("1G-cov", [0.2, 0.0], [1.0, 1.0]),
])
def test_single_gaussian_drift_moments(family, mean, var):
    x = gen_dataset(GeneratorSpec(family, 40_000, seed=4, drifted=True))
    np.testing.assert_allclose(x.mean(0), mean, atol=0.03)
    np.testing.assert_allclose(x.var(0), var, atol=0.05)


def test_cov_drift_off_diagonal():
    x = gen_dataset(GeneratorSpec("1G-cov", 40_000, seed=4, drifted=True))
    assert np.cov(x.T)[0, 1] == pytest.approx(0.2, abs=0.03)


def test_shift_mean_override():
    x = gen_dataset(GeneratorSpec("1G-var", 40_000, seed=4, drifted=True, shift_mean=False))
    assert abs(x[:, 0].mean()) < 0.03


def test_two_gaussian_exact_split():
    spec = GeneratorSpec("2G-mean", 1001, seed=0, drifted=True, delta=50.0)
    x, comp = gen_dataset(spec, return_labels=True)
    assert np.bincount(comp).tolist() == [501, 500]
    assert np.array_equal(x[:, 0] > 25, comp == 1)


def test_zero_delta_equals_stationary():
    for fam in ("U-mean", "1G-mean", "1G-var", "1G-cov", "2G-mean", "4G-mean"):
        a = gen_dataset(GeneratorSpec(fam, 300, seed=7))
        b = gen_dataset(GeneratorSpec(fam, 300, seed=7, drifted=True, delta=0.0))
        assert np.array_equal(a, b), fam


def test_deterministic():
    spec = GeneratorSpec("4G-mean", 500, seed=(3, 1, 4))
    assert np.array_equal(gen_dataset(spec), gen_dataset(spec))


def test_rows_shuffled():
    x = gen_dataset(GeneratorSpec("4G-mean", 400, seed=1))
    # Unshuffled output would start with a full block from the origin cluster.
    assert np.linalg.norm(x[:100], axis=1).max() > 3


def test_extra_dims():
    x = gen_dataset(GeneratorSpec("1G-mean", 50, seed=1, extra_dims=3))
    assert x.shape == (50, 5)


def test_custom_mixture():
    spec = GeneratorSpec("custom-mixture", 1000, seed=1, means=[[0, 0], [100, 100]], weights=[0.3, 0.7])
    x = gen_dataset(spec)
    assert (x[:, 0] > 50).sum() == 700


def test_bad_weights():
    with pytest.raises(ValueError):
        GeneratorSpec("custom-mixture", 10, means=[[0, 0], [1, 1]], weights=[0.5, 0.6])


def test_component_sizes():
    assert component_sizes(10, [0.25] * 4).tolist() == [3, 3, 2, 2]
    assert component_sizes(1350, [1 / 3] * 3).tolist() == [450, 450, 450]


def test_experiment1_sizes():
    x, labels = gen_experiment1_sets("3G-135", seed=0, return_labels=True)
    assert x.shape == (1350, 2)
    assert np.bincount(labels).tolist() == [150, 450, 750]
    _, labels = gen_experiment1_sets("3G-111", seed=0, return_labels=True)
    assert np.bincount(labels).tolist() == [450, 450, 450]


def test_experiment1_component_means():
    x, labels = gen_experiment1_sets("3G-135", seed=0, return_labels=True)
    for comp, mu in enumerate([-5.0, 0.0, 5.0]):
        assert x[labels == comp, 0].mean() == pytest.approx(mu, abs=0.3)


def test_experiment1_single():
    x = gen_experiment1_sets("1G", seed=5)
    assert np.all(np.abs(x.mean(0)) < 0.11)


def test_experiment1_unknown():
    with pytest.raises(ValueError):
        gen_experiment1_sets("2G")


def test_highdim_padding_moments():
    x = gen_highdim("1G-mean", 4, drifted=False, n=4000, seed=0)
    assert x.shape == (4000, 4)
    np.testing.assert_allclose(x[:, 2:].mean(0), 0, atol=0.07)
    np.testing.assert_allclose(x[:, 2:].var(0), 1, atol=0.08)


def test_highdim_drift_margin():
    x = gen_highdim("1G-mean", 10, drifted=True, n=4000, seed=0)
    assert x[:, 0].mean() == pytest.approx(0.5, abs=4 / np.sqrt(4000))


def test_highdim_padding_uncorrelated():
    x = gen_highdim("4G-mean", 6, drifted=False, n=4000, seed=1)
    corr = np.corrcoef(x.T)
    assert np.abs(corr[:2, 2:]).max() < 0.05


def test_highdim_rejects():
    with pytest.raises(ValueError):
        gen_highdim("1G-mean", 1, False, 10)
    with pytest.raises(ValueError):
        gen_highdim("U-mean", 4, False, 10)
