"""Concept-drift detection with equal-intensity k-means histograms.

Fit a histogram on reference data, then test new windows with Pearson's
chi-square test on the bin counts::

    from eikmeans import Detector
    det = Detector.fit(train, seed=0)
    report = det.detect(window, alpha=0.05)
"""
from .chi2 import chi2_pvalue, chi2_statistic, chi2_test, contingency_expected, degrees_of_freedom
from .core import knn_indices, nn_distances, pairwise_distance
from .datagen import GeneratorSpec, gen_dataset, gen_experiment1_sets, gen_gaussian, gen_highdim
from .detector import DegenerateModelError, Detector, DriftReport, detect, fit, run_stream
from .greedy_init import greedy_centroids, partition_sizes
from .partitioner import (
    PartitionModel,
    amplified_assign,
    amplify_coefficients,
    fit_partition,
    intensity_stddev,
    intensity_vector,
    lloyd_kmeans,
)

__version__ = "0.1.0"

__all__ = [
    "DegenerateModelError",
    "Detector",
    "DriftReport",
    "GeneratorSpec",
    "PartitionModel",
    "amplified_assign",
    "amplify_coefficients",
    "chi2_pvalue",
    "chi2_statistic",
    "chi2_test",
    "contingency_expected",
    "degrees_of_freedom",
    "detect",
    "fit",
    "fit_partition",
    "gen_dataset",
    "gen_experiment1_sets",
    "gen_gaussian",
    "gen_highdim",
    "greedy_centroids",
    "intensity_stddev",
    "intensity_vector",
    "knn_indices",
    "lloyd_kmeans",
    "nn_distances",
    "pairwise_distance",
    "partition_sizes",
    "run_stream",
]
