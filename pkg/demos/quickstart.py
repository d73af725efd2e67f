# # Quickstart: fit a histogram, test a window
#
# A detector is a set of k-means bins built so that each bin holds roughly
# the same number of training samples. New data is binned the same way and
# the two count vectors go into a chi-square test of homogeneity.

import numpy as np

from eikmeans import Detector, GeneratorSpec, gen_dataset

# Reference data: 2000 draws from a standard 2-D Gaussian.
train = gen_dataset(GeneratorSpec("1G-mean", 2000, seed=1))
det = Detector.fit(train, seed=1)

model = det.model
print(f"bins: {model.k}, theta: {model.theta}, fallback: {model.fallback}")
print("training counts per bin:", det.train_counts.tolist())

# Every bin holds at least beta (default 50) training samples.
print("smallest bin:", det.train_counts.min())

# A window from the same distribution usually passes.
same = gen_dataset(GeneratorSpec("1G-mean", 200, seed=2))
report = det.detect(same, alpha=0.05)
print(f"stationary window: p={report.p_value:.3f} drift={report.drift}")

# A window whose mean has moved by one unit along x is flagged.
moved = gen_dataset(GeneratorSpec("1G-mean", 200, seed=3, drifted=True, delta=1.0))
report = det.detect(moved, alpha=0.05)
print(f"shifted window:    p={report.p_value:.2e} drift={report.drift}")

# Warnings point at cells too sparse for the chi-square approximation.
print("warnings:", report.warnings)

# The report is a plain frozen dataclass; to_dict() gives JSON-ready fields.
print({k: v for k, v in report.to_dict().items() if k in ("df", "statistic")})

# Plain arrays work too. Here a 3-D input where one column doubles its spread.
rng = np.random.default_rng(0)
ref = rng.normal(size=(1500, 3))
new = rng.normal(size=(300, 3)) * [1.0, 1.0, 2.0]
print("wider third column:", Detector.fit(ref, seed=0).detect(new).drift)
