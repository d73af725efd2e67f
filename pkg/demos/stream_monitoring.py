# # Monitoring a stream of windows
#
# run_stream tests consecutive windows against a reference. With
# refit_on_drift the window that raised an alarm becomes the new reference,
# so the detector follows the stream after each change.

from eikmeans import Detector, GeneratorSpec, gen_dataset, run_stream

train = gen_dataset(GeneratorSpec("4G-mean", 2000, seed=10))
det = Detector.fit(train, seed=10)

# Ten windows of 500 samples; from window 5 on, one of the four clusters moves.
windows = [
    gen_dataset(GeneratorSpec("4G-mean", 500, seed=(10, t), drifted=t >= 5, delta=1.5))
    for t in range(10)
]

print("fixed reference")
for t, r in enumerate(run_stream(det, windows)):
    print(f"  window {t}: p={r.p_value:.3g} drift={r.drift}")

# With refitting, the change point raises one alarm and the shifted
# distribution becomes the new normal. A stationary window can still trip
# the test about alpha of the time; a refit then simply restarts from it.
print("refit on drift")
for t, r in enumerate(run_stream(det, windows, refit_on_drift=True, seed=10)):
    print(f"  window {t}: p={r.p_value:.3g} drift={r.drift}")

# Windows of 500 against beta=50 give fewer bins after a refit, since the
# bin count is n // beta.
