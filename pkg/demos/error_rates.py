# # Estimating Type-I and Type-II error rates
#
# run_trial repeats: fit on fresh training data, test stationary windows
# (false alarms count as Type-I) and drifted windows (misses count as
# Type-II). Each repetition derives its own seeds, so results are
# reproducible and individually re-runnable.
#
# This uses a reduced protocol so it finishes in under a minute; the full
# one is 250 + 250 windows and 10 repetitions.

from eikmeans.bench import TrialConfig, run_trial
from eikmeans.fileio import write_results_csv

cfg = TrialConfig("1G-mean", n_train=2000, n_test=200, n_stationary_sets=100, n_drift_sets=100,
                  repetitions=3, base_seed=0)
res = run_trial(cfg)
print(res.summary())

for rep in res.repetitions:
    print(f"  rep {rep.repetition}: K={rep.k} theta={rep.theta} "
          f"Type-I {rep.type1(cfg.alpha):.1f}% Type-II {rep.type2(cfg.alpha):.1f}%")

# p-values are stored, so a stricter alpha needs no rerun.
strict = res.at_alpha(0.01)
print(f"alpha=0.01: Type-I {strict.type1_mean:.2f}%  Type-II {strict.type2_mean:.2f}%")

# Larger shifts are easier to catch.
for delta in (0.2, 0.3, 0.5):
    r = run_trial(TrialConfig("1G-mean", delta=delta, n_stationary_sets=20, n_drift_sets=100,
                              repetitions=2, base_seed=0))
    print(f"delta={delta}: Type-II {r.type2_mean:.1f}%")

write_results_csv([res], "error_rates.csv")
print("per-repetition rows written to error_rates.csv")
