"""Head-to-head comparison of the resampling methods on one board.

fit_method is the single dispatch point: it trains any of the six methods
with a shared seed so the comparison is paired. For a statistically careful
version of this (10 repeats, mean and std per cell, CSV output) use the
bench module or `selfpaced bench`; this demo keeps one repeat so it runs in
seconds and the story stays readable.
"""

import time

from selfpaced import (
    METHODS,
    CheckerboardSpec,
    aucprc,
    fit_method,
    generate_checkerboard,
)

train = generate_checkerboard(CheckerboardSpec(seed=0))
test = generate_checkerboard(CheckerboardSpec(seed=1))
print(
    f"train: {train.n_minority}+{train.n_majority}, "
    f"test: {test.n_minority}+{test.n_majority}, imbalance 10:1"
)
print()

learner = {"base_learner": "tree", "n_estimators": 10, "seed": 0}

print(f"{'method':<12} {'test AUCPRC':>12} {'fit seconds':>12}")
for method in METHODS:
    start = time.perf_counter()
    model = fit_method(train, method, **learner)
    elapsed = time.perf_counter() - start
    value = aucprc(test.labels, model.predict_proba(test.features))
    print(f"{method:<12} {value:12.4f} {elapsed:12.2f}")

print()
print("reading the table:")
print(" - 'none' fits one tree on the skewed data; with depth-10 trees it")
print("   can do well here, but it pays the full 11000-row fit cost and")
print("   collapses on harder boards (try cov_scale=0.15).")
print(" - 'rand-under' throws away 90% of the majority blindly, so it")
print("   usually lands lowest among the ensembles.")
print(" - 'spe' spends its bags on informative majority rows: easy bulk")
print("   early, hard boundary late, which is why it tops the ensembles")
print("   while fitting only balanced 2000-row bags.")
