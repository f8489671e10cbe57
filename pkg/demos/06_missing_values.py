"""Robustness to missing feature values.

Real tabular data arrives with holes. The benchmark models this by zeroing
an exact fraction of feature cells (missing values imputed as 0.0, which is
also what load_csv does with its missing token). This demo corrupts both
train and test at increasing ratios and watches the self-paced ensemble
degrade gracefully instead of falling off a cliff.

The `selfpaced bench --suite missing-sweep` command runs the same experiment
with 10 paired repeats and writes CSV; here we keep 3 repeats for speed.
"""

import numpy as np

from selfpaced import (
    CheckerboardSpec,
    RandomSource,
    aucprc,
    corrupt_missing,
    fit_method,
    generate_checkerboard,
)

REPEATS = 3
RATIOS = (0.0, 0.25, 0.5, 0.75)

rng = RandomSource(0)
print(f"{'ratio':>6} {'mean AUCPRC':>12} {'per-repeat':>30}")
for ratio in RATIOS:
    values = []
    for repeat in range(REPEATS):
        # Fresh paired boards per repeat; the corruption pattern is seeded by
        # (ratio, repeat) so each ratio damages the same base boards.
        train = generate_checkerboard(CheckerboardSpec(seed=repeat * 2 + 100))
        test = generate_checkerboard(CheckerboardSpec(seed=repeat * 2 + 101))
        train_c = corrupt_missing(train, ratio, rng.child(f"train:{ratio}", repeat))
        test_c = corrupt_missing(test, ratio, rng.child(f"test:{ratio}", repeat))
        model = fit_method(train_c, "spe", base_learner="tree", n_estimators=10, seed=repeat)
        values.append(aucprc(test_c.labels, model.predict_proba(test_c.features)))
    mean = float(np.mean(values))
    shown = " ".join(f"{v:.4f}" for v in values)
    print(f"{ratio:6.2f} {mean:12.4f} {shown:>30}")

print()
print("Zeroed cells overwrite the blob geometry, so the curve must fall;")
print("the point is that it falls smoothly. At ratio 0.75 three quarters of")
print("all coordinates are gone and the board is mostly unlearnable, which")
print("pins the score near the 1/11 prevalence baseline.")
