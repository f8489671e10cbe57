"""The metric toolbox: confusion scores, AUCPRC, stratified splitting.

Accuracy is useless at 10:1 imbalance (predicting all-majority scores 91%),
so the package standardizes on precision/recall style summaries and on the
area under the precision-recall curve for threshold-free comparison.
"""

import numpy as np

from selfpaced import (
    CheckerboardSpec,
    RandomSource,
    aucprc,
    confusion,
    confusion_scores,
    generate_checkerboard,
    stratified_split,
)

print("== confusion matrix and derived scores ==")
# Scores above the threshold predict class 1. The matrix counts tp/fp/fn/tn;
# the derived bundle adds the five standard summaries.
labels = np.array([1, 1, 0, 0, 0])
scores = np.array([0.9, 0.4, 0.8, 0.3, 0.1])
cm = confusion(labels, scores, threshold=0.5)
print(f"tp={cm.tp} fp={cm.fp} fn={cm.fn} tn={cm.tn}")
s = confusion_scores(cm)
print(
    f"precision={s.precision:.4f} recall={s.recall:.4f} f1={s.f1:.4f} "
    f"gmean={s.gmean:.4f} mcc={s.mcc:.4f}"
)

# A worked reference matrix with frozen values, handy as a quick self-test.
from selfpaced.metrics import ConfusionMatrix

ref = confusion_scores(ConfusionMatrix(tp=50, fp=10, fn=20, tn=920))
print(
    f"reference (50,10,20,920): precision={ref.precision:.4f} recall={ref.recall:.4f} "
    f"f1={ref.f1:.4f} gmean={ref.gmean:.4f} mcc={ref.mcc:.4f}"
)

print()
print("== AUCPRC ==")
# Average precision: walk thresholds from high to low, accumulate
# (recall step) * precision. Ties are handled as one block.
labels = np.array([1, 0, 1])
scores = np.array([0.9, 0.8, 0.3])
print(f"mixed ranking      : {aucprc(labels, scores):.6f} (exactly 5/6)")
print(f"perfect ranking    : {aucprc(labels, np.array([0.9, 0.1, 0.8])):.6f}")
# Constant scores collapse to a single threshold, and the area equals the
# positive prevalence.
print(f"all scores tied    : {aucprc(labels, np.array([0.5, 0.5, 0.5])):.6f} (prevalence 2/3)")
# Only the ranking matters: any strictly increasing transform of the scores
# leaves the area unchanged.
print(f"squared scores     : {aucprc(labels, scores ** 2):.6f} (same ranking, same area)")

print()
print("== stratified splitting ==")
# Splits a dataset into train/val/test with per-class exact largest-remainder
# counts, so even a rare class keeps its ratio in every part.
board = generate_checkerboard(CheckerboardSpec(n_minority=100, n_majority=1000, seed=4))
train, val, test = stratified_split(board, fractions=(0.6, 0.2, 0.2), rng=RandomSource(9))
for name, part in (("train", train), ("val", val), ("test", test)):
    print(
        f"{name:<5}: {part.n_samples:4d} rows, {part.n_minority:3d} minority, "
        f"ratio {part.imbalance_ratio:.1f}"
    )
total = train.n_samples + val.n_samples + test.n_samples
print(f"parts exhaustive: {total == board.n_samples}")
