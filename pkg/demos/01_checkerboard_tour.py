"""Tour of the synthetic checkerboard benchmark dataset.

The board is a 4x4 grid of Gaussian blobs where diagonal neighbours share a
class, so neither feature alone separates the classes: you need the joint
(x0, x1) position. That makes it a good stress test for under-sampling
ensembles, because any model that survives must keep enough majority
structure to learn the grid.
"""

import numpy as np

from selfpaced import (
    CheckerboardSpec,
    RandomSource,
    corrupt_missing,
    generate_checkerboard,
    load_csv,
    save_csv,
)

# The spec is a frozen value object; every field has a default tuned for the
# benchmark (1000 minority vs 10000 majority, tight blobs, seed 0).
spec = CheckerboardSpec(cov_scale=0.1, n_minority=1000, n_majority=10000, seed=0)
data = generate_checkerboard(spec)

print("== layout ==")
print(f"samples:   {data.n_samples} ({data.n_minority} minority + {data.n_majority} majority)")
print(f"features:  {data.n_features} named {data.feature_names}")
print(f"imbalance: {data.imbalance_ratio:.1f} majority rows per minority row")

# Rows are laid out majority first, then minority; the label array is the
# ground truth, not the ordering.
print(f"first label: {data.labels[0]}, last label: {data.labels[-1]}")

# Each class owns half the grid cells in a checkerboard pattern. class_means
# lists the blob centres; with grid_size=4 each class gets 8 of 16 cells.
for cls in (0, 1):
    means = spec.class_means(cls)
    print(f"class {cls} occupies {len(means)} cells, first three: {means[:3].tolist()}")

# The parity rule: a cell at integer coordinates (i, j) belongs to class
# (i + j) % 2. Verify it by snapping every sample to its nearest cell.
cells = np.rint(data.features).astype(int)
parity = (cells[:, 0] + cells[:, 1]) % 2
agreement = float(np.mean(parity == data.labels))
print(f"nearest-cell parity matches the label on {agreement:.1%} of samples")

# Generation is a pure function of the spec. Regenerating gives the exact
# same array; a different seed gives a different draw.
again = generate_checkerboard(spec)
print(f"regeneration bitwise identical: {np.array_equal(again.features, data.features)}")

other = generate_checkerboard(CheckerboardSpec(seed=7))
print(f"seed 7 differs from seed 0:     {not np.allclose(other.features, data.features)}")

print()
print("== missing values ==")
# corrupt_missing zeroes an exact number of randomly chosen feature cells:
# int(ratio * n_cells) distinct cells, so the damage is deterministic in size.
small = generate_checkerboard(CheckerboardSpec(n_minority=50, n_majority=500, seed=3))
n_cells = small.n_samples * small.n_features
for ratio in (0.0, 0.25, 0.5):
    corrupted = corrupt_missing(small, ratio, RandomSource(11))
    changed = int(np.sum(corrupted.features != small.features))
    print(f"ratio {ratio:4.2f}: {changed:4d} cells changed (budget {int(ratio * n_cells)})")

print()
print("== CSV round trip ==")
# save_csv writes header x0,x1,label with full-precision reals, and load_csv
# reads it back losslessly.
import tempfile
from pathlib import Path

with tempfile.TemporaryDirectory() as tmp:
    path = Path(tmp) / "board.csv"
    save_csv(small, path)
    lines = path.read_text().splitlines()
    print(f"header: {lines[0]}")
    print(f"rows:   {len(lines) - 1}")
    loaded = load_csv(path)
    same = np.array_equal(loaded.data.features, small.features) and np.array_equal(
        loaded.data.labels, small.labels
    )
    print(f"round trip lossless: {same}, missing cells filled: {loaded.n_missing}")
