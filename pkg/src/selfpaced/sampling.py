"""Hardness binning, the self-paced quota schedule, and random resamplers."""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

__all__ = [
    "BinPartition",
    "partition_bins",
    "self_paced_alpha",
    "bin_sampling_weights",
    "self_paced_undersample",
    "random_undersample",
    "random_oversample",
    "draw_undersample",
    "largest_remainder_shares",
    "ResamplingWarning",
    "DEFAULT_ALPHA_CAP",
    "WEIGHT_EPS",
]

DEFAULT_ALPHA_CAP = 1e9
# Stand-in divisor when a bin's mean hardness and alpha are both exactly zero.
WEIGHT_EPS = 1e-12


class ResamplingWarning(UserWarning):
    """Raised when a draw must fall back to sampling with replacement."""


@dataclass(frozen=True)
class BinPartition:
    """Equal-width partition of hardness values.

    edges: k+1 bin boundaries over the observed hardness range.
    member_indices: per bin, the row indices whose hardness landed there.
    mean_hardness: per bin mean hardness, NaN where a bin is empty.
    """

    edges: np.ndarray
    member_indices: tuple
    mean_hardness: np.ndarray

    @property
    def k(self) -> int:
        return len(self.member_indices)

    @property
    def counts(self) -> np.ndarray:
        return np.array([idx.size for idx in self.member_indices], dtype=np.int64)

    @property
    def total(self) -> int:
        return int(self.counts.sum())


def partition_bins(values, k, indices=None) -> BinPartition:
    """Cut values into k equal-width bins over their observed range.

    Bins are left-closed and right-open, except the last which is closed on
    both sides. If every value is identical the first bin takes everything.
    `indices` labels each value with a dataset row index (positions when
    omitted); bins keep input order.
    """
    values = np.asarray(values, dtype=np.float64)
    if values.ndim != 1 or values.size == 0:
        raise ValueError("hardness values must be a nonempty 1-D sequence")
    if not np.isfinite(values).all():
        raise ValueError("hardness values must be finite")
    k = int(k)
    if k < 1:
        raise ValueError(f"k must be a positive integer, got {k}")
    if indices is None:
        indices = np.arange(values.size, dtype=np.int64)
    else:
        indices = np.asarray(indices, dtype=np.int64)
        if indices.shape != values.shape:
            raise ValueError("indices and values must align")

    lo = float(values.min())
    hi = float(values.max())
    edges = np.linspace(lo, hi, k + 1)
    if lo == hi:
        assignment = np.zeros(values.size, dtype=np.int64)
    else:
        # side="right" makes each interior edge belong to the bin above it;
        # the maximum lands in the last bin because it never exceeds edges[-1].
        assignment = np.searchsorted(edges[1:-1], values, side="right")

    member_indices = []
    mean_hardness = np.full(k, np.nan)
    for b in range(k):
        mask = assignment == b
        member_indices.append(indices[mask])
        if mask.any():
            mean_hardness[b] = values[mask].mean()
    return BinPartition(edges, tuple(member_indices), mean_hardness)


def self_paced_alpha(i, n, alpha_cap=DEFAULT_ALPHA_CAP) -> float:
    """Self-paced factor for iteration i of n: tan(((i-1)/n) * pi/2).

    Starts at exactly 0.0 for i=1, grows strictly, and is clamped at
    alpha_cap to stay finite.
    """
    i = int(i)
    n = int(n)
    if n < 1:
        raise ValueError(f"n must be a positive integer, got {n}")
    if not 1 <= i <= n:
        raise ValueError(f"iteration must lie in [1, {n}], got {i}")
    if not alpha_cap > 0:
        raise ValueError(f"alpha_cap must be positive, got {alpha_cap}")
    if i == 1:
        return 0.0
    return min(math.tan(((i - 1) / n) * (math.pi / 2)), float(alpha_cap))


def bin_sampling_weights(partition: BinPartition, alpha) -> np.ndarray:
    """Normalized per-bin sampling weights 1 / (mean_hardness + alpha).

    Empty bins get weight 0. A bin whose mean hardness and alpha are both
    exactly zero gets the dominating (but finite) unnormalized weight
    1 / WEIGHT_EPS.
    """
    alpha = float(alpha)
    if not (math.isfinite(alpha) and alpha >= 0):
        raise ValueError(f"alpha must be a nonnegative finite real, got {alpha}")
    counts = partition.counts
    if not (counts > 0).any():
        raise ValueError("partition has no nonempty bins")
    raw = np.zeros(partition.k, dtype=np.float64)
    for b in range(partition.k):
        if counts[b] == 0:
            continue
        h = partition.mean_hardness[b]
        denom = h + alpha
        raw[b] = 1.0 / (denom if denom > 0.0 else WEIGHT_EPS)
    return raw / raw.sum()


def largest_remainder_shares(weights, total) -> np.ndarray:
    """Integer shares of `total` proportional to weights, summing exactly.

    Floors the ideal shares, then hands the leftover units to the largest
    fractional remainders; remainder ties go to the lowest index.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.ndim != 1 or weights.size == 0:
        raise ValueError("weights must be a nonempty 1-D sequence")
    if (weights < 0).any() or not np.isfinite(weights).all():
        raise ValueError("weights must be nonnegative finite reals")
    total = int(total)
    if total < 0:
        raise ValueError(f"total must be nonnegative, got {total}")
    wsum = weights.sum()
    if wsum <= 0:
        raise ValueError("weights must not all be zero")
    ideal = weights / wsum * total
    base = np.floor(ideal).astype(np.int64)
    leftover = total - int(base.sum())
    if leftover > 0:
        remainder = ideal - base
        # Primary key: largest remainder; secondary: lowest index.
        order = np.lexsort((np.arange(weights.size), -remainder))
        base[order[:leftover]] += 1
    return base


def _capped_quotas(weights, capacities, target):
    """Apportion `target` across bins, never exceeding per-bin capacity.

    Deficit from capped bins is redistributed proportionally among bins with
    remaining capacity; if those all have zero weight the deficit spreads
    uniformly. Returns (quotas, unmet) where unmet > 0 only when the total
    capacity is below target.
    """
    weights = np.asarray(weights, dtype=np.float64)
    capacities = np.asarray(capacities, dtype=np.int64)
    quotas = np.zeros(weights.size, dtype=np.int64)
    remaining = int(target)
    while remaining > 0:
        room = capacities - quotas
        active = room > 0
        if not active.any():
            break
        w = weights[active]
        if w.sum() <= 0:
            w = np.ones(w.size)
        alloc = largest_remainder_shares(w, remaining)
        alloc = np.minimum(alloc, room[active])
        if alloc.sum() == 0:
            break
        quotas[active] += alloc
        remaining -= int(alloc.sum())
    return quotas, remaining


def self_paced_undersample(partition, weights, target, rng) -> np.ndarray:
    """Draw `target` member indices from a partition, bin-proportionally.

    Integer quotas follow the weights by largest remainder, are capped at bin
    occupancy with the deficit redistributed, and each bin is then sampled
    uniformly without replacement. If the partition holds fewer than `target`
    members in total, the shortfall is drawn with replacement and a
    ResamplingWarning is issued.
    """
    weights = np.asarray(weights, dtype=np.float64)
    if weights.shape != (partition.k,):
        raise ValueError(f"expected {partition.k} weights, got shape {weights.shape}")
    if (weights < 0).any():
        raise ValueError("weights must be nonnegative")
    target = int(target)
    if target < 1:
        raise ValueError(f"target must be a positive integer, got {target}")

    quotas, unmet = _capped_quotas(weights, partition.counts, target)
    gen = rng.generator
    picks = []
    for b in range(partition.k):
        members = partition.member_indices[b]
        q = int(quotas[b])
        if q == 0:
            continue
        if q == members.size:
            picks.append(members)
        else:
            picks.append(members[gen.choice(members.size, size=q, replace=False)])
    if unmet > 0:
        warnings.warn(
            f"partition holds {partition.total} members but {target} were "
            f"requested; drawing the shortfall with replacement",
            ResamplingWarning,
            stacklevel=2,
        )
        everyone = np.concatenate([idx for idx in partition.member_indices if idx.size])
        picks.append(everyone[gen.choice(everyone.size, size=unmet, replace=True)])
    return np.concatenate(picks) if picks else np.empty(0, dtype=np.int64)


def draw_undersample(pool, target, rng) -> np.ndarray:
    """Uniform draw of `target` indices from `pool`, without replacement.

    Falls back to drawing with replacement (with a ResamplingWarning) when
    the pool is smaller than the target.
    """
    pool = np.asarray(pool, dtype=np.int64)
    if pool.size == 0:
        raise ValueError("cannot draw from an empty pool")
    target = int(target)
    if target < 1:
        raise ValueError(f"target must be a positive integer, got {target}")
    gen = rng.generator
    if pool.size >= target:
        return pool[gen.choice(pool.size, size=target, replace=False)]
    warnings.warn(
        f"pool holds {pool.size} members but {target} were requested; "
        f"drawing with replacement",
        ResamplingWarning,
        stacklevel=2,
    )
    return pool[gen.choice(pool.size, size=target, replace=True)]


def random_undersample(data, rng) -> np.ndarray:
    """Majority row indices drawn uniformly, as many as there are minority."""
    if data.n_minority == 0:
        raise ValueError("dataset has no minority samples; target size undefined")
    if data.n_majority == 0:
        raise ValueError("dataset has no majority samples to draw from")
    return draw_undersample(data.majority_indices, data.n_minority, rng)


def random_oversample(data, rng) -> np.ndarray:
    """Minority row indices, repeated until they match the majority count.

    Every original minority row appears at least once; the remainder is drawn
    uniformly with replacement. The result has length n_majority, in shuffled
    order.
    """
    if data.n_minority == 0:
        raise ValueError("dataset has no minority samples to oversample")
    extra = data.n_majority - data.n_minority
    if extra < 0:
        raise ValueError(
            "majority is smaller than minority; repetition cannot balance them"
        )
    gen = rng.generator
    minority = data.minority_indices
    repeats = minority[gen.choice(minority.size, size=extra, replace=True)]
    return gen.permutation(np.concatenate([minority, repeats]))
