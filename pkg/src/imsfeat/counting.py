"""Counting IMSs by total weight, and the distribution features derived from it."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import kernels
from .errors import CapacityTooLarge, EmptyProfile
from .instance import KnapsackInstance
from .logcount import ZERO, LogCount, log_sum

DEFAULT_CAPACITY_BUDGET = 2**27


@dataclass(frozen=True)
class ImsWeightProfile:
    """``log_counts[k]`` is log2 of the number of IMSs of total weight k.

    Index 0 is unused and always ZERO.
    """

    capacity: int
    log_counts: np.ndarray

    def __getitem__(self, k: int) -> LogCount:
        return float(self.log_counts[k])

    def support(self) -> np.ndarray:
        return np.flatnonzero(self.log_counts != ZERO)


@dataclass(frozen=True)
class CountingFeatures:
    cardinality: LogCount
    min_weight: int
    max_weight: int
    mean_weight: float
    variance: float
    t1: float


def check_budget(c: int, budget: int | None) -> None:
    budget = DEFAULT_CAPACITY_BUDGET if budget is None else budget
    if c + 1 > budget:
        raise CapacityTooLarge(
            f"capacity {c} needs {c + 1} table entries, budget is {budget}"
        )


def number_ims_weight(
    inst: KnapsackInstance, capacity_budget: int | None = None
) -> ImsWeightProfile:
    """Count IMSs of every total weight in O(nc) time and O(c) space.

    An IMS whose lightest unselected item is i (in sorted order) selects every
    later item, leaves i out, and picks any subset of items before i such that
    the total lands in [c+1-w_i, c]. Sweeping i forward while maintaining the
    subset-sum counts of the prefix gives every per-weight count.
    """
    check_budget(inst.capacity, capacity_budget)
    counts = kernels.ims_weight_counts(inst.weight_array(), inst.capacity)
    counts[0] = ZERO
    return ImsWeightProfile(inst.capacity, counts)


def timed_number_ims_weight(inst, capacity_budget=None):
    start = time.perf_counter()
    profile = number_ims_weight(inst, capacity_budget)
    return profile, time.perf_counter() - start


def counting_features(profile: ImsWeightProfile, elapsed: float) -> CountingFeatures:
    lc = profile.log_counts
    support = profile.support()
    if support.size == 0:
        raise EmptyProfile("no IMS of any weight; the profile is empty")
    total = log_sum(lc[support])
    # normalized frequencies 2**(log count - log total) never overflow
    freq = np.exp2(lc[support] - total)
    freq /= freq.sum()
    ks = support.astype(np.float64)
    mean = float(np.dot(freq, ks))
    variance = float(np.dot(freq, (ks - mean) ** 2))
    lo, hi = int(support[0]), int(support[-1])
    if lo == hi:
        mean, variance = float(lo), 0.0
    else:
        mean = min(max(mean, lo), hi)
    return CountingFeatures(
        cardinality=total,
        min_weight=lo,
        max_weight=hi,
        mean_weight=mean,
        variance=variance,
        t1=float(elapsed),
    )


def cardinality(profile: ImsWeightProfile) -> LogCount:
    return log_sum(profile.log_counts)


def exact_counts(profile: ImsWeightProfile) -> dict[int, int]:
    """Round the profile to integers; only meaningful while counts stay below 2**52."""
    return {
        int(k): int(round(math.pow(2.0, profile.log_counts[k])))
        for k in profile.support()
    }
