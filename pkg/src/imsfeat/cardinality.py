"""Lower bound on how many items of the lightest weight group every IMS selects."""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import kernels
from .clustering import ClusteringResult
from .counting import check_budget
from .errors import InvalidGroupCount
from .instance import KnapsackInstance


@dataclass(frozen=True)
class CardinalityResult:
    z: int
    inner_max: int
    threshold: int
    s_last: int
    t3: float


def binary_chunks(size: int) -> list[int]:
    """Split a multiplicity into 1, 2, 4, ..., remainder (every 0..size reachable)."""
    chunks, k = [], 1
    while size > 0:
        take = min(k, size)
        chunks.append(take)
        size -= take
        k *= 2
    return chunks


def bounded_knapsack_max(
    groups: Sequence[tuple[int, int, int]],
    c: int,
    capacity_budget: int | None = None,
) -> int:
    """max sum(heavy_i * n_i) s.t. sum(light_i * n_i) <= c, 0 <= n_i <= size_i.

    ``groups`` holds (heaviest weight, lightest weight, size) per group.
    """
    if sum(light * size for _, light, size in groups) <= c:
        return sum(heavy * size for heavy, _, size in groups)
    check_budget(c, capacity_budget)
    values, weights = [], []
    for heavy, light, size in groups:
        for chunk in binary_chunks(size):
            if chunk * light <= c:
                values.append(chunk * heavy)
                weights.append(chunk * light)
    return kernels.zero_one_max(
        np.asarray(values, dtype=np.int64), np.asarray(weights, dtype=np.int64), c
    )


def groups_from_boundaries(weights: Sequence[int], boundaries: Sequence[int]):
    """(heaviest, lightest, size) for every group except the last."""
    return [
        (weights[boundaries[i]], weights[boundaries[i + 1] - 1], boundaries[i + 1] - boundaries[i])
        for i in range(len(boundaries) - 2)
    ]


def z_from_threshold(last_group: Sequence[int], threshold: int) -> int:
    if threshold < 0:  # the empty prefix already exceeds it
        return 0
    acc = 0
    for a, w in enumerate(last_group, start=1):
        acc += w
        if acc > threshold:
            return a
    return len(last_group)


def theorem3_z(
    inst: KnapsackInstance,
    partition: ClusteringResult | Sequence[int],
    capacity_budget: int | None = None,
) -> CardinalityResult:
    """z for a contiguous partition of the weight-sorted items.

    ``partition`` is a clustering result or its boundaries m_0=0 < ... < m_g=n.
    The heavy groups can carry at most M weight when costed at their heaviest
    member, so the last group must fill more than c - M - (its heaviest weight).
    """
    start = time.perf_counter()
    bounds = tuple(
        partition.boundaries if isinstance(partition, ClusteringResult) else partition
    )
    if len(bounds) < 3 or bounds[0] != 0 or bounds[-1] != inst.n:
        raise InvalidGroupCount(f"need g >= 2 groups covering all items, got {bounds}")
    if any(a >= b for a, b in zip(bounds, bounds[1:])):
        raise InvalidGroupCount(f"boundaries must be strictly increasing: {bounds}")
    w = inst.weights
    inner = bounded_knapsack_max(
        groups_from_boundaries(w, bounds), inst.capacity, capacity_budget
    )
    last_start = bounds[-2]
    threshold = inst.capacity - inner - w[last_start]
    z = z_from_threshold(w[last_start:], threshold)
    return CardinalityResult(
        z=z,
        inner_max=inner,
        threshold=threshold,
        s_last=inst.n - last_start,
        t3=time.perf_counter() - start,
    )
