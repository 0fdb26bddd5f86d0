"""Optimal one-dimensional k-means on item weights and the elbow choice of g.

Optimal clusters of sorted scalars are contiguous, so h(g) is a DP over split
points. Layer g holds the best cost of covering the first i weights with g
segments; each layer is one O(n^2) pass of ``kernels.kmeans_step``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from . import kernels
from .errors import InvalidGroupCount

DEFAULT_ALPHA = 0.9


@dataclass(frozen=True)
class KMeansResult:
    h: float
    boundaries: tuple[int, ...]
    centroids: tuple[float, ...]


@dataclass(frozen=True)
class ClusteringResult:
    g_star: int
    h_curve: dict[int, float]
    centroids: tuple[float, ...]
    boundaries: tuple[int, ...]
    t2: float
    degenerate: bool = False
    alpha: float = DEFAULT_ALPHA

    @property
    def s_last(self) -> int:
        return self.boundaries[-1] - self.boundaries[-2]

    @property
    def group_sizes(self) -> tuple[int, ...]:
        b = self.boundaries
        return tuple(b[i + 1] - b[i] for i in range(len(b) - 1))


def _as_sorted(weights: Sequence[int]) -> np.ndarray:
    w = np.asarray(weights, dtype=np.int64)
    if w.ndim != 1 or w.size == 0:
        raise ValueError("weights must be a non-empty 1-D sequence")
    d = np.diff(w)
    if not (np.all(d <= 0) or np.all(d >= 0)):
        raise ValueError("weights must be sorted")
    return np.ascontiguousarray(w)


class _Layers:
    """Incrementally built DP layers over one weight vector."""

    def __init__(self, w: np.ndarray):
        self.w = w
        base = np.full(len(w) + 1, np.inf)
        base[0] = 0.0
        self.costs = [base]
        self.args = [None]

    def h(self, g: int) -> float:
        while len(self.costs) <= g:
            cur, arg = kernels.kmeans_step(self.costs[-1], self.w, len(self.costs))
            self.costs.append(cur)
            self.args.append(arg)
        return float(self.costs[g][-1])

    def partition(self, g: int) -> KMeansResult:
        h = self.h(g)
        n = len(self.w)
        cuts = [n]
        i = n
        for layer in range(g, 0, -1):
            i = int(self.args[layer][i])
            cuts.append(i)
        bounds = tuple(reversed(cuts))
        centroids = tuple(
            float(self.w[bounds[k]:bounds[k + 1]].mean()) for k in range(g)
        )
        return KMeansResult(h=h, boundaries=bounds, centroids=centroids)


def kmeans_1d(weights: Sequence[int], g: int) -> KMeansResult:
    w = _as_sorted(weights)
    if not 1 <= g <= len(w):
        raise InvalidGroupCount(f"g must lie in [1, {len(w)}], got {g}")
    return _Layers(w).partition(g)


def h_curve(weights: Sequence[int], g_max: int) -> list[tuple[int, float]]:
    """(g, h(g)) for g = 1..min(g_max, n)."""
    w = _as_sorted(weights)
    layers = _Layers(w)
    return [(g, layers.h(g)) for g in range(1, min(g_max, len(w)) + 1)]


def select_g_star(weights: Sequence[int], alpha: float = DEFAULT_ALPHA) -> ClusteringResult:
    """Smallest g in [2, n-1] with h(g+1)/h(g) > alpha.

    h(g) == 0 selects that g outright (the fit is already perfect). If no g
    qualifies, g* = n-1 and the result is flagged ``degenerate``.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must lie in (0, 1), got {alpha}")
    start = time.perf_counter()
    w = _as_sorted(weights)
    n = len(w)
    if n < 3:
        raise InvalidGroupCount(f"g* needs n >= 3 items, got {n}")
    layers = _Layers(w)
    curve = {2: layers.h(2)}
    g_star, degenerate = n - 1, True
    for g in range(2, n):
        curve[g + 1] = layers.h(g + 1)
        if curve[g] == 0.0 or curve[g + 1] / curve[g] > alpha:
            g_star, degenerate = g, False
            break
    best = layers.partition(g_star)
    return ClusteringResult(
        g_star=g_star,
        h_curve=curve,
        centroids=best.centroids,
        boundaries=best.boundaries,
        t2=time.perf_counter() - start,
        degenerate=degenerate,
        alpha=alpha,
    )
