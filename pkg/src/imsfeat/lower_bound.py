"""Profit lower bound valid for every IMS, plus the upper bound and exact optimum
used to put it in context.

Positions ``b`` and ``f`` are 1-based, as exported in the feature vector.
Permutations are tuples of 0-based indices into the sorted items.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import CapacityTooLarge, InvalidUpperBound
from .instance import KnapsackInstance

# cap on n*(c+1) booleans kept for reconstructing the optimal selection
SOLVE_TABLE_BUDGET = 2**28


@dataclass(frozen=True)
class LowerBoundResult:
    b: int
    f: int
    pi: tuple[int, ...]
    lb_exact: Fraction
    target: int  # weight every IMS is guaranteed to reach: c - w_b + 1

    @property
    def lb_value(self) -> float:
        return float(self.lb_exact)

    def ratio(self, ub) -> float:
        return corollary1_ratio_from(self.lb_exact, ub)


def compute_b(inst: KnapsackInstance) -> int:
    """Largest 1-based e whose weight suffix w_e + ... + w_n exceeds c."""
    suffix = 0
    for e in range(inst.n, 0, -1):
        suffix += inst.weights[e - 1]
        if suffix > inst.capacity:
            return e
    raise AssertionError("sum of weights <= capacity; instance invariants broken")


def _cmp_efficiency(inst, i, j):
    # p_i/w_i vs p_j/w_j by cross-multiplication, ties by index
    lhs = inst.profits[i] * inst.weights[j]
    rhs = inst.profits[j] * inst.weights[i]
    if lhs != rhs:
        return -1 if lhs < rhs else 1
    return (i > j) - (i < j)


def efficiency_order(inst: KnapsackInstance) -> tuple[int, ...]:
    """Item indices by non-decreasing profit/weight ratio."""
    key = functools.cmp_to_key(functools.partial(_cmp_efficiency, inst))
    return tuple(sorted(range(inst.n), key=key))


def theorem2_lower_bound(inst: KnapsackInstance) -> LowerBoundResult:
    """Smallest profit of the fractional relaxation forced to weigh c - w_b + 1.

    Any IMS leaves some item among b..n out, so it weighs at least c - w_b + 1;
    filling that weight with the least efficient items first bounds its profit.
    """
    b = compute_b(inst)
    target = inst.capacity - inst.weights[b - 1] + 1
    pi = efficiency_order(inst)
    acc_w = 0
    acc_p = 0
    for rank, item in enumerate(pi, start=1):
        w = inst.weights[item]
        if acc_w + w >= target:
            lb = acc_p + Fraction(target - acc_w, w) * inst.profits[item]
            return LowerBoundResult(b=b, f=rank, pi=pi, lb_exact=lb, target=target)
        acc_w += w
        acc_p += inst.profits[item]
    raise AssertionError("c - w_b + 1 exceeds the total weight; invariants broken")


def dantzig_bound_exact(inst: KnapsackInstance) -> Fraction:
    remaining = inst.capacity
    total = Fraction(0)
    for item in reversed(efficiency_order(inst)):
        w, p = inst.weights[item], inst.profits[item]
        if w <= remaining:
            remaining -= w
            total += p
        else:
            total += Fraction(remaining * p, w)
            break
    return total


def dantzig_upper_bound(inst: KnapsackInstance) -> float:
    """Linear-relaxation bound: greedy by efficiency with one fractional item."""
    return float(dantzig_bound_exact(inst))


def corollary1_ratio_from(lb, ub) -> float:
    if ub <= 0:
        raise InvalidUpperBound(f"upper bound must be positive, got {ub}")
    return float(Fraction(lb) / Fraction(ub))


def corollary1_ratio(inst: KnapsackInstance, ub=None) -> float:
    """Lower bound on profit(IMS)/profit(optimum); ub defaults to the Dantzig bound."""
    if ub is None:
        ub = dantzig_bound_exact(inst)
    return corollary1_ratio_from(theorem2_lower_bound(inst).lb_exact, ub)


def solve_optimal(
    inst: KnapsackInstance, table_budget: int = SOLVE_TABLE_BUDGET
) -> tuple[int, tuple[int, ...]]:
    """Exact optimum by the textbook O(nc) DP; returns (profit, 0/1 selection)."""
    n, c = inst.n, inst.capacity
    if n * (c + 1) > table_budget:
        raise CapacityTooLarge(f"n*(c+1) = {n * (c + 1)} exceeds {table_budget}")
    dp = np.zeros(c + 1, dtype=np.int64)
    take = np.zeros((n, c + 1), dtype=bool)
    for i, (p, w) in enumerate(zip(inst.profits, inst.weights)):
        cand = dp[: c + 1 - w] + p
        better = cand > dp[w:]
        take[i, w:] = better
        dp[w:] = np.where(better, cand, dp[w:])
    selection = [0] * n
    k = c
    for i in range(n - 1, -1, -1):
        if take[i, k]:
            selection[i] = 1
            k -= inst.weights[i]
    return int(dp[c]), tuple(selection)
