"""Brute-force references: exhaustive enumeration of solutions and partitions.

Everything here follows the definitions directly and is only meant for small
instances (tests and the ``verify`` command). None of it shares code with the
fast paths it checks.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .errors import TooManyItems
from .instance import KnapsackInstance

MAX_ENUM_ITEMS = 25
MAX_VERIFY_ITEMS = 15
MAX_PARTITION_ITEMS = 12
_CHUNK = 1 << 15


@dataclass(frozen=True)
class ImsEnumeration:
    """All IMSs of an instance as rows of a 0/1 matrix over the sorted items."""

    selections: np.ndarray  # (|X|, n) bool
    total_weights: np.ndarray
    total_profits: np.ndarray

    def __len__(self) -> int:
        return len(self.total_weights)

    def weight_counts(self) -> dict[int, int]:
        return dict(Counter(int(t) for t in self.total_weights))


def _solution_bits(n: int, start: int, stop: int) -> np.ndarray:
    masks = np.arange(start, stop, dtype=np.int64)
    return ((masks[:, None] >> np.arange(n, dtype=np.int64)) & 1).astype(bool)


def enumerate_ims(inst: KnapsackInstance, max_items: int = MAX_ENUM_ITEMS) -> ImsEnumeration:
    """Check all 2^n solutions: feasible, and no unselected item still fits."""
    n = inst.n
    if n > max_items:
        raise TooManyItems(f"{n} items; enumeration is capped at {max_items}")
    w = inst.weight_array()
    p = inst.profit_array()
    keep_sel, keep_w, keep_p = [], [], []
    for start in range(0, 1 << n, _CHUNK):
        bits = _solution_bits(n, start, min(start + _CHUNK, 1 << n))
        tw = bits.astype(np.int64) @ w
        lightest_out = np.where(bits, np.iinfo(np.int64).max // 2, w).min(axis=1)
        ims = (tw <= inst.capacity) & (tw + lightest_out > inst.capacity)
        keep_sel.append(bits[ims])
        keep_w.append(tw[ims])
        keep_p.append(bits[ims].astype(np.int64) @ p)
    return ImsEnumeration(
        selections=np.concatenate(keep_sel),
        total_weights=np.concatenate(keep_w),
        total_profits=np.concatenate(keep_p),
    )


def exclude_sizes(inst: KnapsackInstance) -> list[int]:
    """|Exclude_i| for each item, counted from the interval characterization.

    A solution is in Exclude_i iff item i is out, every later item is in, and
    the total weight lies in [c + 1 - w_i, c].
    """
    n, c = inst.n, inst.capacity
    w = inst.weight_array()
    sizes = [0] * n
    for start in range(0, 1 << n, _CHUNK):
        bits = _solution_bits(n, start, min(start + _CHUNK, 1 << n))
        tw = bits.astype(np.int64) @ w
        for i in range(n):
            member = (
                ~bits[:, i]
                & bits[:, i + 1:].all(axis=1)
                & (tw >= c + 1 - w[i])
                & (tw <= c)
            )
            sizes[i] += int(member.sum())
    return sizes


def contiguous_partitions(n: int, g: int):
    """Boundaries (0, m_1, ..., n) of every split of n sorted items into g runs."""
    for cuts in itertools.combinations(range(1, n), g - 1):
        yield (0, *cuts, n)


def partition_cost(weights: Sequence[int], bounds: Sequence[int]) -> Fraction:
    """Exact sum of squared distances to each group's mean."""
    total = Fraction(0)
    for a, b in zip(bounds, bounds[1:]):
        seg = weights[a:b]
        mean = Fraction(sum(seg), len(seg))
        total += sum((x - mean) ** 2 for x in seg)
    return total


def brute_h(weights: Sequence[int], g: int, exact: bool = False):
    weights = [int(x) for x in weights]
    n = len(weights)
    if n > MAX_PARTITION_ITEMS:
        raise TooManyItems(f"{n} items; partition search is capped at {MAX_PARTITION_ITEMS}")
    best = min(partition_cost(weights, b) for b in contiguous_partitions(n, g))
    return best if exact else float(best)


def brute_g_star(weights: Sequence[int], alpha: float) -> tuple[int, bool]:
    """g* from exact h values; returns (g*, degenerate)."""
    n = len(weights)
    alpha = Fraction(alpha)
    h = {g: brute_h(weights, g, exact=True) for g in range(2, n + 1)}
    for g in range(2, n):
        if h[g] == 0 or h[g + 1] / h[g] > alpha:
            return g, False
    return n - 1, True


def brute_bounded_knapsack(groups: Sequence[tuple[int, int, int]], c: int) -> int:
    best = 0
    for counts in itertools.product(*(range(size + 1) for _, _, size in groups)):
        if sum(light * k for (_, light, _), k in zip(groups, counts)) <= c:
            best = max(best, sum(heavy * k for (heavy, _, _), k in zip(groups, counts)))
    return best


def brute_z(inst: KnapsackInstance, bounds: Sequence[int]) -> int:
    """z re-derived from its defining min-set for the given partition."""
    w, c = inst.weights, inst.capacity
    groups = [(w[a], w[b - 1], b - a) for a, b in zip(bounds[:-2], bounds[1:-1])]
    inner = brute_bounded_knapsack(groups, c)
    first = bounds[-2]
    s_last = inst.n - first
    rhs = c - inner - w[first]
    hits = [a for a in range(s_last + 1) if sum(w[first:first + a]) > rhs]
    return min(hits) if hits else s_last


def random_partition(rng: np.random.Generator, n: int) -> tuple[int, ...]:
    g = int(rng.integers(2, n, endpoint=True))
    cuts = sorted(rng.choice(np.arange(1, n), size=g - 1, replace=False).tolist())
    return (0, *cuts, n)


# ---------------------------------------------------------------------------
# instance verification

@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


@dataclass
class VerifyReport:
    instance_id: str
    seed: int
    checks: list[CheckResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(ch.passed for ch in self.checks)

    def failures(self) -> list[CheckResult]:
        return [ch for ch in self.checks if not ch.passed]

    def add(self, name: str, passed: bool, detail: str = "") -> None:
        self.checks.append(CheckResult(name, bool(passed), detail))

    def lines(self) -> list[str]:
        return [
            f"{self.instance_id} {ch.name} {'PASS' if ch.passed else 'FAIL'}"
            + (f" {ch.detail}" if ch.detail and not ch.passed else "")
            for ch in self.checks
        ]

    def csv_rows(self) -> list[tuple[str, str, str]]:
        return [
            (self.instance_id, ch.name, "pass" if ch.passed else "fail")
            for ch in self.checks
        ]


def _isclose(a, b) -> bool:
    return math.isclose(float(a), float(b), rel_tol=1e-9, abs_tol=0.0)


def verify_instance(
    inst: KnapsackInstance,
    instance_id: str = "0",
    seed: int = 0,
    alpha: float = 0.9,
    random_partitions: int = 10,
    capacity_budget: int | None = None,
) -> VerifyReport:
    """Compare every fast feature computation with its brute-force counterpart."""
    # imported here: the oracle module must stay importable without the fast paths
    from .cardinality import theorem3_z
    from .clustering import kmeans_1d, select_g_star
    from .counting import counting_features, exact_counts, number_ims_weight
    from .logcount import to_int
    from .lower_bound import dantzig_bound_exact, solve_optimal, theorem2_lower_bound

    if inst.n > MAX_VERIFY_ITEMS:
        raise TooManyItems(f"{inst.n} items; verification is capped at {MAX_VERIFY_ITEMS}")
    report = VerifyReport(instance_id=instance_id, seed=seed)
    c, w = inst.capacity, inst.weights
    enum = enumerate_ims(inst)
    size = len(enum)
    truth = enum.weight_counts()

    def guarded(name, fn):
        try:
            fn()
        except Exception as exc:  # a crash is a failed check, not an abort
            report.add(name, False, f"raised {type(exc).__name__}: {exc}")

    # -- counting
    def check_counting():
        profile = number_ims_weight(inst, capacity_budget)
        got = exact_counts(profile)
        report.add("ims_weight_profile", got == truth,
                   f"dp={sorted(got.items())[:5]} brute={sorted(truth.items())[:5]}")
        feats = counting_features(profile, 0.0)
        tw = [int(t) for t in enum.total_weights]
        mean = Fraction(sum(tw), size)
        var = sum((Fraction(t) - mean) ** 2 for t in tw) / size
        ok = (
            to_int(feats.cardinality) == size
            and feats.min_weight == min(tw)
            and feats.max_weight == max(tw)
            and _isclose(feats.mean_weight, mean)
            and (var == 0 and feats.variance == 0 or _isclose(feats.variance, var))
        )
        report.add("counting_features", ok,
                   f"got {feats} expected |X|={size} mean={float(mean)} var={float(var)}")

    guarded("counting", check_counting)

    def check_exclude():
        sizes = exclude_sizes(inst)
        report.add("exclude_partition", sum(sizes) == size, f"sum={sum(sizes)} |X|={size}")
        ok = True
        for row, total in zip(enum.selections, enum.total_weights):
            i = int(np.flatnonzero(~row)[-1])  # lightest unselected item
            ok &= c + 1 - w[i] <= int(total) <= c
        report.add("lemma1_interval", ok)

    guarded("exclude", check_exclude)

    # -- profit bounds
    def check_bounds():
        lb = theorem2_lower_bound(inst)
        min_profit = int(enum.total_profits.min())
        report.add("theorem2", min_profit >= lb.lb_exact,
                   f"min IMS profit {min_profit} < lb {float(lb.lb_exact)}")
        opt, sel = solve_optimal(inst)
        ub = dantzig_bound_exact(inst)
        best_ims = int(enum.total_profits.max())
        sel_w = sum(wi for wi, x in zip(w, sel) if x)
        sel_p = sum(pi for pi, x in zip(inst.profits, sel) if x)
        report.add("bound_sandwich", lb.lb_exact <= opt <= ub and opt == best_ims
                   and sel_p == opt and sel_w <= c,
                   f"lb={float(lb.lb_exact)} opt={opt} ub={float(ub)} best_ims={best_ims}")

    guarded("bounds", check_bounds)

    # -- clustering
    weights_list = list(w)

    def check_kmeans():
        if inst.n > MAX_PARTITION_ITEMS:
            return
        ok, detail = True, []
        for g in range(1, min(4, inst.n) + 1):
            res = kmeans_1d(weights_list, g)
            exact = brute_h(weights_list, g, exact=True)
            good = (exact == 0 and res.h == 0) or (
                exact != 0 and _isclose(res.h, exact)
                and _isclose(partition_cost(weights_list, res.boundaries), exact)
            )
            if not good:
                ok = False
                detail.append(f"g={g} dp={res.h} brute={float(exact)}")
        report.add("kmeans_vs_brute", ok, "; ".join(detail))

    guarded("kmeans", check_kmeans)

    if inst.n < 3:
        return report
    rng = np.random.default_rng(seed)

    def check_theorem3(name, bounds):
        res = theorem3_z(inst, bounds, capacity_budget)
        expected = brute_z(inst, bounds)
        last = enum.selections[:, bounds[-2]:].sum(axis=1)
        ok = res.z == expected and bool(np.all(last >= res.z))
        report.add(name, ok,
                   f"bounds={bounds} z={res.z} brute_z={expected} min l_g={int(last.min())}")

    def check_clustering():
        clus = select_g_star(weights_list, alpha)
        if inst.n <= MAX_PARTITION_ITEMS:
            g_brute, _ = brute_g_star(weights_list, alpha)
            report.add("g_star", clus.g_star == g_brute, f"dp={clus.g_star} brute={g_brute}")
        check_theorem3("theorem3_kmeans", clus.boundaries)

    guarded("clustering", check_clustering)

    def check_random():
        for k in range(random_partitions):
            check_theorem3(f"theorem3_random_{k}", random_partition(rng, inst.n))

    guarded("theorem3_random", check_random)
    return report
