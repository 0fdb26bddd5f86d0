"""Primary acceptance criteria, one test each.

Every test prints a single ``PASS``/``FAIL`` line (visible even under
captured output). Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import time

import numpy as np
import pytest

from imsfeat.cardinality import theorem3_z
from imsfeat.clustering import h_curve, select_g_star
from imsfeat.counting import exact_counts, number_ims_weight
from imsfeat.instance import KnapsackInstance, generate_control
from imsfeat.lower_bound import dantzig_bound_exact, solve_optimal, theorem2_lower_bound
from imsfeat.oracle import enumerate_ims, exclude_sizes, random_partition, verify_instance
from imsfeat.pipeline import PROJECTION_MATRIX, project

CONTROL_SEED = 20240601


def report(capsys, name, ok, detail):
    with capsys.disabled():
        print(f"\n[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, detail


@pytest.fixture(scope="module")
def control():
    return generate_control(1000, seed=CONTROL_SEED, c_max=10**5)


@pytest.fixture(scope="module")
def upto15():
    return generate_control(200, seed=CONTROL_SEED + 1, c_max=5000, n_range=(1, 15))


def test_control_reproduction(capsys, control):
    seeds = np.random.SeedSequence(CONTROL_SEED).generate_state(len(control))
    start = time.perf_counter()
    failed = []
    for k, (inst, s) in enumerate(zip(control, seeds)):
        rep = verify_instance(inst, str(k), seed=int(s), alpha=0.9)
        if not rep.passed:
            failed.append((k, [f.name for f in rep.failures()]))
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 600
    report(capsys, "control reproduction (1000 instances)", ok,
           f"{len(failed)} failing instances {failed[:3]}, {elapsed:.1f}s")


def test_counting_oracle_equivalence(capsys, upto15):
    bad = []
    for k, inst in enumerate(upto15):
        truth = enumerate_ims(inst).weight_counts()
        got = exact_counts(number_ims_weight(inst))
        full = all(got.get(w, 0) == truth.get(w, 0) for w in range(1, inst.capacity + 1))
        if not full or got != truth:
            bad.append(k)
    ns = [i.n for i in upto15]
    report(capsys, "counting DP equals brute force for every k (200 instances, n<=15)",
           not bad, f"mismatches {bad[:5]}, n range [{min(ns)}, {max(ns)}]")


def test_exclude_partition_identity(capsys, control, upto15):
    bad = [k for k, inst in enumerate(control + upto15)
           if sum(exclude_sizes(inst)) != len(enumerate_ims(inst))]
    report(capsys, "sum of |Exclude_i| equals |X|", not bad,
           f"{len(bad)} mismatches over {len(control) + len(upto15)} instances")


def test_bound_sandwich(capsys, control):
    bad = []
    for k, inst in enumerate(control):
        lb = theorem2_lower_bound(inst).lb_exact
        opt, _ = solve_optimal(inst)
        if not lb <= opt <= dantzig_bound_exact(inst):
            bad.append(k)
    report(capsys, "lb <= optimum <= Dantzig bound", not bad,
           f"{len(bad)} violations over {len(control)} instances")


def test_cardinality_bound_random_partitions(capsys):
    insts = generate_control(100, seed=CONTROL_SEED + 2, c_max=2000, n_range=(3, 12))
    rng = np.random.default_rng(CONTROL_SEED + 3)
    bad, checked = [], 0
    for k, inst in enumerate(insts):
        sel = enumerate_ims(inst).selections
        for _ in range(10):
            bounds = random_partition(rng, inst.n)
            z = theorem3_z(inst, bounds).z
            l_g = sel[:, bounds[-2]:].sum(axis=1)
            checked += len(l_g)
            if (l_g < z).any():
                bad.append((k, bounds))
    report(capsys, "l_g >= z on 100 instances x 10 random partitions", not bad,
           f"{len(bad)} violations, {checked} IMS checks")


def test_projection_fidelity(capsys):
    worst = 0.0
    for i, row in enumerate(np.eye(9)):
        p = project(row)
        worst = max(worst, abs(p.z1 - PROJECTION_MATRIX[i, 0]), abs(p.z2 - PROJECTION_MATRIX[i, 1]))
    report(capsys, "projection of basis vectors equals matrix rows", worst <= 1e-12,
           f"max abs error {worst:.3g}")


def _timed_count(inst, repeats=2):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        number_ims_weight(inst, capacity_budget=None)
        best = min(best, time.perf_counter() - start)
    return best


def test_complexity_smoke(capsys):
    rng = np.random.default_rng(CONTROL_SEED + 4)
    times = []
    for c in (10**6, 2 * 10**6):
        w = rng.integers(1, c, size=500, endpoint=True).tolist()
        p = rng.integers(1, 1000, size=500, endpoint=True).tolist()
        times.append(_timed_count(KnapsackInstance.from_items(p, w, c)))
    ratio = times[1] / times[0]
    report(capsys, "counting runtime ratio c=2e6 vs c=1e6 (n=500)", 1.5 <= ratio <= 3.5,
           f"{times[0]:.2f}s vs {times[1]:.2f}s, ratio {ratio:.2f}")


def clustered_weights(seed, clusters=20, per=10):
    rng = np.random.default_rng(seed)
    centers = rng.choice(np.arange(1000, 100000, 2500), size=clusters, replace=False)
    w = np.concatenate([rng.normal(m, 150, size=per) for m in centers])
    return sorted((int(x) for x in np.clip(np.rint(w), 1, None)), reverse=True)


def test_elbow_on_clustered_instance(capsys):
    w = clustered_weights(CONTROL_SEED + 5)
    curve = [h for _, h in h_curve(w, 40)]
    monotone = all(b <= a for a, b in zip(curve, curve[1:]))
    res = select_g_star(w, 0.9)
    ok = len(w) == 200 and monotone and res.g_star <= 30 and not res.degenerate
    report(capsys, "clustered n=200: h-curve non-increasing and g* <= 30", ok,
           f"monotone={monotone}, g*={res.g_star}, degenerate={res.degenerate}")
