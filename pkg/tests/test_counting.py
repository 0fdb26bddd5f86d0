import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings

from imsfeat.counting import (
    ImsWeightProfile,
    counting_features,
    exact_counts,
    number_ims_weight,
)
from imsfeat.errors import CapacityTooLarge, EmptyProfile
from imsfeat.logcount import ZERO, to_int
from imsfeat.oracle import enumerate_ims, exclude_sizes

from conftest import make
from strategies import instances


def profile_from(counts, c):
    lc = np.full(c + 1, ZERO)
    for k, v in counts.items():
        lc[k] = math.log2(v)
    return ImsWeightProfile(c, lc)


@pytest.mark.parametrize(
    "weights, c, expected",
    [
        ([3, 2], 4, {2: 1, 3: 1}),
        ([2, 2], 2, {2: 2}),
        ([2, 1, 1], 3, {2: 1, 3: 2}),
    ],
)
def test_small_profiles(backend, weights, c, expected):
    inst = make([1] * len(weights), weights, c)
    # the expected values are the oracle's
    assert enumerate_ims(inst).weight_counts() == expected
    prof = number_ims_weight(inst)
    assert exact_counts(prof) == expected
    assert prof[0] == ZERO
    assert all(prof[k] == ZERO for k in range(1, c + 1) if k not in expected)


def test_features_two_points():
    f = counting_features(profile_from({2: 1, 3: 1}, 4), 0.5)
    assert f.cardinality == 1.0
    assert (f.min_weight, f.max_weight) == (2, 3)
    assert f.mean_weight == pytest.approx(2.5)
    assert f.variance == pytest.approx(0.25)
    assert f.t1 == 0.5


def test_features_single_point():
    f = counting_features(profile_from({2: 2}, 2), 0.1)
    assert (f.min_weight, f.max_weight, f.mean_weight, f.variance) == (2, 2, 2.0, 0.0)
    assert f.cardinality == 1.0


def test_features_three_items(backend):
    inst = make([1, 1, 1], [2, 1, 1], 3)
    f = counting_features(number_ims_weight(inst), 0.0)
    tw = enumerate_ims(inst).total_weights.tolist()
    mean = Fraction(sum(tw), len(tw))
    assert mean == Fraction(8, 3)
    assert sum((t - mean) ** 2 for t in tw) / len(tw) == Fraction(2, 9)
    assert f.mean_weight == pytest.approx(8 / 3, rel=1e-12)
    assert f.variance == pytest.approx(2 / 9, rel=1e-12)


def test_empty_profile():
    with pytest.raises(EmptyProfile):
        counting_features(profile_from({}, 3), 0.0)


def test_capacity_budget():
    inst = make([1, 1], [60, 50], 100)
    with pytest.raises(CapacityTooLarge):
        number_ims_weight(inst, capacity_budget=50)
    number_ims_weight(inst, capacity_budget=101)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=11, max_c=80))
def test_matches_enumeration(inst):
    enum = enumerate_ims(inst)
    assert exact_counts(number_ims_weight(inst)) == enum.weight_counts()


@settings(max_examples=100, deadline=None)
@given(instances(max_n=9, max_c=60))
def test_feature_invariants(inst):
    f = counting_features(number_ims_weight(inst), 0.0)
    assert f.min_weight <= f.mean_weight <= f.max_weight
    assert (f.variance == 0) == (f.min_weight == f.max_weight)
    assert f.max_weight <= inst.c
    assert f.min_weight >= inst.c + 1 - inst.weights[0]
    assert to_int(f.cardinality) == len(enumerate_ims(inst))


@settings(max_examples=80, deadline=None)
@given(instances(max_n=9, max_c=60))
def test_exclude_sets_partition_x(inst):
    assert sum(exclude_sizes(inst)) == len(enumerate_ims(inst))


@settings(max_examples=80, deadline=None)
@given(instances(max_n=9, max_c=60))
def test_lemma1_interval(inst):
    enum = enumerate_ims(inst)
    for row, total in zip(enum.selections, enum.total_weights):
        i = int(np.flatnonzero(~row)[-1])
        assert inst.c + 1 - inst.weights[i] <= total <= inst.c


def test_astronomical_count_stays_finite(backend):
    # 400 unit items, capacity 200: |X| = C(400, 200), about 2**395
    inst = make([1] * 400, [1] * 400, 200)
    f = counting_features(number_ims_weight(inst), 0.0)
    expected = math.log2(math.comb(400, 200))
    assert f.cardinality == pytest.approx(expected, rel=1e-12)
    assert (f.min_weight, f.max_weight, f.variance) == (200, 200, 0.0)
