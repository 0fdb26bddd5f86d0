from fractions import Fraction

import pytest
from hypothesis import given, settings

from imsfeat.errors import CapacityTooLarge, InvalidUpperBound
from imsfeat.lower_bound import (
    compute_b,
    corollary1_ratio,
    dantzig_bound_exact,
    dantzig_upper_bound,
    efficiency_order,
    solve_optimal,
    theorem2_lower_bound,
)
from imsfeat.oracle import enumerate_ims

from conftest import make
from strategies import instances


def brute_b(inst):
    return max(e for e in range(1, inst.n + 1) if sum(inst.weights[e - 1:]) > inst.c)


def test_b_examples(tiny):
    assert compute_b(tiny) == 1
    assert compute_b(make([1, 1], [2, 2], 2)) == 1
    assert compute_b(make([1, 1, 1], [5, 3, 3], 5)) == 2
    assert compute_b(make([1, 1, 1], [5, 3, 3], 6)) == 1


def test_efficiency_order():
    assert efficiency_order(make([3, 2], [3, 2], 4)) == (0, 1)
    assert efficiency_order(make([1, 4], [4, 1], 4)) == (0, 1)
    # sorted by weight: (5,5) eff 1, (2,4) eff 0.5, (3,3) eff 1
    inst = make([2, 3, 5], [4, 3, 5], 6)
    assert inst.items == [(5, 5), (2, 4), (3, 3)]
    assert efficiency_order(inst) == (1, 0, 2)


def test_theorem2_tiny(tiny):
    res = theorem2_lower_bound(tiny)
    assert (res.b, res.f, res.pi, res.target) == (1, 1, (0, 1), 2)
    assert res.lb_exact == 2
    assert enumerate_ims(tiny).total_profits.tolist() == [3, 2]


def test_theorem2_hand_derived():
    inst = make([5, 3, 1], [3, 2, 1], 4)
    res = theorem2_lower_bound(inst)
    # b=1, target 4-3+1=2, pi=(2,1,0), f=2, lb = 1 + (1/2)*3
    assert (res.b, res.f, res.pi) == (1, 2, (2, 1, 0))
    assert res.lb_exact == Fraction(5, 2)
    assert sorted(enumerate_ims(inst).total_profits.tolist()) == [4, 6]


def test_unit_efficiency_gives_target():
    inst = make([7, 5, 4, 2], [7, 5, 4, 2], 10)
    res = theorem2_lower_bound(inst)
    assert res.lb_exact == inst.c - inst.weights[res.b - 1] + 1
    assert dantzig_upper_bound(inst) == inst.c


def test_dantzig(tiny):
    assert dantzig_bound_exact(tiny) == 4
    assert solve_optimal(tiny) == (3, (1, 0))


def test_ratio(tiny):
    assert corollary1_ratio(tiny) == pytest.approx(0.5)
    assert corollary1_ratio(tiny, ub=3) == pytest.approx(2 / 3)
    with pytest.raises(InvalidUpperBound):
        corollary1_ratio(tiny, ub=0)


def test_solve_budget():
    with pytest.raises(CapacityTooLarge):
        solve_optimal(make([1, 1], [60, 50], 100), table_budget=10)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_c=60))
def test_bound_is_sound_and_sandwiched(inst):
    res = theorem2_lower_bound(inst)
    enum = enumerate_ims(inst)
    assert res.b == brute_b(inst)
    assert int(enum.total_profits.min()) >= res.lb_exact
    opt, sel = solve_optimal(inst)
    assert opt == int(enum.total_profits.max())
    assert res.lb_exact <= opt <= dantzig_bound_exact(inst)
    assert 0 < corollary1_ratio(inst) <= 1
    assert 0 <= res.lb_value <= sum(inst.profits)
    # the optimal selection is itself an IMS
    assert any(tuple(row.astype(int)) == sel for row in enum.selections)


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_c=60))
def test_f_is_minimal(inst):
    res = theorem2_lower_bound(inst)
    prefix = [inst.weights[i] for i in res.pi]
    assert sum(prefix[:res.f]) >= res.target
    assert sum(prefix[:res.f - 1]) < res.target


@settings(max_examples=150, deadline=None)
@given(instances(max_n=10, max_c=60))
def test_efficiency_order_against_fractions(inst):
    expected = sorted(range(inst.n), key=lambda i: (Fraction(inst.profits[i], inst.weights[i]), i))
    assert efficiency_order(inst) == tuple(expected)
