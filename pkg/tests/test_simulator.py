from collections import defaultdict
from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from delaysolve.compilers import compile_diophantine, compile_subset_sum
from delaysolve.device import Arc, Device, DeviceError, Node, ReadoutSpec
from delaysolve.oracles import EnumerationLimit, enumerate_walks
from delaysolve.problems import Diophantine, SubsetSum
from delaysolve.simulator import (
    Answer,
    Arrival,
    ArrivalMap,
    BudgetExceeded,
    HorizonError,
    read,
    resource_guard,
    simulate,
)

from conftest import chain, devices, walk_intensity

F = Fraction


def test_single_path():
    arr = simulate(chain(5), 10)
    assert arr.entries == {5: Arrival(1, F(1))}


def test_one_split():
    dev = Device((Node(0), Node(1)), (Arc(0, 1, 2), Arc(0, 1, 3)), 0, 1)
    arr = simulate(dev, 3)
    assert arr.entries == {2: Arrival(1, F(1, 2)), 3: Arrival(1, F(1, 2))}


# Subset sums of {2,3,5}: 0,2,3,5,5,7,8,10 -> arrival at sum + 3.
SUBSET_235 = {3: 1, 5: 1, 6: 1, 8: 2, 10: 1, 11: 1, 13: 1}


def test_subset_sum_full_horizon():
    dev = compile_subset_sum(SubsetSum((2, 3, 5), 5)).device
    arr = simulate(dev, 13)
    assert {t: a.count for t, a in arr.entries.items()} == SUBSET_235
    assert arr.total_count == 8
    assert all(a.intensity == F(a.count, 8) for a in arr.entries.values())
    assert arr.pruned_count == 0


def test_subset_sum_horizon_11_prunes_largest_subset():
    dev = compile_subset_sum(SubsetSum((2, 3, 5), 5)).device
    arr = simulate(dev, 11)
    assert {t: a.count for t, a in arr.entries.items()} == {
        t: c for t, c in SUBSET_235.items() if t <= 11
    }
    assert arr.entries[8].count == 2
    assert arr.pruned_count == 1
    assert arr.pruned_intensity == F(1, 8)


def test_diophantine_two_solutions():
    dev = compile_diophantine(Diophantine((2, 3), 6)).device
    assert simulate(dev, 8).entries[8].count == 2


def test_invalid_device_rejected():
    with pytest.raises(DeviceError):
        simulate(chain(0), 5)
    with pytest.raises(ValueError):
        simulate(chain(1), -1)


def test_lost_fronts():
    # node 1 is a dead end
    dev = Device((Node(0), Node(1), Node(2)), (Arc(0, 1, 1), Arc(0, 2, 1)), 0, 2)
    arr = simulate(dev, 5)
    assert arr.lost_count == 1 and arr.lost_intensity == F(1, 2)
    assert arr.entries == {1: Arrival(1, F(1, 2))}


def test_internal_delay_before_split():
    dev = Device((Node(0), Node(1, 4), Node(2)), (Arc(0, 1, 1), Arc(1, 2, 1)), 0, 2)
    assert simulate(dev, 6).entries == {6: Arrival(1, F(1))}
    assert simulate(dev, 5).entries == {}


def test_read_examples():
    empty = ArrivalMap({}, 10)
    d = read(empty, ReadoutSpec(0, 10))
    assert d.answer is Answer.NO and d.multiplicity == 0

    res = compile_subset_sum(SubsetSum((2, 3, 5), 5))
    arr = simulate(res.device, 13)
    d = read(arr, ReadoutSpec.point(8))
    assert d.answer is Answer.YES and d.multiplicity == 2 and d.hit_times == (8,)
    assert d.intensity == F(1, 4)
    assert read(arr, ReadoutSpec.point(9)).answer is Answer.NO


def test_read_past_horizon():
    with pytest.raises(HorizonError):
        read(simulate(chain(1), 3), ReadoutSpec.point(4))


def test_guard_generous_budget_matches_simulate():
    dev = compile_subset_sum(SubsetSum((2, 3, 5), 5)).device
    assert resource_guard(dev, 13, 1000) == simulate(dev, 13)


def test_guard_trips_on_large_subset_sum():
    values = tuple(2 ** i for i in range(20))  # every subset sum distinct
    dev = compile_subset_sum(SubsetSum(values, 1)).device
    out = resource_guard(dev, 10 ** 9, 10)
    assert isinstance(out, BudgetExceeded)
    assert out.live_fronts == 11 and out.fronts_processed > 0


def test_guard_boundary_inclusive():
    dev = compile_subset_sum(SubsetSum((1, 2, 4, 8), 3)).device
    peak = simulate(dev, 100).peak_fronts
    assert peak > 1
    assert isinstance(resource_guard(dev, 100, peak), ArrivalMap)
    assert isinstance(resource_guard(dev, 100, peak - 1), BudgetExceeded)


def test_guard_rejects_zero_budget():
    with pytest.raises(ValueError):
        resource_guard(chain(1), 1, 0)


@settings(max_examples=150, deadline=None)
@given(devices(), st.integers(0, 14))
def test_matches_walk_enumeration(dev, horizon):
    try:
        walks = list(enumerate_walks(dev, horizon, limit=10 ** 4))
    except EnumerationLimit:
        assume(False)
    expect = defaultdict(lambda: [0, F(0)])
    for t, path in walks:
        expect[t][0] += 1
        expect[t][1] += walk_intensity(dev, path)
    arr = simulate(dev, horizon)
    assert arr.entries == {t: Arrival(c, i) for t, (c, i) in expect.items()}


@settings(max_examples=150, deadline=None)
@given(devices(), st.integers(0, 30))
def test_intensity_conserved(dev, horizon):
    arr = simulate(dev, horizon)
    assert arr.total_intensity + arr.pruned_intensity + arr.lost_intensity == 1


@settings(max_examples=100, deadline=None)
@given(devices(), st.integers(0, 20), st.integers(0, 10))
def test_monotone_horizon(dev, horizon, extra):
    low = simulate(dev, horizon)
    high = simulate(dev, horizon + extra)
    assert {t: a for t, a in high.entries.items() if t <= horizon} == low.entries


@settings(max_examples=50, deadline=None)
@given(devices(), st.integers(0, 20))
def test_deterministic(dev, horizon):
    a, b = simulate(dev, horizon), simulate(dev, horizon)
    assert a == b and list(a.entries) == list(b.entries)
    assert list(a.entries) == sorted(a.entries)


@given(st.integers(1, 9))
def test_split_law(d):
    # start splits d ways straight into the destination
    dev = Device((Node(0), Node(1)), tuple(Arc(0, 1, i + 1) for i in range(d)), 0, 1)
    arr = simulate(dev, d)
    assert all(a.intensity == F(1, d) for a in arr.entries.values())
    assert arr.total_intensity == 1
