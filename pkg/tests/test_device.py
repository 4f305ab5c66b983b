from dataclasses import replace

import pytest
from hypothesis import given

from delaysolve.compilers import compile_subset_sum, compile_unbounded_subset_sum
from delaysolve.device import (
    Arc,
    Device,
    DeviceError,
    Node,
    ReadoutSpec,
    check,
    longest_path_delay,
    out_degree,
    validate,
)
from delaysolve.problems import SubsetSum, UnboundedSubsetSum

from conftest import chain, devices


def test_minimal_device_is_valid():
    assert validate(chain(1)) == []


def test_zero_delay_arc_is_named():
    problems = validate(chain(0))
    assert len(problems) == 1
    assert "0->1" in problems[0]


def test_destination_with_outgoing_arc():
    dev = Device((Node(0), Node(1), Node(2)), (Arc(0, 1, 1), Arc(1, 2, 1)), 0, 1)
    problems = validate(dev)
    assert len(problems) == 1
    assert "destination" in problems[0]


def test_start_with_foreign_in_arc():
    dev = Device((Node(0), Node(1), Node(2)), (Arc(0, 1, 1), Arc(1, 0, 1), Arc(1, 2, 1)), 0, 2)
    assert any("start" in p for p in validate(dev))


def test_start_self_loop_allowed():
    dev = Device((Node(0), Node(1)), (Arc(0, 0, 2), Arc(0, 1, 1)), 0, 1)
    assert validate(dev) == []


def test_dangling_endpoint_and_same_start_destination():
    dev = Device((Node(0), Node(1)), (Arc(0, 5, 1),), 0, 0)
    problems = validate(dev)
    assert any("undeclared" in p for p in problems)
    assert any("differ" in p for p in problems)


def test_non_dense_ids():
    dev = Device((Node(0), Node(2)), (Arc(0, 2, 1),), 0, 2)
    assert any("dense" in p for p in validate(dev))


def test_negative_internal_delay():
    dev = Device((Node(0), Node(1, -1)), (Arc(0, 1, 1),), 0, 1)
    assert len(validate(dev)) == 1


def test_check_raises():
    with pytest.raises(DeviceError):
        check(chain(0))


def test_out_degree_subset_sum_chain():
    dev = compile_subset_sum(SubsetSum((2, 3, 5), 5)).device
    assert [out_degree(dev, i) for i in range(4)] == [2, 2, 2, 0]


def test_out_degree_unbounded_hub():
    res = compile_unbounded_subset_sum(UnboundedSubsetSum((1, 2, 3), 4))
    hub = 1
    assert out_degree(res.device, hub) == 4


def test_out_degree_unknown_node():
    with pytest.raises(DeviceError):
        out_degree(chain(1), 7)


def test_arcs_canonically_ordered():
    a = Device((Node(0), Node(1)), (Arc(0, 1, 3), Arc(0, 1, 1)), 0, 1)
    b = Device((Node(1), Node(0)), (Arc(0, 1, 1), Arc(0, 1, 3)), 0, 1)
    assert a == b
    assert hash(a) == hash(b)


def test_parallel_duplicates_kept():
    dev = Device((Node(0), Node(1)), (Arc(0, 1, 1), Arc(0, 1, 1)), 0, 1)
    assert out_degree(dev, 0) == 2


def test_readout_window():
    r = ReadoutSpec.point(8)
    assert r.is_point and 8 in r and 9 not in r
    with pytest.raises(ValueError):
        ReadoutSpec(5, 4)


def test_longest_path():
    assert longest_path_delay(chain(2, 3)) == 5
    loop = Device((Node(0), Node(1)), (Arc(0, 0, 2), Arc(0, 1, 1)), 0, 1)
    assert longest_path_delay(loop) is None
    dev = compile_subset_sum(SubsetSum((2, 3, 5), 5)).device
    assert longest_path_delay(dev) == 13


@given(devices())
def test_single_field_mutations_are_caught(dev):
    assert validate(dev) == []
    bad_arc = replace(dev.arcs[0], delay=0)
    assert validate(replace(dev, arcs=(bad_arc,) + dev.arcs[1:]))
    assert validate(replace(dev, destination=dev.start))
    assert validate(replace(dev, start=len(dev.nodes)))
    extra = Arc(dev.destination, dev.start if dev.start != dev.destination else 0, 1)
    assert validate(replace(dev, arcs=dev.arcs + (extra,)))
    bad_node = replace(dev.nodes[-1], internal_delay=-1)
    assert validate(replace(dev, nodes=dev.nodes[:-1] + (bad_node,)))
