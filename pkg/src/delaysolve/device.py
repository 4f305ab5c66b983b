"""Directed delay graphs.

A device is a directed multigraph. Arcs delay a passing signal by an
integer number of time units; nodes split it into one copy per outgoing
arc and may add an internal delay of their own first. All delays are
plain Python ints, so arithmetic on them is exact at any magnitude.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Tuple


class DeviceError(ValueError):
    """Raised for malformed devices or queries against unknown nodes."""


@dataclass(frozen=True)
class Node:
    id: int
    internal_delay: int = 0
    label: str = ""


@dataclass(frozen=True, order=True)
class Arc:
    src: int
    dst: int
    delay: int


@dataclass(frozen=True)
class ReadoutSpec:
    """Inclusive window of arrival moments that signal a YES answer.

    A point readout (the usual case) has ``lo == hi``.
    """

    lo: int
    hi: int
    description: str = ""

    def __post_init__(self):
        if self.lo < 0 or self.hi < self.lo:
            raise ValueError(f"bad readout window [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, moment: int, description: str = "") -> "ReadoutSpec":
        return cls(moment, moment, description)

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    def __contains__(self, t: int) -> bool:
        return self.lo <= t <= self.hi


@dataclass(frozen=True)
class Device:
    """Immutable delay graph with a start and a destination node.

    Nodes are kept sorted by id and arcs by ``(src, dst, delay)`` so two
    devices built in different orders compare equal and serialize
    identically. Construction does not validate; call :func:`validate`.
    """

    nodes: Tuple[Node, ...]
    arcs: Tuple[Arc, ...]
    start: int
    destination: int
    _out: Dict[int, Tuple[Arc, ...]] = field(
        init=False, repr=False, compare=False, hash=False
    )

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(sorted(self.nodes, key=lambda n: n.id)))
        object.__setattr__(self, "arcs", tuple(sorted(self.arcs)))
        out = defaultdict(list)
        for arc in self.arcs:
            out[arc.src].append(arc)
        object.__setattr__(self, "_out", {k: tuple(v) for k, v in out.items()})

    def __hash__(self):
        return hash((self.nodes, self.arcs, self.start, self.destination))

    @property
    def node_ids(self) -> List[int]:
        return [n.id for n in self.nodes]

    def has_node(self, node: int) -> bool:
        return 0 <= node < len(self.nodes) and self.nodes[node].id == node

    def node(self, node: int) -> Node:
        if not self.has_node(node):
            raise DeviceError(f"unknown node {node}")
        return self.nodes[node]

    def out_arcs(self, node: int) -> Tuple[Arc, ...]:
        return self._out.get(node, ())

    def in_arcs(self, node: int) -> List[Arc]:
        return [a for a in self.arcs if a.dst == node]

    def max_delay(self) -> int:
        """Largest single delay anywhere in the device (arc or node)."""
        return max(
            [a.delay for a in self.arcs] + [n.internal_delay for n in self.nodes],
            default=0,
        )


def out_degree(device: Device, node: int) -> int:
    """Number of arcs leaving ``node``; parallel arcs count separately."""
    if not device.has_node(node):
        raise DeviceError(f"unknown node {node}")
    return len(device.out_arcs(node))


def validate(device: Device) -> List[str]:
    """Return every invariant violation found in ``device``.

    An empty list means the device is well formed. Violations are
    reported as data; this function never raises on a bad device.
    """
    problems = []
    ids = [n.id for n in device.nodes]
    if ids != list(range(len(ids))):
        problems.append(f"node ids must be dense from 0, got {ids}")
    declared = set(ids)
    for n in device.nodes:
        if not isinstance(n.internal_delay, int) or n.internal_delay < 0:
            problems.append(f"node {n.id} has negative internal delay {n.internal_delay}")

    for a in device.arcs:
        if a.src not in declared or a.dst not in declared:
            problems.append(f"arc {a.src}->{a.dst} (delay {a.delay}) has an undeclared endpoint")
        if not isinstance(a.delay, int) or a.delay < 1:
            problems.append(f"arc {a.src}->{a.dst} has delay {a.delay}; delays must be >= 1")

    if device.start not in declared:
        problems.append(f"start node {device.start} is not declared")
    if device.destination not in declared:
        problems.append(f"destination node {device.destination} is not declared")
    if device.start == device.destination:
        problems.append("start and destination must differ")
    # self-loops on the start node are allowed (loop gadgets inject there)
    for a in device.arcs:
        if a.dst == device.start and a.src != device.start:
            problems.append(f"start node {device.start} has incoming arc from {a.src}")
    for a in device.out_arcs(device.destination):
        problems.append(f"destination node {device.destination} has outgoing arc to {a.dst}")
    return problems


def check(device: Device) -> Device:
    """Validate and return ``device``, raising :class:`DeviceError` if malformed."""
    problems = validate(device)
    if problems:
        raise DeviceError("invalid device: " + "; ".join(problems))
    return device


def longest_path_delay(device: Device) -> Optional[int]:
    """Largest start-to-destination delay, or None if a cycle is reachable.

    Node internal delays are included. Only walks that actually reach the
    destination are considered.
    """
    order: List[int] = []
    state: Dict[int, int] = {}
    stack = [(device.start, iter(device.out_arcs(device.start)))]
    state[device.start] = 1
    while stack:
        node, it = stack[-1]
        arc = next(it, None)
        if arc is None:
            stack.pop()
            state[node] = 2
            order.append(node)
            continue
        s = state.get(arc.dst, 0)
        if s == 1:
            return None
        if s == 0:
            state[arc.dst] = 1
            stack.append((arc.dst, iter(device.out_arcs(arc.dst))))

    best: Dict[int, int] = {}
    for node in order:  # reverse topological: successors first
        own = device.node(node).internal_delay
        if node == device.destination:
            best[node] = own
            continue
        tails = [a.delay + best[a.dst] for a in device.out_arcs(node) if a.dst in best]
        if tails:
            best[node] = own + max(tails)
    return best.get(device.start)


class DeviceBuilder:
    """Incremental construction helper used by the problem compilers."""

    def __init__(self):
        self._nodes: List[Node] = []
        self._arcs: List[Arc] = []

    def node(self, label: str = "", internal_delay: int = 0) -> int:
        nid = len(self._nodes)
        self._nodes.append(Node(nid, internal_delay, label))
        return nid

    def arc(self, src: int, dst: int, delay: int) -> None:
        self._arcs.append(Arc(src, dst, delay))

    def arcs(self, arcs: Iterable[Tuple[int, int, int]]) -> None:
        for src, dst, delay in arcs:
            self.arc(src, dst, delay)

    def build(self, start: int, destination: int) -> Device:
        return check(Device(tuple(self._nodes), tuple(self._arcs), start, destination))
