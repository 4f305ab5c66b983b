"""Brute-force ground truth for every problem kind.

Nothing here touches the compilers or the simulator. The solvers are
deliberately naive so that agreement with the devices means something.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, List, Optional, Tuple

from .device import Device
from .problems import (
    Diophantine,
    ExactCover,
    Hamiltonian,
    ProblemInstance,
    SubsetSum,
    TspDecision,
    UnboundedSubsetSum,
)

MAX_SUBSET_ITEMS = 24
MAX_DIOPHANTINE_POINTS = 10 ** 7
MAX_CITIES = 9
MAX_COLLECTION = 20
MAX_WITNESSES = 10


class EnumerationLimit(ValueError):
    """The instance is too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleResult:
    count: int
    witnesses: Tuple = ()
    min_weight: Optional[int] = None

    @property
    def answer(self) -> str:
        return "YES" if self.count else "NO"


def _collect(candidates):
    count, witnesses = 0, []
    for w in candidates:
        count += 1
        if len(witnesses) < MAX_WITNESSES:
            witnesses.append(w)
    return OracleResult(count, tuple(witnesses))


def oracle_subset_sum(inst: SubsetSum, limit: int = MAX_SUBSET_ITEMS) -> OracleResult:
    n = len(inst.values)
    if n > limit:
        raise EnumerationLimit(f"{n} values exceeds enumeration bound {limit}")
    return _collect(
        tuple(i for i in range(n) if mask >> i & 1)
        for mask in range(1 << n)
        if sum(inst.values[i] for i in range(n) if mask >> i & 1) == inst.target
    )


def oracle_unbounded(inst: UnboundedSubsetSum) -> OracleResult:
    """Count ordered sequences of values (by index) summing to the target."""
    ways = [1] + [0] * inst.target
    for t in range(1, inst.target + 1):
        ways[t] = sum(ways[t - a] for a in inst.values if a <= t)
    return OracleResult(ways[inst.target])


def count_compositions_naive(values, target) -> int:
    """Plain recursion; used to cross-check the DP in :func:`oracle_unbounded`."""
    if target == 0:
        return 1
    return sum(count_compositions_naive(values, target - a) for a in values if a <= target)


def oracle_diophantine(inst: Diophantine, limit: int = MAX_DIOPHANTINE_POINTS) -> OracleResult:
    low = 1 if inst.require_positive else 0
    ranges = [range(low, inst.constant // a + 1) for a in inst.coefficients]
    points = math.prod(len(r) for r in ranges)
    if points > limit:
        raise EnumerationLimit(f"{points} candidate tuples exceeds bound {limit}")
    return _collect(
        xs
        for xs in itertools.product(*ranges)
        if sum(a * x for a, x in zip(inst.coefficients, xs)) == inst.constant
    )


def _hamiltonian_paths(n, arcs, limit):
    if n > limit:
        raise EnumerationLimit(f"{n} cities exceeds enumeration bound {limit}")
    for order in itertools.permutations(range(n)):
        if all((order[i], order[i + 1]) in arcs for i in range(n - 1)):
            yield order


def oracle_hamiltonian(inst: Hamiltonian, limit: int = MAX_CITIES) -> OracleResult:
    return _collect(_hamiltonian_paths(inst.n, inst.arcs, limit))


def oracle_exact_cover(inst: ExactCover, limit: int = MAX_COLLECTION) -> OracleResult:
    m = len(inst.collection)
    if m > limit:
        raise EnumerationLimit(f"{m} sets exceeds enumeration bound {limit}")

    def exact(chosen):
        seen = Counter()
        for i in chosen:
            seen.update(inst.collection[i])
        return all(seen[x] == 1 for x in range(inst.universe_size))

    return _collect(
        chosen
        for r in range(m + 1)
        for chosen in itertools.combinations(range(m), r)
        if exact(chosen)
    )


def path_weights(inst: TspDecision, limit: int = MAX_CITIES) -> Counter:
    """Histogram of total weight over all directed Hamiltonian paths."""
    return Counter(
        sum(inst.weights[(p[i], p[i + 1])] for i in range(inst.n - 1))
        for p in _hamiltonian_paths(inst.n, inst.weights.keys(), limit)
    )


def oracle_tsp(inst: TspDecision, limit: int = MAX_CITIES) -> OracleResult:
    hist = path_weights(inst, limit)
    count = sum(c for w, c in hist.items() if w <= inst.bound)
    return OracleResult(count, min_weight=min(hist) if hist else None)


def solve_oracle(inst: ProblemInstance) -> OracleResult:
    if isinstance(inst, SubsetSum):
        return oracle_subset_sum(inst)
    if isinstance(inst, UnboundedSubsetSum):
        return oracle_unbounded(inst)
    if isinstance(inst, Diophantine):
        return oracle_diophantine(inst)
    if isinstance(inst, Hamiltonian):
        return oracle_hamiltonian(inst)
    if isinstance(inst, ExactCover):
        return oracle_exact_cover(inst)
    if isinstance(inst, TspDecision):
        return oracle_tsp(inst)
    raise TypeError(f"not a problem instance: {inst!r}")


def enumerate_walks(
    device: Device, horizon: int, limit: int = 10 ** 6
) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """Depth-first listing of every start-to-destination walk within ``horizon``.

    Yields ``(arrival_time, nodes_visited)``. Shares no code with the event
    simulator and keeps no merged state, so it is exponential by design.
    """
    delays = {n.id: n.internal_delay for n in device.nodes}
    out = {n.id: [(a.dst, a.delay) for a in device.out_arcs(n.id)] for n in device.nodes}
    seen = 0
    stack: List[Tuple[int, int, Tuple[int, ...]]] = [(device.start, 0, (device.start,))]
    while stack:
        node, t, path = stack.pop()
        t += delays[node]
        if t > horizon:
            continue
        if node == device.destination:
            seen += 1
            if seen > limit:
                raise EnumerationLimit(f"more than {limit} walks")
            yield t, path
            continue
        for nxt, d in out[node]:
            if t + d <= horizon:
                stack.append((nxt, t + d, path + (nxt,)))


def walk_histogram(device: Device, horizon: int, limit: int = 10 ** 6) -> Counter:
    return Counter(t for t, _ in enumerate_walks(device, horizon, limit))
