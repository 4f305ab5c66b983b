"""Exact event-driven signal propagation.

One unit signal enters the start node at time 0. Every front is keyed by
``(time, node)``; fronts that coincide are merged, which is what keeps
subset-sum style devices at O(nodes * distinct times) work instead of one
event per path. Counts are Python ints and intensities are Fractions, so
nothing in here ever rounds.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Dict, Optional, Tuple, Union

from .device import Device, DeviceError, ReadoutSpec, validate

ZERO = Fraction(0)
ONE = Fraction(1)


class HorizonError(ValueError):
    """A readout window reaches past the horizon the arrivals were simulated to."""


class Answer(str, Enum):
    YES = "YES"
    NO = "NO"


@dataclass(frozen=True)
class Arrival:
    count: int
    intensity: Fraction


@dataclass(frozen=True)
class ArrivalMap:
    """Destination arrivals up to ``horizon`` plus tallies of what never arrived.

    ``entries`` maps arrival time to the number of start-to-destination walks
    with exactly that delay and their summed intensity. ``pruned_*`` covers
    fronts that would have passed the horizon, ``lost_*`` fronts absorbed at
    a sink other than the destination.
    """

    entries: Dict[int, Arrival]
    horizon: int
    pruned_count: int = 0
    lost_count: int = 0
    pruned_intensity: Fraction = ZERO
    lost_intensity: Fraction = ZERO
    fronts_processed: int = field(default=0, compare=False)
    peak_fronts: int = field(default=0, compare=False)

    @property
    def total_count(self) -> int:
        return sum(a.count for a in self.entries.values())

    @property
    def total_intensity(self) -> Fraction:
        return sum((a.intensity for a in self.entries.values()), ZERO)

    def times(self):
        return list(self.entries)


@dataclass(frozen=True)
class Decision:
    answer: Answer
    multiplicity: int
    intensity: Fraction
    hit_times: Tuple[int, ...]

    @property
    def yes(self) -> bool:
        return self.answer is Answer.YES


@dataclass(frozen=True)
class BudgetExceeded:
    """Returned by :func:`resource_guard` when live fronts outgrow the budget."""

    max_fronts: int
    live_fronts: int
    fronts_processed: int
    max_time_reached: int
    horizon: int

    def describe(self) -> str:
        return (
            f"budget exceeded: {self.live_fronts} live fronts > max {self.max_fronts} "
            f"after {self.fronts_processed} processed, reached t={self.max_time_reached} "
            f"of horizon {self.horizon}"
        )


class _OverBudget(Exception):
    def __init__(self, report: BudgetExceeded):
        self.report = report


def _propagate(device: Device, horizon: int, max_fronts: Optional[int]) -> ArrivalMap:
    problems = validate(device)
    if problems:
        raise DeviceError("invalid device: " + "; ".join(problems))
    if horizon < 0:
        raise ValueError(f"horizon must be >= 0, got {horizon}")

    node_delay = [n.internal_delay for n in device.nodes]
    out = [
        tuple((a.dst, a.delay) for a in device.out_arcs(n.id)) for n in device.nodes
    ]
    dest = device.destination

    heap = [(0, device.start)]
    pending = {(0, device.start): [1, ONE]}
    entries: Dict[int, list] = {}
    pruned_count = lost_count = 0
    pruned_int = lost_int = ZERO
    processed = 0
    peak = 1

    while heap:
        key = heapq.heappop(heap)
        t, node = key
        count, inten = pending.pop(key)
        processed += 1

        t += node_delay[node]
        if t > horizon:
            pruned_count += count
            pruned_int += inten
            continue
        arcs = out[node]
        if not arcs:
            if node == dest:
                slot = entries.get(t)
                if slot is None:
                    entries[t] = [count, inten]
                else:
                    slot[0] += count
                    slot[1] += inten
            else:
                lost_count += count
                lost_int += inten
            continue

        share = inten / len(arcs)
        for nxt, delay in arcs:
            ct = t + delay
            if ct > horizon:
                pruned_count += count
                pruned_int += share
                continue
            ckey = (ct, nxt)
            slot = pending.get(ckey)
            if slot is not None:
                slot[0] += count
                slot[1] += share
                continue
            pending[ckey] = [count, share]
            heapq.heappush(heap, ckey)
            live = len(pending)
            if live > peak:
                peak = live
                if max_fronts is not None and live > max_fronts:
                    raise _OverBudget(
                        BudgetExceeded(max_fronts, live, processed, t, horizon)
                    )

    return ArrivalMap(
        entries={t: Arrival(c, i) for t, (c, i) in sorted(entries.items())},
        horizon=horizon,
        pruned_count=pruned_count,
        lost_count=lost_count,
        pruned_intensity=pruned_int,
        lost_intensity=lost_int,
        fronts_processed=processed,
        peak_fronts=peak,
    )


def simulate(device: Device, horizon: int) -> ArrivalMap:
    """Propagate a unit signal through ``device`` up to ``horizon`` inclusive.

    Raises DeviceError if the device is malformed. There is no built-in
    limit on state growth; use :func:`resource_guard` for that.
    """
    return _propagate(device, horizon, None)


def resource_guard(
    device: Device, horizon: int, max_fronts: int
) -> Union[ArrivalMap, BudgetExceeded]:
    """Like :func:`simulate`, but give up once live fronts exceed ``max_fronts``.

    The bound is inclusive: a run whose peak equals ``max_fronts`` succeeds.
    """
    if max_fronts < 1:
        raise ValueError("max_fronts must be >= 1")
    try:
        return _propagate(device, horizon, max_fronts)
    except _OverBudget as exc:
        return exc.report


def read(arrivals: ArrivalMap, readout: ReadoutSpec) -> Decision:
    """Answer the decision question: did anything arrive inside the window?"""
    if readout.hi > arrivals.horizon:
        raise HorizonError(
            f"readout window [{readout.lo}, {readout.hi}] exceeds simulated "
            f"horizon {arrivals.horizon}"
        )
    hits = [t for t in arrivals.entries if readout.lo <= t <= readout.hi]
    multiplicity = sum(arrivals.entries[t].count for t in hits)
    intensity = sum((arrivals.entries[t].intensity for t in hits), ZERO)
    return Decision(
        Answer.YES if hits else Answer.NO, multiplicity, intensity, tuple(hits)
    )
