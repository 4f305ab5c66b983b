"""Physical figures for delay devices: cable lengths, signal decay, delay growth.

Everything stays exact (ints and Fractions) until a value is formatted for
humans. Signal speed and reading precision are parsed from their decimal
form, so ``3e8 * 1e-12`` is exactly ``3/10000`` rather than the nearest
float.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Union

from .compilers import compile_instance
from .device import Device
from .problems import (
    Diophantine,
    ExactCover,
    Hamiltonian,
    SubsetSum,
    TspDecision,
    UnboundedSubsetSum,
)
from .simulator import ArrivalMap

Number = Union[int, float, str, Fraction]


def exact(x: Number) -> Fraction:
    """Exact value of a decimal literal; floats are read through their repr."""
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def sci(x: Union[Fraction, float], digits: int = 6) -> str:
    """Scientific notation with ``digits`` significant digits."""
    return f"{float(x):.{digits - 1}e}"


@dataclass(frozen=True)
class PhysicalParams:
    """Signal speed in m/s and reading precision in seconds."""

    speed: Fraction
    precision: Fraction

    def __init__(self, speed: Number, precision: Number):
        v, p = exact(speed), exact(precision)
        if v <= 0 or p <= 0:
            raise ValueError("signal speed and precision must both be positive")
        object.__setattr__(self, "speed", v)
        object.__setattr__(self, "precision", p)


def min_cable_length(params: PhysicalParams) -> Fraction:
    """Shortest cable that delays a signal by one readable unit, in meters."""
    return params.speed * params.precision


def dynamic_range_bits(intensity: Fraction) -> int:
    """``ceil(log2(1 / intensity))`` for ``0 < intensity <= 1``, computed exactly."""
    if not 0 < intensity <= 1:
        raise ValueError(f"intensity must lie in (0, 1], got {intensity}")
    ratio_num, ratio_den = intensity.denominator, intensity.numerator
    bits = max((ratio_num // ratio_den).bit_length() - 1, 0)
    while (ratio_den << bits) < ratio_num:
        bits += 1
    return bits


@dataclass(frozen=True)
class AnalysisReport:
    unit_length: Fraction
    total_cable_length: Fraction
    max_delay: int
    num_arcs: int
    num_nodes: int
    min_arrival_intensity: Optional[Fraction]
    dynamic_range_bits: Optional[int]
    arrival_count_total: int


def device_report(device: Device, arrivals: ArrivalMap, params: PhysicalParams) -> AnalysisReport:
    unit = min_cable_length(params)
    if arrivals.entries:
        weakest = min(a.intensity for a in arrivals.entries.values())
        bits = dynamic_range_bits(weakest)
    else:
        weakest = bits = None
    return AnalysisReport(
        unit_length=unit,
        total_cable_length=sum(a.delay for a in device.arcs) * unit,
        max_delay=device.max_delay(),
        num_arcs=len(device.arcs),
        num_nodes=len(device.nodes),
        min_arrival_intensity=weakest,
        dynamic_range_bits=bits,
        arrival_count_total=arrivals.total_count,
    )


# Deterministic instance families used for growth classification. Sizes are
# the number of values / variables / cities / universe elements.
def family_instance(kind: str, size: int):
    if size < 1:
        raise ValueError("family sizes start at 1")
    if kind == "subset_sum":
        values = tuple(range(1, size + 1))
        return SubsetSum(values, sum(values) // 2)
    if kind == "unbounded_subset_sum":
        return UnboundedSubsetSum(tuple(range(1, size + 1)), 2 * size)
    if kind == "diophantine":
        return Diophantine(tuple(range(1, size + 1)), size)
    if kind == "hamiltonian":
        return Hamiltonian.complete(size)
    if kind == "exact_cover":
        sets = [{j} for j in range(size)] + [set(range(size))]
        return ExactCover(size, sets)
    if kind == "tsp_decision":
        if size < 2:
            raise ValueError("TSP family needs at least two cities")
        n = size
        unit = {(i, j): 1 for i in range(n) for j in range(n) if i != j}
        return TspDecision(n, unit, n - 1)
    raise ValueError(f"unknown problem kind {kind!r}")


FAMILY_KINDS = (
    "subset_sum",
    "unbounded_subset_sum",
    "diophantine",
    "hamiltonian",
    "exact_cover",
    "tsp_decision",
)


@dataclass(frozen=True)
class GrowthResult:
    kind: str
    sizes: List[int]
    max_delays: List[int]
    ratios: List[Fraction]
    verdict: str


def growth_classification(
    kind: str, sizes: Sequence[int], threshold: Number = 2
) -> GrowthResult:
    """Label how the largest delay grows across an instance family.

    This is a ratio heuristic, not an asymptotic proof: the family is called
    exponential when the last three successive ratios of max delay are
    nondecreasing and each exceeds ``threshold``.
    """
    sizes = list(sizes)
    if len(sizes) < 4:
        raise ValueError("need at least four sizes to classify growth")
    if sizes != sorted(set(sizes)):
        raise ValueError("sizes must be strictly ascending")
    limit = exact(threshold)
    delays = [compile_instance(family_instance(kind, s)).device.max_delay() for s in sizes]
    ratios = [Fraction(b, a) for a, b in zip(delays, delays[1:])]
    tail = ratios[-3:]
    exponential = all(r > limit for r in tail) and all(
        x <= y for x, y in zip(tail, tail[1:])
    )
    return GrowthResult(kind, sizes, delays, ratios, "exponential" if exponential else "polynomial")
