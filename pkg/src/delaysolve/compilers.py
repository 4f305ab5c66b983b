"""Compile problem instances into delay devices with a readout window.

Each compiler returns a device whose destination sees a signal inside the
readout window exactly when the instance is a YES instance, and the number
of walks landing there equals the solution count under the semantics noted
in ``CompilationResult.semantics``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict

from .device import Device, DeviceBuilder, ReadoutSpec
from .problems import (
    Diophantine,
    ExactCover,
    Hamiltonian,
    InstanceError,
    ProblemInstance,
    SubsetSum,
    TspDecision,
    UnboundedSubsetSum,
)


class DegenerateInstance(InstanceError):
    """The instance is trivially decided and has no meaningful device."""

    def __init__(self, message, answer):
        super().__init__(message)
        self.answer = answer


@dataclass(frozen=True)
class CompilationResult:
    device: Device
    readout: ReadoutSpec
    constants: Dict[str, int] = field(default_factory=dict)
    semantics: str = ""


def _check_k(k):
    if not isinstance(k, int) or k < 1:
        raise ValueError(f"cable constant k must be a positive integer, got {k!r}")


def compile_subset_sum(inst: SubsetSum, k: int = 1) -> CompilationResult:
    _check_k(k)
    n = len(inst.values)
    b = DeviceBuilder()
    chain = [b.node("start")] + [b.node(f"after a{i}") for i in range(1, n)] + [b.node("destination")]
    for i, a in enumerate(inst.values):
        b.arc(chain[i], chain[i + 1], k)
        b.arc(chain[i], chain[i + 1], a + k)
    moment = inst.target + n * k
    return CompilationResult(
        device=b.build(chain[0], chain[-1]),
        readout=ReadoutSpec.point(moment, f"B + n*k = {inst.target} + {n}*{k}"),
        constants={"k": k, "B": inst.target, "n": n},
        semantics="subsets (by index) of the values summing to the target",
    )


def compile_unbounded_subset_sum(inst: UnboundedSubsetSum) -> CompilationResult:
    """Hub with one self-loop per value.

    Loop ``i`` costs ``a_i * F + 1`` with ``F = B + 1``. A signal that takes
    loops summing to ``S`` with ``p`` picks arrives at ``2 + F*S + p``; since
    ``1 <= p <= S``, the window ``[2 + F*B + 1, 2 + F*B + B]`` is hit only
    when ``S == B``.
    """
    B = inst.target
    if B == 0:
        raise DegenerateInstance("target 0 is met by the empty selection", answer=True)
    F = B + 1
    b = DeviceBuilder()
    start, hub, dest = b.node("start"), b.node("hub"), b.node("destination")
    b.arc(start, hub, 1)
    for a in inst.values:
        b.arc(hub, hub, a * F + 1)
    b.arc(hub, dest, 1)
    base = 2 + B * F
    return CompilationResult(
        device=b.build(start, dest),
        readout=ReadoutSpec(base + 1, base + B, f"2 + F*B + [1, B] with F = {F}"),
        constants={"F": F, "B": B},
        semantics="ordered sequences of values (by index) summing to the target",
    )


def compile_diophantine(inst: Diophantine, k: int = 1) -> CompilationResult:
    """One looping node per variable, chained by ``k``-delay cables.

    The signal is injected at the first loop node. With ``require_positive``
    each exit cable also carries one mandatory pass of its coefficient, so
    every variable is counted at least once.
    """
    _check_k(k)
    m = len(inst.coefficients)
    b = DeviceBuilder()
    loops = [b.node(f"x{i + 1}") for i in range(m)]
    dest = b.node("destination")
    for i, a in enumerate(inst.coefficients):
        b.arc(loops[i], loops[i], a)
        nxt = loops[i + 1] if i + 1 < m else dest
        b.arc(loops[i], nxt, k + (a if inst.require_positive else 0))
    moment = inst.constant + m * k
    return CompilationResult(
        device=b.build(loops[0], dest),
        readout=ReadoutSpec.point(moment, f"c + m*k = {inst.constant} + {m}*{k}"),
        constants={"k": k, "c": inst.constant, "m": m},
        semantics=(
            "tuples of positive integers solving the equation"
            if inst.require_positive
            else "tuples of nonnegative integers solving the equation"
        ),
    )


def _hamiltonian_layout(n, arcs, scale, arc_weight):
    """Shared city graph for the Hamiltonian and TSP devices.

    City ``i`` delays by ``(n+1)**i * scale``, every arc by
    ``(n+1)**n * scale`` plus ``arc_weight(i, j)`` between cities.
    """
    base = n + 1
    A = base ** n
    b = DeviceBuilder()
    start = b.node("start")
    cities = [b.node(f"city {i}", internal_delay=base ** i * scale) for i in range(n)]
    dest = b.node("destination")
    for c in cities:
        b.arc(start, c, A * scale)
        b.arc(c, dest, A * scale)
    for i, j in sorted(arcs):
        b.arc(cities[i], cities[j], A * scale + arc_weight(i, j))
    H = sum(base ** i for i in range(n)) + (n + 1) * A
    return b.build(start, dest), base, A, H


def compile_hamiltonian(inst: Hamiltonian) -> CompilationResult:
    """Base-(n+1) node delays plus a dominant uniform arc delay.

    A walk with ``L`` city visits arrives at ``(L+1)*A + sum(c_i * b**i)``
    where ``c_i`` counts visits to city ``i``. The digit sum is below ``A``
    whenever ``L <= n`` and every ``c_i < b``, so the target is reached only
    when ``L == n`` and all digits are 1.
    """
    device, base, A, H = _hamiltonian_layout(inst.n, inst.arcs, 1, lambda i, j: 0)
    return CompilationResult(
        device=device,
        readout=ReadoutSpec.point(H, f"sum b^i + (n+1)*A with b = {base}, A = {A}"),
        constants={"b": base, "A": A, "H": H},
        semantics="directed Hamiltonian paths (any start city, any end city)",
    )


def compile_exact_cover(inst: ExactCover, k: int = 1) -> CompilationResult:
    _check_k(k)
    m = len(inst.collection)
    base = m + 1
    weight = [base ** j for j in range(inst.universe_size)]
    b = DeviceBuilder()
    chain = [b.node("start")] + [b.node(f"after C{i}") for i in range(1, m)] + [b.node("destination")]
    for i, subset in enumerate(inst.collection):
        b.arc(chain[i], chain[i + 1], k)
        b.arc(chain[i], chain[i + 1], sum(weight[j] for j in subset) + k)
    moment = sum(weight) + m * k
    return CompilationResult(
        device=b.build(chain[0], chain[-1]),
        readout=ReadoutSpec.point(moment, f"sum b^j + m*k with b = {base}"),
        constants={"k": k, "b": base},
        semantics="subcollections (by index) covering every element exactly once",
    )


def compile_tsp(inst: TspDecision) -> CompilationResult:
    """Hamiltonian device scaled by ``Q = W + 1`` with arc weights as residue.

    ``W`` is the sum of all arc weights, so a Hamiltonian path's weight is
    always below ``Q`` and lands in ``[H*Q, H*Q + W]``. Any other walk is
    at least ``n`` whole multiples of ``Q`` away from ``H*Q`` while carrying
    less than ``n*Q`` of arc weight, so it cannot reach the window.
    """
    W = inst.total_weight
    Q = W + 1
    K = min(inst.bound, W)
    device, base, A, H = _hamiltonian_layout(
        inst.n, inst.weights, Q, lambda i, j: inst.weights[(i, j)]
    )
    return CompilationResult(
        device=device,
        readout=ReadoutSpec(H * Q, H * Q + K, f"H*Q + [0, K] with H = {H}, Q = {Q}"),
        constants={"b": base, "A": A, "H": H, "Q": Q, "W": W, "K": K, "K_requested": inst.bound},
        semantics="directed Hamiltonian paths of total weight <= K",
    )


def compile_instance(inst: ProblemInstance, k: int = 1) -> CompilationResult:
    """Dispatch on instance type; ``k`` is ignored by designs without it."""
    if isinstance(inst, SubsetSum):
        return compile_subset_sum(inst, k)
    if isinstance(inst, UnboundedSubsetSum):
        return compile_unbounded_subset_sum(inst)
    if isinstance(inst, Diophantine):
        return compile_diophantine(inst, k)
    if isinstance(inst, Hamiltonian):
        return compile_hamiltonian(inst)
    if isinstance(inst, ExactCover):
        return compile_exact_cover(inst, k)
    if isinstance(inst, TspDecision):
        return compile_tsp(inst)
    raise TypeError(f"not a problem instance: {inst!r}")


def horizon_for(result: CompilationResult) -> int:
    return result.readout.hi
