"""Problem instances accepted by the compilers and the oracles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, FrozenSet, Mapping, Tuple, Union


class InstanceError(ValueError):
    """An instance violates its own invariants."""


def _positive_ints(name, xs):
    xs = tuple(xs)
    for x in xs:
        if not isinstance(x, int) or isinstance(x, bool) or x < 1:
            raise InstanceError(f"{name} must be positive integers, got {x!r}")
    return xs


def _nonneg(name, x):
    if not isinstance(x, int) or isinstance(x, bool) or x < 0:
        raise InstanceError(f"{name} must be a nonnegative integer, got {x!r}")


def _check_arcs(n, arcs):
    for i, j in arcs:
        if not (0 <= i < n and 0 <= j < n):
            raise InstanceError(f"arc ({i}, {j}) outside cities 0..{n - 1}")
        if i == j:
            raise InstanceError(f"self-loop at city {i}; adjacency must be irreflexive")


@dataclass(frozen=True)
class SubsetSum:
    values: Tuple[int, ...]
    target: int
    kind = "subset_sum"

    def __post_init__(self):
        object.__setattr__(self, "values", _positive_ints("values", self.values))
        if not self.values:
            raise InstanceError("subset sum needs at least one value")
        _nonneg("target", self.target)


@dataclass(frozen=True)
class UnboundedSubsetSum:
    values: Tuple[int, ...]
    target: int
    kind = "unbounded_subset_sum"

    def __post_init__(self):
        object.__setattr__(self, "values", _positive_ints("values", self.values))
        if not self.values:
            raise InstanceError("unbounded subset sum needs at least one value")
        _nonneg("target", self.target)


@dataclass(frozen=True)
class Diophantine:
    """``sum(a_i * x_i) == constant`` over nonnegative (or positive) x_i."""

    coefficients: Tuple[int, ...]
    constant: int
    require_positive: bool = False
    kind = "diophantine"

    def __post_init__(self):
        object.__setattr__(
            self, "coefficients", _positive_ints("coefficients", self.coefficients)
        )
        if not self.coefficients:
            raise InstanceError("need at least one variable")
        _nonneg("constant", self.constant)


@dataclass(frozen=True)
class Hamiltonian:
    """Directed graph on cities ``0..n-1``; ``arcs`` holds ordered pairs."""

    n: int
    arcs: FrozenSet[Tuple[int, int]]
    kind = "hamiltonian"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InstanceError(f"need at least one city, got n={self.n!r}")
        arcs = frozenset((int(i), int(j)) for i, j in self.arcs)
        _check_arcs(self.n, arcs)
        object.__setattr__(self, "arcs", arcs)

    @classmethod
    def undirected(cls, n, edges):
        return cls(n, frozenset(edges) | frozenset((j, i) for i, j in edges))

    @classmethod
    def complete(cls, n):
        return cls(n, frozenset((i, j) for i in range(n) for j in range(n) if i != j))


@dataclass(frozen=True)
class ExactCover:
    universe_size: int
    collection: Tuple[FrozenSet[int], ...]
    kind = "exact_cover"

    def __post_init__(self):
        _nonneg("universe_size", self.universe_size)
        sets = tuple(frozenset(c) for c in self.collection)
        if not sets:
            raise InstanceError("collection must hold at least one set")
        for c in sets:
            if not c:
                raise InstanceError("every set in the collection must be nonempty")
            bad = [x for x in c if not (0 <= x < self.universe_size)]
            if bad:
                raise InstanceError(f"elements {sorted(bad)} outside universe")
        object.__setattr__(self, "collection", sets)


@dataclass(frozen=True)
class TspDecision:
    """Is there a directed Hamiltonian path of total weight <= bound?

    ``weights`` maps each directed arc ``(i, j)`` to its weight; missing
    pairs are not connected.
    """

    n: int
    weights: Mapping[Tuple[int, int], int]
    bound: int
    kind = "tsp_decision"

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 2:
            raise InstanceError(f"TSP needs at least two cities, got n={self.n!r}")
        weights = {(int(i), int(j)): w for (i, j), w in sorted(self.weights.items())}
        _check_arcs(self.n, weights)
        for arc, w in weights.items():
            _nonneg(f"weight of {arc}", w)
        _nonneg("bound", self.bound)
        object.__setattr__(self, "weights", weights)

    def __hash__(self):
        return hash((self.n, tuple(self.weights.items()), self.bound))

    @property
    def total_weight(self) -> int:
        return sum(self.weights.values())

    @classmethod
    def symmetric(cls, n, edge_weights: Dict[Tuple[int, int], int], bound):
        weights = {}
        for (i, j), w in edge_weights.items():
            weights[(i, j)] = w
            weights[(j, i)] = w
        return cls(n, weights, bound)


ProblemInstance = Union[
    SubsetSum, UnboundedSubsetSum, Diophantine, Hamiltonian, ExactCover, TspDecision
]

PROBLEM_TYPES = {
    cls.kind: cls
    for cls in (SubsetSum, UnboundedSubsetSum, Diophantine, Hamiltonian, ExactCover, TspDecision)
}
