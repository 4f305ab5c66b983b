"""Simulate delay-signal devices that decide NP-complete problems."""

from .compilers import CompilationResult, compile_instance, horizon_for
from .device import Arc, Device, Node, ReadoutSpec, out_degree, validate
from .oracles import OracleResult, solve_oracle
from .problems import (
    Diophantine,
    ExactCover,
    Hamiltonian,
    SubsetSum,
    TspDecision,
    UnboundedSubsetSum,
)
from .simulator import Answer, ArrivalMap, Decision, read, resource_guard, simulate

__version__ = "0.1.0"
