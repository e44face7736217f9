"""Circuits for exponentiating sums of commuting Paulis via simultaneous diagonalization."""

from .diagonalize import METHODS, DiagonalTerm, DiagResult, diagonalize
from .exponentiate import (
    CircuitStats,
    OrderingStrategy,
    build_direct_circuit,
    build_exponentiation_circuit,
    build_simulation_circuit,
    circuit_stats,
    exp_cx_cost,
    order_terms,
    peephole_cancel,
)
from .hamiltonian import HamiltonianFile, parse_hamiltonian
from .partition import Partition, commutation_graph, partition_coloring, partition_sequential
from .pauli import Circuit, Gate, NotCommutingError, PauliTerm, Tableau
from .pipeline import RunReport, run_pipeline
from .qasm import emit_qasm, parse_qasm
from .sample import (
    CanonicalForm,
    canonical_equal,
    compose_basis,
    normalize_full_rank,
    sample_full_rank_binary,
    sample_generators,
)

__version__ = "0.1.0"

__all__ = [
    "METHODS",
    "CanonicalForm",
    "Circuit",
    "CircuitStats",
    "DiagResult",
    "DiagonalTerm",
    "Gate",
    "HamiltonianFile",
    "NotCommutingError",
    "OrderingStrategy",
    "Partition",
    "PauliTerm",
    "RunReport",
    "Tableau",
    "build_direct_circuit",
    "build_exponentiation_circuit",
    "build_simulation_circuit",
    "canonical_equal",
    "circuit_stats",
    "commutation_graph",
    "compose_basis",
    "diagonalize",
    "emit_qasm",
    "exp_cx_cost",
    "normalize_full_rank",
    "order_terms",
    "parse_hamiltonian",
    "parse_qasm",
    "partition_coloring",
    "partition_sequential",
    "peephole_cancel",
    "run_pipeline",
    "sample_full_rank_binary",
    "sample_generators",
]
