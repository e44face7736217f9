"""Partition a Hamiltonian, synthesize each commuting set and report statistics."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .diagonalize import METHODS
from .exponentiate import (
    CircuitStats,
    OrderingStrategy,
    build_direct_circuit,
    build_simulation_circuit,
    circuit_stats,
)
from .hamiltonian import HamiltonianFile
from .partition import partition_terms
from .pauli import Circuit

REPORT_VERSION = 1
PIPELINE_METHODS = METHODS + ("direct", "auto")
AUTO_CANDIDATES = ("cz", "greedy2", "direct")


class PartitionError(RuntimeError):
    def __init__(self, index: int, cause: Exception):
        super().__init__(f"partition {index}: {cause}")
        self.index = index
        self.cause = cause


def synthesize(terms, method: str, strategy: OrderingStrategy, *, block_size=None, controlled=False):
    """Circuit for one commuting set; ``auto`` keeps the lowest CX count."""
    if method == "direct":
        return build_direct_circuit(terms, strategy, controlled=controlled), method
    if method == "auto":
        best = None
        for cand in AUTO_CANDIDATES:
            c, _ = synthesize(terms, cand, strategy, block_size=block_size, controlled=controlled)
            cost = circuit_stats(c).cnot_count
            if best is None or cost < best[0]:
                best = (cost, c, cand)
        return best[1], best[2]
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {PIPELINE_METHODS}")
    c = build_simulation_circuit(terms, method, strategy, block_size=block_size, controlled=controlled)
    return c, method


def _sum_stats(stats: list[CircuitStats]) -> CircuitStats:
    return CircuitStats(
        sum(s.cnot_count for s in stats),
        sum(s.single_qubit_count for s in stats),
        sum(s.depth for s in stats),
        sum(s.cnot_exp for s in stats),
        sum(s.cz_count for s in stats),
    )


@dataclass
class RunReport:
    n: int
    n_terms: int
    partition_strategy: str
    method: str
    ordering: str
    trials: int
    seed: int
    partitions: list[dict] = field(default_factory=list)
    summary: dict = field(default_factory=dict)
    aggregate: CircuitStats = field(default_factory=CircuitStats)
    source: str | None = None

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "input": {"source": self.source, "n": self.n, "terms": self.n_terms},
            "provenance": {
                "partition": self.partition_strategy,
                "method": self.method,
                "ordering": self.ordering,
                "trials": self.trials,
                "seed": self.seed,
            },
            "summary": self.summary,
            "partitions": self.partitions,
            "aggregate": self.aggregate.as_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"


def run_pipeline(
    ham: HamiltonianFile,
    partition: str = "sequential",
    method: str = "auto",
    strategy: OrderingStrategy | None = None,
    *,
    block_size: int | None = None,
    controlled: bool = False,
) -> tuple[RunReport, list[Circuit]]:
    """Synthesize every commuting set of the partition.

    Aggregate counts and depth are sums over partitions, i.e. the circuits
    are meant to run one after another.
    """
    strategy = strategy or OrderingStrategy()
    if method not in PIPELINE_METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {PIPELINE_METHODS}")
    part = partition_terms(ham.terms, partition)
    circuits: list[Circuit] = []
    rows: list[dict] = []
    for idx, group in enumerate(part.select(ham.terms)):
        try:
            c, used = synthesize(group, method, strategy, block_size=block_size, controlled=controlled)
        except Exception as exc:
            raise PartitionError(idx, exc) from exc
        circuits.append(c)
        rows.append(
            {
                "index": idx,
                "size": len(group),
                "terms": list(part.sets[idx]),
                "method": used,
                "stats": circuit_stats(c).as_dict(),
            }
        )
    stats = [CircuitStats(**r["stats"]) for r in rows]
    report = RunReport(
        n=ham.n,
        n_terms=len(ham.terms),
        partition_strategy=partition,
        method=method,
        ordering=strategy.kind,
        trials=strategy.trials,
        seed=strategy.seed,
        partitions=rows,
        summary=part.summary(),
        aggregate=_sum_stats(stats),
        source=ham.source,
    )
    return report, circuits


def concatenate(circuits: list[Circuit]) -> Circuit:
    """Run the circuits one after another on a shared register."""
    if not circuits:
        return Circuit(1)
    n = max(c.n_qubits for c in circuits)
    out = Circuit(n, uses_ancilla=any(c.uses_ancilla for c in circuits))
    for c in circuits:
        if c.uses_ancilla and c.n_qubits != n:
            raise ValueError("circuits with an ancilla must share the register size")
        out.extend(c.gates)
        out.global_phase += c.global_phase
    return out
