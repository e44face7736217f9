"""Command-line interface.

Exit codes: 0 success, 1 usage error, 2 data error, 3 internal invariant
violation.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .diagonalize import METHODS, diagonalize
from .exponentiate import ORDERINGS, OrderingStrategy, circuit_stats
from .hamiltonian import parse_hamiltonian
from .oracle import MAX_QUBITS, ancilla_block, circuit_to_unitary, equal_up_to_global_phase, exact_evolution
from .partition import STRATEGIES, partition_terms
from .pauli import NotCommutingError, Tableau
from .pipeline import PIPELINE_METHODS, PartitionError, concatenate, run_pipeline, synthesize
from .qasm import QasmError, emit_qasm, parse_qasm
from .sample import normalize_full_rank, sample_basis

EXIT_OK, EXIT_USAGE, EXIT_DATA, EXIT_INVARIANT = 0, 1, 2, 3


class UsageError(Exception):
    pass


class InvariantError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text()


def _load(path: str):
    return parse_hamiltonian(_read(path), None if path == "-" else path)


def _strategy(args) -> OrderingStrategy:
    return OrderingStrategy(args.order, trials=args.trials, seed=args.seed)


def _write(path: str | None, text: str):
    if path:
        Path(path).write_text(text)


def cmd_partition(args) -> int:
    ham = _load(args.file)
    part = partition_terms(ham.terms, args.partition)
    for s in part.sets:
        print(" ".join(ham.terms[i].letters for i in s))
    doc = {"strategy": part.strategy, "sets": [list(s) for s in part.sets], **part.summary()}
    _write(args.json_out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_diagonalize(args) -> int:
    ham = _load(args.file)
    if not ham.terms:
        return EXIT_OK
    t = Tableau.from_terms(ham.terms)
    res = diagonalize(t, args.method, angles=[p.coeff for p in ham.terms], block_size=args.block_size)
    for p, d in zip(ham.terms, res.diag):
        print(f"{p.letters} -> {d}")
    print(f"gates: {' '.join(str(g) for g in res.circuit)}")
    stats = circuit_stats(res.circuit)
    print(f"cnot={stats.cnot_count} single={stats.single_qubit_count} depth={stats.depth}")
    _write(args.qasm_out, emit_qasm(res.circuit))
    doc = {"method": res.method, "rank": res.rank, "diag": [str(d) for d in res.diag], "stats": stats.as_dict()}
    _write(args.json_out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_simulate(args, method: str | None = None) -> int:
    ham = _load(args.file)
    report, circuits = run_pipeline(
        ham,
        args.partition,
        method or args.method,
        _strategy(args),
        block_size=args.block_size,
        controlled=args.controlled,
    )
    agg = report.aggregate
    print(
        f"partitions={report.summary.get('count', 0)} cnot={agg.cnot_count} "
        f"single={agg.single_qubit_count} depth={agg.depth} cnot_exp={agg.cnot_exp}"
    )
    if circuits:
        _write(args.qasm_out, emit_qasm(concatenate(circuits)))
    _write(args.json_out, report.to_json())
    return EXIT_OK


def cmd_direct(args) -> int:
    return cmd_simulate(args, "direct")


def cmd_sample(args) -> int:
    t = sample_basis(args.n, args.m, np.random.default_rng(args.seed))
    lines = [f"1.0 {row}" for row in t.to_strings()]
    text = "\n".join(lines) + "\n"
    print(text, end="")
    _write(args.out, text)
    return EXIT_OK


def cmd_normalize(args) -> int:
    ham = _load(args.file)
    t = Tableau.from_terms(ham.terms)
    t.signs = np.array([int(p.coeff < 0) for p in ham.terms], dtype=np.uint8)
    form = normalize_full_rank(t)
    doc = {"z": [list(r) for r in form.z], "hadamard_set": sorted(form.hadamard_set), "signs": list(form.signs)}
    print(json.dumps(doc, sort_keys=True))
    _write(args.json_out, json.dumps(doc, indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def cmd_verify(args) -> int:
    ham = _load(args.file)
    if ham.n + 1 > MAX_QUBITS - 1:
        raise ValueError(f"verification is limited to {MAX_QUBITS - 2} qubits")
    part = partition_terms(ham.terms, args.partition)
    for idx, group in enumerate(part.select(ham.terms)):
        c, used = synthesize(group, args.method, _strategy(args), block_size=args.block_size)
        u = ancilla_block(circuit_to_unitary(c), ham.n)
        if not equal_up_to_global_phase(u, exact_evolution(group), args.tol):
            raise InvariantError(f"partition {idx} ({used}) does not match the exact evolution")
        print(f"partition {idx}: {used} ok")
    return EXIT_OK


def cmd_stats(args) -> int:
    c = parse_qasm(_read(args.file))
    stats = circuit_stats(c)
    print(json.dumps(stats.as_dict(), sort_keys=True))
    _write(args.json_out, json.dumps(stats.as_dict(), indent=2, sort_keys=True) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="simdiag", description="Simultaneous diagonalization circuits for commuting Paulis.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, method_choices=None, default_method=None):
        sp.add_argument("file", help="Hamiltonian text file, or - for stdin")
        sp.add_argument("--json-out")
        if method_choices:
            sp.add_argument("--method", choices=method_choices, default=default_method)
            sp.add_argument("--block-size", type=int)

    def synth(sp):
        sp.add_argument("--partition", choices=STRATEGIES, default="sequential")
        sp.add_argument("--order", choices=ORDERINGS, default="opt")
        sp.add_argument("--trials", type=int, default=100)
        sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("partition", help="split terms into commuting sets")
    common(sp)
    sp.add_argument("--partition", choices=STRATEGIES, default="sequential")
    sp.set_defaults(func=cmd_partition)

    sp = sub.add_parser("diagonalize", help="diagonalize one commuting set")
    common(sp, METHODS, "cz")
    sp.add_argument("--qasm-out")
    sp.set_defaults(func=cmd_diagonalize)

    for name, func, methods, default in (
        ("simulate", cmd_simulate, PIPELINE_METHODS, "auto"),
        ("direct", cmd_direct, None, None),
    ):
        sp = sub.add_parser(name, help=f"{name} time-evolution circuits for every partition")
        common(sp, methods, default)
        if methods is None:
            sp.add_argument("--block-size", type=int, help=argparse.SUPPRESS)
        synth(sp)
        sp.add_argument("--qasm-out")
        sp.add_argument("--controlled", action="store_true", help="condition every rotation on an extra qubit")
        sp.set_defaults(func=func)

    sp = sub.add_parser("sample", help="print a random basis of commuting Paulis")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--out")
    sp.set_defaults(func=cmd_sample)

    sp = sub.add_parser("normalize", help="canonical form of a full-rank commuting set")
    common(sp)
    sp.set_defaults(func=cmd_normalize)

    sp = sub.add_parser("verify", help="check circuits against dense matrices")
    common(sp, PIPELINE_METHODS, "auto")
    synth(sp)
    sp.add_argument("--tol", type=float, default=1e-9)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("stats", help="gate counts of a QASM file written by this tool")
    sp.add_argument("file")
    sp.add_argument("--json-out")
    sp.set_defaults(func=cmd_stats)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "trials", 1) < 1:
            raise UsageError("simdiag: error: --trials must be at least 1")
        if args.command == "sample" and (args.n < 1 or (args.m is not None and args.m < args.n)):
            raise UsageError("simdiag: error: need --n >= 1 and --m >= --n")
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    except InvariantError as exc:
        print(f"simdiag: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except (PartitionError, NotCommutingError, QasmError, ValueError, OSError) as exc:
        print(f"simdiag: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except AssertionError as exc:
        print(f"simdiag: invariant violated: {exc}", file=sys.stderr)
        return EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
