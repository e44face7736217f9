import json

import numpy as np
import pytest
from conftest import WORKED, random_commuting, tableau_terms
from hypothesis import given, settings
from hypothesis import strategies as st

from simdiag.exponentiate import OrderingStrategy, build_simulation_circuit, circuit_stats
from simdiag.hamiltonian import HamiltonianParseError, parse_hamiltonian
from simdiag.oracle import circuit_to_unitary, equal_up_to_global_phase
from simdiag.pauli import Circuit, Gate, PauliTerm, Tableau
from simdiag.pipeline import PIPELINE_METHODS, REPORT_VERSION, concatenate, run_pipeline
from simdiag.qasm import QasmError, emit_qasm, parse_qasm

WORKED_TEXT = "0.1 IXX\n0.2 ZYZ\n0.3 XXI\n"


def test_parse_two_terms():
    h = parse_hamiltonian("0.5 XXIZ\n-0.25 ZZII")
    assert h.n == 4 and [(t.coeff, t.letters) for t in h.terms] == [(0.5, "XXIZ"), (-0.25, "ZZII")]


def test_parse_length_mismatch_line():
    with pytest.raises(HamiltonianParseError) as exc:
        parse_hamiltonian("0.1 XY\n0.2 XYZ")
    assert exc.value.line == 2


def test_parse_signed_string():
    t = parse_hamiltonian("1.0 -ZYXZ").terms[0]
    assert t.coeff == -1.0 and t.letters == "ZYXZ"


def test_parse_comments_and_case():
    h = parse_hamiltonian("# header\n\n 0.5 xz  # trailing\n", "mol.txt")
    assert h.terms[0].letters == "XZ" and h.metadata["name"] == "mol"


@pytest.mark.parametrize(
    "text,line",
    [("abc XX", 1), ("0.1 XX\n0.2 XQ", 2), ("0.1", 1), ("nan XX", 1), ("0.1 XX extra", 1)],
)
def test_parse_errors(text, line):
    with pytest.raises(HamiltonianParseError) as exc:
        parse_hamiltonian(text)
    assert exc.value.line == line and f"line {line}" in str(exc.value)


def test_parse_empty():
    h = parse_hamiltonian("# nothing\n")
    assert h.n == 0 and h.terms == []


def test_text_round_trip():
    h = parse_hamiltonian("0.5 XXIZ\n-0.25 ZZII\n")
    assert parse_hamiltonian(h.to_text()).terms == h.terms


def test_qasm_single_h():
    text = emit_qasm(Circuit(1, [Gate("H", (0,))]))
    assert text.startswith("OPENQASM 2.0;\n")
    assert text.count("h q[0];") == 1


def test_qasm_rz_convention():
    text = emit_qasm(Circuit(1, [Gate("RZ", (0,), 0.3)]))
    assert "rz(-0.6) q[0];" in text
    assert "// global phase: 0.3" in text


def test_qasm_rz_phase_algebra():
    theta = 0.3
    std_rz = np.diag([1, np.exp(1j * -2 * theta)])
    internal = circuit_to_unitary(Circuit(1, [Gate("RZ", (0,), theta)]))
    assert np.allclose(internal, np.exp(1j * theta) * std_rz)


def test_qasm_worked_cx_lines():
    terms = [PauliTerm(p, a) for p, a in zip(WORKED, (0.1, 0.2, 0.3))]
    c = build_simulation_circuit(terms, "greedy2", OrderingStrategy("opt"))
    text = emit_qasm(c)
    assert sum(1 for ln in text.splitlines() if ln.startswith("cx ")) == 10


def test_qasm_byte_stable():
    c = Circuit(2, [Gate("H", (0,)), Gate("CX", (0, 1)), Gate("RZ", (1,), 0.1)])
    assert emit_qasm(c) == emit_qasm(c.copy())


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 4), st.integers(1, 6), st.integers(0, 2**32 - 1), st.booleans())
def test_qasm_round_trip(n, m, seed, controlled):
    rng = np.random.default_rng(seed)
    terms = tableau_terms(random_commuting(rng, n, m), rng.uniform(-1, 1, size=m))
    c = build_simulation_circuit(terms, "cz", controlled=controlled)
    back = parse_qasm(emit_qasm(c))
    assert back.n_qubits == c.n_qubits and back.uses_ancilla == c.uses_ancilla
    assert [(g.kind, g.qubits) for g in back] == [(g.kind, g.qubits) for g in c]
    assert equal_up_to_global_phase(circuit_to_unitary(back), circuit_to_unitary(c), 1e-12)
    assert circuit_stats(back) == circuit_stats(c)


@pytest.mark.parametrize(
    "text",
    [
        "qreg q[1];\nh q[0];\n",
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nh q[0];\n',
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nfoo q[0];\n',
        'OPENQASM 2.0;\ninclude "qelib1.inc";\nqreg q[1];\nh q[3];\n',
    ],
)
def test_qasm_parse_rejects(text):
    with pytest.raises(QasmError):
        parse_qasm(text)


def test_pipeline_worked_ten():
    report, circuits = run_pipeline(parse_hamiltonian(WORKED_TEXT), "sequential", "auto", OrderingStrategy("opt"))
    assert report.summary["count"] == 1
    assert report.aggregate.cnot_count == 10
    assert report.partitions[0]["method"] == "greedy2"


def test_pipeline_cz_worked_twelve():
    report, _ = run_pipeline(parse_hamiltonian(WORKED_TEXT), "sequential", "cz", OrderingStrategy("opt"))
    assert report.aggregate.cnot_count == 12


def test_pipeline_empty():
    report, circuits = run_pipeline(parse_hamiltonian(""), "sequential", "auto")
    assert circuits == [] and report.summary["count"] == 0 and report.aggregate.cnot_count == 0


def test_pipeline_anticommuting_partitions():
    ham = parse_hamiltonian("0.1 XX\n0.2 ZI\n0.3 YY\n0.4 IZ\n")
    report, circuits = run_pipeline(ham, "sequential", "cz")
    assert report.summary["count"] >= 2
    for row in report.partitions:
        group = [ham.terms[i] for i in row["terms"]]
        assert Tableau.from_terms(group).is_commuting()


@pytest.mark.parametrize("method", PIPELINE_METHODS)
def test_pipeline_aggregate_is_sum(method):
    ham = parse_hamiltonian("0.1 XXI\n0.2 ZIZ\n0.3 YYX\n0.4 IZZ\n-0.5 XIX\n")
    report, circuits = run_pipeline(ham, "largest_first", method, OrderingStrategy("rnd", trials=5, seed=4))
    agg = report.aggregate.as_dict()
    for key, total in agg.items():
        assert total == sum(row["stats"][key] for row in report.partitions)
    assert report.aggregate.depth == sum(circuit_stats(c).depth for c in circuits)


def test_report_deterministic():
    ham = parse_hamiltonian("0.1 XXI\n0.2 ZIZ\n0.3 YYX\n0.4 IZZ\n")
    a = run_pipeline(ham, "independent_set", "auto", OrderingStrategy("rnd", seed=9))[0].to_json()
    b = run_pipeline(ham, "independent_set", "auto", OrderingStrategy("rnd", seed=9))[0].to_json()
    assert a == b
    doc = json.loads(a)
    assert doc["version"] == REPORT_VERSION and doc["provenance"]["seed"] == 9


def test_concatenate():
    a = Circuit(2, [Gate("H", (0,))], global_phase=0.1)
    b = Circuit(2, [Gate("CX", (0, 1))], global_phase=0.2)
    c = concatenate([a, b])
    assert [str(g) for g in c] == ["H[0]", "CX[0,1]"] and c.global_phase == pytest.approx(0.3)
