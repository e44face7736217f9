"""One test per acceptance criterion; each prints a single PASS/FAIL line."""

import itertools
import time

import numpy as np
from conftest import ACCEPTANCE_RESULTS, WORKED, greedy_tableau, random_commuting, tableau_terms
from scipy.stats import chisquare

from simdiag import gf2
from simdiag.diagonalize import METHODS, DiagonalTerm, clear_z_greedy, clear_z_pairwise, diagonalize, diagonalize_x
from simdiag.exponentiate import (
    OrderingStrategy,
    build_direct_circuit,
    build_exponentiation_circuit,
    build_simulation_circuit,
    choose_order,
    circuit_stats,
    exp_cx_cost,
)
from simdiag.oracle import ancilla_block, circuit_to_unitary, exact_evolution, gates_to_unitary, pauli_to_matrix
from simdiag.pauli import CX, CZ, Gate, PauliTerm, Tableau
from simdiag.sample import (
    _generator_from_choices,
    canonical_equal,
    compose_basis,
    count_generators,
    normalize_full_rank,
    sample_basis,
    sample_full_rank_binary,
    sample_generators,
)

ORDERINGS = ("base", "opt", "rnd")


def record(num: int, ok: bool, text: str):
    ACCEPTANCE_RESULTS.append((num, ok, text))
    print(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {text}")
    assert ok, text


def _stage_pattern(gates):
    out = []
    for g in gates:
        if not out or out[-1] != g.kind:
            out.append(g.kind)
    return out


def _follows(pattern, stages):
    it = iter(stages)
    return all(any(k == s for s in it) for k in pattern)


def _max_deviation(c, terms, n):
    u = ancilla_block(circuit_to_unitary(c), n)
    v = exact_evolution(terms)
    k = np.unravel_index(np.argmax(np.abs(v)), v.shape)
    phase = u[k] / v[k]
    return float(np.max(np.abs(u - phase / abs(phase) * v)))


def test_criterion_1_worked_example_counts():
    start = time.perf_counter()
    terms = [PauliTerm(p, a) for p, a in zip(WORKED, (0.1, 0.2, 0.3))]
    direct = circuit_stats(build_direct_circuit(terms, OrderingStrategy("opt")))
    best = min(
        (circuit_stats(build_simulation_circuit(terms, m, OrderingStrategy("opt"))) for m in METHODS),
        key=lambda s: s.cnot_count,
    )
    elapsed = time.perf_counter() - start
    diag_cx = best.cnot_count - best.cnot_exp
    ok = direct.cnot_count == 12 and best.cnot_count == 10 and best.cnot_exp == 6 and diag_cx == 4 and elapsed < 1
    record(
        1,
        ok,
        f"direct={direct.cnot_count} (want 12), best={best.cnot_count} = {best.cnot_exp} exp + {diag_cx} diag "
        f"(want 10 = 6 + 4), {elapsed:.3f}s",
    )


def test_criterion_2_greedy_instance():
    two, single = {}, {}
    for name, fn in (
        ("pairwise", lambda t: clear_z_pairwise(t, 6)),
        ("greedy1", lambda t: clear_z_greedy(t, 6, "greedy1")),
        ("greedy2", lambda t: clear_z_greedy(t, 6, "greedy2")),
    ):
        gates = fn(greedy_tableau())
        two[name] = sum(g.kind in (CX, CZ) for g in gates)
        single[name] = sum(len(g.qubits) == 1 for g in gates)
    ok = two == {"pairwise": 10, "greedy1": 7, "greedy2": 6} and all(v == 6 for v in single.values())
    record(2, ok, f"two-qubit {two} (want 10/7/6), single-qubit {single} (want 6 each)")


def test_criterion_3_oracle_equivalence():
    start = time.perf_counter()
    rng = np.random.default_rng(3)
    worst, checked = 0.0, 0
    for trial in range(200):
        n = int(rng.integers(1, 7))
        m = int(rng.integers(1, 13))
        t = random_commuting(rng, n, m)
        terms = tableau_terms(t, rng.uniform(-np.pi, np.pi, size=m))
        for kind in ORDERINGS:
            strategy = OrderingStrategy(kind, seed=trial)
            for method in METHODS:
                c = build_simulation_circuit(terms, method, strategy)
                worst = max(worst, _max_deviation(c, terms, n))
                checked += 1
            worst = max(worst, _max_deviation(build_direct_circuit(terms, strategy), terms, n))
            checked += 1
    elapsed = time.perf_counter() - start
    record(3, worst < 1e-9 and elapsed < 120, f"{checked} circuits, max deviation {worst:.2e}, {elapsed:.1f}s")


def test_criterion_4_structure_properties():
    rng = np.random.default_rng(4)
    sym = cx_free = cz_stages = cnot_stages = True
    for _ in range(500):
        n = int(rng.integers(1, 9))
        t = random_commuting(rng, n, int(rng.integers(1, 13)))
        _, _, k = diagonalize_x(t)
        sym &= bool(np.array_equal(t.z[:k, :k], t.z[:k, :k].T))
    for _ in range(200):
        n = int(rng.integers(2, 9))
        basis = sample_basis(n, n + int(rng.integers(0, 4)), rng)
        gates, _, k = diagonalize_x(basis.copy())
        cx_free &= k == n and not any(g.kind == CX for g in gates)
        cz_stages &= _follows(_stage_pattern(diagonalize(basis, "cz").circuit.gates), ["H", "CZ", "S", "H"])
        cnot_stages &= _follows(_stage_pattern(diagonalize(basis, "cnot").circuit.gates), ["H", "S", "CX", "S", "H"])
    ok = sym and cx_free and cz_stages and cnot_stages
    record(
        4,
        ok,
        f"(a) symmetric Z {sym}, (b) no CX in X stage {cx_free}, (c) H-CZ-S-H {cz_stages}, (d) H-S-CX-S-H {cnot_stages}",
    )


def test_criterion_5_sampler():
    start = time.perf_counter()
    counts_ok, pvalues = True, {}
    enumerated = {}
    for n in (1, 2, 3):
        choices = itertools.product(*[range(2 ** (n - i) + 1) for i in range(n)])
        keys = {tuple(_generator_from_choices(n, c).to_strings(signed=False)) for c in choices}
        enumerated[n] = len(keys)
        counts_ok &= len(keys) == count_generators(n)
        rng = np.random.default_rng(50 + n)
        hist: dict = {}
        for _ in range(100_000):
            key = tuple(sample_generators(n, rng).to_strings(signed=False))
            hist[key] = hist.get(key, 0) + 1
        counts_ok &= len(hist) == len(keys) and set(hist) <= keys
        pvalues[n] = float(chisquare(list(hist.values())).pvalue)
    rng = np.random.default_rng(55)
    hits = sum(gf2.rank(rng.integers(0, 2, size=(20, 20), dtype=np.uint8)) == 20 for _ in range(10_000))
    rate = hits / 10_000
    elapsed = time.perf_counter() - start
    ok = (
        counts_ok
        and enumerated == {1: 3, 2: 15, 3: 135}
        and all(p > 0.01 for p in pvalues.values())
        and abs(rate - 0.289) <= 0.02
        and elapsed < 60
    )
    ps = ", ".join(f"n={n} p={p:.3f}" for n, p in pvalues.items())
    record(5, ok, f"outcomes {enumerated}, chi-square {ps}, full-rank rate {rate:.4f}, {elapsed:.1f}s")


def test_criterion_6_canonicalization():
    rng = np.random.default_rng(6)
    same = idem = 0
    for _ in range(200):
        n = int(rng.integers(1, 11))
        gen = sample_generators(n, rng)
        b, _ = sample_full_rank_binary(n + int(rng.integers(0, 5)), n, rng)
        composed = compose_basis(gen, b, rng, randomize_signs=True)
        same += canonical_equal(gen, composed)
        form = normalize_full_rank(composed)
        idem += normalize_full_rank(form.to_tableau()).matches(form, with_signs=True)
    record(6, same == idem == 200, f"group preserved {same}/200, idempotent {idem}/200")


def _signed_paulis(n):
    for letters in itertools.product("IXYZ", repeat=n):
        for sign in (0, 1):
            yield "".join(letters), sign


def test_criterion_7_gate_sign_rules():
    cases = [Gate(k, (q,)) for k in ("H", "S") for q in (0, 1)]
    cases += [Gate(k, qs) for k in (CX, CZ) for qs in ((0, 1), (1, 0))]
    checked = mismatches = 0
    for n in (1, 2):
        for g in cases:
            if max(g.qubits) >= n:
                continue
            u = gates_to_unitary([g], n)
            for letters, sign in _signed_paulis(n):
                t = Tableau.from_strings([("-" if sign else "") + letters])
                t.apply_gate(g)
                want = u @ pauli_to_matrix(letters, sign) @ u.conj().T
                got = pauli_to_matrix(t.row_string(0, signed=False), int(t.signs[0]))
                mismatches += not np.allclose(got, want, atol=1e-12)
                checked += 1
    record(7, mismatches == 0, f"{checked} conjugations checked, {mismatches} mismatches")


def test_criterion_8_ordering():
    rng = np.random.default_rng(8)
    cost_eq = opt_ok = rnd_ok = 0
    for trial in range(500):
        n = int(rng.integers(1, 9))
        m = int(rng.integers(1, 16))
        masks = rng.integers(0, 2, size=(m, n))
        signs = rng.integers(0, 2, size=m)
        terms = [DiagonalTerm(tuple(int(v) for v in row), int(s), 0.1) for row, s in zip(masks, signs)]
        cost_eq += exp_cx_cost(terms) == build_exponentiation_circuit(terms).count(CX)
        base = exp_cx_cost(choose_order(terms, OrderingStrategy("base")))
        opt = exp_cx_cost(choose_order(terms, OrderingStrategy("opt")))
        rnd = exp_cx_cost(choose_order(terms, OrderingStrategy("rnd", trials=100, seed=trial)))
        opt_ok += opt <= base
        rnd_ok += rnd <= opt
    ok = cost_eq == opt_ok == rnd_ok == 500
    record(8, ok, f"cost formula exact {cost_eq}/500, opt<=base {opt_ok}/500, rnd<=opt {rnd_ok}/500")


def test_criterion_9_statistical_trend():
    start = time.perf_counter()
    rng = np.random.default_rng(9)
    strategy = OrderingStrategy("opt")
    totals = {m: 0 for m in METHODS + ("direct",)}
    chain_ok = 0
    for _ in range(20):
        t = sample_basis(15, 15, rng)
        terms = tableau_terms(t, rng.uniform(-1, 1, size=15))
        counts = {m: circuit_stats(build_simulation_circuit(terms, m, strategy)).cnot_count for m in METHODS}
        counts["direct"] = circuit_stats(build_direct_circuit(terms, strategy)).cnot_count
        for m, v in counts.items():
            totals[m] += v
        chain_ok += counts["cnot-best"] <= counts["cnot-log2"] <= counts["cnot"]
    elapsed = time.perf_counter() - start
    means = {m: v / 20 for m, v in totals.items()}
    below = all(means[m] < means["direct"] for m in METHODS)
    ok = below and chain_ok == 20 and elapsed < 120
    shown = ", ".join(f"{m} {v:.1f}" for m, v in means.items())
    record(9, ok, f"mean cnot: {shown}; best<=log2<=cnot on {chain_ok}/20, {elapsed:.1f}s")
