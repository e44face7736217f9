"""Time-evolution circuits for commuting Pauli sets.

Two constructions are provided.  The diagonalization route conjugates a
product of diagonal exponentials by a Clifford circuit; the direct route
exponentiates each Pauli separately.  Both keep the parity of the
exponentiated operator in one ancilla, which is always the last qubit.

The rotation convention is ``RZ(theta) = diag(exp(i theta), exp(-i theta))``
so that ``exp(i theta Z...Z)`` is a CX ladder around a single ``RZ(theta)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .diagonalize import DiagonalTerm, diagonalize
from .pauli import (
    CX,
    CZ,
    RZ,
    SDG,
    Circuit,
    Gate,
    H,
    NotCommutingError,
    PauliTerm,
    S,
    Tableau,
    X,
)

ORDERINGS = ("base", "opt", "rnd")
DIAGONAL_KINDS = (S, SDG, RZ, CZ)


@dataclass(frozen=True)
class OrderingStrategy:
    """How to order exponentials: keep input order, sort, or sort with random qubit orders.

    ``qubit_order`` is only used by ``opt`` (``None`` means canonical);
    ``trials`` and ``seed`` only by ``rnd``.
    """

    kind: str = "opt"
    qubit_order: tuple[int, ...] | None = None
    trials: int = 100
    seed: int = 0

    def __post_init__(self):
        if self.kind not in ORDERINGS:
            raise ValueError(f"unknown ordering {self.kind!r}; choose from {ORDERINGS}")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.qubit_order is not None:
            order = tuple(int(q) for q in self.qubit_order)
            if sorted(order) != list(range(len(order))):
                raise ValueError(f"qubit_order is not a permutation: {order}")
            object.__setattr__(self, "qubit_order", order)


@dataclass(frozen=True)
class CircuitStats:
    cnot_count: int = 0
    single_qubit_count: int = 0
    depth: int = 0
    cnot_exp: int = 0
    cz_count: int = 0

    def as_dict(self) -> dict:
        return {
            "cnot_count": self.cnot_count,
            "single_qubit_count": self.single_qubit_count,
            "depth": self.depth,
            "cnot_exp": self.cnot_exp,
            "cz_count": self.cz_count,
        }


def _check_permutation(order: Sequence[int], n: int) -> list[int]:
    order = [int(q) for q in order]
    if sorted(order) != list(range(n)):
        raise ValueError(f"invalid qubit order {order} for {n} qubits")
    return order


def order_terms(terms: Sequence[DiagonalTerm], qubit_order: Sequence[int] | None = None) -> list[DiagonalTerm]:
    """Sort diagonal terms so consecutive Z masks differ on few qubits.

    The first qubit of ``qubit_order`` splits the terms into an I group
    followed by a Z group.  Each group is split on the next qubit, I first
    inside an I group and Z first inside a Z group, and so on.  This is the
    reflected binary order; the sort is stable.
    """
    terms = list(terms)
    if not terms:
        return []
    n = terms[0].n
    if any(t.n != n for t in terms):
        raise ValueError("all terms must act on the same number of qubits")
    order = list(range(n)) if qubit_order is None else _check_permutation(qubit_order, n)

    def rank(t: DiagonalTerm):
        key, parity = [], 0
        for q in order:
            key.append(t.zmask[q] ^ parity)
            parity ^= t.zmask[q]
        return key

    return sorted(terms, key=rank)


def _nontrivial(terms: Sequence[DiagonalTerm]) -> list[tuple[int, ...]]:
    return [t.zmask for t in terms if any(t.zmask)]


def exp_cx_cost(terms: Sequence[DiagonalTerm]) -> int:
    """CX count of the cancelled ancilla ladder for ``terms`` in this order.

    All-identity masks need no gates and are skipped.
    """
    masks = [np.array(m, dtype=np.uint8) for m in _nontrivial(terms)]
    if not masks:
        return 0
    cost = int(masks[0].sum()) + int(masks[-1].sum())
    for a, b in zip(masks, masks[1:]):
        cost += int(np.count_nonzero(a != b))
    return cost


def _rz(target: int, angle: float, control: int | None) -> Gate:
    if control is None:
        return Gate(RZ, (target,), angle)
    return Gate(RZ, (control, target), angle)


def build_exponentiation_circuit(
    terms: Sequence[DiagonalTerm],
    n: int | None = None,
    *,
    controlled: bool = False,
) -> Circuit:
    """``prod_j exp(i theta_j (-1)^s_j Z^{m_j})`` with one ancilla ladder.

    Qubits ``0..n-1`` are the system, the ancilla is the last qubit and, with
    ``controlled``, qubit ``n`` is the control of every rotation.  Between
    consecutive terms only the CX gates on the symmetric difference of the
    masks are emitted.
    """
    terms = list(terms)
    if n is None:
        n = terms[0].n if terms else 0
    if any(t.n != n for t in terms):
        raise ValueError("all terms must act on n qubits")
    control = n if controlled else None
    anc = n + int(controlled)
    c = Circuit(anc + 1, uses_ancilla=True)
    current = np.zeros(n, dtype=np.uint8)
    for t in terms:
        mask = np.array(t.zmask, dtype=np.uint8)
        theta = t.signed_angle
        if not mask.any():
            if controlled:
                # exp(i theta |1><1|) = exp(i theta / 2) RZ(-theta / 2)
                c.append(RZ, control, angle=-theta / 2)
                c.global_phase += theta / 2
            else:
                c.global_phase += theta
            continue
        for q in np.flatnonzero(mask != current):
            c.append(CX, int(q), anc)
        c.gates.append(_rz(anc, theta, control))
        current = mask
    for q in np.flatnonzero(current):
        c.append(CX, int(q), anc)
    return c


def choose_order(diag: Sequence[DiagonalTerm], strategy: OrderingStrategy) -> list[DiagonalTerm]:
    """Apply an ordering strategy, returning the cheapest candidate order.

    ``opt`` compares the sorted order with the input order and ``rnd`` adds
    ``trials - 1`` random qubit orders after the canonical one.  Strictly
    cheaper candidates win, so ties favour the earliest sorted candidate and
    the input order is only kept when it is strictly better.
    """
    diag = list(diag)
    if strategy.kind == "base" or len(diag) <= 1:
        return diag
    n = diag[0].n
    if strategy.kind == "opt":
        candidates = [order_terms(diag, strategy.qubit_order)]
    else:
        rng = np.random.default_rng(strategy.seed)
        candidates = [order_terms(diag)]
        for _ in range(strategy.trials - 1):
            candidates.append(order_terms(diag, rng.permutation(n)))
    candidates.append(diag)
    best = candidates[0]
    best_cost = exp_cx_cost(best)
    for cand in candidates[1:]:
        cost = exp_cx_cost(cand)
        if cost < best_cost:
            best, best_cost = cand, cost
    return best


def _as_terms(terms) -> list[PauliTerm]:
    return [t if isinstance(t, PauliTerm) else PauliTerm.parse(str(t)) for t in terms]


def build_simulation_circuit(
    terms: Sequence[PauliTerm],
    method: str = "cz",
    strategy: OrderingStrategy | None = None,
    *,
    controlled: bool = False,
    block_size: int | None = None,
    cancel: bool = True,
) -> Circuit:
    """Circuit for ``prod_j exp(i theta_j P_j)`` via simultaneous diagonalization.

    The coefficient of each ``PauliTerm`` is its angle ``theta_j``.
    """
    strategy = strategy or OrderingStrategy()
    terms = _as_terms(terms)
    if not terms:
        return Circuit(1, uses_ancilla=True)
    t = Tableau.from_terms(terms)
    if not t.is_commuting():
        raise NotCommutingError("not a commuting set")
    res = diagonalize(t, method, angles=[p.coeff for p in terms], block_size=block_size)
    ordered = choose_order(res.diag, strategy)
    core = build_exponentiation_circuit(ordered, t.n, controlled=controlled)
    u = res.circuit
    c = Circuit(core.n_qubits, list(u.gates), uses_ancilla=True, global_phase=core.global_phase)
    c.extend(core.gates)
    c.extend(g.inverse() for g in reversed(u.gates))
    return peephole_cancel(c) if cancel else c


_SINGLE_COST = {"I": 0, "Z": 0, "X": 1, "Y": 2}


def _transition(p: str, t: str) -> tuple[int, int]:
    """Added (CX, single-qubit) cost of placing term ``t`` right after ``p``."""
    cx = single = 0
    for a, b in zip(p, t):
        if a == b:
            continue
        if a == "I" or b == "I":
            cx += 1
        else:
            cx += 2
        single += _SINGLE_COST[a] + _SINGLE_COST[b]
    return cx, single


def _weight(p: str) -> int:
    return sum(c != "I" for c in p)


def _single_weight(p: str) -> int:
    return sum(_SINGLE_COST[c] for c in p)


def _direct_cost(seq: Sequence[str]) -> tuple[int, int]:
    """Predicted (CX, single) counts of the cancelled direct circuit."""
    seq = [p for p in seq if _weight(p)]
    if not seq:
        return 0, 0
    cx = _weight(seq[0]) + _weight(seq[-1])
    single = len(seq) + sum(_SINGLE_COST[c] for c in seq[0] + seq[-1])
    for a, b in zip(seq, seq[1:]):
        dcx, ds = _transition(a, b)
        cx += dcx
        single += ds
    return cx, single


def _greedy_direct(terms: Sequence[PauliTerm]) -> list[PauliTerm]:
    remaining = list(terms)
    out: list[PauliTerm] = []
    prev = "I" * terms[0].n
    while remaining:
        best = None
        for idx, t in enumerate(remaining):
            dcx, ds = _transition(prev, t.letters)
            gain_cx = dcx + _weight(t.letters) - _weight(prev)
            gain_single = ds + _single_weight(t.letters) - _single_weight(prev)
            key = (gain_cx, gain_single)
            if best is None or key < best[0]:
                best = (key, idx)
        chosen = remaining.pop(best[1])
        out.append(chosen)
        if _weight(chosen.letters):
            prev = chosen.letters
    return out


def _pairwise_commuting(terms: Sequence[PauliTerm]) -> bool:
    return Tableau.from_terms(terms).is_commuting() if terms else True


def order_direct(terms: Sequence[PauliTerm], strategy: OrderingStrategy) -> list[PauliTerm]:
    """Term order for the direct method.

    Non-commuting input keeps its order.  ``opt`` runs the greedy pass on the
    input order, ``rnd`` also on ``trials - 1`` shuffles; the input order stays
    a candidate, and the lowest predicted CX count (then single-qubit count)
    wins with ties going to the earliest candidate.
    """
    terms = list(terms)
    if strategy.kind == "base" or len(terms) <= 1 or not _pairwise_commuting(terms):
        return terms
    candidates = [_greedy_direct(terms)]
    if strategy.kind == "rnd":
        rng = np.random.default_rng(strategy.seed)
        for _ in range(strategy.trials - 1):
            perm = rng.permutation(len(terms))
            candidates.append(_greedy_direct([terms[i] for i in perm]))
    candidates.append(terms)
    return min(candidates, key=lambda seq: _direct_cost([p.letters for p in seq]))


def build_direct_circuit(
    terms: Sequence[PauliTerm],
    strategy: OrderingStrategy | None = None,
    *,
    controlled: bool = False,
    cancel: bool = True,
) -> Circuit:
    """Exponentiate each Pauli on its own: basis change, parity ladder, RZ, undo.

    X is rotated to Z by H, and Y by S then H, which maps Y to -Z and so
    negates the angle.
    """
    strategy = strategy or OrderingStrategy()
    terms = _as_terms(terms)
    if not terms:
        return Circuit(1, uses_ancilla=True)
    n = terms[0].n
    if any(t.n != n for t in terms):
        raise ValueError("all terms must act on the same number of qubits")
    control = n if controlled else None
    anc = n + int(controlled)
    c = Circuit(anc + 1, uses_ancilla=True)
    for term in order_direct(terms, strategy):
        theta = term.coeff
        support = [q for q, a in enumerate(term.letters) if a != "I"]
        if not support:
            if controlled:
                c.append(RZ, control, angle=-theta / 2)
                c.global_phase += theta / 2
            else:
                c.global_phase += theta
            continue
        basis: list[Gate] = []
        for q in support:
            a = term.letters[q]
            if a == "X":
                basis.append(Gate(H, (q,)))
            elif a == "Y":
                basis += [Gate(S, (q,)), Gate(H, (q,))]
                theta = -theta
        ladder = [Gate(CX, (q, anc)) for q in support]
        c.extend(basis)
        c.extend(ladder)
        c.gates.append(_rz(anc, theta, control))
        c.extend(ladder)
        c.extend(g.inverse() for g in reversed(basis))
    return peephole_cancel(c) if cancel else c


def _commute(a: Gate, b: Gate) -> bool:
    """Conservative syntactic commutation test."""
    qa, qb = set(a.qubits), set(b.qubits)
    if not qa & qb:
        return True
    if a.kind in DIAGONAL_KINDS and b.kind in DIAGONAL_KINDS:
        return True
    if a.kind == CX and b.kind == CX:
        return a.qubits[0] != b.qubits[1] and a.qubits[1] != b.qubits[0]
    if a.kind == CX or b.kind == CX:
        cx, other = (a, b) if a.kind == CX else (b, a)
        ctrl, tgt = cx.qubits
        if other.kind in DIAGONAL_KINDS:
            return tgt not in other.qubits
        if other.kind == X:
            return other.qubits[0] == tgt
        return False
    return a.kind == b.kind == X


def _cancels(a: Gate, b: Gate) -> bool:
    if a.kind in (H, X) or a.kind == CX:
        return b.kind == a.kind and b.qubits == a.qubits
    if a.kind == CZ:
        return b.kind == CZ and set(b.qubits) == set(a.qubits)
    if a.kind in (S, SDG):
        return b.kind == a.inverse().kind and b.qubits == a.qubits
    if a.kind == RZ:
        return b.kind == RZ and b.qubits == a.qubits and abs(a.angle + b.angle) < 1e-12
    return False


def peephole_cancel(c: Circuit) -> Circuit:
    """Remove gate pairs that multiply to the identity.

    Each gate looks back through gates it provably commutes with; if it meets
    its own inverse both are dropped.  Passes repeat until nothing changes.
    """
    gates = list(c.gates)
    while True:
        out: list[Gate] = []
        for g in gates:
            for i in range(len(out) - 1, -1, -1):
                prev = out[i]
                if _cancels(g, prev):
                    del out[i]
                    break
                if not _commute(g, prev):
                    out.append(g)
                    break
            else:
                out.append(g)
        if len(out) == len(gates):
            break
        gates = out
    return Circuit(c.n_qubits, gates, c.uses_ancilla, c.global_phase)


def _expand(g: Gate) -> list[Gate]:
    if g.controlled:
        ctrl, tgt = g.qubits
        return [
            Gate(RZ, (tgt,), g.angle / 2),
            Gate(CX, (ctrl, tgt)),
            Gate(RZ, (tgt,), -g.angle / 2),
            Gate(CX, (ctrl, tgt)),
        ]
    return [g]


def circuit_stats(c: Circuit) -> CircuitStats:
    """Gate counts and ASAP depth; controlled rotations count in expanded form.

    CZ gates are included in ``cnot_count`` and also reported as ``cz_count``.
    ``cnot_exp`` counts CX gates that target the ancilla.
    """
    anc = c.n_qubits - 1 if c.uses_ancilla else None
    cnot = single = cz = exp = 0
    layer = [0] * c.n_qubits
    for g0 in c.gates:
        for g in _expand(g0):
            if g.kind == CX:
                cnot += 1
                exp += g.qubits[1] == anc
            elif g.kind == CZ:
                cnot += 1
                cz += 1
            else:
                single += 1
            d = 1 + max(layer[q] for q in g.qubits)
            for q in g.qubits:
                layer[q] = d
    return CircuitStats(cnot, single, max(layer, default=0), exp, cz)
