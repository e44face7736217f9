"""Simultaneous diagonalization of commuting Pauli tableaus.

Every routine works on a tableau whose columns may have been permuted;
gates are applied to the tableau at column positions and emitted on the
original qubit labels held in ``Tableau.perm``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2
from .pauli import (
    CX,
    CZ,
    H,
    S,
    AnticommutingSweepError,
    Circuit,
    Gate,
    NotCommutingError,
    Tableau,
)

METHODS = ("cz", "cnot", "cnot-log2", "cnot-best", "greedy1", "greedy2")


@dataclass(frozen=True)
class DiagonalTerm:
    """A diagonal Pauli: Z on the set bits of ``zmask``, identity elsewhere."""

    zmask: tuple[int, ...]
    sign: int = 0
    angle: float = 0.0

    @property
    def n(self) -> int:
        return len(self.zmask)

    @property
    def weight(self) -> int:
        return sum(self.zmask)

    @property
    def signed_angle(self) -> float:
        return -self.angle if self.sign else self.angle

    def letters(self) -> str:
        return "".join("Z" if b else "I" for b in self.zmask)

    def __str__(self):
        return ("-" if self.sign else "") + self.letters()

    @classmethod
    def parse(cls, text: str, angle: float = 0.0) -> "DiagonalTerm":
        sign = 1 if text.startswith("-") else 0
        body = text.lstrip("+-").upper()
        if set(body) - {"I", "Z"}:
            raise ValueError(f"diagonal term must contain only I and Z: {text!r}")
        return cls(tuple(int(c == "Z") for c in body), sign, angle)


@dataclass
class DiagResult:
    circuit: Circuit
    diag: list[DiagonalTerm]
    method: str
    rank: int


def _emit(t: Tableau, gates: list[Gate], kind: str, *cols: int):
    t.apply_gate(Gate(kind, cols))
    gates.append(Gate(kind, tuple(int(t.perm[c]) for c in cols)))


def _first_one(block: np.ndarray, k: int):
    """First 1 in ``block[k:, k:]`` scanning column-major."""
    hits = np.argwhere(block[k:, k:].T)
    if hits.size == 0:
        return None
    j, i = hits[0]
    return k + int(i), k + int(j)


def _pivot_stage(t: Tableau, block_name: str, k: int) -> int:
    while True:
        block = getattr(t, block_name)
        hit = _first_one(block, k)
        if hit is None:
            return k
        i, j = hit
        t.swap_rows(i, k)
        t.swap_qubits(j, k)
        block = getattr(t, block_name)
        for r in np.flatnonzero(block[:, k]):
            if r != k:
                t.row_sweep(int(r), k)
        k += 1


def diagonalize_x(t: Tableau) -> tuple[list[Gate], int, int]:
    """Bring the X block to ``diag(1,...,1,0,...,0)`` in place.

    Returns the emitted gates (Hadamards, plus CNOTs for rank-deficient
    input) together with ``k_x``, the number of pivots found directly in X,
    and ``k``, the rank of ``[X, Z]``.
    """
    gates: list[Gate] = []
    try:
        k_x = _pivot_stage(t, "x", 0)
        k = _pivot_stage(t, "z", k_x)
    except AnticommutingSweepError as exc:
        raise NotCommutingError("not a commuting set") from exc
    for j in range(k_x, k):
        _emit(t, gates, H, j)
    for i in range(k):
        for j in range(k, t.n):
            if t.x[i, j]:
                _emit(t, gates, CX, i, j)
    return gates, k_x, k


def _require_diagonal_x(t: Tableau, k: int):
    expect = np.zeros_like(t.x)
    expect[np.arange(k), np.arange(k)] = 1
    if not np.array_equal(t.x, expect):
        raise ValueError(f"X block must be diagonal of rank {k} (run diagonalize_x first)")


def clear_z_pairwise(t: Tableau, k: int, phase_first: bool = False) -> list[Gate]:
    """CZ elimination of the symmetric Z block, then S/H to clear X.

    The closing phase and Hadamard gates act on distinct qubits, so they are
    emitted as two separate stages.  With ``phase_first`` the phase gates
    come before the CZ stage, which is equivalent because CZ leaves the Z
    diagonal untouched.
    """
    _require_diagonal_x(t, k)
    gates: list[Gate] = []
    if phase_first:
        for i in range(k):
            if t.z[i, i]:
                _emit(t, gates, S, i)
    for i in range(1, k):
        for j in range(i):
            if t.z[i, j]:
                _emit(t, gates, CZ, i, j)
    if not phase_first:
        for i in range(k):
            if t.z[i, i]:
                _emit(t, gates, S, i)
    for i in range(k):
        _emit(t, gates, H, i)
    return gates


def _clear_z_cnot_stages(t: Tableau, k: int):
    """Run the CNOT update; return (phase stage, CNOT stage, closing stage).

    The pre-correction phase gate of row ``i`` acts on a qubit untouched by
    the CNOTs of earlier rows, so all of them can be emitted up front.
    """
    _require_diagonal_x(t, k)
    pre: list[Gate] = []
    cx: list[Gate] = []
    post: list[Gate] = []
    for i in range(k):
        if int(t.z[i, : i + 1].sum()) % 2 == 0:
            _emit(t, pre, S, i)
        for j in range(i):
            if t.z[i, j]:
                _emit(t, cx, CX, i, j)
                t.row_sweep(i, j)
    for i in range(k):
        _emit(t, post, S, i)
    for i in range(k):
        _emit(t, post, H, i)
    return pre, cx, post


def clear_z_cnot(t: Tableau, k: int) -> list[Gate]:
    pre, cx, post = _clear_z_cnot_stages(t, k)
    return pre + cx + post


def resynthesize_cx(gates: Sequence[Gate], block_size: int | str) -> list[Gate]:
    """Replace a CNOT-only gate list by a block-partitioned re-synthesis.

    ``block_size`` is an integer, ``"log2"`` or ``"best"``.  The original
    list is kept when the re-synthesized one is not strictly shorter.
    """
    if not gates:
        return []
    if any(g.kind != CX for g in gates):
        raise ValueError("only CX gates can be re-synthesized")
    qubits = sorted({q for g in gates for q in g.qubits})
    local = {q: i for i, q in enumerate(qubits)}
    k = len(qubits)
    mat = gf2.cx_linear_map(((local[g.qubits[0]], local[g.qubits[1]]) for g in gates), k)
    if block_size == "best":
        _, pairs = gf2.best_block_size(mat)
    else:
        bs = gf2.log2_block_size(k) if block_size == "log2" else int(block_size)
        pairs = gf2.pmh_resynthesize(mat, min(max(bs, 1), k))
    if len(pairs) >= len(gates):
        return list(gates)
    return [Gate(CX, (qubits[c], qubits[t])) for c, t in pairs]


def pmh_resynthesize(mat, block_size: int) -> list[Gate]:
    """Gate-level wrapper around :func:`gf2.pmh_resynthesize`."""
    return [Gate(CX, p) for p in gf2.pmh_resynthesize(mat, block_size)]


def _greedy_options(z: np.ndarray, active: list[int]):
    """Yield ``(cnot_cost, single_cost, option)`` in scan order.

    Element-wise clearing of each column comes first, then column sweeps
    ``i <- j``.  Only the active sub-block matters: cleared columns and
    rows are zero there.
    """
    act = np.array(active)
    sub = z[np.ix_(act, act)]
    for a, i in enumerate(active):
        off = int(sub[:, a].sum()) - int(sub[a, a])
        yield off, int(sub[a, a]) + 1, ("elem", i, None)
    for a, i in enumerate(active):
        for b, j in enumerate(active):
            if a == b:
                continue
            mask = np.ones(len(active), dtype=bool)
            mask[[a, b]] = False
            dist = int(np.count_nonzero(sub[mask, a] != sub[mask, b]))
            fix = int(sub[b, b] != sub[b, a])
            final_diag = int(sub[a, a] ^ sub[a, b])
            yield dist + 1, fix + final_diag + 1, ("pair", i, j)


def clear_z_greedy(t: Tableau, k: int, variant: str = "greedy1") -> list[Gate]:
    """Column-based elimination choosing the cheapest column at each step.

    ``greedy1`` minimizes two-qubit gates only; ``greedy2`` breaks ties by
    the number of single-qubit gates.  Among equal candidates the first in
    scan order wins.
    """
    if variant not in ("greedy1", "greedy2"):
        raise ValueError(f"unknown greedy variant {variant!r}")
    _require_diagonal_x(t, k)
    gates: list[Gate] = []
    active = list(range(k))
    while active:
        best = None
        for cx_cost, single, opt in _greedy_options(t.z, active):
            key = (cx_cost, single) if variant == "greedy2" else (cx_cost,)
            if best is None or key < best[0]:
                best = (key, opt)
        kind, i, j = best[1]
        if kind == "pair":
            if t.z[j, j] != t.z[j, i]:
                _emit(t, gates, S, j)
            _emit(t, gates, CX, i, j)
            t.row_sweep(i, j)
        for r in active:
            if r != i and t.z[r, i]:
                _emit(t, gates, CZ, i, r)
        if t.z[i, i]:
            _emit(t, gates, S, i)
        _emit(t, gates, H, i)
        active.remove(i)
    return gates


def diagonalize(
    t: Tableau,
    method: str = "cz",
    *,
    angles: Sequence[float] | None = None,
    phase_first: bool = False,
    block_size: int | None = None,
) -> DiagResult:
    """Find a Clifford circuit mapping every row of ``t`` to a diagonal Pauli.

    The diagonal terms are read from a second tableau that only receives the
    emitted gates, so they keep the input row order and carry exact signs.
    ``block_size`` overrides the block size of the ``cnot-log2`` method.
    """
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; choose from {METHODS}")
    if angles is not None and len(angles) != t.m:
        raise ValueError("need one angle per tableau row")
    if not t.is_commuting():
        raise NotCommutingError("not a commuting set")

    if not t.x.any():
        # already diagonal: the stages below would only emit H H pairs
        angles = [0.0] * t.m if angles is None else list(angles)
        diag = [DiagonalTerm(tuple(int(b) for b in t.z[i]), int(t.signs[i]), float(angles[i])) for i in range(t.m)]
        return DiagResult(Circuit(t.n), diag, method, t.rank())

    work = Tableau(t.x, t.z, t.signs)
    gates, _, k = diagonalize_x(work)
    if method == "cz":
        gates += clear_z_pairwise(work, k, phase_first=phase_first)
    elif method.startswith("cnot"):
        pre, cx, post = _clear_z_cnot_stages(work, k)
        if method == "cnot-log2":
            cx = resynthesize_cx(cx, block_size if block_size is not None else "log2")
        elif method == "cnot-best":
            cx = resynthesize_cx(cx, "best")
        gates += pre + cx + post
    else:
        gates += clear_z_greedy(work, k, method)

    check = Tableau(t.x, t.z, t.signs)
    check.apply_circuit(gates)
    if check.x.any():
        raise AssertionError("internal error: X block not cleared")
    angles = [0.0] * t.m if angles is None else list(angles)
    diag = [
        DiagonalTerm(tuple(int(b) for b in check.z[i]), int(check.signs[i]), float(angles[i]))
        for i in range(t.m)
    ]
    return DiagResult(Circuit(t.n, gates), diag, method, k)
