"""Dense-matrix reference implementations for small instances.

Qubit 0 is the leftmost Pauli letter and the most significant tensor
factor.  Nothing here is fast; it exists to check the symbolic code.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .pauli import CX, CZ, RZ, SDG, Circuit, Gate, H, NotCommutingError, PauliTerm, S, Tableau, X

MAX_QUBITS = 12

I2 = np.eye(2, dtype=complex)
PAULI = {
    "I": I2,
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
GATE_MATRIX = {
    H: np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2),
    S: np.diag([1, 1j]),
    SDG: np.diag([1, -1j]),
    X: PAULI["X"],
}


class SizeCapError(ValueError):
    pass


def _cap(q: int, limit: int = MAX_QUBITS):
    if q > limit:
        raise SizeCapError(f"{q} qubits exceeds the dense cap of {limit}")


def rz_matrix(theta: float) -> np.ndarray:
    return np.diag([np.exp(1j * theta), np.exp(-1j * theta)])


def pauli_to_matrix(p, sign: int = 0) -> np.ndarray:
    """Dense matrix of a Pauli string, ``PauliTerm`` or signed string like ``"-ZYXZ"``.

    A ``PauliTerm`` contributes its letters only; its coefficient is an angle.
    """
    if isinstance(p, PauliTerm):
        letters = p.letters
    else:
        text = str(p).strip()
        if text.startswith("-"):
            sign ^= 1
        letters = text.lstrip("+-").upper()
    _cap(len(letters))
    m = np.ones((1, 1), dtype=complex)
    for c in letters:
        m = np.kron(m, PAULI[c])
    return -m if sign else m


def tableau_row_matrix(t: Tableau, i: int) -> np.ndarray:
    return pauli_to_matrix(t.row_string(i, signed=False), int(t.signs[i]))


def _apply_1q(state: np.ndarray, u: np.ndarray, q: int) -> np.ndarray:
    state = np.tensordot(u, state, axes=([1], [q]))
    return np.moveaxis(state, 0, q)


def _gate_on_tensor(state: np.ndarray, g: Gate) -> np.ndarray:
    if g.kind in GATE_MATRIX:
        return _apply_1q(state, GATE_MATRIX[g.kind], g.qubits[0])
    if g.kind == RZ and not g.controlled:
        return _apply_1q(state, rz_matrix(g.angle), g.qubits[0])
    a, b = g.qubits
    out = state.copy()
    idx1 = [slice(None)] * state.ndim
    idx1[a] = 1
    if g.kind == CX:
        sub = state[tuple(idx1)]
        # qubit b loses one axis position when a < b
        bb = b - 1 if a < b else b
        out[tuple(idx1)] = np.flip(sub, axis=bb)
        return out
    if g.kind == CZ:
        idx11 = list(idx1)
        idx11[b] = 1
        out[tuple(idx11)] *= -1
        return out
    # controlled RZ: control a, target b
    bb = b - 1 if a < b else b
    sub = np.moveaxis(state[tuple(idx1)], bb, 0).copy()
    sub[0] *= np.exp(1j * g.angle)
    sub[1] *= np.exp(-1j * g.angle)
    out[tuple(idx1)] = np.moveaxis(sub, 0, bb)
    return out


def circuit_to_unitary(c: Circuit) -> np.ndarray:
    """Product of the embedded gate matrices times ``exp(i * global_phase)``."""
    q = c.n_qubits
    _cap(q)
    dim = 2**q
    state = np.eye(dim, dtype=complex).reshape((2,) * q + (dim,))
    for g in c.gates:
        state = _gate_on_tensor(state, g)
    return np.exp(1j * c.global_phase) * state.reshape(dim, dim)


def gates_to_unitary(gates: Sequence[Gate], n_qubits: int) -> np.ndarray:
    return circuit_to_unitary(Circuit(n_qubits, list(gates)))


def is_unitary(u: np.ndarray, tol: float = 1e-10) -> bool:
    return np.allclose(u @ u.conj().T, np.eye(u.shape[0]), atol=tol, rtol=0)


def exact_evolution(terms: Sequence, angles: Sequence[float] | None = None) -> np.ndarray:
    """``prod_j exp(i * theta_j * P_j)`` for mutually commuting Paulis.

    ``terms`` are ``PauliTerm`` (angles default to their coefficients) or
    Pauli strings with explicit ``angles``.
    """
    if angles is None:
        angles = [t.coeff for t in terms]
    if len(angles) != len(terms):
        raise ValueError("need one angle per term")
    if not terms:
        return np.eye(1, dtype=complex)
    mats = [pauli_to_matrix(t) for t in terms]
    _cap(int(np.log2(mats[0].shape[0])), MAX_QUBITS - 1)
    for i in range(len(mats)):
        for j in range(i):
            if not np.allclose(mats[i] @ mats[j], mats[j] @ mats[i]):
                raise NotCommutingError("exact evolution requires commuting terms")
    dim = mats[0].shape[0]
    u = np.eye(dim, dtype=complex)
    for m, theta in zip(mats, angles):
        u = (np.cos(theta) * np.eye(dim) + 1j * np.sin(theta) * m) @ u
    return u


def equal_up_to_global_phase(a: np.ndarray, b: np.ndarray, tol: float = 1e-9) -> bool:
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    idx = np.unravel_index(np.argmax(np.abs(b)), b.shape)
    if abs(b[idx]) == 0:
        return bool(np.max(np.abs(a)) <= tol)
    ratio = a[idx] / b[idx]
    if abs(ratio) == 0:
        return False
    c = ratio / abs(ratio)
    return bool(np.max(np.abs(a - c * b)) <= tol)


def ancilla_block(u: np.ndarray, n_system: int, n_extra: int = 1) -> np.ndarray:
    """Restrict a unitary to the subspace with the trailing qubits in |0>.

    Raises if the circuit leaks amplitude out of that subspace.
    """
    dim = 2**n_system
    full = u.reshape(dim, 2**n_extra, dim, 2**n_extra)
    block = full[:, 0, :, 0]
    leak = np.abs(full[:, 1:, :, 0]).max() if n_extra else 0.0
    if leak > 1e-9:
        raise AssertionError(f"ancilla not returned to |0> (leak {leak:.2e})")
    return block


def verify_diagonalization(result, original: Tableau, tol: float = 1e-10) -> bool:
    """Check ``U P_j U^dagger == diag_j`` exactly (and diagonal) for every row."""
    _cap(original.n, 10)
    u = circuit_to_unitary(result.circuit)
    for j in range(original.m):
        conj = u @ tableau_row_matrix(original, j) @ u.conj().T
        d = result.diag[j]
        target = pauli_to_matrix(d.letters(), d.sign)
        if np.max(np.abs(conj - np.diag(np.diag(conj)))) > tol:
            return False
        if np.max(np.abs(conj - target)) > tol:
            return False
    return True


def conjugate_pauli(gates: Sequence[Gate], n: int, pauli: str) -> np.ndarray:
    u = gates_to_unitary(gates, n)
    return u @ pauli_to_matrix(pauli) @ u.conj().T


def matrix_to_signed_pauli(m: np.ndarray, tol: float = 1e-10) -> str | None:
    """Identify ``m`` as ``+-P`` for a Pauli string ``P`` (brute force)."""
    from itertools import product

    q = int(round(np.log2(m.shape[0])))
    for letters in product("IXYZ", repeat=q):
        p = pauli_to_matrix("".join(letters))
        for sign, pre in ((1, ""), (-1, "-")):
            if np.max(np.abs(m - sign * p)) <= tol:
                return pre + "".join(letters)
    return None
