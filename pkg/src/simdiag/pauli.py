"""Binary symplectic Pauli representation, tableaus and gate sequences.

Bit convention used throughout the package: a Pauli letter on one qubit is
stored as a pair ``(x, z)`` with ``X=(1,0)``, ``Z=(0,1)``, ``Y=(1,1)`` and
``I=(0,0)``.  Qubit 0 is the leftmost letter of a Pauli string.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

LETTERS = "IXYZ"
_BITS = {"I": (0, 0), "X": (1, 0), "Y": (1, 1), "Z": (0, 1)}
_LETTER = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}

H, S, SDG, X, CX, CZ, RZ = "H", "S", "Sdg", "X", "CX", "CZ", "RZ"
GATE_KINDS = (H, S, SDG, X, CX, CZ, RZ)
CLIFFORD_TABLEAU_GATES = (H, S, SDG, CX, CZ)
TWO_QUBIT = (CX, CZ)


class NotCommutingError(ValueError):
    """Raised when an operation requires mutually commuting Paulis."""


class AnticommutingSweepError(RuntimeError):
    """Row product of two anticommuting rows (phase would be +-i)."""


@dataclass(frozen=True)
class PauliTerm:
    """A weighted Pauli string; ``coeff`` is the rotation angle with sign folded in."""

    letters: str
    coeff: float = 1.0

    def __post_init__(self):
        letters = self.letters.upper()
        if not letters:
            raise ValueError("Pauli string must contain at least one letter")
        bad = set(letters) - set(LETTERS)
        if bad:
            raise ValueError(f"invalid Pauli letter(s) {sorted(bad)} in {self.letters!r}")
        if not math.isfinite(self.coeff):
            raise ValueError(f"coefficient must be finite, got {self.coeff}")
        object.__setattr__(self, "letters", letters)
        object.__setattr__(self, "coeff", float(self.coeff))

    @property
    def n(self) -> int:
        return len(self.letters)

    @classmethod
    def parse(cls, text: str, coeff: float = 1.0) -> "PauliTerm":
        """Parse ``"XZIY"`` or ``"-ZYXZ"``; a leading minus folds into the coefficient."""
        text = text.strip()
        if text.startswith("-"):
            return cls(text[1:], -coeff)
        if text.startswith("+"):
            text = text[1:]
        return cls(text, coeff)

    def bits(self) -> tuple[np.ndarray, np.ndarray]:
        x = np.array([_BITS[c][0] for c in self.letters], dtype=np.uint8)
        z = np.array([_BITS[c][1] for c in self.letters], dtype=np.uint8)
        return x, z


def letters_from_bits(x: Sequence[int], z: Sequence[int]) -> str:
    return "".join(_LETTER[(int(a), int(b))] for a, b in zip(x, z))


def symplectic_products(x: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Matrix of pairwise symplectic products (1 where rows anticommute)."""
    xi = x.astype(np.int64)
    zi = z.astype(np.int64)
    return ((xi @ zi.T + zi @ xi.T) % 2).astype(np.uint8)


def _phase_exponents(x1, z1, x2, z2):
    """Per-qubit power of i picked up by the product (x1,z1)*(x2,z2).

    Vectorized form of the g-function from the Aaronson-Gottesman rowsum.
    """
    x1 = x1.astype(np.int64)
    z1 = z1.astype(np.int64)
    x2 = x2.astype(np.int64)
    z2 = z2.astype(np.int64)
    return np.where(
        (x1 == 1) & (z1 == 1),
        z2 - x2,
        np.where(
            (x1 == 1) & (z1 == 0),
            z2 * (2 * x2 - 1),
            np.where((x1 == 0) & (z1 == 1), x2 * (1 - 2 * z2), 0),
        ),
    )


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: float = 0.0

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        qubits = tuple(int(q) for q in self.qubits)
        object.__setattr__(self, "qubits", qubits)
        arity = len(qubits)
        if self.kind in TWO_QUBIT:
            ok = arity == 2
        elif self.kind == RZ:
            ok = arity in (1, 2)
        else:
            ok = arity == 1
        if not ok:
            raise ValueError(f"wrong number of qubits for {self.kind}: {qubits}")
        if len(set(qubits)) != arity:
            raise ValueError(f"qubit indices must be distinct: {qubits}")
        if any(q < 0 for q in qubits):
            raise ValueError(f"negative qubit index in {qubits}")

    @property
    def controlled(self) -> bool:
        """True for a controlled rotation, stored as RZ on ``(control, target)``."""
        return self.kind == RZ and len(self.qubits) == 2

    def inverse(self) -> "Gate":
        if self.kind == S:
            return Gate(SDG, self.qubits)
        if self.kind == SDG:
            return Gate(S, self.qubits)
        if self.kind == RZ:
            return Gate(RZ, self.qubits, -self.angle)
        return self

    def __str__(self):
        args = ",".join(map(str, self.qubits))
        if self.kind == RZ:
            return f"{'C' if self.controlled else ''}RZ({self.angle:g})[{args}]"
        return f"{self.kind}[{args}]"


@dataclass
class Circuit:
    n_qubits: int
    gates: list[Gate] = field(default_factory=list)
    uses_ancilla: bool = False
    global_phase: float = 0.0

    def __post_init__(self):
        self.gates = list(self.gates)
        for g in self.gates:
            self._check(g)
        if not math.isfinite(self.global_phase):
            raise ValueError("global phase must be finite")

    def _check(self, g: Gate):
        if max(g.qubits) >= self.n_qubits:
            raise ValueError(f"gate {g} addresses a qubit outside 0..{self.n_qubits - 1}")

    def append(self, kind: str, *qubits: int, angle: float = 0.0) -> Gate:
        g = Gate(kind, qubits, angle)
        self._check(g)
        self.gates.append(g)
        return g

    def extend(self, gates: Iterable[Gate]):
        for g in gates:
            self._check(g)
            self.gates.append(g)

    def inverse(self) -> "Circuit":
        return Circuit(
            self.n_qubits,
            [g.inverse() for g in reversed(self.gates)],
            self.uses_ancilla,
            -self.global_phase,
        )

    def copy(self) -> "Circuit":
        return Circuit(self.n_qubits, list(self.gates), self.uses_ancilla, self.global_phase)

    def count(self, *kinds: str) -> int:
        return sum(1 for g in self.gates if g.kind in kinds)

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)


class Tableau:
    """Rows of Paulis as ``[X | Z | s]`` with a qubit relabeling vector.

    Columns refer to *logical* positions; ``perm[j]`` is the original qubit
    stored in column ``j``.  Column swaps only touch ``perm`` and the blocks,
    so circuits built from a permuted tableau can still address the original
    qubit labels.
    """

    def __init__(self, x, z, signs=None, perm=None):
        self.x = np.array(x, dtype=np.uint8, ndmin=2) & 1
        self.z = np.array(z, dtype=np.uint8, ndmin=2) & 1
        if self.x.shape != self.z.shape:
            raise ValueError(f"X block {self.x.shape} and Z block {self.z.shape} differ")
        m, n = self.x.shape
        self.signs = np.zeros(m, dtype=np.uint8) if signs is None else np.array(signs, dtype=np.uint8) & 1
        if self.signs.shape != (m,):
            raise ValueError(f"sign vector must have {m} entries")
        self.perm = np.arange(n) if perm is None else np.array(perm, dtype=np.int64)
        if sorted(self.perm.tolist()) != list(range(n)):
            raise ValueError("perm must be a permutation of the columns")

    @classmethod
    def empty(cls, m: int, n: int) -> "Tableau":
        return cls(np.zeros((m, n), np.uint8), np.zeros((m, n), np.uint8))

    @classmethod
    def from_strings(cls, rows: Sequence[str], n: int | None = None) -> "Tableau":
        """Build from strings like ``"XZIY"`` / ``"-ZYXZ"``."""
        signs, letters = [], []
        for r in rows:
            r = r.strip()
            signs.append(1 if r.startswith("-") else 0)
            letters.append(r.lstrip("+-").upper())
        if n is None:
            if not letters:
                raise ValueError("cannot infer qubit count from an empty row list")
            n = len(letters[0])
        if any(len(p) != n for p in letters):
            raise ValueError("all Pauli strings must have the same length")
        x = np.array([[_BITS[c][0] for c in p] for p in letters], dtype=np.uint8).reshape(len(rows), n)
        z = np.array([[_BITS[c][1] for c in p] for p in letters], dtype=np.uint8).reshape(len(rows), n)
        return cls(x, z, signs)

    @classmethod
    def from_terms(cls, terms: Sequence[PauliTerm], n: int | None = None) -> "Tableau":
        """Signs start at zero: term signs live in the coefficients."""
        if n is None:
            if not terms:
                raise ValueError("cannot infer qubit count from an empty term list")
            n = terms[0].n
        if any(t.n != n for t in terms):
            raise ValueError("all terms must act on the same number of qubits")
        t = cls.empty(len(terms), n)
        for i, term in enumerate(terms):
            t.x[i], t.z[i] = term.bits()
        return t

    @property
    def m(self) -> int:
        return self.x.shape[0]

    @property
    def n(self) -> int:
        return self.x.shape[1]

    def copy(self) -> "Tableau":
        return Tableau(self.x.copy(), self.z.copy(), self.signs.copy(), self.perm.copy())

    def row_string(self, i: int, signed: bool = True) -> str:
        s = letters_from_bits(self.x[i], self.z[i])
        return ("-" if signed and self.signs[i] else "") + s

    def to_strings(self, signed: bool = True) -> list[str]:
        return [self.row_string(i, signed) for i in range(self.m)]

    def __repr__(self):
        return f"Tableau({self.to_strings()})"

    def __eq__(self, other):
        if not isinstance(other, Tableau):
            return NotImplemented
        return (
            self.x.shape == other.x.shape
            and np.array_equal(self.x, other.x)
            and np.array_equal(self.z, other.z)
            and np.array_equal(self.signs, other.signs)
        )

    def _check_row(self, *rows: int):
        for r in rows:
            if not 0 <= r < self.m:
                raise IndexError(f"row {r} out of range for {self.m} rows")

    def _check_col(self, *cols: int):
        for c in cols:
            if not 0 <= c < self.n:
                raise IndexError(f"qubit {c} out of range for {self.n} qubits")

    # -- commutation ------------------------------------------------------

    def commutes(self, i: int, j: int) -> bool:
        self._check_row(i, j)
        prod = np.sum(self.x[i] & self.z[j]) + np.sum(self.x[j] & self.z[i])
        return int(prod) % 2 == 0

    def is_commuting(self) -> bool:
        if self.m < 2:
            return True
        return not symplectic_products(self.x, self.z).any()

    def rank(self) -> int:
        from .gf2 import rank

        return rank(np.hstack([self.x, self.z]))

    # -- row and column operations (no gates) -------------------------------

    def row_sweep(self, target: int, source: int):
        """Replace row ``target`` by the product of rows ``source`` and ``target``."""
        self._check_row(target, source)
        if target == source:
            raise ValueError("cannot sweep a row with itself")
        g = _phase_exponents(self.x[source], self.z[source], self.x[target], self.z[target])
        acc = (int(g.sum()) + 2 * int(self.signs[source]) + 2 * int(self.signs[target])) % 4
        if acc % 2:
            raise AnticommutingSweepError(f"anticommuting sweep of row {target} with row {source}")
        self.x[target] ^= self.x[source]
        self.z[target] ^= self.z[source]
        self.signs[target] = acc // 2

    def swap_rows(self, a: int, b: int):
        self._check_row(a, b)
        if a != b:
            for arr in (self.x, self.z, self.signs):
                arr[[a, b]] = arr[[b, a]]

    def swap_qubits(self, a: int, b: int):
        self._check_col(a, b)
        if a != b:
            for arr in (self.x, self.z):
                arr[:, [a, b]] = arr[:, [b, a]]
            self.perm[[a, b]] = self.perm[[b, a]]

    def permute(self, kind: str, a: int, b: int):
        if kind == "rows":
            self.swap_rows(a, b)
        elif kind == "qubits":
            self.swap_qubits(a, b)
        else:
            raise ValueError(f"permute kind must be 'rows' or 'qubits', got {kind!r}")

    # -- Clifford conjugation: every row P becomes G P G^dagger ---------------

    def h(self, a: int):
        x, z = self.x[:, a].copy(), self.z[:, a].copy()
        self.signs ^= x & z
        self.x[:, a], self.z[:, a] = z, x

    def s(self, a: int):
        self.signs ^= self.x[:, a] & self.z[:, a]
        self.z[:, a] ^= self.x[:, a]

    def sdg(self, a: int):
        self.signs ^= self.x[:, a] & (self.z[:, a] ^ 1)
        self.z[:, a] ^= self.x[:, a]

    def cx(self, a: int, b: int):
        xa, xb, za, zb = self.x[:, a], self.x[:, b], self.z[:, a], self.z[:, b]
        self.signs ^= xa & zb & (xb ^ za ^ 1)
        self.z[:, a] ^= zb
        self.x[:, b] ^= xa

    def cz(self, a: int, b: int):
        xa, xb, za, zb = self.x[:, a], self.x[:, b], self.z[:, a], self.z[:, b]
        self.signs ^= xa & xb & (za ^ zb)
        self.z[:, a] ^= xb
        self.z[:, b] ^= xa

    def apply_gate(self, g: Gate):
        """Conjugate every row by ``g``; qubit indices are tableau columns."""
        if g.kind not in CLIFFORD_TABLEAU_GATES:
            raise ValueError(f"non-Clifford tableau gate: {g.kind}")
        self._check_col(*g.qubits)
        if g.kind in TWO_QUBIT and g.qubits[0] == g.qubits[1]:
            raise ValueError("two-qubit gate needs distinct qubits")
        {H: self.h, S: self.s, SDG: self.sdg, CX: self.cx, CZ: self.cz}[g.kind](*g.qubits)

    def apply_circuit(self, gates: Iterable[Gate]):
        for g in gates:
            self.apply_gate(g)
