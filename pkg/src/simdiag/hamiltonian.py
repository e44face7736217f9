"""Plain-text Hamiltonian files: one ``<coefficient> <pauli-string>`` per line."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from pathlib import Path

from .pauli import PauliTerm


class HamiltonianParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass
class HamiltonianFile:
    n: int
    terms: list[PauliTerm]
    source: str | None = None
    metadata: dict = field(default_factory=dict)

    def __len__(self):
        return len(self.terms)

    def to_text(self) -> str:
        return "".join(f"{t.coeff!r} {t.letters}\n" for t in self.terms)


def parse_hamiltonian(text: str, source: str | None = None) -> HamiltonianFile:
    """Parse Hamiltonian text.

    ``#`` starts a comment, blank lines are skipped, letters are
    case-insensitive and a leading ``-`` on the Pauli string negates the
    coefficient.  Errors carry the 1-based line number.
    """
    terms: list[PauliTerm] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise HamiltonianParseError(lineno, f"expected '<coefficient> <pauli>', got {line!r}")
        coeff_text, pauli = parts
        try:
            coeff = float(coeff_text)
        except ValueError:
            raise HamiltonianParseError(lineno, f"non-numeric coefficient {coeff_text!r}") from None
        if not math.isfinite(coeff):
            raise HamiltonianParseError(lineno, f"coefficient must be finite, got {coeff_text!r}")
        sign = -1.0 if pauli.startswith("-") else 1.0
        letters = pauli.lstrip("+-").upper()
        bad = set(letters) - set("IXYZ")
        if bad or not letters:
            raise HamiltonianParseError(lineno, f"invalid Pauli string {pauli!r}")
        if n is None:
            n = len(letters)
        elif len(letters) != n:
            raise HamiltonianParseError(lineno, f"Pauli string has {len(letters)} qubits, expected {n}")
        terms.append(PauliTerm(letters, sign * coeff))
    meta = {"name": Path(source).stem if source else "", "encoding": "pauli-text"}
    return HamiltonianFile(n or 0, terms, source, meta)


def read_hamiltonian(path) -> HamiltonianFile:
    path = Path(path)
    return parse_hamiltonian(path.read_text(), str(path))
