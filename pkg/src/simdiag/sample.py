"""Random commuting Pauli sets and their canonical form.

A random basis of ``m`` commuting Paulis on ``n`` qubits is a uniformly
drawn generator tableau multiplied by a uniformly drawn full-rank binary
``m x n`` matrix.  Two tableaus generate the same group (up to signs)
exactly when their canonical forms agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import gf2
from .pauli import Tableau

MAX_ATTEMPTS = 1000


def _rng(rng) -> np.random.Generator:
    return rng if isinstance(rng, np.random.Generator) else np.random.default_rng(rng)


def _uniform_int(rng: np.random.Generator, upper: int) -> int:
    """Uniform integer in ``[0, upper]``, exact for any size."""
    if upper < 2**62:
        return int(rng.integers(0, upper + 1))
    bits = upper.bit_length()
    while True:
        words = rng.integers(0, 2**32, size=(bits + 31) // 32, dtype=np.uint64)
        r = 0
        for w in words:
            r = (r << 32) | int(w)
        r >>= 32 * len(words) - bits
        if r <= upper:
            return r


def _generator_from_choices(n: int, choices: Sequence[int], signs: Sequence[int] | None = None) -> Tableau:
    """Deterministic core of the generator sampler.

    ``choices[i]`` lies in ``[0, 2**(n-i)]``; the top value exchanges the
    X and Z columns of qubit ``i`` and any other value fills row ``i`` of
    the symmetric Z block from its bits, low bit on the diagonal.
    """
    x = np.zeros((n, n), dtype=np.uint8)
    z = np.zeros((n, n), dtype=np.uint8)
    for i, r in enumerate(choices):
        top = 2 ** (n - i)
        if not 0 <= r <= top:
            raise ValueError(f"choice {r} for row {i} outside [0, {top}]")
        x[i, i] = 1
        if r == top:
            x[:, i], z[:, i] = z[:, i].copy(), x[:, i].copy()
            continue
        for j in range(i, n):
            z[i, j] = z[j, i] = r & 1
            r >>= 1
    return Tableau(x, z, signs)


def sample_generators(n: int, rng=None) -> Tableau:
    """Uniformly random generator set of a maximal commuting Pauli group, with random signs."""
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _rng(rng)
    choices = [_uniform_int(rng, 2 ** (n - i)) for i in range(n)]
    signs = rng.integers(0, 2, size=n, dtype=np.uint8)
    return _generator_from_choices(n, choices, signs)


def count_generators(n: int) -> int:
    return int(np.prod([1 + 2 ** (n - i) for i in range(n)], dtype=object))


def full_rank_probability(n: int) -> float:
    return float(np.prod([1 - 2.0 ** -(n - i) for i in range(n)]))


def sample_full_rank_binary(m: int, n: int, rng=None, max_attempts: int = MAX_ATTEMPTS):
    """Rejection-sample a uniform ``m x n`` binary matrix of rank ``n``.

    Returns ``(matrix, attempts)``.
    """
    if m < n:
        raise ValueError(f"need m >= n for rank n, got {m}x{n}")
    return gf2.random_full_rank(m, n, _rng(rng), max_attempts)


def compose_basis(gen: Tableau, b, rng=None, randomize_signs: bool = False) -> Tableau:
    """Row ``i`` of the result is the product of the generators selected by ``b[i]``.

    Signs follow from the Pauli products; ``randomize_signs`` replaces them
    by fresh random bits.
    """
    b = np.asarray(b, dtype=np.uint8) & 1
    if b.ndim != 2 or b.shape[1] != gen.m:
        raise ValueError(f"matrix must have {gen.m} columns, got shape {b.shape}")
    if gf2.rank(b) != min(b.shape):
        raise ValueError("selection matrix is rank deficient")
    m, n = b.shape[0], gen.n
    work = Tableau(
        np.vstack([gen.x, np.zeros((1, n), np.uint8)]),
        np.vstack([gen.z, np.zeros((1, n), np.uint8)]),
        np.append(gen.signs, 0),
    )
    acc = gen.m
    out = Tableau.empty(m, n)
    for i in range(m):
        work.x[acc], work.z[acc], work.signs[acc] = 0, 0, 0
        for j in np.flatnonzero(b[i]):
            work.row_sweep(acc, int(j))
        out.x[i], out.z[i], out.signs[i] = work.x[acc], work.z[acc], work.signs[acc]
    if randomize_signs:
        out.signs = _rng(rng).integers(0, 2, size=m, dtype=np.uint8)
    return out


def sample_basis(n: int, m: int | None = None, rng=None) -> Tableau:
    """Random set of ``m`` (default ``n``) commuting Paulis of full rank with random signs."""
    rng = _rng(rng)
    m = n if m is None else m
    gen = sample_generators(n, rng)
    b, _ = sample_full_rank_binary(m, n, rng)
    return compose_basis(gen, b, rng, randomize_signs=True)


@dataclass(frozen=True)
class CanonicalForm:
    """Normalized generator set: Z block, Hadamard index set and signs.

    Equality ignores signs unless ``with_signs`` is requested.
    """

    z: tuple[tuple[int, ...], ...]
    hadamard_set: frozenset[int]
    signs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.z)

    def matches(self, other: "CanonicalForm", with_signs: bool = False) -> bool:
        same = self.z == other.z and self.hadamard_set == other.hadamard_set
        return same and (not with_signs or self.signs == other.signs)

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.matches(other)

    def __hash__(self):
        return hash((self.z, self.hadamard_set))

    def to_tableau(self) -> Tableau:
        """A tableau whose normalization returns this form."""
        t = Tableau(np.eye(self.n, dtype=np.uint8), np.array(self.z, dtype=np.uint8).reshape(self.n, self.n), self.signs)
        for k in sorted(self.hadamard_set):
            t.h(k)
        return t


def normalize_full_rank(t: Tableau) -> CanonicalForm:
    """Reduce a full-rank commuting tableau to its unique generator form.

    Column ``k`` without an X pivot gets a Hadamard (recorded in the
    index set); the pivot row is swapped into place and swept out of all
    other rows.
    """
    work = Tableau(t.x, t.z, t.signs)
    m, n = work.m, work.n
    if m < n:
        raise ValueError("tableau not full rank")
    had = set()
    for k in range(n):
        rows = np.flatnonzero(work.x[k:, k])
        if rows.size == 0:
            had.add(k)
            work.h(k)
            rows = np.flatnonzero(work.x[k:, k])
            if rows.size == 0:
                raise ValueError("tableau not full rank")
        work.swap_rows(k, k + int(rows[0]))
        for i in np.flatnonzero(work.x[:, k]):
            if i != k:
                work.row_sweep(int(i), k)
    z = tuple(tuple(int(v) for v in row) for row in work.z[:n])
    return CanonicalForm(z, frozenset(had), tuple(int(s) for s in work.signs[:n]))


def canonical_equal(a: Tableau, b: Tableau, with_signs: bool = False) -> bool:
    """True when both tableaus generate the same group (up to signs by default)."""
    return normalize_full_rank(a).matches(normalize_full_rank(b), with_signs)
