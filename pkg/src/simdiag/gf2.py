"""Linear algebra over the binary field and CNOT-circuit re-synthesis."""

from __future__ import annotations

import math
from typing import Iterable

import numpy as np


def _pack_rows(a: np.ndarray) -> list[int]:
    a = np.asarray(a, dtype=np.uint8) & 1
    return [int("".join(map(str, row)), 2) if row.size else 0 for row in a]


def rank(a) -> int:
    """Rank over GF(2) using an XOR basis on rows packed into Python ints."""
    a = np.asarray(a, dtype=np.uint8)
    if a.size == 0:
        return 0
    basis: dict[int, int] = {}
    for v in _pack_rows(a.reshape(a.shape[0], -1)):
        while v:
            top = v.bit_length() - 1
            if top not in basis:
                basis[top] = v
                break
            v ^= basis[top]
    return len(basis)


def is_full_rank(a) -> bool:
    a = np.asarray(a)
    return rank(a) == min(a.shape)


def matmul(a, b) -> np.ndarray:
    return (np.asarray(a, dtype=np.int64) @ np.asarray(b, dtype=np.int64) % 2).astype(np.uint8)


def inverse(a) -> np.ndarray:
    a = np.array(a, dtype=np.uint8) & 1
    k = a.shape[0]
    if a.shape != (k, k):
        raise ValueError("matrix must be square")
    aug = np.hstack([a, np.eye(k, dtype=np.uint8)])
    for col in range(k):
        piv = np.flatnonzero(aug[col:, col])
        if piv.size == 0:
            raise ValueError("matrix is singular over GF(2)")
        p = col + piv[0]
        aug[[col, p]] = aug[[p, col]]
        for r in np.flatnonzero(aug[:, col]):
            if r != col:
                aug[r] ^= aug[col]
    return aug[:, k:]


def cx_linear_map(pairs: Iterable[tuple[int, int]], k: int) -> np.ndarray:
    """Matrix ``L`` with ``out = L @ in`` for a CNOT circuit on ``k`` bits.

    ``pairs`` holds ``(control, target)`` in application order.
    """
    m = np.eye(k, dtype=np.uint8)
    for c, t in pairs:
        if c == t:
            raise ValueError("control equals target")
        m[t] ^= m[c]
    return m


def _lower_synth(a: np.ndarray, section: int) -> list[tuple[int, int]]:
    """Reduce ``a`` to upper triangular form in place, section by section.

    Returns the row operations as ``(source, target)`` pairs meaning
    ``a[target] ^= a[source]``.
    """
    k = a.shape[0]
    ops: list[tuple[int, int]] = []
    for start in range(0, k, section):
        stop = min(start + section, k)
        seen: dict[bytes, int] = {}
        for row in range(start, k):
            pattern = a[row, start:stop]
            if not pattern.any():
                continue
            key = pattern.tobytes()
            if key in seen:
                a[row] ^= a[seen[key]]
                ops.append((seen[key], row))
            else:
                seen[key] = row
        for col in range(start, stop):
            has_diag = bool(a[col, col])
            for row in range(col + 1, k):
                if a[row, col]:
                    if not has_diag:
                        a[col] ^= a[row]
                        ops.append((row, col))
                        has_diag = True
                    a[row] ^= a[col]
                    ops.append((col, row))
    return ops


def pmh_resynthesize(mat, block_size: int) -> list[tuple[int, int]]:
    """Patel-Markov-Hayes synthesis of an invertible binary matrix.

    Returns CNOTs as ``(control, target)`` pairs in application order such
    that ``cx_linear_map(result, k)`` equals ``mat``.
    """
    a = np.array(mat, dtype=np.uint8) & 1
    k = a.shape[0]
    if a.shape != (k, k):
        raise ValueError("matrix must be square")
    if not 1 <= block_size <= max(k, 1):
        raise ValueError(f"block size must lie in [1, {k}], got {block_size}")
    if rank(a) != k:
        raise ValueError("matrix is singular over GF(2)")
    if k == 0:
        return []
    lower = _lower_synth(a, block_size)
    at = np.ascontiguousarray(a.T)
    upper = _lower_synth(at, block_size)
    # a = E_1 ... E_l . U  with  U = F_q^T ... F_1^T; apply U first.
    return [(t, c) for c, t in upper] + list(reversed(lower))


def log2_block_size(k: int) -> int:
    return max(1, math.ceil(math.log2(k))) if k > 1 else 1


def best_block_size(mat) -> tuple[int, list[tuple[int, int]]]:
    """Block size in ``1..k`` with the fewest CNOTs (first minimum wins)."""
    k = np.asarray(mat).shape[0]
    best = None
    for bs in range(1, max(k, 1) + 1):
        pairs = pmh_resynthesize(mat, bs)
        if best is None or len(pairs) < len(best[1]):
            best = (bs, pairs)
    return best


def random_full_rank(m: int, n: int, rng: np.random.Generator, max_attempts: int = 1000):
    """Uniform m-by-n binary matrix of rank ``min(m, n)``, with the attempt count."""
    for attempt in range(1, max_attempts + 1):
        b = rng.integers(0, 2, size=(m, n), dtype=np.uint8)
        if rank(b) == min(m, n):
            return b, attempt
    raise RuntimeError(f"no full-rank {m}x{n} matrix after {max_attempts} attempts")

