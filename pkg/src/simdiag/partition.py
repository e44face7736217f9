"""Splitting a list of Pauli terms into mutually commuting subsets."""

from __future__ import annotations

from dataclasses import dataclass
from statistics import median
from typing import Sequence

import numpy as np

from .pauli import NotCommutingError, PauliTerm, symplectic_products

STRATEGIES = ("sequential", "largest_first", "independent_set")


@dataclass(frozen=True)
class Partition:
    sets: tuple[tuple[int, ...], ...]
    strategy: str

    def __len__(self):
        return len(self.sets)

    def summary(self) -> dict:
        sizes = [len(s) for s in self.sets]
        return {
            "count": len(sizes),
            "median_size": float(median(sizes)) if sizes else 0.0,
            "max_size": max(sizes, default=0),
        }

    def select(self, terms: Sequence) -> list[list]:
        return [[terms[i] for i in s] for s in self.sets]


def _bits(terms: Sequence[PauliTerm]):
    if not terms:
        return np.zeros((0, 0), np.uint8), np.zeros((0, 0), np.uint8)
    n = terms[0].n
    if any(t.n != n for t in terms):
        raise ValueError("all terms must act on the same number of qubits")
    xs, zs = zip(*(t.bits() for t in terms))
    return np.array(xs, dtype=np.uint8), np.array(zs, dtype=np.uint8)


def commutation_graph(terms: Sequence[PauliTerm]) -> np.ndarray:
    """Boolean adjacency matrix with an edge wherever two terms anticommute."""
    x, z = _bits(terms)
    if len(terms) == 0:
        return np.zeros((0, 0), dtype=bool)
    return symplectic_products(x, z).astype(bool)


def _verified(terms, groups, strategy) -> Partition:
    x, z = _bits(terms)
    for g in groups:
        idx = list(g)
        if len(idx) > 1 and symplectic_products(x[idx], z[idx]).any():
            raise NotCommutingError(f"{strategy} produced a non-commuting set")
    return Partition(tuple(tuple(g) for g in groups), strategy)


def partition_sequential(terms: Sequence[PauliTerm]) -> Partition:
    """Put each term in the first set it commutes with, opening a new set if none fits."""
    x, z = _bits(terms)
    groups: list[list[int]] = []
    for i in range(len(terms)):
        for g in groups:
            anti = (x[g] @ z[i] + z[g] @ x[i]) % 2
            if not anti.any():
                g.append(i)
                break
        else:
            groups.append([i])
    return _verified(terms, groups, "sequential")


def _largest_first(adj: np.ndarray) -> list[list[int]]:
    deg = adj.sum(axis=1)
    order = sorted(range(len(adj)), key=lambda v: (-deg[v], v))
    color = [-1] * len(adj)
    for v in order:
        used = {color[u] for u in np.flatnonzero(adj[v]) if color[u] >= 0}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    groups: list[list[int]] = [[] for _ in range(max(color, default=-1) + 1)]
    for v, c in enumerate(color):
        groups[c].append(v)
    return groups


def _independent_sets(adj: np.ndarray) -> list[list[int]]:
    remaining = set(range(len(adj)))
    groups: list[list[int]] = []
    while remaining:
        candidates = set(remaining)
        chosen: list[int] = []
        while candidates:
            cand = sorted(candidates)
            sub = adj[np.ix_(cand, cand)].sum(axis=1)
            v = cand[int(np.argmin(sub))]
            chosen.append(v)
            candidates -= {v} | set(np.flatnonzero(adj[v]).tolist())
        groups.append(sorted(chosen))
        remaining -= set(chosen)
    return groups


def partition_coloring(terms: Sequence[PauliTerm], strategy: str = "largest_first") -> Partition:
    """Greedy coloring of the anticommutation graph; each color is a commuting set.

    ``largest_first`` colors vertices by decreasing degree with the smallest
    free color.  ``independent_set`` repeatedly removes a maximal
    independent set, built by taking the vertex of lowest degree among the
    remaining candidates.  Ties go to the lower index.
    """
    adj = commutation_graph(terms)
    if strategy == "largest_first":
        groups = _largest_first(adj)
    elif strategy == "independent_set":
        groups = _independent_sets(adj)
    else:
        raise ValueError(f"unknown coloring strategy {strategy!r}")
    return _verified(terms, groups, strategy)


def partition_terms(terms: Sequence[PauliTerm], strategy: str = "sequential") -> Partition:
    if strategy == "sequential":
        return partition_sequential(terms)
    if strategy in STRATEGIES:
        return partition_coloring(terms, strategy)
    raise ValueError(f"unknown partition strategy {strategy!r}; choose from {STRATEGIES}")
