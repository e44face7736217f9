import numpy as np
import pytest

from simdiag.pauli import PauliTerm, Tableau
from simdiag.sample import sample_basis

# Z block of the six-qubit greedy elimination example (X block is the identity).
GREEDY_Z = np.array(
    [
        [0, 0, 0, 1, 1, 1],
        [0, 1, 1, 1, 0, 1],
        [0, 1, 1, 1, 1, 1],
        [1, 1, 1, 0, 1, 0],
        [1, 0, 1, 1, 0, 0],
        [1, 1, 1, 0, 0, 0],
    ],
    dtype=np.uint8,
)

WORKED = ("IXX", "ZYZ", "XXI")

ACCEPTANCE_RESULTS: list[tuple[int, bool, str]] = []


def greedy_tableau() -> Tableau:
    return Tableau(np.eye(6, dtype=np.uint8), GREEDY_Z.copy())


def random_commuting(rng: np.random.Generator, n: int, m: int) -> Tableau:
    """``m`` commuting Paulis on ``n`` qubits; rank deficient when ``m < n``."""
    if m >= n:
        return sample_basis(n, m, rng)
    t = sample_basis(n, n, rng)
    return Tableau(t.x[:m], t.z[:m], t.signs[:m])


def tableau_terms(t: Tableau, angles) -> list[PauliTerm]:
    """Terms whose coefficients carry the row signs."""
    return [
        PauliTerm(t.row_string(i, signed=False), float(a) * (-1 if t.signs[i] else 1))
        for i, a in enumerate(angles)
    ]


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for num, ok, text in sorted(ACCEPTANCE_RESULTS):
        terminalreporter.write_line(f"criterion {num}: {'PASS' if ok else 'FAIL'}  {text}")
