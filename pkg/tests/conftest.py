import numpy as np
import pytest

from rlqas import bundled_path, load_hamiltonian

PAULI = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}


def dense_from_terms(n_qubits, terms):
    """Independent dense builder: plain kron products, qubit q = index bit q."""
    dim = 2**n_qubits
    out = np.zeros((dim, dim), dtype=complex)
    for coeff, string in terms:
        m = np.array([[1.0]], dtype=complex)
        for q in range(n_qubits - 1, -1, -1):
            m = np.kron(m, PAULI[str(string)[q]])
        out += coeff * m
    return out


def random_state(n_qubits, rng):
    v = rng.normal(size=2**n_qubits) + 1j * rng.normal(size=2**n_qubits)
    return v / np.linalg.norm(v)


@pytest.fixture(scope="session")
def h2():
    return load_hamiltonian(bundled_path("h2_4q_jw"))


@pytest.fixture(scope="session")
def lih6():
    return load_hamiltonian(bundled_path("lih_6q_jw"))
