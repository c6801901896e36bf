"""Weighted Pauli-string Hamiltonians loaded from data files.

Convention used everywhere in this package: character ``q`` of a Pauli string
acts on qubit ``q``, and qubit ``q`` is bit ``q`` of the amplitude index
(so the leftmost character is the least-significant bit).
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

try:
    from ._kernels import expectation_sums as _expectation_sums_jit
except ImportError:  # numba unavailable; the numpy path is equivalent
    _expectation_sums_jit = None

PAULI_CHARS = "IXYZ"

PAULI_MATRICES = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex),
    "Y": np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex),
    "Z": np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex),
}

DENSE_QUBIT_LIMIT = 10

DATA_DIR = Path(__file__).resolve().parent / "data"


class HamiltonianFormatError(ValueError):
    """Raised when a Hamiltonian data file violates the text format."""


@dataclass(frozen=True)
class PauliString:
    """A tensor product of single-qubit Paulis, one character per qubit."""

    ops: str

    def __post_init__(self):
        if not self.ops:
            raise ValueError("empty Pauli string")
        bad = set(self.ops) - set(PAULI_CHARS)
        if bad:
            raise ValueError(f"invalid Pauli labels {sorted(bad)} in {self.ops!r}")

    def __len__(self):
        return len(self.ops)

    def __str__(self):
        return self.ops

    def perm_phase(self):
        """Permutation/phase form: (P psi)[i] = phase[i] * psi[perm[i]]."""
        n = len(self.ops)
        idx = np.arange(2**n)
        flip = 0
        phase = np.ones(2**n, dtype=complex)
        for q, ch in enumerate(self.ops):
            if ch == "I":
                continue
            bit = (idx >> q) & 1
            if ch == "X":
                flip |= 1 << q
            elif ch == "Y":
                flip |= 1 << q
                phase = phase * np.where(bit == 0, -1.0j, 1.0j)
            else:  # Z
                phase = phase * np.where(bit == 0, 1.0, -1.0)
        return idx ^ flip, phase

    def dense(self):
        m = np.array([[1.0]], dtype=complex)
        for q in range(len(self.ops) - 1, -1, -1):  # high bit first under kron
            m = np.kron(m, PAULI_MATRICES[self.ops[q]])
        return m


@dataclass
class PauliHamiltonian:
    """A sum of real-weighted Pauli strings over a fixed number of qubits."""

    n_qubits: int
    terms: list
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n_qubits < 1:
            raise ValueError("n_qubits must be positive")
        if not self.terms:
            raise HamiltonianFormatError("Hamiltonian has zero terms")
        norm = []
        for coeff, string in self.terms:
            if isinstance(string, str):
                string = PauliString(string)
            coeff = float(coeff)
            if not np.isfinite(coeff):
                raise ValueError(f"non-finite coefficient {coeff}")
            if len(string) != self.n_qubits:
                raise HamiltonianFormatError(
                    f"inconsistent qubit count: term {string} has length "
                    f"{len(string)}, expected {self.n_qubits}"
                )
            norm.append((coeff, string))
        self.terms = norm
        self._compiled = None
        self._ground = None

    # -- fast term-by-term application ------------------------------------

    def compiled(self):
        """(coeffs, perms, phases) arrays for vectorized expectation values."""
        if self._compiled is None:
            coeffs = np.array([c for c, _ in self.terms])
            perms = np.empty((len(self.terms), 2**self.n_qubits), dtype=np.intp)
            phases = np.empty((len(self.terms), 2**self.n_qubits), dtype=complex)
            for k, (_, string) in enumerate(self.terms):
                perms[k], phases[k] = string.perm_phase()
            self._compiled = (coeffs, perms, phases)
        return self._compiled

    def dense_matrix(self):
        """Explicit 2^N x 2^N matrix; oracle/reference use only."""
        if self.n_qubits > DENSE_QUBIT_LIMIT:
            raise ValueError(f"dense matrix limited to {DENSE_QUBIT_LIMIT} qubits")
        dim = 2**self.n_qubits
        m = np.zeros((dim, dim), dtype=complex)
        for coeff, string in self.terms:
            m += coeff * string.dense()
        return m


def expectation_batch(h: PauliHamiltonian, states: np.ndarray) -> np.ndarray:
    """<psi|H|psi> for each row of `states`, term by term (no dense matrix)."""
    states = np.atleast_2d(states)
    dim = 2**h.n_qubits
    if states.shape[1] != dim:
        raise ValueError(f"state has {states.shape[1]} amplitudes, expected {dim}")
    coeffs, perms, phases = h.compiled()
    if _expectation_sums_jit is not None:
        energies = _expectation_sums_jit(
            np.ascontiguousarray(states, dtype=complex), coeffs, perms, phases
        )
    else:
        permuted = states[:, perms]                  # (B, T, dim)
        vals = np.einsum("bi,ti,bti->bt", states.conj(), phases, permuted)
        energies = vals @ coeffs
    if np.max(np.abs(energies.imag)) >= 1e-10:
        raise AssertionError("expectation value has non-negligible imaginary part")
    return energies.real


def expectation(h: PauliHamiltonian, psi: np.ndarray) -> float:
    """Energy of a normalized state under `h`.

    Raises if the state dimension is wrong or its norm deviates from 1 by
    more than 1e-8.
    """
    psi = np.asarray(psi)
    if psi.ndim != 1 or psi.shape[0] != 2**h.n_qubits:
        raise ValueError(
            f"state has shape {psi.shape}, expected ({2**h.n_qubits},)"
        )
    norm = np.linalg.norm(psi)
    if abs(norm - 1.0) > 1e-8:
        raise ValueError(f"state is not normalized: |psi| = {norm}")
    return float(expectation_batch(h, psi[None, :])[0])


def exact_ground_energy(h: PauliHamiltonian) -> float:
    """Minimum eigenvalue of the dense matrix (cached per Hamiltonian)."""
    if h._ground is None:
        if h.n_qubits > DENSE_QUBIT_LIMIT:
            raise ValueError(
                f"exact diagonalization limited to {DENSE_QUBIT_LIMIT} qubits"
            )
        h._ground = float(np.linalg.eigvalsh(h.dense_matrix())[0])
    return h._ground


# -- file I/O ---------------------------------------------------------------

_META_RE = re.compile(r"^#\s*([A-Za-z0-9_]+)\s*:\s*(.+?)\s*$")


def load_hamiltonian(path) -> PauliHamiltonian:
    """Parse the one-term-per-line text format.

    Lines are `<coefficient> <Pauli string>`; `#` starts a comment and blank
    lines are skipped.  Comments of the form `# key: value` are collected
    into the metadata dict.
    """
    path = Path(path)
    terms = []
    metadata = {}
    n_qubits = None
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = _META_RE.match(line)
            if m:
                metadata[m.group(1)] = m.group(2)
            continue
        parts = line.split()
        if len(parts) != 2:
            raise HamiltonianFormatError(
                f"{path.name}:{lineno}: expected '<coefficient> <string>', got {raw!r}"
            )
        try:
            coeff = float(parts[0])
        except ValueError as exc:
            raise HamiltonianFormatError(
                f"{path.name}:{lineno}: bad coefficient {parts[0]!r}"
            ) from exc
        string = PauliString(parts[1])
        if n_qubits is None:
            n_qubits = len(string)
        elif len(string) != n_qubits:
            raise HamiltonianFormatError(
                f"{path.name}:{lineno}: inconsistent qubit count "
                f"({len(string)} vs {n_qubits})"
            )
        terms.append((coeff, string))
    if not terms:
        raise HamiltonianFormatError(f"{path.name}: no Hamiltonian terms found")
    return PauliHamiltonian(n_qubits=n_qubits, terms=terms, metadata=metadata)


def load_reference_energy(path) -> float:
    """Read the companion `exact_ground_energy=<float>` file."""
    text = Path(path).read_text().strip()
    key, _, value = text.partition("=")
    if key.strip() != "exact_ground_energy":
        raise HamiltonianFormatError(f"unexpected reference file content: {text!r}")
    return float(value)


def bundled_path(name: str) -> Path:
    """Path of a bundled data file, e.g. bundled_path('h2_4q_jw')."""
    p = DATA_DIR / f"{name}.txt"
    if not p.exists():
        available = sorted(f.stem for f in DATA_DIR.glob("*.txt"))
        raise FileNotFoundError(f"no bundled Hamiltonian {name!r}; have {available}")
    return p


def bundled_names() -> list:
    return sorted(f.stem for f in DATA_DIR.glob("*.txt"))
