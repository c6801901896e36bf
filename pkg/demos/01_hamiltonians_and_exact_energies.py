"""Bundled molecular Hamiltonians: loading, expectations, exact energies.

Each data file stores a qubit Hamiltonian as coefficient-weighted Pauli
strings.  The companion .ref file pins the exact ground energy obtained by
dense diagonalization when the data was generated; here we recompute it.
"""

import numpy as np

from rlqas import (
    bundled_names,
    bundled_path,
    exact_ground_energy,
    expectation,
    init_state,
    load_hamiltonian,
    load_reference_energy,
)

for name in bundled_names():
    path = bundled_path(name)
    h = load_hamiltonian(path)
    ref = load_reference_energy(path.with_suffix(".ref"))
    e0 = exact_ground_energy(h)
    print(f"{name}: {h.n_qubits} qubits, {len(h.terms)} terms")
    print(f"  molecule {h.metadata.get('molecule')}  mapping {h.metadata.get('mapping')}")
    print(f"  exact ground energy {e0:.10f} Ha (reference file: {ref:.10f})")

    # the Hartree-Fock determinant recorded in the file metadata
    hf = h.metadata["hf_state"]
    e_hf = expectation(h, init_state(h.n_qubits, hf))
    print(f"  reference determinant |{hf}>: {e_hf:.10f} Ha "
          f"(correlation energy {e_hf - e0:.3e})")
    print()

# term-by-term expectation agrees with the dense quadratic form
h = load_hamiltonian(bundled_path("h2_4q_jw"))
rng = np.random.default_rng(1)
psi = rng.normal(size=16) + 1j * rng.normal(size=16)
psi /= np.linalg.norm(psi)
dense = h.dense_matrix()
direct = float(np.real(psi.conj() @ (dense @ psi)))
print(f"random state check: term-by-term {expectation(h, psi):.12f} "
      f"vs dense {direct:.12f}")
