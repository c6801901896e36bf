"""The VQE inner loop: parameter-shift gradients and ADAM descent.

Builds a small fixed ansatz for the 4-qubit hydrogen Hamiltonian and drives
it below chemical accuracy, printing the error as the optimizer progresses.
"""

import numpy as np

from rlqas import (
    CHEMICAL_ACCURACY,
    Circuit,
    bundled_path,
    exact_ground_energy,
    load_hamiltonian,
    parameter_shift_gradient,
    vqe_minimize,
)

h = load_hamiltonian(bundled_path("h2_4q_jw"))
print(f"target: E0 = {exact_ground_energy(h):.10f} Ha, "
      f"chemical accuracy = {CHEMICAL_ACCURACY} Ha\n")

# two entangling layers sandwiched between RY rotations
circuit = Circuit(4)
for _ in range(2):
    for q in range(4):
        circuit.append("RY", q)
    for q in range(3):
        circuit.append("CX", q, q + 1)
for q in range(4):
    circuit.append("RY", q)
print(f"ansatz: {len(circuit)} gates, {circuit.n_params} parameters")

# exact gradients from the pi/2 shift rule
rng = np.random.default_rng(0)
thetas = rng.uniform(-0.5, 0.5, circuit.n_params)
grad = parameter_shift_gradient(circuit, h, thetas)
print(f"gradient at a random point: |g|_max = {np.max(np.abs(grad)):.4f}\n")

warm = thetas
for budget in (50, 200, 800, 2000):
    result = vqe_minimize(circuit, h, warm_start=warm, budget=budget, lr=0.05)
    warm = result.best_thetas
    tag = "  <- chemically accurate" if result.error < CHEMICAL_ACCURACY else ""
    print(f"after {budget:>4} more iterations: error {result.error:.3e} Ha{tag}")
