"""Inner-loop variational minimization of circuit parameters.

Gradients come from the parameter-shift rule, which is exact for the
RX/RY/RZ generators, and the optimizer is plain ADAM with best-so-far
bookkeeping so the returned energy can never exceed the warm-start energy.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuits import Circuit, _gate_program, init_state, simulate, simulate_batch
from .hamiltonian import PauliHamiltonian, exact_ground_energy, expectation_batch

try:
    from ._kernels import shift_energy_gradient as _shift_energy_gradient_jit
except ImportError:  # numba unavailable; the numpy path is equivalent
    _shift_energy_gradient_jit = None


@dataclass
class VqeResult:
    best_thetas: np.ndarray
    energy: float
    error: float
    iterations_used: int


def parameter_shift_gradient(
    circuit: Circuit,
    h: PauliHamiltonian,
    thetas,
    initial: np.ndarray | None = None,
) -> np.ndarray:
    """dE/dtheta_k = (E(theta + pi/2 e_k) - E(theta - pi/2 e_k)) / 2."""
    thetas = np.asarray(thetas, dtype=float).reshape(-1)
    p = circuit.n_params
    if thetas.shape[0] != p:
        raise ValueError(f"{thetas.shape[0]} parameters supplied, circuit has {p}")
    if p == 0:
        return np.zeros(0)
    if initial is None:
        initial = init_state(circuit.n_qubits)
    shifted = np.repeat(thetas[None, :], 2 * p, axis=0)
    rows = np.arange(p)
    shifted[rows, rows] += np.pi / 2.0
    shifted[p + rows, rows] -= np.pi / 2.0
    energies = expectation_batch(h, simulate_batch(circuit, shifted, initial))
    return (energies[:p] - energies[p:]) / 2.0


def _energy_and_gradient(circuit, h, thetas, initial):
    """Single batched pass: E(theta) plus all parameter-shift components."""
    p = thetas.shape[0]
    batch = np.repeat(thetas[None, :], 2 * p + 1, axis=0)
    rows = np.arange(p)
    batch[1 + rows, rows] += np.pi / 2.0
    batch[1 + p + rows, rows] -= np.pi / 2.0
    energies = expectation_batch(h, simulate_batch(circuit, batch, initial))
    return energies[0], (energies[1 : 1 + p] - energies[1 + p :]) / 2.0


def _make_evaluator(circuit, h, initial):
    """Per-call closure; the compiled path skips all per-iteration setup."""
    if _shift_energy_gradient_jit is None:
        return lambda thetas: _energy_and_gradient(circuit, h, thetas, initial)
    program = _gate_program(circuit)
    coeffs, perms, phases = h.compiled()
    init = np.ascontiguousarray(initial, dtype=complex)

    def evaluate(thetas):
        sums, grad = _shift_energy_gradient_jit(
            *program, thetas, init, coeffs, perms, phases
        )
        if np.max(np.abs(sums.imag)) >= 1e-10:
            raise AssertionError(
                "expectation value has non-negligible imaginary part"
            )
        return float(sums[0].real), grad

    return evaluate


def vqe_minimize(
    circuit: Circuit,
    h: PauliHamiltonian,
    warm_start=None,
    budget: int = 300,
    *,
    initial: np.ndarray | None = None,
    lr: float = 0.01,
    seed: int = 0,
    stall_tol: float = 1e-10,
    stall_patience: int = 10,
) -> VqeResult:
    """ADAM descent on the circuit energy; returns the best point visited.

    `warm_start` seeds the angle vector (missing trailing entries for newly
    appended gates are filled with 0, which leaves those rotations as
    identities); with no warm start a small seeded random vector is used so
    that exact saddle points such as all-zero angles do not pin the run.
    """
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if initial is None:
        initial = init_state(circuit.n_qubits)
    p = circuit.n_params
    if warm_start is None:
        rng = np.random.default_rng(seed)
        thetas = rng.uniform(-0.1, 0.1, size=p)
    else:
        warm = np.asarray(warm_start, dtype=float).reshape(-1)
        if warm.shape[0] > p:
            raise ValueError(f"warm start has {warm.shape[0]} angles, circuit {p}")
        thetas = np.zeros(p)
        thetas[: warm.shape[0]] = warm

    c_min = exact_ground_energy(h)

    if p == 0:
        energy = float(expectation_batch(h, simulate(circuit, thetas, initial)[None, :])[0])
        return VqeResult(thetas, energy, energy - c_min, 0)

    evaluate = _make_evaluator(circuit, h, initial)
    m = np.zeros(p)
    v = np.zeros(p)
    beta1, beta2, eps = 0.9, 0.999, 1e-8
    best_thetas = thetas.copy()
    best_energy = np.inf
    prev_energy = None
    stall = 0
    used = 0
    for it in range(1, budget + 1):
        used = it
        energy, grad = evaluate(thetas)
        if energy < best_energy:
            best_energy = energy
            best_thetas = thetas.copy()
        if it == 1 and np.max(np.abs(grad), initial=0.0) < 1e-12:
            # Exactly stationary start.  Zero-initialized fresh angles sit on
            # a saddle whenever the state is a computational-basis vector and
            # no Hamiltonian term links it to single-flip neighbours, so a
            # plain gradient step would never move.  Nudge deterministically;
            # best-so-far bookkeeping keeps the unperturbed point if the
            # nudge does not pay off.
            thetas = thetas + np.random.default_rng(seed).uniform(-0.05, 0.05, p)
            continue
        if prev_energy is not None and abs(energy - prev_energy) < stall_tol:
            stall += 1
            if stall >= stall_patience:
                break
        else:
            stall = 0
        prev_energy = energy
        m = beta1 * m + (1.0 - beta1) * grad
        v = beta2 * v + (1.0 - beta2) * grad * grad
        mhat = m / (1.0 - beta1**it)
        vhat = v / (1.0 - beta2**it)
        thetas = thetas - lr * mhat / (np.sqrt(vhat) + eps)

    energy = float(expectation_batch(h, simulate(circuit, thetas, initial)[None, :])[0])
    if energy < best_energy:
        best_energy = energy
        best_thetas = thetas.copy()
    return VqeResult(best_thetas, float(best_energy), float(best_energy - c_min), used)
