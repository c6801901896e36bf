"""JIT-compiled inner loops for statevector simulation and expectations.

Importing this module requires numba; callers fall back to the pure-numpy
implementations when it is missing.  Loop orders are fixed, so results are
reproducible run to run on the same backend.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def run_gates(states, kinds, qubit_a, qubit_b, param_idx, thetas):
    """Apply a gate program in place to a batch of states.

    states: (B, 2^n) complex128; thetas: (B, P); kinds coded RX=0, RY=1,
    RZ=2, CX=3 with qubit_a = rotation qubit or control, qubit_b = target.
    """
    batch, dim = states.shape
    for g in range(kinds.shape[0]):
        kind = kinds[g]
        if kind == 3:
            control_bit = 1 << qubit_a[g]
            target_bit = 1 << qubit_b[g]
            for b in range(batch):
                for i in range(dim):
                    if (i & control_bit) != 0 and (i & target_bit) == 0:
                        j = i | target_bit
                        tmp = states[b, i]
                        states[b, i] = states[b, j]
                        states[b, j] = tmp
        else:
            qubit_bit = 1 << qubit_a[g]
            p = param_idx[g]
            for b in range(batch):
                half = 0.5 * thetas[b, p]
                c = np.cos(half)
                s = np.sin(half)
                if kind == 0:  # RX
                    for i in range(dim):
                        if (i & qubit_bit) == 0:
                            j = i | qubit_bit
                            a0 = states[b, i]
                            a1 = states[b, j]
                            states[b, i] = c * a0 - 1j * (s * a1)
                            states[b, j] = c * a1 - 1j * (s * a0)
                elif kind == 1:  # RY
                    for i in range(dim):
                        if (i & qubit_bit) == 0:
                            j = i | qubit_bit
                            a0 = states[b, i]
                            a1 = states[b, j]
                            states[b, i] = c * a0 - s * a1
                            states[b, j] = s * a0 + c * a1
                else:  # RZ
                    lo = c - 1j * s
                    hi = c + 1j * s
                    for i in range(dim):
                        if (i & qubit_bit) == 0:
                            states[b, i] = lo * states[b, i]
                        else:
                            states[b, i] = hi * states[b, i]


@njit(cache=True)
def shift_energy_gradient(kinds, qubit_a, qubit_b, param_idx, thetas, initial,
                          coeffs, perms, phases):
    """Energy at `thetas` plus the full parameter-shift gradient.

    One batched pass over 2P+1 parameter rows: the center point and both
    pi/2 shifts of every coordinate.  Returns (complex energies, gradient).
    """
    p = thetas.shape[0]
    batch = 2 * p + 1
    dim = initial.shape[0]
    states = np.empty((batch, dim), dtype=np.complex128)
    for r in range(batch):
        for i in range(dim):
            states[r, i] = initial[i]
    shifted = np.empty((batch, p))
    for r in range(batch):
        for k in range(p):
            shifted[r, k] = thetas[k]
    half_pi = 0.5 * np.pi
    for k in range(p):
        shifted[1 + k, k] += half_pi
        shifted[1 + p + k, k] -= half_pi
    run_gates(states, kinds, qubit_a, qubit_b, param_idx, shifted)
    sums = expectation_sums(states, coeffs, perms, phases)
    grad = np.empty(p)
    for k in range(p):
        grad[k] = 0.5 * (sums[1 + k].real - sums[1 + p + k].real)
    return sums, grad


@njit(cache=True)
def expectation_sums(states, coeffs, perms, phases):
    """Complex <psi|H|psi> per row, term by term over the compiled Paulis."""
    batch, dim = states.shape
    n_terms = coeffs.shape[0]
    out = np.zeros(batch, dtype=np.complex128)
    for b in range(batch):
        total = 0.0j
        for t in range(n_terms):
            acc = 0.0j
            for i in range(dim):
                acc += np.conj(states[b, i]) * phases[t, i] * states[b, perms[t, i]]
            total += coeffs[t] * acc
        out[b] = total
    return out
