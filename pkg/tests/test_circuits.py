import numpy as np
import pytest

from rlqas import (
    Circuit,
    Gate,
    apply_gate,
    circuit_from_json,
    circuit_metrics,
    circuit_to_json,
    init_state,
    simulate,
    simulate_batch,
)


def test_init_state_basics():
    assert np.allclose(init_state(2, "00"), [1, 0, 0, 0])
    # |10>: qubit 0 set -> index 1
    assert np.allclose(init_state(2, "10"), [0, 1, 0, 0])
    psi = init_state(4, "0000")
    assert psi.shape == (16,)
    assert np.linalg.norm(psi) == pytest.approx(1.0)


def test_init_state_pattern_too_long():
    with pytest.raises(ValueError, match="longer"):
        init_state(2, "010")


def test_rx_pi_flips_with_phase():
    psi = apply_gate(init_state(1), Gate("RX", (0,), 0), np.pi)
    assert np.allclose(psi, [0.0, -1.0j], atol=1e-12)


def test_cx_truth_table():
    # |10>: control qubit 0 is 1 -> target flips to |11> (index 3)
    psi = apply_gate(init_state(2, "10"), Gate("CX", (0, 1)))
    assert np.allclose(psi, [0, 0, 0, 1])
    # control 0 in |01> is 0 -> unchanged
    psi = apply_gate(init_state(2, "01"), Gate("CX", (0, 1)))
    assert np.allclose(psi, init_state(2, "01"))


def test_rz_phase_on_zero():
    theta = 0.731
    psi = apply_gate(init_state(1), Gate("RZ", (0,), 0), theta)
    assert np.allclose(psi, [np.exp(-1j * theta / 2), 0.0], atol=1e-12)


def test_apply_gate_argument_errors():
    with pytest.raises(ValueError, match="requires an angle"):
        apply_gate(init_state(1), Gate("RX", (0,), 0))
    with pytest.raises(ValueError, match="no angle"):
        apply_gate(init_state(2), Gate("CX", (0, 1)), 0.3)
    with pytest.raises(ValueError, match="out of range"):
        apply_gate(init_state(1), Gate("CX", (0, 1)))


def test_gate_validation():
    with pytest.raises(ValueError, match="distinct"):
        Gate("CX", (1, 1))
    with pytest.raises(ValueError, match="param_index"):
        Gate("RY", (0,))
    with pytest.raises(ValueError, match="no parameter"):
        Gate("CX", (0, 1), 0)
    with pytest.raises(ValueError, match="unknown gate"):
        Gate("H", (0,), 0)


def test_simulate_empty_circuit_returns_initial():
    init = init_state(3, "101")
    out = simulate(Circuit(3), [], init)
    assert np.allclose(out, init)


def test_simulate_single_rx():
    c = Circuit(2)
    c.append("RX", 0)
    out = simulate(c, [np.pi])
    want = np.zeros(4, dtype=complex)
    want[1] = -1.0j  # qubit 0 flipped
    assert np.allclose(out, want, atol=1e-12)


def test_zero_angles_are_identities():
    rng = np.random.default_rng(0)
    c = Circuit(3)
    cx_only = Circuit(3)
    for _ in range(12):
        if rng.random() < 0.5:
            q = int(rng.integers(3))
            c.append(rng.choice(["RX", "RY", "RZ"]), q)
        else:
            u, v = rng.choice(3, size=2, replace=False)
            c.append("CX", int(u), int(v))
            cx_only.append("CX", int(u), int(v))
    full = simulate(c, np.zeros(c.n_params))
    skeleton = simulate(cx_only, [])
    assert np.allclose(full, skeleton, atol=1e-12)


def test_param_count_mismatch():
    c = Circuit(2)
    c.append("RY", 1)
    with pytest.raises(ValueError, match="parameters supplied"):
        simulate(c, [0.1, 0.2])


def _random_circuit(rng, n_qubits, length):
    c = Circuit(n_qubits)
    for _ in range(length):
        if rng.random() < 0.4 and n_qubits > 1:
            u, v = rng.choice(n_qubits, size=2, replace=False)
            c.append("CX", int(u), int(v))
        else:
            c.append(str(rng.choice(["RX", "RY", "RZ"])), int(rng.integers(n_qubits)))
    return c


def test_norm_preserved_on_random_circuits():
    rng = np.random.default_rng(42)
    for _ in range(1000):
        n = int(rng.integers(1, 5))
        c = _random_circuit(rng, n, int(rng.integers(0, 21)))
        thetas = rng.uniform(-np.pi, np.pi, c.n_params)
        out = simulate(c, thetas)
        assert abs(np.linalg.norm(out) - 1.0) < 1e-10


def test_gate_then_inverse_restores_state():
    rng = np.random.default_rng(9)
    psi = rng.normal(size=8) + 1j * rng.normal(size=8)
    psi /= np.linalg.norm(psi)
    for kind in ("RX", "RY", "RZ"):
        theta = rng.uniform(-np.pi, np.pi)
        g = Gate(kind, (1,), 0)
        back = apply_gate(apply_gate(psi, g, theta), g, -theta)
        assert np.allclose(back, psi, atol=1e-10)
    g = Gate("CX", (2, 0))
    assert np.allclose(apply_gate(apply_gate(psi, g), g), psi, atol=1e-12)


def test_simulate_batch_matches_loop():
    rng = np.random.default_rng(3)
    c = _random_circuit(rng, 3, 10)
    thetas = rng.uniform(-np.pi, np.pi, (5, c.n_params))
    init = init_state(3)
    batch = simulate_batch(c, thetas, init)
    for row, t in zip(batch, thetas):
        assert np.allclose(row, simulate(c, t, init), atol=1e-12)


def test_metrics_empty():
    assert circuit_metrics(Circuit(3)) == (0, 0, 0)


def test_metrics_disjoint_gates_share_layer():
    c = Circuit(3)
    c.append("CX", 0, 1)
    c.append("RX", 2)
    assert circuit_metrics(c) == (1, 1, 1)


def test_metrics_shared_qubit_stacks():
    c = Circuit(3)
    c.append("CX", 0, 1)
    c.append("CX", 1, 2)
    m = circuit_metrics(c)
    assert m.depth == 2
    assert m.cnot_count == 2


def test_depth_bounds():
    rng = np.random.default_rng(17)
    for _ in range(50):
        c = _random_circuit(rng, 4, int(rng.integers(1, 15)))
        m = circuit_metrics(c)
        assert m.depth <= len(c)
    c = Circuit(2)
    for _ in range(6):
        c.append("RZ", 0)
    assert circuit_metrics(c).depth == 6


def test_json_round_trip():
    c = Circuit(3)
    c.append("RY", 0)
    c.append("CX", 0, 2)
    c.append("RZ", 1)
    thetas = np.array([0.3, -1.2])
    text = circuit_to_json(c, thetas)
    c2, thetas2 = circuit_from_json(text)
    assert c2.n_qubits == 3
    assert [g.kind for g in c2.gates] == ["RY", "CX", "RZ"]
    assert [g.qubits for g in c2.gates] == [(0,), (0, 2), (1,)]
    assert np.allclose(thetas2, thetas)
    assert np.allclose(simulate(c2, thetas2), simulate(c, thetas))


def test_param_index_ordering_enforced():
    with pytest.raises(ValueError, match="out of order"):
        Circuit(2, [Gate("RX", (0,), 1)])
