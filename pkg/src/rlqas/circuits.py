"""Gate-list circuits and exact statevector simulation.

The gate set is the RL action alphabet: parameterized RX/RY/RZ rotations and
the CX entangler.  States are plain complex ndarrays of length 2^n with
qubit q stored in bit q of the amplitude index.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

import numpy as np

try:
    from ._kernels import run_gates as _run_gates_jit
except ImportError:  # numba unavailable; the numpy path is equivalent
    _run_gates_jit = None

ROTATION_KINDS = ("RX", "RY", "RZ")
GATE_KINDS = ROTATION_KINDS + ("CX",)

_KIND_CODES = {"RX": 0, "RY": 1, "RZ": 2, "CX": 3}


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple
    param_index: int | None = None

    def __post_init__(self):
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if self.kind == "CX":
            if len(self.qubits) != 2 or self.qubits[0] == self.qubits[1]:
                raise ValueError(f"CX needs two distinct qubits, got {self.qubits}")
            if self.param_index is not None:
                raise ValueError("CX carries no parameter")
        else:
            if len(self.qubits) != 1:
                raise ValueError(f"{self.kind} acts on one qubit, got {self.qubits}")
            if self.param_index is None:
                raise ValueError(f"{self.kind} requires a param_index")

    @property
    def is_rotation(self):
        return self.kind != "CX"


@dataclass
class Circuit:
    """Ordered gate list; rotation parameters are indexed in append order."""

    n_qubits: int
    gates: list = field(default_factory=list)

    def __post_init__(self):
        expected = 0
        for g in self.gates:
            if max(g.qubits) >= self.n_qubits or min(g.qubits) < 0:
                raise ValueError(f"gate {g} out of range for {self.n_qubits} qubits")
            if g.is_rotation:
                if g.param_index != expected:
                    raise ValueError(
                        f"param_index {g.param_index} out of order (expected {expected})"
                    )
                expected += 1

    @property
    def n_params(self):
        return sum(1 for g in self.gates if g.is_rotation)

    def __len__(self):
        return len(self.gates)

    def append(self, kind: str, *qubits: int):
        """Add a gate at the end, auto-assigning the next param index."""
        idx = self.n_params if kind in ROTATION_KINDS else None
        gate = Gate(kind, tuple(qubits), idx)
        if max(gate.qubits) >= self.n_qubits or min(gate.qubits) < 0:
            raise ValueError(f"gate {gate} out of range for {self.n_qubits} qubits")
        self.gates.append(gate)
        return gate

    def copy(self):
        return Circuit(self.n_qubits, list(self.gates))


class CircuitMetrics(NamedTuple):
    depth: int
    cnot_count: int
    rotation_count: int


def init_state(n_qubits: int, basis_bits="") -> np.ndarray:
    """Computational basis state; bit string character i sets qubit i."""
    if n_qubits < 1:
        raise ValueError("n_qubits must be >= 1")
    bits = [int(b) for b in basis_bits] if isinstance(basis_bits, str) else list(basis_bits)
    if len(bits) > n_qubits:
        raise ValueError(f"bit pattern {basis_bits!r} longer than {n_qubits} qubits")
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"bit pattern {basis_bits!r} is not binary")
    index = sum(b << q for q, b in enumerate(bits))
    psi = np.zeros(2**n_qubits, dtype=complex)
    psi[index] = 1.0
    return psi


@lru_cache(maxsize=None)
def _cx_perm(n_qubits: int, control: int, target: int):
    idx = np.arange(2**n_qubits)
    return np.where((idx >> control) & 1 == 1, idx ^ (1 << target), idx)


def _qubit_axes(states: np.ndarray, q: int, n_qubits: int):
    b = states.shape[0]
    return states.reshape(b, 2 ** (n_qubits - q - 1), 2, 2**q)


def _apply_rotation(states, kind, q, theta, n_qubits):
    """In place on a (B, 2^n) buffer; theta is scalar or per-row (B,)."""
    theta = np.asarray(theta, dtype=float)
    half = theta / 2.0
    if theta.ndim == 1:
        c = np.cos(half)[:, None, None]
        s = np.sin(half)[:, None, None]
    else:
        c = np.cos(half)
        s = np.sin(half)
    v = _qubit_axes(states, q, n_qubits)
    a0 = v[:, :, 0, :]
    a1 = v[:, :, 1, :]
    if kind == "RX":
        new0 = c * a0 - 1j * s * a1
        new1 = -1j * s * a0 + c * a1
    elif kind == "RY":
        new0 = c * a0 - s * a1
        new1 = s * a0 + c * a1
    elif kind == "RZ":
        new0 = (c - 1j * s) * a0
        new1 = (c + 1j * s) * a1
    else:
        raise ValueError(f"not a rotation: {kind}")
    v[:, :, 0, :] = new0
    v[:, :, 1, :] = new1


def apply_gate(psi: np.ndarray, gate: Gate, theta: float | None = None) -> np.ndarray:
    """One standard unitary: RX/RY/RZ(theta) = exp(-i theta P/2), or CX."""
    n_qubits = int(np.log2(psi.shape[0]))
    if max(gate.qubits) >= n_qubits:
        raise ValueError(f"gate {gate} out of range for {n_qubits} qubits")
    if gate.is_rotation:
        if theta is None:
            raise ValueError(f"{gate.kind} requires an angle")
        out = psi.astype(complex).copy()[None, :]
        _apply_rotation(out, gate.kind, gate.qubits[0], float(theta), n_qubits)
        return out[0]
    if theta is not None:
        raise ValueError("CX takes no angle")
    control, target = gate.qubits
    return psi[_cx_perm(n_qubits, control, target)]


def _gate_program(circuit: Circuit):
    """Arrays describing the gate list, for the compiled kernel.

    Cached by gate count; circuits only grow through append().
    """
    cached = getattr(circuit, "_program_cache", None)
    if cached is not None and cached[0] == len(circuit.gates):
        return cached[1]
    g = len(circuit.gates)
    kinds = np.empty(g, dtype=np.int8)
    qubit_a = np.empty(g, dtype=np.int64)
    qubit_b = np.zeros(g, dtype=np.int64)
    param_idx = np.zeros(g, dtype=np.int64)
    for i, gate in enumerate(circuit.gates):
        kinds[i] = _KIND_CODES[gate.kind]
        qubit_a[i] = gate.qubits[0]
        if gate.kind == "CX":
            qubit_b[i] = gate.qubits[1]
        else:
            param_idx[i] = gate.param_index
    program = (kinds, qubit_a, qubit_b, param_idx)
    circuit._program_cache = (g, program)
    return program


def simulate_batch(circuit: Circuit, thetas: np.ndarray, initial: np.ndarray) -> np.ndarray:
    """Run the circuit on B parameter rows at once; returns (B, 2^n)."""
    thetas = np.atleast_2d(np.asarray(thetas, dtype=float))
    if thetas.shape[1] != circuit.n_params:
        raise ValueError(
            f"{thetas.shape[1]} parameters supplied, circuit has {circuit.n_params}"
        )
    b = thetas.shape[0]
    states = np.broadcast_to(initial, (b, initial.shape[0])).astype(complex).copy()
    if _run_gates_jit is not None:
        _run_gates_jit(states, *_gate_program(circuit), np.ascontiguousarray(thetas))
        return states
    n = circuit.n_qubits
    for gate in circuit.gates:
        if gate.is_rotation:
            _apply_rotation(states, gate.kind, gate.qubits[0], thetas[:, gate.param_index], n)
        else:
            states = states[:, _cx_perm(n, *gate.qubits)]
    return states


def simulate(circuit: Circuit, thetas, initial: np.ndarray | None = None) -> np.ndarray:
    """Apply the circuit's gates in order to `initial` (default |0...0>)."""
    if initial is None:
        initial = init_state(circuit.n_qubits)
    thetas = np.asarray(thetas, dtype=float).reshape(-1)
    if thetas.shape[0] != circuit.n_params:
        raise ValueError(
            f"{thetas.shape[0]} parameters supplied, circuit has {circuit.n_params}"
        )
    return simulate_batch(circuit, thetas[None, :], initial)[0]


def circuit_metrics(circuit: Circuit) -> CircuitMetrics:
    """Depth over the shared-qubit dependency DAG plus exact gate tallies."""
    frontier = [0] * circuit.n_qubits
    cnots = 0
    rots = 0
    for g in circuit.gates:
        level = 1 + max(frontier[q] for q in g.qubits)
        for q in g.qubits:
            frontier[q] = level
        if g.kind == "CX":
            cnots += 1
        else:
            rots += 1
    depth = max(frontier) if circuit.gates else 0
    return CircuitMetrics(depth, cnots, rots)


# -- serialization ------------------------------------------------------------


def circuit_to_json(circuit: Circuit, thetas=None) -> str:
    gates = [
        {"kind": g.kind, "qubits": list(g.qubits), "param_index": g.param_index}
        for g in circuit.gates
    ]
    payload = {"n_qubits": circuit.n_qubits, "gates": gates}
    if thetas is not None:
        payload["thetas"] = [float(t) for t in thetas]
    return json.dumps(payload)


def circuit_from_json(text: str):
    payload = json.loads(text)
    gates = [
        Gate(g["kind"], tuple(g["qubits"]), g.get("param_index"))
        for g in payload["gates"]
    ]
    circuit = Circuit(payload["n_qubits"], gates)
    thetas = payload.get("thetas")
    return circuit, (np.asarray(thetas, dtype=float) if thetas is not None else None)
