"""RL environment: observation encoding, action space, reward, curriculum.

An episode grows a circuit one gate at a time; after every placement the
angles are re-optimized by the VQE inner loop and the agent is rewarded on
the relative improvement of the energy error.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, replace

import numpy as np

from .circuits import Circuit, circuit_metrics, circuit_to_json, init_state
from .hamiltonian import PauliHamiltonian, exact_ground_energy, expectation
from .vqe import vqe_minimize

log = logging.getLogger(__name__)

ROTATION_ORDER = ("RX", "RY", "RZ")
N_1Q = len(ROTATION_ORDER)

CHEMICAL_ACCURACY = 0.0016  # Hartree


@dataclass(frozen=True)
class Action:
    kind: str
    qubits: tuple

    def __str__(self):
        return f"{self.kind}({','.join(str(q) for q in self.qubits)})"


def build_action_space(allowed_edges, n_qubits: int):
    """Deterministic action list: CX pairs first, then rotations.

    Both orientations of every allowed edge are offered, sorted
    lexicographically; rotations are qubit-major with RX < RY < RZ.
    """
    pairs = set()
    for u, v in allowed_edges:
        if not (0 <= u < n_qubits and 0 <= v < n_qubits) or u == v:
            raise ValueError(f"edge ({u},{v}) invalid for {n_qubits} qubits")
        pairs.add((u, v))
        pairs.add((v, u))
    actions = [Action("CX", p) for p in sorted(pairs)]
    for q in range(n_qubits):
        for kind in ROTATION_ORDER:
            actions.append(Action(kind, (q,)))
    return actions


def encode_observation(circuit: Circuit, d_max: int) -> np.ndarray:
    """One-hot tensor of shape (d_max, N, N + 3); all zeros past the last gate.

    Slot t holds a single 1: at (t, control, target) for a CX, or at
    (t, qubit, N + kind) for a rotation with kind indexed RX=0, RY=1, RZ=2.
    """
    if len(circuit) > d_max:
        raise ValueError(f"circuit has {len(circuit)} gates, d_max is {d_max}")
    n = circuit.n_qubits
    obs = np.zeros((d_max, n, n + N_1Q), dtype=np.float64)
    for t, gate in enumerate(circuit.gates):
        if gate.kind == "CX":
            control, target = gate.qubits
            obs[t, control, target] = 1.0
        else:
            obs[t, gate.qubits[0], n + ROTATION_ORDER.index(gate.kind)] = 1.0
    return obs


def decode_observation(obs: np.ndarray):
    """Inverse of encode_observation up to angles: list of (kind, qubits)."""
    d_max, n, width = obs.shape
    if width != n + N_1Q:
        raise ValueError(f"unexpected observation width {width} for {n} qubits")
    gates = []
    for t in range(d_max):
        hot = np.argwhere(obs[t] != 0)
        if hot.shape[0] == 0:
            break
        if hot.shape[0] > 1:
            raise ValueError(f"slot {t} holds {hot.shape[0]} entries, expected 1")
        row, col = (int(x) for x in hot[0])
        if col < n:
            gates.append(("CX", (row, col)))
        else:
            gates.append((ROTATION_ORDER[col - n], (row,)))
    return gates


def compute_reward(c_t, c_prev, c_min, xi, t, d_max) -> float:
    """Piecewise reward on the cost sequence.

    5 on reaching the threshold, -5 on exhausting the budget above it,
    otherwise the improvement ratio (c_prev - c_t) / (c_prev - c_min)
    clamped from below at -1.
    """
    if c_t < xi:
        return 5.0
    if t >= d_max:
        return -5.0
    denom = c_prev - c_min
    if denom <= 1e-12:
        # previous cost already at (or numerically below) the floor; the
        # ratio is ill-defined, so fall back to the sign of the change
        log.warning(
            "reward denominator guard hit: c_prev=%r c_min=%r", c_prev, c_min
        )
        return 1.0 if c_t < c_prev else -1.0
    return float(max((c_prev - c_t) / denom, -1.0))


@dataclass(frozen=True)
class CurriculumState:
    """Greedy success-threshold schedule with a shrinking amortization radius."""

    xi: float = 0.005
    delta: float = 0.0001
    delta_step: float = 0.00001
    interval: int = 500
    xi_final: float = CHEMICAL_ACCURACY
    successes_per_shrink: int = 50
    success_count: int = 0


def update_threshold(cs: CurriculumState, recent_errors) -> CurriculumState:
    """Tighten xi toward (best recent error + delta), never below xi_final."""
    recent_errors = list(recent_errors)
    if not recent_errors:
        return cs
    candidate = min(recent_errors) + cs.delta
    xi = max(cs.xi_final, min(cs.xi, candidate))
    return replace(cs, xi=xi)


def record_success(cs: CurriculumState) -> CurriculumState:
    """Count a solved episode; every 50th success shrinks delta by one step."""
    count = cs.success_count + 1
    delta = cs.delta
    if count % cs.successes_per_shrink == 0:
        delta = max(0.0, delta - cs.delta_step)
    return replace(cs, success_count=count, delta=delta)


@dataclass
class StepRecord:
    action: int
    cost: float
    reward: float


@dataclass
class EpisodeRecord:
    episode: int
    phase: str  # "training" | "testing"
    steps: list
    final_error: float
    success: bool
    depth: int
    cnot: int
    rot: int
    seed: int
    topology: str
    cut: str
    xi_current: float
    circuit_json: str

    def to_json_dict(self):
        return {
            "episode": self.episode,
            "phase": self.phase,
            "steps": [[s.action, s.cost, s.reward] for s in self.steps],
            "final_error": self.final_error,
            "success": self.success,
            "depth": self.depth,
            "cnot": self.cnot,
            "rot": self.rot,
            "seed": self.seed,
            "topology": self.topology,
            "cut": self.cut,
            "xi_current": self.xi_current,
            "circuit": self.circuit_json,
        }


class CircuitEnv:
    """One growing-circuit episode at a time around the VQE inner loop."""

    def __init__(
        self,
        hamiltonian: PauliHamiltonian,
        actions,
        d_max: int,
        *,
        initial_bits: str = "",
        vqe_budget: int = 300,
        vqe_lr: float = 0.01,
        xi_final: float = CHEMICAL_ACCURACY,
    ):
        self.h = hamiltonian
        self.actions = list(actions)
        self.d_max = int(d_max)
        self.initial = init_state(hamiltonian.n_qubits, initial_bits)
        self.vqe_budget = vqe_budget
        self.vqe_lr = vqe_lr
        self.xi_final = xi_final
        self.c_min = exact_ground_energy(hamiltonian)
        self.xi = xi_final
        self.obs_shape = (self.d_max, hamiltonian.n_qubits, hamiltonian.n_qubits + N_1Q)
        self.circuit = None
        self.reset()

    @property
    def n_actions(self):
        return len(self.actions)

    def reset(self, xi: float | None = None) -> np.ndarray:
        """Start a fresh episode; `xi` sets the curriculum threshold to use."""
        if xi is not None:
            self.xi = float(xi)
        self.circuit = Circuit(self.h.n_qubits)
        self.thetas = np.zeros(0)
        self.t = 0
        self.energy = expectation(self.h, self.initial)
        self.error = self.energy - self.c_min
        self.done = False
        self.steps = []
        return encode_observation(self.circuit, self.d_max)

    def step(self, action_index: int):
        """Append the chosen gate, re-optimize, and score the improvement."""
        if self.done:
            raise RuntimeError("episode is done; call reset()")
        if not (0 <= action_index < len(self.actions)):
            raise IndexError(f"action index {action_index} out of range")
        action = self.actions[action_index]
        self.circuit.append(action.kind, *action.qubits)
        self.t += 1

        result = vqe_minimize(
            self.circuit,
            self.h,
            warm_start=self.thetas,
            budget=self.vqe_budget,
            initial=self.initial,
            lr=self.vqe_lr,
        )
        self.thetas = result.best_thetas
        prev_error = self.error
        self.energy = result.energy
        self.error = result.error

        reward = compute_reward(self.error, prev_error, 0.0, self.xi, self.t, self.d_max)
        self.done = self.error < self.xi or self.t >= self.d_max
        self.steps.append(StepRecord(action_index, self.energy, reward))
        obs = encode_observation(self.circuit, self.d_max)
        info = {
            "energy": self.energy,
            "error": self.error,
            "success": self.error < self.xi_final,
            "action": action,
        }
        return obs, reward, self.done, info

    def episode_record(self, episode, phase, seed, topology, cut) -> EpisodeRecord:
        metrics = circuit_metrics(self.circuit)
        return EpisodeRecord(
            episode=episode,
            phase=phase,
            steps=list(self.steps),
            final_error=self.error,
            success=bool(self.error < self.xi_final),
            depth=metrics.depth,
            cnot=metrics.cnot_count,
            rot=metrics.rotation_count,
            seed=seed,
            topology=topology,
            cut=cut,
            xi_current=self.xi,
            circuit_json=circuit_to_json(self.circuit, self.thetas),
        )
