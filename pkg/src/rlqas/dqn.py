"""Double deep Q-network: MLP Q-function, replay buffer, training step.

Everything is plain numpy with explicit backprop.  The loss is the smooth
L1 (Huber) norm between predicted Q-values and DDQN targets; gradients flow
only through the policy network's prediction, targets are constants.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np


@dataclass
class AgentHyperparams:
    gamma: float = 0.88
    epsilon_start: float = 1.0
    epsilon_decay: float = 0.99995
    epsilon_min: float = 0.05
    batch_size: int = 1000
    learning_rate: float = 0.0001
    target_sync_interval: int = 500
    buffer_capacity: int = 20000
    hidden_layers: int = 5
    hidden_units: int = 1000
    optimizer: str = "adam"  # "adam" | "sgd"

    def __post_init__(self):
        if not (0.0 < self.gamma < 1.0):
            raise ValueError("gamma must lie in (0, 1)")
        for name in ("epsilon_start", "epsilon_decay", "epsilon_min",
                     "batch_size", "learning_rate", "target_sync_interval",
                     "buffer_capacity", "hidden_units"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")


def epsilon_at(step: int, start: float = 1.0, decay: float = 0.99995,
               floor: float = 0.05) -> float:
    """Exploration rate after `step` actions: max(floor, start * decay^step)."""
    if step < 0:
        raise ValueError("step must be >= 0")
    return max(floor, start * decay**step)


class QNetwork:
    """Fully connected rectifier MLP with a linear output layer."""

    def __init__(self, input_dim, output_dim, hidden_layers=5, hidden_units=1000,
                 rng=None):
        self.input_dim = int(input_dim)
        self.output_dim = int(output_dim)
        sizes = [self.input_dim] + [hidden_units] * hidden_layers + [self.output_dim]
        rng = rng or np.random.default_rng(0)
        self.weights = []
        self.biases = []
        for fan_in, fan_out in zip(sizes[:-1], sizes[1:]):
            bound = np.sqrt(6.0 / (fan_in + fan_out))
            self.weights.append(rng.uniform(-bound, bound, size=(fan_in, fan_out)))
            self.biases.append(np.zeros(fan_out))

    @property
    def n_layers(self):
        return len(self.weights)

    def _flatten(self, obs):
        """1D and >=3D inputs are single observations; 2D rows are a batch."""
        obs = np.asarray(obs, dtype=float)
        if obs.ndim != 2:
            if obs.size != self.input_dim:
                raise ValueError(
                    f"observation of size {obs.size} does not match input "
                    f"dim {self.input_dim}"
                )
            return obs.reshape(1, self.input_dim), True
        if obs.shape[1] != self.input_dim:
            raise ValueError(
                f"observation of size {obs.shape[1]} does not match input "
                f"dim {self.input_dim}"
            )
        return obs, False

    def forward(self, obs):
        """Q-values; accepts a single observation (any shape) or a batch."""
        x, single = self._flatten(obs)
        for i in range(self.n_layers - 1):
            x = np.maximum(x @ self.weights[i] + self.biases[i], 0.0)
        x = x @ self.weights[-1] + self.biases[-1]
        return x[0] if single else x

    def forward_cached(self, x):
        """Batch forward keeping pre/post activations for backprop."""
        acts = [x]
        for i in range(self.n_layers - 1):
            x = np.maximum(x @ self.weights[i] + self.biases[i], 0.0)
            acts.append(x)
        out = x @ self.weights[-1] + self.biases[-1]
        return out, acts

    def backward(self, acts, dout):
        """Gradients of a scalar loss wrt all weights given d(loss)/d(output)."""
        grads_w = [None] * self.n_layers
        grads_b = [None] * self.n_layers
        delta = dout
        grads_w[-1] = acts[-1].T @ delta
        grads_b[-1] = delta.sum(axis=0)
        for i in range(self.n_layers - 2, -1, -1):
            delta = (delta @ self.weights[i + 1].T) * (acts[i + 1] > 0.0)
            grads_w[i] = acts[i].T @ delta
            grads_b[i] = delta.sum(axis=0)
        return grads_w, grads_b

    def copy_from(self, other: "QNetwork"):
        self.weights = [w.copy() for w in other.weights]
        self.biases = [b.copy() for b in other.biases]

    def clone(self) -> "QNetwork":
        dup = QNetwork.__new__(QNetwork)
        dup.input_dim = self.input_dim
        dup.output_dim = self.output_dim
        dup.weights = [w.copy() for w in self.weights]
        dup.biases = [b.copy() for b in self.biases]
        return dup


class AdamOptimizer:
    """Adaptive-moment gradient descent over a QNetwork's parameters."""

    def __init__(self, net: QNetwork, beta1=0.9, beta2=0.999, eps=1e-8):
        self.beta1, self.beta2, self.eps = beta1, beta2, eps
        self.t = 0
        self.m_w = [np.zeros_like(w) for w in net.weights]
        self.v_w = [np.zeros_like(w) for w in net.weights]
        self.m_b = [np.zeros_like(b) for b in net.biases]
        self.v_b = [np.zeros_like(b) for b in net.biases]

    def apply(self, net, grads_w, grads_b, lr):
        self.t += 1
        c1 = 1.0 - self.beta1**self.t
        c2 = 1.0 - self.beta2**self.t
        for i in range(net.n_layers):
            for params, grad, m, v in (
                (net.weights, grads_w, self.m_w, self.v_w),
                (net.biases, grads_b, self.m_b, self.v_b),
            ):
                m[i] *= self.beta1
                m[i] += (1.0 - self.beta1) * grad[i]
                v[i] *= self.beta2
                v[i] += (1.0 - self.beta2) * grad[i] ** 2
                params[i] -= lr * (m[i] / c1) / (np.sqrt(v[i] / c2) + self.eps)


class Transitions(NamedTuple):
    obs: np.ndarray
    actions: np.ndarray
    rewards: np.ndarray
    next_obs: np.ndarray
    dones: np.ndarray


class ReplayBuffer:
    """Fixed-capacity ring buffer of flattened transitions."""

    def __init__(self, capacity: int, obs_dim: int):
        self.capacity = int(capacity)
        self.obs = np.zeros((self.capacity, obs_dim), dtype=np.float32)
        self.next_obs = np.zeros((self.capacity, obs_dim), dtype=np.float32)
        self.actions = np.zeros(self.capacity, dtype=np.int64)
        self.rewards = np.zeros(self.capacity, dtype=np.float64)
        self.dones = np.zeros(self.capacity, dtype=bool)
        self.cursor = 0
        self.size = 0

    def __len__(self):
        return self.size

    def push(self, obs, action, reward, next_obs, done):
        i = self.cursor
        self.obs[i] = np.asarray(obs, dtype=np.float32).reshape(-1)
        self.next_obs[i] = np.asarray(next_obs, dtype=np.float32).reshape(-1)
        self.actions[i] = action
        self.rewards[i] = reward
        self.dones[i] = done
        self.cursor = (i + 1) % self.capacity
        self.size = min(self.size + 1, self.capacity)

    def sample(self, batch_size: int, rng: np.random.Generator) -> Transitions:
        if self.size < batch_size:
            raise ValueError(f"buffer holds {self.size} < batch {batch_size}")
        idx = rng.integers(0, self.size, size=batch_size)
        return Transitions(
            self.obs[idx].astype(np.float64),
            self.actions[idx],
            self.rewards[idx],
            self.next_obs[idx].astype(np.float64),
            self.dones[idx],
        )


def select_action(net: QNetwork, obs, epsilon: float, rng: np.random.Generator) -> int:
    """Epsilon-greedy: argmax of the Q-row (first index on ties) or uniform."""
    if not (0.0 <= epsilon <= 1.0):
        raise ValueError("epsilon must lie in [0, 1]")
    if epsilon > 0.0 and rng.random() < epsilon:
        return int(rng.integers(0, net.output_dim))
    q = net.forward(obs)
    return int(np.argmax(q))


def ddqn_targets(batch: Transitions, policy: QNetwork, target: QNetwork,
                 gamma: float) -> np.ndarray:
    """Y = r for terminals, else r + gamma * Q_target(s', argmax_a Q_policy)."""
    next_actions = np.argmax(policy.forward(batch.next_obs), axis=1)
    next_q = target.forward(batch.next_obs)[np.arange(len(next_actions)), next_actions]
    return batch.rewards + gamma * next_q * (~batch.dones)


def smooth_l1(x: np.ndarray) -> np.ndarray:
    ax = np.abs(x)
    return np.where(ax < 1.0, 0.5 * x * x, ax - 0.5)


def smooth_l1_grad(x: np.ndarray) -> np.ndarray:
    return np.clip(x, -1.0, 1.0)


def td_loss_and_grads(policy: QNetwork, batch: Transitions, targets: np.ndarray):
    """Smooth-L1 loss over chosen-action Q-values plus its weight gradients."""
    q, acts = policy.forward_cached(batch.obs)
    rows = np.arange(q.shape[0])
    residual = q[rows, batch.actions] - targets
    loss = float(np.mean(smooth_l1(residual)))
    dout = np.zeros_like(q)
    dout[rows, batch.actions] = smooth_l1_grad(residual) / q.shape[0]
    grads_w, grads_b = policy.backward(acts, dout)
    return loss, grads_w, grads_b


def train_step(policy: QNetwork, target: QNetwork, buffer: ReplayBuffer,
               hp: AgentHyperparams, rng: np.random.Generator,
               optimizer: AdamOptimizer | None = None):
    """One sampled update of the policy network; None if the buffer is short."""
    if len(buffer) < hp.batch_size:
        return None
    batch = buffer.sample(hp.batch_size, rng)
    targets = ddqn_targets(batch, policy, target, hp.gamma)
    loss, grads_w, grads_b = td_loss_and_grads(policy, batch, targets)
    if hp.optimizer == "sgd" or optimizer is None:
        for i in range(policy.n_layers):
            policy.weights[i] -= hp.learning_rate * grads_w[i]
            policy.biases[i] -= hp.learning_rate * grads_b[i]
    else:
        optimizer.apply(policy, grads_w, grads_b, hp.learning_rate)
    return loss


def sync_target(policy: QNetwork, target: QNetwork, action_counter: int,
                interval: int = 500) -> bool:
    """Copy policy weights into the target every `interval` actions."""
    if action_counter % interval == 0:
        target.copy_from(policy)
        return True
    return False


# -- checkpointing -------------------------------------------------------------


def save_checkpoint(path, policy: QNetwork, target: QNetwork,
                    optimizer: AdamOptimizer, epsilon_step: int,
                    action_counter: int):
    arrays = {
        "meta": np.array([policy.input_dim, policy.output_dim, policy.n_layers,
                          epsilon_step, action_counter, optimizer.t], dtype=np.int64),
    }
    for i in range(policy.n_layers):
        arrays[f"pw{i}"] = policy.weights[i]
        arrays[f"pb{i}"] = policy.biases[i]
        arrays[f"tw{i}"] = target.weights[i]
        arrays[f"tb{i}"] = target.biases[i]
        arrays[f"mw{i}"] = optimizer.m_w[i]
        arrays[f"vw{i}"] = optimizer.v_w[i]
        arrays[f"mb{i}"] = optimizer.m_b[i]
        arrays[f"vb{i}"] = optimizer.v_b[i]
    np.savez(path, **arrays)


def load_checkpoint(path):
    data = np.load(path)
    input_dim, output_dim, n_layers, epsilon_step, action_counter, opt_t = data["meta"]
    policy = QNetwork.__new__(QNetwork)
    target = QNetwork.__new__(QNetwork)
    for net, prefix in ((policy, "p"), (target, "t")):
        net.input_dim = int(input_dim)
        net.output_dim = int(output_dim)
        net.weights = [data[f"{prefix}w{i}"] for i in range(n_layers)]
        net.biases = [data[f"{prefix}b{i}"] for i in range(n_layers)]
    optimizer = AdamOptimizer(policy)
    optimizer.t = int(opt_t)
    optimizer.m_w = [data[f"mw{i}"] for i in range(n_layers)]
    optimizer.v_w = [data[f"vw{i}"] for i in range(n_layers)]
    optimizer.m_b = [data[f"mb{i}"] for i in range(n_layers)]
    optimizer.v_b = [data[f"vb{i}"] for i in range(n_layers)]
    return policy, target, optimizer, int(epsilon_step), int(action_counter)
