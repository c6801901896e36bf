import logging

import numpy as np
import pytest

from rlqas import (
    Circuit,
    CurriculumState,
    PauliHamiltonian,
    PauliString,
    CircuitEnv,
    build_action_space,
    compute_reward,
    decode_observation,
    encode_observation,
    record_success,
    topology_catalog,
    update_threshold,
    allowed_edges,
)
from rlqas.connectivity import CutPartition


def test_action_space_linear_uncut():
    linear = topology_catalog(4)[0]
    actions = build_action_space(linear.edges, 4)
    assert len(actions) == 2 * 3 + 3 * 4  # 18
    # CX pairs first, sorted; rotations qubit-major RX < RY < RZ
    assert [a.kind for a in actions[:6]] == ["CX"] * 6
    assert [a.qubits for a in actions[:6]] == [
        (0, 1), (1, 0), (1, 2), (2, 1), (2, 3), (3, 2)
    ]
    assert [(a.kind, a.qubits) for a in actions[6:9]] == [
        ("RX", (0,)), ("RY", (0,)), ("RZ", (0,))
    ]


def test_action_space_with_cut():
    linear = topology_catalog(4)[0]
    cut = CutPartition(((0,), (1, 2, 3)))
    actions = build_action_space(allowed_edges(linear, cut, "inherit"), 4)
    assert len(actions) == 2 * 2 + 12  # 16


def test_action_space_rotations_only():
    actions = build_action_space(frozenset(), 1)
    assert [(a.kind, a.qubits) for a in actions] == [
        ("RX", (0,)), ("RY", (0,)), ("RZ", (0,))
    ]


def test_action_space_rejects_bad_edges():
    with pytest.raises(ValueError, match="invalid"):
        build_action_space({(0, 4)}, 4)


def test_encode_empty_circuit():
    obs = encode_observation(Circuit(4), 10)
    assert obs.shape == (10, 4, 7)
    assert not obs.any()


def test_encode_single_cx():
    c = Circuit(4)
    c.append("CX", 0, 1)
    obs = encode_observation(c, 5)
    assert obs[0, 0, 1] == 1.0
    assert obs.sum() == 1.0


def test_encode_rotation_offsets():
    c = Circuit(4)
    c.append("RY", 2)
    obs = encode_observation(c, 5)
    assert obs[0, 2, 4 + 1] == 1.0  # column N + kind, RY has kind index 1
    assert obs.sum() == 1.0


def test_encode_one_hot_per_slot():
    c = Circuit(3)
    c.append("RX", 0)
    c.append("CX", 2, 1)
    c.append("RZ", 1)
    obs = encode_observation(c, 6)
    for t in range(3):
        assert obs[t].sum() == 1.0
    assert not obs[3:].any()


def test_encode_circuit_too_long():
    c = Circuit(2)
    c.append("RX", 0)
    c.append("RX", 1)
    with pytest.raises(ValueError, match="d_max"):
        encode_observation(c, 1)


def test_decode_round_trip():
    rng = np.random.default_rng(31)
    for _ in range(30):
        c = Circuit(4)
        for _ in range(int(rng.integers(0, 12))):
            if rng.random() < 0.5:
                u, v = rng.choice(4, size=2, replace=False)
                c.append("CX", int(u), int(v))
            else:
                c.append(str(rng.choice(["RX", "RY", "RZ"])), int(rng.integers(4)))
        decoded = decode_observation(encode_observation(c, 12))
        assert decoded == [(g.kind, g.qubits) for g in c.gates]


def test_reward_success_branch():
    assert compute_reward(0.001, 0.5, 0.0, 0.0016, 3, 40) == 5.0


def test_reward_budget_exhausted():
    assert compute_reward(0.2, 0.5, 0.0, 0.0016, 40, 40) == -5.0


def test_reward_improvement_ratio():
    assert compute_reward(0.3, 0.5, 0.1, 0.0016, 3, 40) == pytest.approx(0.5)


def test_reward_clamped_at_minus_one():
    assert compute_reward(5.0, 0.2, 0.1, 0.0016, 3, 40) == -1.0


def test_reward_denominator_guard(caplog):
    with caplog.at_level(logging.WARNING, logger="rlqas.env"):
        up = compute_reward(0.2, 0.1, 0.1, 0.0016, 3, 40)
        down = compute_reward(0.05, 0.1, 0.1, 0.0016, 3, 40)
    assert up == -1.0
    assert down == 1.0
    assert any("denominator guard" in r.message for r in caplog.records)


def test_reward_range_property():
    rng = np.random.default_rng(12)
    for _ in range(500):
        c_min = rng.uniform(-2, 0)
        c_prev = c_min + rng.uniform(1e-6, 2.0)
        c_t = c_min + rng.uniform(0, 3.0)
        r = compute_reward(c_t - c_min, c_prev - c_min, 0.0, 0.0016,
                           int(rng.integers(1, 40)), 40)
        assert r in (5.0, -5.0) or -1.0 <= r <= 1.0


def test_curriculum_initial_state():
    cs = CurriculumState()
    assert cs.xi == 0.005
    assert cs.delta == 0.0001
    assert cs.delta_step == 0.00001
    assert cs.xi_final == 0.0016


def test_threshold_update_tracks_best_recent():
    cs = CurriculumState()
    cs = update_threshold(cs, [0.004, 0.002, 0.009])
    assert cs.xi == pytest.approx(0.0021)


def test_threshold_never_below_final_and_never_rises():
    cs = CurriculumState()
    cs = update_threshold(cs, [1e-9])
    assert cs.xi == cs.xi_final
    cs2 = update_threshold(cs, [0.5])
    assert cs2.xi == cs.xi  # non-increasing even when recent errors are bad


def test_delta_shrinks_every_fifty_successes():
    cs = CurriculumState()
    for _ in range(49):
        cs = record_success(cs)
    assert cs.delta == pytest.approx(0.0001)
    cs = record_success(cs)
    assert cs.delta == pytest.approx(0.00009)
    for _ in range(50):
        cs = record_success(cs)
    assert cs.delta == pytest.approx(0.00008)


def test_delta_never_negative():
    cs = CurriculumState(delta=0.00001)
    for _ in range(150):
        cs = record_success(cs)
    assert cs.delta >= 0.0


def toy_env(d_max=4, xi_final=0.0016):
    h = PauliHamiltonian(1, [(-1.0, PauliString("Z"))])
    actions = build_action_space(frozenset(), 1)
    return CircuitEnv(h, actions, d_max, vqe_budget=60, vqe_lr=0.1,
                      xi_final=xi_final)


def test_env_first_step_contract():
    env = toy_env()
    env.reset(xi=0.0016)
    # H = -Z from |0> starts exactly at the ground state, so the first
    # rotation keeps the error at ~0 and the episode ends in success
    obs, reward, done, info = env.step(0)
    assert done
    assert reward == 5.0
    assert info["error"] < 0.0016
    assert obs[0].sum() == 1.0


def test_env_runs_to_step_limit_without_success():
    h = PauliHamiltonian(2, [(1.0, PauliString("ZZ")), (1.0, PauliString("ZI")),
                             (-0.5, PauliString("XI"))])
    # rotations on qubit 0 only: qubit 1 stays |0>, the floor is unreachable
    actions = build_action_space(frozenset(), 2)[:3]
    env = CircuitEnv(h, actions, 3, vqe_budget=30, vqe_lr=0.1)
    env.reset(xi=1e-12)
    rewards = []
    done = False
    while not done:
        _, r, done, info = env.step(2)  # RZ on qubit 0 cannot move the energy
        rewards.append(r)
    assert len(rewards) == 3  # episode length bounded by d_max
    assert rewards[-1] == -5.0


def test_env_step_after_done_raises():
    env = toy_env()
    env.reset(xi=0.5)
    done = False
    while not done:
        _, _, done, _ = env.step(0)
    with pytest.raises(RuntimeError, match="reset"):
        env.step(0)


def test_env_action_index_validation():
    env = toy_env()
    env.reset()
    with pytest.raises(IndexError):
        env.step(99)


def test_env_episode_record_fields():
    env = toy_env()
    env.reset(xi=0.0016)
    done = False
    while not done:
        _, _, done, _ = env.step(1)
    rec = env.episode_record(7, "training", seed=3, topology="Linear", cut="")
    assert rec.episode == 7
    assert rec.success == (rec.final_error < 0.0016)
    assert rec.depth >= 1
    assert rec.rot == len(rec.steps)
    d = rec.to_json_dict()
    assert set(d) == {
        "episode", "phase", "steps", "final_error", "success", "depth",
        "cnot", "rot", "seed", "topology", "cut", "xi_current", "circuit",
    }
