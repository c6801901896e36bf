import numpy as np
import pytest

from rlqas import (
    AdamOptimizer,
    AgentHyperparams,
    QNetwork,
    ReplayBuffer,
    Transitions,
    ddqn_targets,
    epsilon_at,
    select_action,
    sync_target,
    train_step,
)
from rlqas.dqn import (
    load_checkpoint,
    save_checkpoint,
    smooth_l1,
    td_loss_and_grads,
)


def small_net(inp=4, out=3, layers=2, units=8, seed=0):
    return QNetwork(inp, out, layers, units, rng=np.random.default_rng(seed))


def test_forward_zero_weights_gives_zero():
    net = small_net()
    for w in net.weights:
        w[:] = 0.0
    assert np.allclose(net.forward(np.ones(4)), 0.0)


def test_forward_hand_computed_single_layer():
    net = QNetwork(2, 2, hidden_layers=0, hidden_units=1,
                   rng=np.random.default_rng(0))
    net.weights[0] = np.array([[1.0, 2.0], [3.0, -1.0]])
    net.biases[0] = np.array([0.5, -0.5])
    got = net.forward(np.array([1.0, 1.0]))
    assert np.allclose(got, [1 + 3 + 0.5, 2 - 1 - 0.5])


def test_forward_batch_rows_match_single():
    net = small_net()
    rng = np.random.default_rng(1)
    batch = rng.normal(size=(5, 4))
    q = net.forward(batch)
    assert q.shape == (5, 3)
    for row, x in zip(q, batch):
        assert np.allclose(row, net.forward(x))


def test_forward_accepts_tensor_observation():
    net = QNetwork(2 * 3 * 5, 4, 1, 8, rng=np.random.default_rng(2))
    obs = np.zeros((2, 3, 5))
    obs[1, 2, 0] = 1.0
    assert np.allclose(net.forward(obs), net.forward(obs.ravel()))


def test_forward_dimension_mismatch():
    net = small_net()
    with pytest.raises(ValueError, match="does not match"):
        net.forward(np.zeros((2, 7)))


def test_select_action_greedy_and_tie_break():
    net = small_net()
    rng = np.random.default_rng(0)
    obs = np.ones(4)
    q = net.forward(obs)
    assert select_action(net, obs, 0.0, rng) == int(np.argmax(q))
    # force a two-way tie: zero weights make all outputs equal; ties take
    # the lowest index
    for w in net.weights:
        w[:] = 0.0
    assert select_action(net, obs, 0.0, rng) == 0


def test_select_action_uniform_at_epsilon_one():
    """Chi-square goodness of fit against the uniform distribution."""
    net = small_net(out=4)
    rng = np.random.default_rng(123)
    n = 100_000
    counts = np.zeros(4)
    obs = np.zeros(4)
    for _ in range(n):
        counts[select_action(net, obs, 1.0, rng)] += 1
    expected = n / 4
    chi2 = float(np.sum((counts - expected) ** 2 / expected))
    # dof=3: mean 3, variance 6; 3 sigma above the mean
    assert chi2 < 3 + 3 * np.sqrt(6.0)


def test_select_action_epsilon_validation():
    with pytest.raises(ValueError):
        select_action(small_net(), np.zeros(4), 1.5, np.random.default_rng(0))


def test_epsilon_schedule():
    assert epsilon_at(0) == 1.0
    assert epsilon_at(1) == 0.99995
    assert epsilon_at(10**6) == 0.05


def test_ddqn_targets_terminal():
    policy, target = small_net(seed=3), small_net(seed=4)
    batch = Transitions(
        obs=np.zeros((1, 4)), actions=np.array([0]), rewards=np.array([-5.0]),
        next_obs=np.zeros((1, 4)), dones=np.array([True]),
    )
    assert ddqn_targets(batch, policy, target, 0.88)[0] == -5.0


def test_ddqn_targets_bootstrap_value():
    policy, target = small_net(seed=3), small_net(seed=4)
    next_obs = np.ones((1, 4))
    # force known Q rows: policy argmax picks action 2, target values it 2.0
    policy.forward = lambda x: np.array([[0.0, 0.1, 0.9]])
    target.forward = lambda x: np.array([[5.0, -1.0, 2.0]])
    batch = Transitions(np.zeros((1, 4)), np.array([1]), np.array([1.0]),
                        next_obs, np.array([False]))
    assert ddqn_targets(batch, policy, target, 0.88)[0] == pytest.approx(2.76)


def test_ddqn_equals_dqn_when_nets_match():
    policy = small_net(seed=5)
    target = policy.clone()
    rng = np.random.default_rng(6)
    batch = Transitions(
        rng.normal(size=(8, 4)), rng.integers(0, 3, 8),
        rng.normal(size=8), rng.normal(size=(8, 4)), np.zeros(8, dtype=bool),
    )
    y_ddqn = ddqn_targets(batch, policy, target, 0.88)
    q_next = target.forward(batch.next_obs)
    y_dqn = batch.rewards + 0.88 * q_next.max(axis=1)
    assert np.allclose(y_ddqn, y_dqn)


def test_smooth_l1_definition():
    xs = np.array([-3.0, -1.0, -0.4, 0.0, 0.7, 1.0, 2.5])
    want = np.where(np.abs(xs) < 1, 0.5 * xs**2, np.abs(xs) - 0.5)
    assert np.allclose(smooth_l1(xs), want)


def test_train_step_zero_residual_keeps_weights():
    net = small_net()
    target_vals = net.forward(np.ones((1, 4)))[0]
    batch = Transitions(np.ones((1, 4)), np.array([1]),
                        np.array([0.0]), np.ones((1, 4)), np.array([True]))
    loss, grads_w, grads_b = td_loss_and_grads(net, batch, np.array([target_vals[1]]))
    assert loss == 0.0
    assert all(np.allclose(g, 0.0) for g in grads_w)


def test_train_step_hand_computed_loss():
    net = small_net()
    obs = np.ones((2, 4))
    q = net.forward(obs)
    residuals = np.array([0.3, -2.0])
    targets = q[np.arange(2), [0, 2]] - residuals
    batch = Transitions(obs, np.array([0, 2]), np.zeros(2), obs,
                        np.array([True, True]))
    loss, _, _ = td_loss_and_grads(net, batch, targets)
    assert loss == pytest.approx((0.5 * 0.3**2 + (2.0 - 0.5)) / 2)


def test_backprop_matches_finite_differences():
    rng = np.random.default_rng(17)
    net = QNetwork(5, 3, hidden_layers=2, hidden_units=6, rng=rng)
    batch = Transitions(
        rng.normal(size=(4, 5)), rng.integers(0, 3, 4),
        rng.normal(size=4), rng.normal(size=(4, 5)), np.zeros(4, dtype=bool),
    )
    targets = rng.normal(size=4)
    _, grads_w, grads_b = td_loss_and_grads(net, batch, targets)

    def loss_at():
        q = net.forward(batch.obs)
        r = q[np.arange(4), batch.actions] - targets
        return float(np.mean(smooth_l1(r)))

    step = 1e-6
    for params, grads in ((net.weights, grads_w), (net.biases, grads_b)):
        for layer, grad in zip(params, grads):
            flat = layer.reshape(-1)
            gflat = grad.reshape(-1)
            for k in range(flat.size):
                keep = flat[k]
                flat[k] = keep + step
                up = loss_at()
                flat[k] = keep - step
                dn = loss_at()
                flat[k] = keep
                fd = (up - dn) / (2 * step)
                assert abs(gflat[k] - fd) <= 1e-4 * max(abs(fd), 1e-4)


def test_replay_buffer_eviction_order():
    buf = ReplayBuffer(5, 2)
    for i in range(8):
        buf.push(np.array([i, i]), i, float(i), np.array([i, i]), False)
    assert len(buf) == 5
    held = sorted(buf.actions.tolist())
    assert held == [3, 4, 5, 6, 7]


def test_replay_buffer_sample_shapes_and_underflow():
    buf = ReplayBuffer(10, 3)
    rng = np.random.default_rng(0)
    with pytest.raises(ValueError, match="buffer holds"):
        buf.sample(1, rng)
    for i in range(6):
        buf.push(np.zeros(3), 0, 0.0, np.zeros(3), False)
    batch = buf.sample(4, rng)
    assert batch.obs.shape == (4, 3)
    assert batch.dones.shape == (4,)


def test_train_step_underfull_buffer_is_noop():
    net = small_net()
    target = net.clone()
    buf = ReplayBuffer(100, 4)
    hp = AgentHyperparams(batch_size=10, hidden_layers=2, hidden_units=8)
    out = train_step(net, target, buf, hp, np.random.default_rng(0),
                     AdamOptimizer(net))
    assert out is None


def test_sync_target_cadence():
    policy = small_net(seed=8)
    target = small_net(seed=9)
    before = [w.copy() for w in target.weights]
    assert not sync_target(policy, target, 499, 500)
    assert all(np.array_equal(a, b) for a, b in zip(target.weights, before))
    assert sync_target(policy, target, 500, 500)
    assert all(np.array_equal(a, b) for a, b in zip(target.weights, policy.weights))


def test_monte_carlo_return_matches_recursion():
    rng = np.random.default_rng(2)
    rewards = rng.normal(size=12)
    gamma = 0.88
    direct = [
        sum(gamma**k * rewards[t + k] for k in range(len(rewards) - t))
        for t in range(len(rewards))
    ]
    recursive = np.zeros(len(rewards))
    acc = 0.0
    for t in range(len(rewards) - 1, -1, -1):
        acc = rewards[t] + gamma * acc
        recursive[t] = acc
    assert np.allclose(direct, recursive)


def test_tabular_ddqn_converges_to_q_learning_fixed_point():
    """3-state deterministic MDP; linear net on one-hot states is a table.

    Value iteration gives the optimal Q; the DDQN update with SGD, batch 1
    and a frequently synced target must land on the same fixed point.
    """
    # states 0,1,2 + terminal; actions 0/1
    # s0 -a0-> s1 (r 0), s0 -a1-> s2 (r 0.5); s1 -> T (r 1); s2 -> T (r 0.2)
    gamma = 0.9
    q_star = np.array([
        [0.0 + gamma * 1.0, 0.5 + gamma * 0.2],
        [1.0, 1.0],
        [0.2, 0.2],
    ])

    net = QNetwork(3, 2, hidden_layers=0, hidden_units=1,
                   rng=np.random.default_rng(0))
    net.weights[0][:] = 0.0
    net.biases[0][:] = 0.0
    target = net.clone()
    hp = AgentHyperparams(gamma=gamma, batch_size=1, learning_rate=0.2,
                          hidden_layers=0, hidden_units=1, optimizer="sgd")
    buf = ReplayBuffer(16, 3)
    eye = np.eye(3)
    transitions = [
        (0, 0, 0.0, 1, False),
        (0, 1, 0.5, 2, False),
        (1, 0, 1.0, 1, True),
        (1, 1, 1.0, 1, True),
        (2, 0, 0.2, 2, True),
        (2, 1, 0.2, 2, True),
    ]
    rng = np.random.default_rng(5)
    for s, a, r, s2, done in transitions:
        buf.push(eye[s], a, r, eye[s2], done)
    for step in range(4000):
        train_step(net, target, buf, hp, rng, optimizer=None)
        sync_target(net, target, step + 1, 10)
    q = net.forward(eye)
    assert np.max(np.abs(q - q_star)) < 1e-3


def test_checkpoint_bit_restores_forward(tmp_path):
    net = small_net(seed=12)
    target = small_net(seed=13)
    opt = AdamOptimizer(net)
    hp = AgentHyperparams(batch_size=2, hidden_layers=2, hidden_units=8)
    buf = ReplayBuffer(10, 4)
    rng = np.random.default_rng(3)
    for _ in range(6):
        buf.push(rng.normal(size=4), int(rng.integers(3)), 0.3,
                 rng.normal(size=4), False)
    train_step(net, target, buf, hp, rng, opt)
    path = tmp_path / "ckpt.npz"
    save_checkpoint(path, net, target, opt, epsilon_step=321, action_counter=77)
    net2, target2, opt2, eps_step, counter = load_checkpoint(path)
    assert eps_step == 321 and counter == 77
    x = rng.normal(size=(5, 4))
    assert np.array_equal(net.forward(x), net2.forward(x))
    assert np.array_equal(target.forward(x), target2.forward(x))
    assert opt2.t == opt.t
