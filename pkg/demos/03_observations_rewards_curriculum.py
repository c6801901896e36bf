"""The RL side of the environment: state encoding, reward, curriculum.

No training here; this walks the encoding of a small circuit into the binary
observation tensor, evaluates the reward branches, and simulates the greedy
threshold schedule on a synthetic stream of episode errors.
"""

import numpy as np

from rlqas import (
    Circuit,
    CurriculumState,
    compute_reward,
    decode_observation,
    encode_observation,
    record_success,
    update_threshold,
)

# ---- observation tensor -----------------------------------------------------
c = Circuit(4)
c.append("RY", 2)
c.append("CX", 0, 1)
c.append("RZ", 0)
obs = encode_observation(c, d_max=6)
print(f"observation shape {obs.shape} (slots x qubits x (qubits + 3))")
for t in range(3):
    row, col = np.argwhere(obs[t] == 1.0)[0]
    print(f"  slot {t}: one-hot at (qubit {row}, column {col})")
print(f"decoded back: {decode_observation(obs)}\n")

# ---- reward branches ----------------------------------------------------------
cases = [
    ("below threshold", dict(c_t=0.001, c_prev=0.5, c_min=0.0, xi=0.0016, t=3, d_max=40)),
    ("budget exhausted", dict(c_t=0.2, c_prev=0.5, c_min=0.0, xi=0.0016, t=40, d_max=40)),
    ("partial progress", dict(c_t=0.3, c_prev=0.5, c_min=0.1, xi=0.0016, t=3, d_max=40)),
    ("made things worse", dict(c_t=5.0, c_prev=0.2, c_min=0.1, xi=0.0016, t=3, d_max=40)),
]
for label, kw in cases:
    print(f"reward ({label}): {compute_reward(**kw):+.1f}")
print()

# ---- curriculum schedule --------------------------------------------------------
rng = np.random.default_rng(3)
cs = CurriculumState(interval=100)
print(f"start: threshold {cs.xi}, radius {cs.delta}")
for window in range(6):
    # synthetic error stream that improves as training proceeds
    errors = rng.uniform(0.003, 0.05, cs.interval) * 10 ** (-0.25 * window)
    for err in errors:
        if err < cs.xi:
            cs = record_success(cs)
    cs = update_threshold(cs, errors)
    print(f"after window {window}: best error {errors.min():.2e} -> "
          f"threshold {cs.xi:.6f}, radius {cs.delta:.6f}, "
          f"successes so far {cs.success_count}")
