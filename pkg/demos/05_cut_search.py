"""Stage two at toy scale: compare qubit-partition strategies on H2.

Scans every labeled 1+3 and 2+2 partition of the Linear topology.  The 2+2
partitions confine entanglement to two-qubit blocks, so no circuit can beat
the best product of two 2-qubit states; singleton cuts keep the topology's
couplings (the partition marks where a processor boundary would sit) and
reach the uncut accuracy.  The gap between the two is several orders of
magnitude, which is the whole point of choosing cuts well.
"""

import tempfile
from pathlib import Path

from rlqas import ExperimentConfig, run_agent_cut, topology_catalog

outdir = Path(tempfile.mkdtemp(prefix="cut_search_"))
config = ExperimentConfig(
    hamiltonian="h2_4q_jw",
    initial_bits="hf",
    d_max=25,
    episodes=30,
    test_interval=30,
    curriculum_interval=30,
    vqe_budget=60,
    vqe_lr=0.1,
    hidden_layers=1,
    hidden_units=64,
    batch_size=32,
    buffer_capacity=1024,
    seeds="0",
    cut_shapes="1+3,2+2",
    cut_mode="all-to-all",
    cut_mode_overrides="1+3=crosstalk",
    outdir=str(outdir),
)

linear = topology_catalog(4)[0]
ranking, per_shape = run_agent_cut(config, linear, outdir=outdir)

print(f"{'cut':<16} {'min error':<12} {'depth':>5} {'cnot':>5} {'rot':>4}")
for entry in ranking:
    s = entry.summary
    print(f"{s.cut:<16} {s.min_error:<12.3e} {s.depth:>5.0f} "
          f"{s.cnot:>5.0f} {s.rot:>4.0f}")

print()
for shape, s in per_shape.items():
    print(f"best {shape}: {s.cut} at error {s.min_error:.3e}")
best13 = per_shape["1+3"].min_error
best22 = per_shape["2+2"].min_error
print(f"\n1+3 outperforms 2+2 by a factor of {best22 / best13:.0f}")
print(f"episode logs: {outdir}")
