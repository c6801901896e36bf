"""Stage one at toy scale: rank processor topologies on the H2 problem.

A few dozen episodes per topology are enough for the search to find
chemically accurate circuits on this molecule; the run takes a minute or so.
The full-scale configuration (five 1000-unit hidden layers, thousands of episodes)
uses the same call with the default ExperimentConfig.
"""

import tempfile
from pathlib import Path

from rlqas import ExperimentConfig, run_agent_topo

outdir = Path(tempfile.mkdtemp(prefix="topo_search_"))
config = ExperimentConfig(
    hamiltonian="h2_4q_jw",
    initial_bits="hf",
    topologies="Linear,T,Triangle-1",
    d_max=20,
    episodes=25,
    test_interval=25,
    curriculum_interval=25,
    vqe_budget=60,
    vqe_lr=0.1,
    hidden_layers=1,
    hidden_units=64,
    batch_size=32,
    buffer_capacity=1024,
    seeds="0",
    outdir=str(outdir),
)

ranking, winners = run_agent_topo(config, outdir=outdir)

print(f"{'topology':<12} {'min error':<12} {'depth':>5} {'cnot':>5} {'rot':>4} tied")
for entry in ranking:
    s = entry.summary
    print(f"{s.topology:<12} {s.min_error:<12.3e} {s.depth:>5.0f} "
          f"{s.cnot:>5.0f} {s.rot:>4.0f} {'yes' if entry.tied else 'no'}")
print(f"\ncarried into the cut stage: {[g.name for g in winners]}")
print(f"episode logs: {outdir}")
