"""From episode logs to CSV reports (and on to figures).

Runs a small two-topology search, rebuilds the CSV reports from the episode
logs alone, and prints the success-probability series.  The optional
frontend/ package renders these CSVs as SVG figures and markdown tables:

    cd frontend && npm install && npm run build
    node dist/cli.js --kind success-curve --in <outdir>/success_curve.csv --out curve.svg
    node dist/cli.js --kind summary-table --in <outdir>/summary.csv --out summary.md
"""

import tempfile
from pathlib import Path

from rlqas import ExperimentConfig, report_from_logs, run_agent_topo

outdir = Path(tempfile.mkdtemp(prefix="reports_"))
config = ExperimentConfig(
    hamiltonian="h2_4q_jw",
    initial_bits="hf",
    topologies="Linear,Triangle-1",
    d_max=15,
    episodes=20,
    test_interval=10,
    curriculum_interval=10,
    vqe_budget=50,
    vqe_lr=0.1,
    hidden_layers=1,
    hidden_units=32,
    batch_size=32,
    buffer_capacity=512,
    seeds="0,1",
    outdir=str(outdir),
)
run_agent_topo(config, outdir=outdir)

rows = report_from_logs(outdir, interval=10)
print(f"wrote {outdir}/summary.csv with {len(rows)} rows:")
print((outdir / "summary.csv").read_text())

print("success-probability series (averaged over the 2 seeds):")
for line in (outdir / "success_curve.csv").read_text().splitlines():
    print(f"  {line}")

print("\nconvergence trace of the best episode per unit: "
      f"{outdir}/convergence.csv")
