"""Two-stage pipeline: topology search, then cut search on the winners.

Each (topology|cut, seed) unit trains one DDQN agent around the VQE loop and
writes an episode log; summary tables are always rebuilt from those logs so
every reported number has raw provenance.
"""

from __future__ import annotations

import json
import zlib
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import numpy as np

from . import dqn
from .connectivity import (
    CutPartition,
    TopologyGraph,
    allowed_edges,
    enumerate_connected_topologies,
    enumerate_cuts,
    load_topology,
    parse_shape,
    topology_catalog,
)
from .env import (
    CHEMICAL_ACCURACY,
    CircuitEnv,
    CurriculumState,
    EpisodeRecord,
    StepRecord,
    build_action_space,
    record_success,
    update_threshold,
)
from .hamiltonian import bundled_path, load_hamiltonian

SUMMARY_COLUMNS = (
    "stage", "topology", "cut", "seed_count", "min_error", "avg_error",
    "depth", "cnot", "rot", "successes",
)


class ConfigError(ValueError):
    """Bad key or value in a config file or override."""


@dataclass
class ExperimentConfig:
    hamiltonian: str = "h2_4q_jw"
    d_max: int = 0                      # 0 = per-molecule default (40 or 70)
    initial_bits: str = ""
    topology_mode: str = "catalog"      # catalog | enumerate | file
    topology_file: str = ""
    topologies: str = ""                # comma-separated catalog filter
    cut_shapes: str = "1+3,2+2"
    cut_mode: str = "all-to-all"        # inherit | all-to-all | crosstalk
    cut_mode_overrides: str = "1+3=crosstalk"
    seeds: str = "0,1,2,3,4"
    episodes: int = 5000
    test_interval: int = 100
    curriculum_interval: int = 500
    xi_start: float = 0.005
    delta: float = 0.0001
    delta_step: float = 0.00001
    xi_final: float = CHEMICAL_ACCURACY
    vqe_budget: int = 300
    vqe_lr: float = 0.01
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
    optimizer: str = "adam"
    topo_carryover: int = 2
    tie_band: float = 1e-7
    jobs: int = 1
    outdir: str = "runs"

    def seeds_list(self):
        seeds = [int(s) for s in str(self.seeds).split(",") if s.strip() != ""]
        if not seeds:
            raise ConfigError("seeds must be non-empty")
        return seeds

    def cut_shapes_list(self):
        return [s.strip() for s in self.cut_shapes.split(",") if s.strip()]

    def cut_mode_for(self, shape: str) -> str:
        for pair in self.cut_mode_overrides.split(","):
            pair = pair.strip()
            if not pair:
                continue
            key, _, value = pair.partition("=")
            if key.strip() == shape:
                return value.strip()
        return self.cut_mode

    def hamiltonian_file(self) -> Path:
        p = Path(self.hamiltonian)
        if p.exists():
            return p
        return bundled_path(self.hamiltonian)

    def load_hamiltonian(self):
        return load_hamiltonian(self.hamiltonian_file())

    def resolved_d_max(self, h) -> int:
        if self.d_max > 0:
            return self.d_max
        molecule = h.metadata.get("molecule", "").lower()
        return 40 if molecule in ("", "h2") else 70

    def agent_hyperparams(self) -> dqn.AgentHyperparams:
        return dqn.AgentHyperparams(
            gamma=self.gamma,
            epsilon_start=self.epsilon_start,
            epsilon_decay=self.epsilon_decay,
            epsilon_min=self.epsilon_min,
            batch_size=self.batch_size,
            learning_rate=self.learning_rate,
            target_sync_interval=self.target_sync_interval,
            buffer_capacity=self.buffer_capacity,
            hidden_layers=self.hidden_layers,
            hidden_units=self.hidden_units,
            optimizer=self.optimizer,
        )

    def topology_set(self):
        if self.topology_mode == "catalog":
            graphs = topology_catalog(4)
            if self.topologies:
                wanted = {t.strip() for t in self.topologies.split(",") if t.strip()}
                unknown = wanted - {g.name for g in graphs}
                if unknown:
                    raise ConfigError(f"unknown catalog topologies: {sorted(unknown)}")
                graphs = [g for g in graphs if g.name in wanted]
            return graphs
        if self.topology_mode == "enumerate":
            h = self.load_hamiltonian()
            graphs = enumerate_connected_topologies(h.n_qubits)
            return [
                replace_name(g, f"G{i}-{len(g.edges)}e") for i, g in enumerate(graphs)
            ]
        if self.topology_mode == "file":
            if not self.topology_file:
                raise ConfigError("topology_mode=file requires topology_file")
            return [load_topology(self.topology_file)]
        raise ConfigError(f"unknown topology_mode {self.topology_mode!r}")


def replace_name(g: TopologyGraph, name: str) -> TopologyGraph:
    return TopologyGraph(g.n_qubits, g.edges, name)


_CONFIG_FIELDS = {f.name: f.type for f in fields(ExperimentConfig)}


def load_config(path) -> ExperimentConfig:
    cfg = ExperimentConfig()
    return apply_overrides(cfg, _read_kv(path))


def _read_kv(path):
    pairs = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{path}:{lineno}: expected key=value, got {raw!r}")
        key, _, value = line.partition("=")
        pairs.append(f"{key.strip()}={value.strip()}")
    return pairs


def apply_overrides(cfg: ExperimentConfig, pairs) -> ExperimentConfig:
    values = {}
    for pair in pairs:
        key, eq, value = pair.partition("=")
        key = key.strip()
        if not eq:
            raise ConfigError(f"override {pair!r} is not key=value")
        if key not in _CONFIG_FIELDS:
            raise ConfigError(f"unknown config key {key!r}")
        current = getattr(cfg, key)
        try:
            if isinstance(current, bool):
                values[key] = value.strip().lower() in ("1", "true", "yes")
            elif isinstance(current, int):
                values[key] = int(value)
            elif isinstance(current, float):
                values[key] = float(value)
            else:
                values[key] = value.strip()
        except ValueError as exc:
            raise ConfigError(f"bad value for {key!r}: {value!r}") from exc
    return replace(cfg, **values)


# -- single training run --------------------------------------------------------


@dataclass
class RunSummary:
    stage: str
    topology: str
    cut: str
    seed_count: int
    min_error: float
    avg_error: float
    depth: float
    cnot: float
    rot: float
    successes: int
    per_seed: list = field(default_factory=list)

    def total_gates(self):
        return self.cnot + self.rot

    def csv_row(self):
        return [
            self.stage, self.topology, self.cut, str(self.seed_count),
            repr(self.min_error), repr(self.avg_error), repr(self.depth),
            repr(self.cnot), repr(self.rot), str(self.successes),
        ]


def run_label(topology: TopologyGraph, cut: CutPartition | None) -> str:
    if cut is None:
        return f"topo-{topology.name}"
    return f"cut-{topology.name}-{cut.shape}-{cut.label()}"


def run_qas(
    config: ExperimentConfig,
    topology: TopologyGraph,
    cut: CutPartition | None = None,
    seed: int = 0,
    cut_mode: str | None = None,
    outdir: Path | None = None,
):
    """Train one agent on one (topology, cut) unit with one seed.

    Returns (records, summary); also writes episodes_<label>_<seed>.jsonl
    when `outdir` is given.  Fully deterministic given the arguments.
    """
    h = config.load_hamiltonian()
    d_max = config.resolved_d_max(h)
    if cut is not None and cut_mode is None:
        cut_mode = config.cut_mode_for(cut.shape)
    edges = allowed_edges(topology, cut, cut_mode)
    actions = build_action_space(edges, h.n_qubits)
    initial_bits = config.initial_bits
    if initial_bits == "hf":
        initial_bits = h.metadata.get("hf_state", "")
    env = CircuitEnv(
        h,
        actions,
        d_max,
        initial_bits=initial_bits,
        vqe_budget=config.vqe_budget,
        vqe_lr=config.vqe_lr,
        xi_final=config.xi_final,
    )

    label = run_label(topology, cut)
    cut_label = f"{cut.shape}:{cut.label()}" if cut is not None else ""
    hp = config.agent_hyperparams()
    seq = np.random.SeedSequence(entropy=[seed, zlib.crc32(label.encode())])
    net_ss, explore_ss, batch_ss = seq.spawn(3)
    net_rng = np.random.default_rng(net_ss)
    explore_rng = np.random.default_rng(explore_ss)
    batch_rng = np.random.default_rng(batch_ss)

    obs_dim = int(np.prod(env.obs_shape))
    policy = dqn.QNetwork(obs_dim, env.n_actions, hp.hidden_layers,
                          hp.hidden_units, rng=net_rng)
    target = policy.clone()
    optimizer = dqn.AdamOptimizer(policy)
    buffer = dqn.ReplayBuffer(hp.buffer_capacity, obs_dim)
    curriculum = CurriculumState(
        xi=config.xi_start,
        delta=config.delta,
        delta_step=config.delta_step,
        interval=config.curriculum_interval,
        xi_final=config.xi_final,
    )

    records = []
    recent_errors = []
    action_counter = 0
    topo_name = topology.name or "topology"

    def run_episode(index, phase, epsilon_override=None):
        nonlocal action_counter
        obs = env.reset(xi=curriculum.xi)
        done = False
        while not done:
            if epsilon_override is None:
                eps = dqn.epsilon_at(action_counter, hp.epsilon_start,
                                     hp.epsilon_decay, hp.epsilon_min)
            else:
                eps = epsilon_override
            a = dqn.select_action(policy, obs, eps, explore_rng)
            next_obs, reward, done, _ = env.step(a)
            if phase == "training":
                buffer.push(obs.ravel(), a, reward, next_obs.ravel(), done)
                action_counter += 1
                dqn.train_step(policy, target, buffer, hp, batch_rng, optimizer)
                dqn.sync_target(policy, target, action_counter,
                                hp.target_sync_interval)
            obs = next_obs
        return env.episode_record(index, phase, seed, topo_name, cut_label)

    for ep in range(1, config.episodes + 1):
        rec = run_episode(ep, "training")
        records.append(rec)
        recent_errors.append(rec.final_error)
        if rec.final_error < curriculum.xi:
            curriculum = record_success(curriculum)
        if ep % curriculum.interval == 0:
            window = recent_errors[-curriculum.interval:]
            curriculum = update_threshold(curriculum, window)
        if config.test_interval > 0 and ep % config.test_interval == 0:
            records.append(run_episode(ep, "testing", epsilon_override=0.0))

    if outdir is not None:
        outdir = Path(outdir)
        outdir.mkdir(parents=True, exist_ok=True)
        path = outdir / f"episodes_{label}_{seed}.jsonl"
        with path.open("w") as fh:
            for rec in records:
                fh.write(json.dumps(rec.to_json_dict()) + "\n")

    return records, summarize_seed(records, seed)


def summarize_seed(records, seed) -> RunSummary:
    """Single-seed summary: min error and the best episode's circuit metrics."""
    if not records:
        return RunSummary("", "", "", 1, float("inf"), float("inf"),
                          0.0, 0.0, 0.0, 0,
                          per_seed=[{"seed": seed, "episodes": 0}])
    best = min(records, key=lambda r: (r.final_error, r.episode))
    stage = "topo" if not best.cut else "cut"
    successes = sum(1 for r in records if r.success)
    return RunSummary(
        stage=stage,
        topology=best.topology,
        cut=best.cut,
        seed_count=1,
        min_error=best.final_error,
        avg_error=best.final_error,
        depth=float(best.depth),
        cnot=float(best.cnot),
        rot=float(best.rot),
        successes=successes,
        per_seed=[{
            "seed": seed,
            "min_error": best.final_error,
            "depth": best.depth,
            "cnot": best.cnot,
            "rot": best.rot,
            "successes": successes,
            "episodes": len(records),
        }],
    )


def aggregate_runs(per_seed_summaries):
    """(best-of, average-of) across seeds of the same (topology, cut) unit."""
    if not per_seed_summaries:
        raise ValueError("need at least one seed summary")
    per_seed = [d for s in per_seed_summaries for d in s.per_seed]
    best = min(per_seed_summaries, key=lambda s: s.min_error)
    successes = sum(s.successes for s in per_seed_summaries)
    errors = [s.min_error for s in per_seed_summaries]
    best_of = replace(
        best,
        seed_count=len(per_seed_summaries),
        avg_error=float(np.mean(errors)),
        successes=successes,
        per_seed=per_seed,
    )
    average_of = replace(
        best_of,
        depth=float(np.mean([s.depth for s in per_seed_summaries])),
        cnot=float(np.mean([s.cnot for s in per_seed_summaries])),
        rot=float(np.mean([s.rot for s in per_seed_summaries])),
    )
    return best_of, average_of


# -- stage drivers ---------------------------------------------------------------


@dataclass
class RankedSummary:
    summary: RunSummary
    tied: bool


def select_best_topology(summaries, tie_band: float = 1e-7):
    """Rank error-tied entries by resource use, the rest by error alone."""
    if not summaries:
        raise ValueError("no summaries to rank")
    floor = min(s.min_error for s in summaries)
    tied = [s for s in summaries if s.min_error <= floor + tie_band]
    rest = [s for s in summaries if s.min_error > floor + tie_band]
    tied.sort(key=lambda s: (s.total_gates(), s.depth, s.cnot, s.topology, s.cut))
    rest.sort(key=lambda s: (s.min_error, s.topology, s.cut))
    return [RankedSummary(s, True) for s in tied] + [RankedSummary(s, False) for s in rest]


def _run_unit(args):
    config, topology, cut, cut_mode, seed, outdir = args
    _, summary = run_qas(config, topology, cut=cut, seed=seed,
                         cut_mode=cut_mode, outdir=outdir)
    return summary


def _run_units(config, units, outdir):
    """units: list of (topology, cut, cut_mode); runs every seed for each."""
    seeds = config.seeds_list()
    tasks = [
        (config, topology, cut, cut_mode, seed, outdir)
        for topology, cut, cut_mode in units
        for seed in seeds
    ]
    if config.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.jobs) as pool:
            results = list(pool.map(_run_unit, tasks))
    else:
        results = [_run_unit(t) for t in tasks]
    aggregated = []
    for i in range(0, len(results), len(seeds)):
        best_of, _ = aggregate_runs(results[i:i + len(seeds)])
        aggregated.append(best_of)
    return aggregated


def run_agent_topo(config: ExperimentConfig, outdir=None):
    """Stage 1: one QAS run per topology per seed; returns ranking + winners."""
    graphs = config.topology_set()
    if not graphs:
        raise ConfigError("topology set is empty")
    units = [(g, None, None) for g in graphs]
    summaries = _run_units(config, units, outdir)
    ranking = select_best_topology(summaries, config.tie_band)
    carry = max(1, config.topo_carryover)
    winner_names = [r.summary.topology for r in ranking[:carry]]
    winners = [g for g in graphs if g.name in winner_names]
    return ranking, winners


def run_agent_cut(config: ExperimentConfig, topology: TopologyGraph, outdir=None):
    """Stage 2: scan every labeled partition of every configured shape."""
    h = config.load_hamiltonian()
    all_summaries = []
    per_shape_best = {}
    for shape in config.cut_shapes_list():
        cuts = enumerate_cuts(h.n_qubits, parse_shape(shape))
        mode = config.cut_mode_for(shape)
        units = [(topology, cut, mode) for cut in cuts]
        summaries = _run_units(config, units, outdir)
        ranked = select_best_topology(summaries, config.tie_band)
        per_shape_best[shape] = ranked[0].summary
        all_summaries.extend(summaries)
    ranking = select_best_topology(all_summaries, config.tie_band)
    return ranking, per_shape_best


def probability_of_success(records, interval: int):
    """Success rate over consecutive training-episode windows.

    `records` is either one run's record list or a list of per-seed record
    lists; with several seeds the window rates are averaged pointwise.
    """
    if interval < 1:
        raise ValueError("interval must be >= 1")
    if records and isinstance(records[0], (list, tuple)):
        seed_series = [probability_of_success(r, interval) for r in records]
        length = max(len(s) for s in seed_series)
        out = []
        for i in range(length):
            rates = [s[i][1] for s in seed_series if i < len(s)]
            out.append((i, float(np.mean(rates))))
        return out
    training = [r for r in records if r.phase == "training"]
    training.sort(key=lambda r: r.episode)
    out = []
    for start in range(0, len(training), interval):
        window = training[start:start + interval]
        rate = sum(1 for r in window if r.success) / len(window)
        out.append((start // interval, float(rate)))
    return out


# -- log-backed reporting ---------------------------------------------------------


def _records_from_log(path):
    records = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        d = json.loads(line)
        records.append(EpisodeRecord(
            episode=d["episode"],
            phase=d["phase"],
            steps=[StepRecord(*s) for s in d["steps"]],
            final_error=d["final_error"],
            success=d["success"],
            depth=d["depth"],
            cnot=d["cnot"],
            rot=d["rot"],
            seed=d["seed"],
            topology=d["topology"],
            cut=d["cut"],
            xi_current=d["xi_current"],
            circuit_json=d["circuit"],
        ))
    return records


def load_run_logs(outdir):
    """All episode logs under `outdir`, grouped by (topology, cut) unit."""
    groups = {}
    for path in sorted(Path(outdir).glob("episodes_*.jsonl")):
        records = _records_from_log(path)
        if not records:
            continue
        key = (records[0].topology, records[0].cut)
        groups.setdefault(key, []).append(records)
    return groups


def report_from_logs(outdir, interval: int = 100):
    """Rebuild summary.csv, success_curve.csv and convergence.csv from logs."""
    outdir = Path(outdir)
    groups = load_run_logs(outdir)
    if not groups:
        raise FileNotFoundError(f"no episodes_*.jsonl logs under {outdir}")

    rows = []
    curve_lines = []
    convergence_lines = []
    for (topology, cut) in sorted(groups):
        per_seed_records = groups[(topology, cut)]
        summaries = [
            summarize_seed(recs, recs[0].seed) for recs in per_seed_records
        ]
        best_of, _ = aggregate_runs(summaries)
        rows.append(best_of)
        label = f"{best_of.stage}-{topology}" + (f"-{cut}" if cut else "")
        for idx, rate in probability_of_success(per_seed_records, interval):
            curve_lines.append(f"{label},{idx},{rate!r}")
        best_rec = min(
            (r for recs in per_seed_records for r in recs),
            key=lambda r: (r.final_error, r.episode),
        )
        if best_rec.steps:
            c_min = best_rec.steps[-1].cost - best_rec.final_error
            for step_idx, step in enumerate(best_rec.steps, start=1):
                convergence_lines.append(
                    f"{label},{step_idx},{step.cost - c_min!r}"
                )

    rows.sort(key=lambda r: (r.stage, r.topology, r.cut))
    summary_text = ",".join(SUMMARY_COLUMNS) + "\n"
    summary_text += "".join(",".join(r.csv_row()) + "\n" for r in rows)
    (outdir / "summary.csv").write_text(summary_text)

    curve_text = "label,interval_index,rate\n" + "".join(
        line + "\n" for line in curve_lines
    )
    (outdir / "success_curve.csv").write_text(curve_text)

    convergence_text = "label,step,error\n" + "".join(
        line + "\n" for line in convergence_lines
    )
    (outdir / "convergence.csv").write_text(convergence_text)
    return rows


def run_full(config: ExperimentConfig):
    """Both stages plus CSV reports; returns (topo ranking, cut results)."""
    outdir = Path(config.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    topo_ranking, winners = run_agent_topo(config, outdir=outdir)
    cut_results = {}
    for topology in winners:
        cut_results[topology.name] = run_agent_cut(config, topology, outdir=outdir)
    report_from_logs(outdir, interval=max(1, config.test_interval))
    return topo_ranking, cut_results
