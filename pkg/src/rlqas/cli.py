"""Command-line entry point.

Subcommands: exact-energy, topologies, topo-search, cut-search, full, report.
Exit codes: 0 success, 1 runtime error, 2 usage/config error.  All numeric
output is printed with 10 significant digits.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .connectivity import (
    enumerate_connected_topologies,
    load_topology,
    topology_catalog,
)
from .hamiltonian import exact_ground_energy, load_hamiltonian
from .orchestrator import (
    ConfigError,
    ExperimentConfig,
    apply_overrides,
    load_config,
    replace_name,
    report_from_logs,
    run_agent_cut,
    run_agent_topo,
    run_full,
)

USAGE_ERROR = 2
RUNTIME_ERROR = 1


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="rlqas",
        description="RL-driven circuit search for molecular ground states "
                    "under topology and cut constraints",
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("exact-energy", help="print the dense-diagonalization ground energy")
    p.add_argument("hamiltonian", help="Hamiltonian file path or bundled name")

    p = sub.add_parser("topologies", help="list the topology set")
    p.add_argument("--n", type=int, default=4, help="qubit count (default 4)")

    for name, help_text in (
        ("topo-search", "run the topology-search stage"),
        ("cut-search", "run the cut-search stage on one topology"),
        ("full", "run both stages and write reports"),
    ):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--config", help="flat key=value config file")
        p.add_argument("--set", action="append", default=[], metavar="KEY=VALUE",
                       help="override a config key (repeatable)")
        p.add_argument("--out", help="output directory (overrides config outdir)")
        p.add_argument("--seeds", help="comma-separated seed list")
        p.add_argument("--jobs", type=int, help="parallel run limit")
        if name == "cut-search":
            p.add_argument("--topology", required=True,
                           help="catalog topology name to cut")

    p = sub.add_parser("report", help="regenerate CSV reports from episode logs")
    p.add_argument("--out", required=True, help="directory holding episodes_*.jsonl")
    p.add_argument("--interval", type=int, default=100,
                   help="success-curve window length (default 100)")

    return parser


def _resolve_config(args) -> ExperimentConfig:
    cfg = load_config(args.config) if args.config else ExperimentConfig()
    cfg = apply_overrides(cfg, args.set)
    extra = []
    if args.out:
        extra.append(f"outdir={args.out}")
    if args.seeds:
        extra.append(f"seeds={args.seeds}")
    if getattr(args, "jobs", None):
        extra.append(f"jobs={args.jobs}")
    return apply_overrides(cfg, extra)


def _print_ranking(ranking, header):
    print(header)
    print("  rank  tied  min_error      depth  cnot  rot  unit")
    for i, entry in enumerate(ranking, start=1):
        s = entry.summary
        unit = s.topology + (f" / {s.cut}" if s.cut else "")
        print(
            f"  {i:>4}  {'*' if entry.tied else ' '}     "
            f"{_fmt(s.min_error):<14} {s.depth:<6g} {s.cnot:<5g} {s.rot:<4g} {unit}"
        )


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command is None:
        parser.print_usage(sys.stderr)
        return USAGE_ERROR
    try:
        return _dispatch(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RUNTIME_ERROR


def _dispatch(args) -> int:
    if args.command == "exact-energy":
        path = Path(args.hamiltonian)
        if not path.exists():
            from .hamiltonian import bundled_path
            path = bundled_path(args.hamiltonian)
        h = load_hamiltonian(path)
        print(_fmt(exact_ground_energy(h)))
        return 0

    if args.command == "topologies":
        if args.n == 4:
            graphs = topology_catalog(4)
        else:
            graphs = [
                replace_name(g, f"G{i}-{len(g.edges)}e")
                for i, g in enumerate(enumerate_connected_topologies(args.n))
            ]
        for g in graphs:
            edges = " ".join(f"({u},{v})" for u, v in g.sorted_edges())
            print(f"{g.name}: n={g.n_qubits} edges {edges}")
        return 0

    if args.command == "report":
        rows = report_from_logs(args.out, interval=args.interval)
        print(f"wrote summary.csv, success_curve.csv, convergence.csv "
              f"({len(rows)} summary rows) under {args.out}")
        return 0

    cfg = _resolve_config(args)
    outdir = Path(cfg.outdir)
    outdir.mkdir(parents=True, exist_ok=True)

    if args.command == "topo-search":
        ranking, winners = run_agent_topo(cfg, outdir=outdir)
        report_from_logs(outdir, interval=max(1, cfg.test_interval))
        _print_ranking(ranking, "topology ranking:")
        print("selected: " + ", ".join(g.name for g in winners))
        return 0

    if args.command == "cut-search":
        if Path(args.topology).exists():
            topology = load_topology(args.topology)
        else:
            graphs = {g.name: g for g in cfg.topology_set()}
            if args.topology not in graphs:
                raise ConfigError(
                    f"unknown topology {args.topology!r}; have {sorted(graphs)} "
                    "(or pass a topology file path)"
                )
            topology = graphs[args.topology]
        ranking, per_shape = run_agent_cut(cfg, topology, outdir=outdir)
        report_from_logs(outdir, interval=max(1, cfg.test_interval))
        _print_ranking(ranking, f"cut ranking on {args.topology}:")
        for shape, summary in per_shape.items():
            print(f"best {shape}: {summary.cut} at error {_fmt(summary.min_error)}")
        return 0

    if args.command == "full":
        topo_ranking, cut_results = run_full(cfg)
        _print_ranking(topo_ranking, "topology ranking:")
        for name, (ranking, per_shape) in cut_results.items():
            _print_ranking(ranking, f"cut ranking on {name}:")
        print(f"reports written under {cfg.outdir}")
        return 0

    raise ConfigError(f"unknown command {args.command!r}")


if __name__ == "__main__":
    sys.exit(main())
