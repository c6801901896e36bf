
from rlqas import bundled_path, exact_ground_energy, load_hamiltonian
from rlqas.cli import main


def test_no_arguments_is_usage_error(capsys):
    assert main([]) == 2
    assert "usage" in capsys.readouterr().err.lower()


def test_exact_energy_prints_reference_value(capsys):
    path = bundled_path("h2_4q_jw")
    assert main(["exact-energy", str(path)]) == 0
    printed = float(capsys.readouterr().out.strip())
    want = exact_ground_energy(load_hamiltonian(path))
    assert abs(printed - want) < 1e-9  # 10 significant digits survive


def test_exact_energy_accepts_bundled_name(capsys):
    assert main(["exact-energy", "h2_4q_jw"]) == 0
    assert capsys.readouterr().out.strip().startswith("-1.137270175")


def test_exact_energy_missing_file(capsys):
    assert main(["exact-energy", "no_such_file.txt"]) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_topologies_catalog(capsys):
    assert main(["topologies", "--n", "4"]) == 0
    out = capsys.readouterr().out
    for name in ("Linear", "Square", "T", "Triangle-1", "Triangle-2"):
        assert name in out
    assert len(out.strip().splitlines()) == 5


def test_topologies_enumerated(capsys):
    assert main(["topologies", "--n", "3"]) == 0
    assert len(capsys.readouterr().out.strip().splitlines()) == 2


def test_unknown_config_key_is_usage_error(tmp_path, capsys):
    cfg = tmp_path / "bad.cfg"
    cfg.write_text("bogus_key=1\n")
    assert main(["topo-search", "--config", str(cfg)]) == 2
    assert "unknown config key" in capsys.readouterr().err


def test_full_pipeline_and_report_idempotence(tmp_path, capsys):
    out = tmp_path / "runs"
    args = [
        "full",
        "--set", "topologies=Linear,T",
        "--set", "episodes=2",
        "--set", "test_interval=2",
        "--set", "curriculum_interval=2",
        "--set", "d_max=3",
        "--set", "vqe_budget=10",
        "--set", "vqe_lr=0.1",
        "--set", "hidden_layers=1",
        "--set", "hidden_units=8",
        "--set", "batch_size=4",
        "--set", "buffer_capacity=32",
        "--set", "cut_shapes=2+2",
        "--set", "cut_mode_overrides=",
        "--set", "topo_carryover=1",
        "--seeds", "0",
        "--out", str(out),
    ]
    assert main(args) == 0
    summary = (out / "summary.csv").read_text()
    curve = (out / "success_curve.csv").read_text()
    assert summary.count("\n") >= 4  # 2 topo rows + 3 cut rows + header
    assert main(["report", "--out", str(out), "--interval", "2"]) == 0
    assert (out / "summary.csv").read_text() == summary
    assert (out / "success_curve.csv").read_text() == curve


def test_cut_search_requires_known_topology(tmp_path, capsys):
    assert main([
        "cut-search", "--topology", "Pentagon", "--out", str(tmp_path / "x"),
    ]) == 2
    assert "unknown topology" in capsys.readouterr().err


def test_cut_search_accepts_topology_file(tmp_path):
    topo = tmp_path / "ring.txt"
    topo.write_text("n=4\n0 1\n1 2\n2 3\n0 3\n")
    out = tmp_path / "runs"
    assert main([
        "cut-search", "--topology", str(topo), "--out", str(out),
        "--seeds", "0",
        "--set", "episodes=1",
        "--set", "test_interval=0",
        "--set", "d_max=2",
        "--set", "vqe_budget=5",
        "--set", "hidden_layers=1",
        "--set", "hidden_units=8",
        "--set", "batch_size=4",
        "--set", "buffer_capacity=16",
        "--set", "cut_shapes=2+2",
        "--set", "cut_mode_overrides=",
    ]) == 0
    assert list(out.glob("episodes_cut-ring-2+2-*_0.jsonl"))
