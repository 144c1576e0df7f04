import numpy as np
import pytest

import clutchopt as co
from clutchopt.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestGenerate:
    def test_writes_instance(self, tmp_path, capsys):
        out = tmp_path / "inst.txt"
        code, stdout, _ = run(
            capsys, "generate", "--nd", "3", "--ns", "4", "--seed", "5", "--out", str(out)
        )
        assert code == 0
        assert "3x4" in stdout
        stack = co.read_instance(out)
        assert stack.heights.shape == (3, 4)
        assert np.array_equal(stack.heights, co.generate_instance(3, 4, seed=5).heights)

    def test_bad_dimensions_exit_nonzero(self, tmp_path, capsys):
        code, _, stderr = run(
            capsys, "generate", "--nd", "0", "--ns", "4", "--out", str(tmp_path / "x")
        )
        assert code != 0
        assert "error" in stderr


class TestSolve:
    @pytest.fixture()
    def instance(self, tmp_path):
        path = tmp_path / "inst.txt"
        co.write_instance(co.generate_instance(3, 4, seed=9), path)
        return path

    def test_exhaustive(self, instance, capsys):
        code, stdout, _ = run(capsys, "solve", "--instance", str(instance), "--solver", "exhaustive")
        assert code == 0
        assert "solver: exhaustive" in stdout
        assert "shifts: 0" in stdout
        assert "optimal: true" in stdout

    def test_sa_with_overrides(self, instance, capsys):
        code, stdout, _ = run(
            capsys,
            "solve",
            "--instance", str(instance),
            "--solver", "sa",
            "--samples", "5",
            "--sweeps", "60",
            "--seed", "3",
            "--rho", "0.7",
        )
        assert code == 0
        assert "solver: sa" in stdout
        assert "samples_total: 5" in stdout

    def test_budget_flag(self, instance, capsys):
        code, stdout, _ = run(
            capsys, "solve", "--instance", str(instance), "--solver", "exact", "--budget", "10"
        )
        assert code == 0
        assert "optimal: true" in stdout

    def test_export_qubo(self, instance, tmp_path, capsys):
        qubo_path = tmp_path / "model.qubo"
        code, _, _ = run(
            capsys,
            "solve",
            "--instance", str(instance),
            "--solver", "exhaustive",
            "--export-qubo", str(qubo_path),
        )
        assert code == 0
        model = co.load_qubo(qubo_path)
        assert model.n_vars == 8
        assert model.gauge_fixed

    def test_missing_instance_file(self, tmp_path, capsys):
        code, _, stderr = run(
            capsys, "solve", "--instance", str(tmp_path / "nope.txt"), "--solver", "exact"
        )
        assert code == 2
        assert "error" in stderr

    def test_unknown_solver_rejected_by_parser(self, instance):
        with pytest.raises(SystemExit) as exc:
            main(["solve", "--instance", str(instance), "--solver", "warp"])
        assert exc.value.code == 2

    def test_incompatible_objective(self, instance, capsys):
        code, _, stderr = run(
            capsys,
            "solve", "--instance", str(instance), "--solver", "exact", "--objective", "sigma",
        )
        assert code == 2
        assert "range" in stderr


class TestBench:
    CONFIG = """
    size 2 3
    size 3 3
    instances 1
    seed 4
    solver exhaustive
    solver exact
    solver sa samples=5 sweeps=60
    """

    def test_bench_with_config(self, tmp_path, capsys):
        config = tmp_path / "bench.cfg"
        config.write_text(self.CONFIG)
        out = tmp_path / "results.csv"
        code, stdout, _ = run(
            capsys, "bench", "--config", str(config), "--out", str(out)
        )
        assert code == 0
        assert "6 records" in stdout
        records = co.parse_results(out.read_text(), "csv")
        assert len(records) == 6

    def test_bench_jsonl(self, tmp_path, capsys):
        config = tmp_path / "bench.cfg"
        config.write_text(self.CONFIG)
        out = tmp_path / "results.jsonl"
        code, _, _ = run(
            capsys, "bench", "--config", str(config), "--out", str(out), "--format", "jsonl"
        )
        assert code == 0
        assert len(co.parse_results(out.read_text(), "jsonl")) == 6

    def test_bench_needs_output_path(self, tmp_path, capsys):
        config = tmp_path / "bench.cfg"
        config.write_text(self.CONFIG)
        code, _, stderr = run(capsys, "bench", "--config", str(config))
        assert code == 2
        assert "out" in stderr

    def test_bench_bad_config(self, tmp_path, capsys):
        config = tmp_path / "bench.cfg"
        config.write_text("solver exact\n")
        code, _, stderr = run(capsys, "bench", "--config", str(config), "--out", str(tmp_path / "r.csv"))
        assert code == 2
        assert "size" in stderr
