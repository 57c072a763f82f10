"""End-to-end command-line behavior through main(argv)."""

from __future__ import annotations

import json

import numpy as np
import pytest

from dynclust import (
    AgentDynamics,
    WeightedGraph,
    parse_dynamics,
    read_trajectory_csv,
    render_adjacency,
    render_dynamics,
    render_edge_list,
)
from dynclust.cli import main

from conftest import EX1_A, EX1_F, W1, triangle_pair_graph


@pytest.fixture()
def ex1_edge_file(tmp_path):
    path = tmp_path / "ex1.edges"
    path.write_text(render_edge_list(WeightedGraph(n=6, weights=W1)))
    return str(path)


@pytest.fixture()
def ex1_adjacency_file(tmp_path):
    path = tmp_path / "ex1.csv"
    path.write_text(render_adjacency(WeightedGraph(n=6, weights=W1)))
    return str(path)


@pytest.fixture()
def ex1_dynamics_file(tmp_path):
    path = tmp_path / "ex1.dyn"
    path.write_text(render_dynamics(AgentDynamics(d=2, A=EX1_A, F=EX1_F)))
    return str(path)


@pytest.fixture()
def disconnected_file(tmp_path):
    path = tmp_path / "disc.edges"
    path.write_text(render_edge_list(triangle_pair_graph()))
    return str(path)


class TestSpectrum:
    def test_connected_graph(self, ex1_edge_file, capsys):
        assert main(["spectrum", ex1_edge_file]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[0] == "0, 0.2, 1.09501, 3, 3.10499, 3.2"
        assert out[1] == "connected: true"
        assert len(out) == 2

    def test_adjacency_input_agrees(self, ex1_edge_file, ex1_adjacency_file, capsys):
        main(["spectrum", ex1_edge_file])
        from_edges = capsys.readouterr().out
        main(["spectrum", ex1_adjacency_file])
        from_matrix = capsys.readouterr().out
        assert from_edges == from_matrix

    def test_disconnected_graph(self, disconnected_file, capsys):
        assert main(["spectrum", disconnected_file]) == 0
        out = capsys.readouterr().out.splitlines()
        assert out[1] == "connected: false"
        assert out[2] == "components: 2"

    def test_missing_file(self, tmp_path, capsys):
        assert main(["spectrum", str(tmp_path / "nope.edges")]) == 2
        assert "error:" in capsys.readouterr().err

    def test_empty_file(self, tmp_path, capsys):
        path = tmp_path / "empty.edges"
        path.write_text("# nothing here\n")
        assert main(["spectrum", str(path)]) == 2
        assert "no graph data" in capsys.readouterr().err

    def test_duplicate_edge(self, tmp_path, capsys):
        path = tmp_path / "dup.edges"
        path.write_text("1 2 1.0\n2 3 1.0\n2 1 0.5\n")
        assert main(["spectrum", str(path)]) == 2
        assert "duplicate edge" in capsys.readouterr().err


class TestCluster:
    def test_with_dynamics(self, ex1_edge_file, ex1_dynamics_file, capsys):
        assert main(["cluster", ex1_edge_file, "--dynamics", ex1_dynamics_file]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["n"] == 6
        assert report["h"] == 3
        assert report["required_zero_columns"] == [2]
        assert report["method"] == "zero-pattern"
        assert report["clusters"] == [[1, 2, 3], [4, 5, 6]]
        assert report["agreement_pairs"] == [[1, 2], [1, 3], [2, 3], [4, 5], [4, 6], [5, 6]]
        assert report["zero_tolerance"] == pytest.approx(4.0825e-6, rel=1e-3)
        assert "warning" not in report

    def test_direct_h(self, ex1_edge_file, capsys):
        assert main(["cluster", ex1_edge_file, "--h", "2"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["h"] == 2
        assert report["required_zero_columns"] == []
        assert report["clusters"] == [[1, 2, 3, 4, 5, 6]]

    def test_h_at_upper_bound_gives_singletons(self, ex1_edge_file, capsys):
        assert main(["cluster", ex1_edge_file, "--h", "7"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["required_zero_columns"] == [2, 3, 4, 5, 6]
        assert report["clusters"] == [[k] for k in range(1, 7)]

    def test_h_out_of_range(self, ex1_edge_file, capsys):
        assert main(["cluster", ex1_edge_file, "--h", "8"]) == 2
        assert "--h must lie in [2, 7]" in capsys.readouterr().err

    def test_scan(self, ex1_edge_file, capsys):
        assert main(["cluster", ex1_edge_file, "--scan"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["method"] == "zero-pattern"
        assert len(report["eigenvalues"]) == 6
        assert report["scan"] == [
            {"h_min": 2, "h_max": 2, "clusters": [[1, 2, 3, 4, 5, 6]]},
            {"h_min": 3, "h_max": 3, "clusters": [[1, 2, 3], [4, 5, 6]]},
            {"h_min": 4, "h_max": 6, "clusters": [[1], [2], [3], [4], [5], [6]]},
        ]

    def test_selector_required(self, ex1_edge_file, capsys):
        assert main(["cluster", ex1_edge_file]) == 2
        assert "exactly one" in capsys.readouterr().err

    def test_selectors_exclusive(self, ex1_edge_file, ex1_dynamics_file, capsys):
        assert main(["cluster", ex1_edge_file, "--dynamics", ex1_dynamics_file, "--h", "3"]) == 2
        assert "exactly one" in capsys.readouterr().err

    def test_tol_override(self, ex1_edge_file, capsys):
        assert main(["cluster", ex1_edge_file, "--h", "3", "--tol", "1e9"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["clusters"] == [[1, 2, 3, 4, 5, 6]]
        assert report["zero_tolerance"] == 1e9

    def test_out_file(self, ex1_edge_file, tmp_path, capsys):
        out = tmp_path / "report.json"
        assert main(["cluster", ex1_edge_file, "--h", "3", "--out", str(out)]) == 0
        assert capsys.readouterr().out == ""
        report = json.loads(out.read_text())
        assert report["clusters"] == [[1, 2, 3], [4, 5, 6]]

    def test_disconnected_exit_code(self, disconnected_file, capsys):
        assert main(["cluster", disconnected_file, "--h", "3"]) == 3
        assert "connected" in capsys.readouterr().err

    def test_non_monotone_warning_in_json(self, tmp_path, capsys):
        graph = tmp_path / "path3.edges"
        graph.write_text("1 2 1\n2 3 1\n")
        dyn = tmp_path / "shrink.dyn"
        dyn.write_text(render_dynamics(AgentDynamics(d=2, A=-np.eye(2), F=-np.eye(2))))
        assert main(["cluster", str(graph), "--dynamics", str(dyn)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["h"] is None
        assert "not monotone" in report["warning"]


class TestDesign:
    def test_writes_valid_dynamics(self, ex1_edge_file, tmp_path, capsys):
        out = tmp_path / "designed.dyn"
        assert main(["design", ex1_edge_file, "--h", "3", "--out", str(out)]) == 0
        dyn = parse_dynamics(out.read_text())
        assert dyn.d == 2
        assert dyn.A[0, 0] == pytest.approx(0.23398850803916757, abs=1e-12)
        err = capsys.readouterr().err.splitlines()
        assert err[0] == "realized h: 3"
        mode_lines = [ln for ln in err if ln.startswith("mode ")]
        assert len(mode_lines) == 6
        assert mode_lines[1].endswith("not Hurwitz")
        assert mode_lines[2].endswith("Hurwitz") and not mode_lines[2].endswith("not Hurwitz")

    def test_stdout_when_no_out(self, ex1_edge_file, capsys):
        assert main(["design", ex1_edge_file, "--h", "4"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("d 2\n")
        assert parse_dynamics(out).d == 2

    def test_degenerate_gap_exit_code(self, tmp_path, capsys):
        graph = tmp_path / "k3.edges"
        graph.write_text("1 2 1\n1 3 1\n2 3 1\n")
        assert main(["design", str(graph), "--h", "3"]) == 4
        assert "degenerate gap" in capsys.readouterr().err

    def test_design_then_cluster_round_trip(self, ex1_edge_file, tmp_path, capsys):
        dyn_path = tmp_path / "designed.dyn"
        assert main(["design", ex1_edge_file, "--h", "3", "--out", str(dyn_path)]) == 0
        capsys.readouterr()
        assert main(["cluster", ex1_edge_file, "--dynamics", str(dyn_path)]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["h"] == 3
        assert report["clusters"] == [[1, 2, 3], [4, 5, 6]]


class TestSimulate:
    def test_full_run_with_dynamics(self, ex1_edge_file, ex1_dynamics_file, tmp_path, capsys):
        csv = tmp_path / "traj.csv"
        code = main(
            [
                "simulate",
                ex1_edge_file,
                "--dynamics",
                ex1_dynamics_file,
                "--t-end",
                "5",
                "--seed",
                "8",
                "--out",
                str(csv),
            ]
        )
        assert code == 0
        captured = capsys.readouterr()
        report = json.loads(captured.out)
        assert report["method"] == "trajectory"
        assert report["clusters"] == [[1, 2, 3], [4, 5, 6]]
        assert report["gap_ratio"] > 2.0
        assert report["trajectory"] == str(csv)
        assert report["truncated"] is False
        assert report["h"] == 3
        tr = read_trajectory_csv(str(csv))
        assert tr.states.shape == (501, 6, 2)

    def test_designed_gains_route(self, ex1_edge_file, tmp_path, capsys):
        csv = tmp_path / "traj.csv"
        code = main(
            ["simulate", ex1_edge_file, "--h", "3", "--t-end", "2", "--out", str(csv)]
        )
        assert code == 0
        report = json.loads(capsys.readouterr().out)
        assert report["h"] == 3
        assert csv.exists()

    def test_selector_exclusive(self, ex1_edge_file, ex1_dynamics_file, tmp_path, capsys):
        csv = str(tmp_path / "t.csv")
        args = ["simulate", ex1_edge_file, "--t-end", "1", "--out", csv]
        assert main(args) == 2
        assert main(args + ["--dynamics", ex1_dynamics_file, "--h", "3"]) == 2

    def test_truncation_warning(self, ex1_edge_file, tmp_path, capsys):
        dyn = tmp_path / "fast.dyn"
        dyn.write_text("d 2\n30 0\n0 30\n0 0\n0 0\n")
        csv = tmp_path / "t.csv"
        code = main(
            [
                "simulate",
                ex1_edge_file,
                "--dynamics",
                str(dyn),
                "--t-end",
                "5",
                "--out",
                str(csv),
            ]
        )
        assert code == 0
        captured = capsys.readouterr()
        assert "truncated" in captured.err
        report = json.loads(captured.out)
        assert report["truncated"] is True
        assert read_trajectory_csv(str(csv)).times[-1] < 5.0


class TestPlot:
    @pytest.fixture()
    def trajectory_csv(self, ex1_edge_file, ex1_dynamics_file, tmp_path, capsys):
        csv = tmp_path / "traj.csv"
        main(
            [
                "simulate",
                ex1_edge_file,
                "--dynamics",
                ex1_dynamics_file,
                "--t-end",
                "1",
                "--out",
                str(csv),
            ]
        )
        capsys.readouterr()
        return str(csv)

    def test_pair_plot(self, trajectory_csv, tmp_path, capsys):
        out = tmp_path / "pair.svg"
        assert main(["plot", trajectory_csv, "--pair", "2", "3", "--out", str(out)]) == 0
        svg = out.read_text()
        assert svg.startswith("<svg ")
        assert "agents 2 and 3" in svg

    def test_pair_plot_coord(self, trajectory_csv, tmp_path):
        out = tmp_path / "pair2.svg"
        assert main(
            ["plot", trajectory_csv, "--pair", "1", "4", "--coord", "2", "--out", str(out)]
        ) == 0
        assert "coordinate 2" in out.read_text()

    def test_phase_plot(self, trajectory_csv, tmp_path):
        out = tmp_path / "phase.svg"
        assert main(["plot", trajectory_csv, "--phase", "--out", str(out)]) == 0
        svg = out.read_text()
        assert svg.count("<polyline") == 6
        assert svg.count("<circle") == 6

    def test_deterministic_output(self, trajectory_csv, tmp_path):
        a = tmp_path / "a.svg"
        b = tmp_path / "b.svg"
        main(["plot", trajectory_csv, "--phase", "--out", str(a)])
        main(["plot", trajectory_csv, "--phase", "--out", str(b)])
        assert a.read_bytes() == b.read_bytes()

    def test_selector_exclusive(self, trajectory_csv, tmp_path, capsys):
        out = str(tmp_path / "x.svg")
        assert main(["plot", trajectory_csv, "--out", out]) == 2
        assert main(["plot", trajectory_csv, "--pair", "1", "2", "--phase", "--out", out]) == 2

    def test_bad_agent_index(self, trajectory_csv, tmp_path, capsys):
        out = str(tmp_path / "x.svg")
        assert main(["plot", trajectory_csv, "--pair", "1", "9", "--out", out]) == 2
        assert "agent index" in capsys.readouterr().err

    def test_bad_coordinate(self, trajectory_csv, tmp_path, capsys):
        out = str(tmp_path / "x.svg")
        assert main(["plot", trajectory_csv, "--pair", "1", "2", "--coord", "3", "--out", out]) == 2
        assert "coordinate" in capsys.readouterr().err

    def test_phase_needs_two_coordinates(self, tmp_path, capsys):
        csv = tmp_path / "flat.csv"
        csv.write_text("t,x_1_1,x_2_1\n0,1,2\n1,2,3\n")
        out = str(tmp_path / "x.svg")
        assert main(["plot", str(csv), "--phase", "--out", out]) == 2
        assert "at least 2" in capsys.readouterr().err
