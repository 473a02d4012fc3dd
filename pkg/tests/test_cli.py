import json

import pytest

from atx.cli import main
from atx.graphs import emit_graph, emit_graph6
from conftest import complete, cycle


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def write_graph(tmp_path, g, name="g.txt"):
    p = tmp_path / name
    p.write_text(emit_graph(g))
    return str(p)


class TestDiff:
    def test_k3_directed_cycle(self, tmp_path, capsys, k3):
        gp = write_graph(tmp_path, k3)
        op = tmp_path / "arcs.txt"
        op.write_text("0 1\n1 2\n2 0\n")
        code, out, _ = run(capsys, "diff", gp, str(op), "--json")
        assert code == 0
        assert json.loads(out) == {"even": 1, "odd": 1, "diff": 0}

    def test_single_edge(self, tmp_path, capsys):
        from atx.graphs import make_graph

        gp = write_graph(tmp_path, make_graph(2, [(0, 1)]))
        op = tmp_path / "arc.txt"
        op.write_text("0 1\n")
        code, out, _ = run(capsys, "diff", gp, str(op), "--json")
        assert json.loads(out)["diff"] == 1

    def test_coverage_mismatch_is_usage_error(self, tmp_path, capsys, k3):
        gp = write_graph(tmp_path, k3)
        op = tmp_path / "arcs.txt"
        op.write_text("0 1\n")
        code, _, err = run(capsys, "diff", gp, str(op))
        assert code == 2


class TestCheck:
    def test_d1_at_true(self, tmp_path, capsys, d1):
        gp = write_graph(tmp_path, d1)
        code, out, _ = run(capsys, "check", gp, "--anchors", "0:2,3:2", "--json")
        assert code == 0
        data = json.loads(out)
        assert data["verdict"] is True
        assert data["certificate"]["diff"] != 0

    def test_c5_two_anchors(self, tmp_path, capsys, c5):
        gp = write_graph(tmp_path, c5)
        code, out, _ = run(capsys, "check", gp, "--anchors", "0:2,1:2", "--json")
        assert code == 0

    def test_k3_choosable_false(self, tmp_path, capsys, k3):
        gp = write_graph(tmp_path, k3)
        code, out, _ = run(
            capsys, "check", gp, "--anchors", "0:2,1:2,2:2", "--mode", "choosable", "--json"
        )
        assert code == 1
        data = json.loads(out)
        assert data["verdict"] is False and "witness" in data

    def test_guard_exit_code(self, tmp_path, capsys):
        from atx.graphs import make_graph

        g = make_graph(9, [(i, i + 1) for i in range(8)])
        gp = write_graph(tmp_path, g)
        code, _, err = run(capsys, "check", gp, "--anchors", "0:2", "--mode", "choosable")
        assert code == 3


class TestStructure:
    def test_d2(self, tmp_path, capsys, d2):
        gp = write_graph(tmp_path, d2)
        code, out, _ = run(capsys, "structure", gp, "--json")
        data = json.loads(out)
        assert data["k4minorfree"] is True and data["mad"] == "20/7"

    def test_k4_graph6_stdin(self, capsys, monkeypatch, k4):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("C~\n"))
        code, out, _ = run(capsys, "structure", "-", "--format", "graph6", "--json")
        data = json.loads(out)
        assert data["k4minorfree"] is False and data["mad"] == "3/1"

    def test_c6(self, tmp_path, capsys, c6):
        gp = write_graph(tmp_path, c6)
        code, out, _ = run(capsys, "structure", gp, "--json")
        data = json.loads(out)
        assert data["trianglefree"] is True and data["links"] == []


class TestConstruct:
    def test_thm6_d1(self, tmp_path, capsys, d1):
        gp = write_graph(tmp_path, d1)
        code, out, _ = run(
            capsys, "construct", gp, "--theorem", "thm6",
            "--anchors", "0:2,3:2,1:2", "--json",
        )
        assert code == 0
        data = json.loads(out)
        assert data["verified"] is True
        assert data["trace"]

    def test_thm3_21_chained(self, tmp_path, capsys, d1):
        gp = write_graph(tmp_path, d1)
        code, out, _ = run(
            capsys, "construct", gp, "--theorem", "thm3-21",
            "--anchors", "0:2,3:1", "--json",
        )
        assert code == 1
        data = json.loads(out)
        assert data["result"] == "impossible" and data["reason"] == "chained"
        assert data["witnessLists"]

    def test_thm7_wrong_class(self, tmp_path, capsys, d1):
        gp = write_graph(tmp_path, d1)
        code, _, err = run(
            capsys, "construct", gp, "--theorem", "thm7", "--anchors", "0:2,1:2,2:1"
        )
        assert code == 2
        assert "class" in err

    def test_thm9_subdivided_k4(self, tmp_path, capsys):
        from conftest import subdivided_k4

        gp = write_graph(tmp_path, subdivided_k4())
        code, out, _ = run(
            capsys, "construct", gp, "--theorem", "thm9",
            "--anchors", "0:2,1:2,2:2", "--json",
        )
        assert code == 0
        assert json.loads(out)["verified"] is True

    def test_arity_mismatch(self, tmp_path, capsys, d1):
        gp = write_graph(tmp_path, d1)
        code, _, err = run(
            capsys, "construct", gp, "--theorem", "thm6", "--anchors", "0:2,3:2"
        )
        assert code == 2


class TestSweep:
    def test_small_k4mf_pairs(self, capsys):
        code, out, err = run(
            capsys, "sweep", "--classfilter", "k4mf", "--max-vertices", "4",
            "--arity", "2", "--json",
        )
        assert code == 0
        lines = [json.loads(l) for l in out.strip().splitlines()]
        assert all(l["counterexamples"] == [] for l in lines)
        summary = json.loads(err.strip().splitlines()[-1])["summary"]
        assert summary["counterexamples"] == []

    def test_stdin_stream(self, capsys, monkeypatch, c5, c4):
        import io

        stream = emit_graph6(c5) + "\n" + emit_graph6(c4) + "\n"
        monkeypatch.setattr("sys.stdin", io.StringIO(stream))
        code, out, _ = run(
            capsys, "sweep", "-", "--classfilter", "k4mf", "--max-vertices", "6",
            "--arity", "2", "--json",
        )
        assert code == 0
        lines = [json.loads(l) for l in out.strip().splitlines()]
        assert len(lines) == 2

    def test_deterministic_output(self, capsys):
        _, out1, _ = run(
            capsys, "sweep", "--classfilter", "k4mf-trianglefree",
            "--max-vertices", "5", "--arity", "3", "--seed", "7", "--json",
        )
        _, out2, _ = run(
            capsys, "sweep", "--classfilter", "k4mf-trianglefree",
            "--max-vertices", "5", "--arity", "3", "--seed", "7", "--json",
        )
        assert out1 == out2

    def test_parse_error_line_number(self, capsys, monkeypatch):
        import io

        monkeypatch.setattr("sys.stdin", io.StringIO("not graph6 ###\n"))
        code, _, err = run(capsys, "sweep", "-", "--max-vertices", "5")
        assert code == 2
        assert "line 1" in err
