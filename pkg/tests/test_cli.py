import json

import pytest

from pathkoszul.cli import main

from conftest import CORPUS


@pytest.fixture()
def gfile(tmp_path):
    def write(name):
        p = tmp_path / f"{name}.txt"
        p.write_text(CORPUS[name] + "\n")
        return str(p)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv, "--format", "json")
    return code, (json.loads(out) if out else None)


def test_check_json(capsys, gfile):
    code, d = run_json(capsys, "check", "--graph", gfile("tri_pendant"))
    assert code == 0
    assert d["connected"] is True
    assert d["has_cycle"] is True
    assert d["extendable"]["3->4"] is False
    assert d["extendable"]["4->3"] is True
    assert d["category"]["total_dim"] == 16


def test_check_text(capsys, gfile):
    code, out = run(capsys, "check", "--graph", gfile("c3"), "--format", "text")
    assert code == 0
    assert "total dim 12" in out


def test_algebra_ok(capsys, gfile):
    code, d = run_json(capsys, "algebra", "--graph", gfile("c4"))
    assert code == 0
    assert d["ok"] is True and d["failures"] == []


def test_algebra_literal_mode(capsys, gfile):
    code, d = run_json(capsys, "algebra", "--graph", gfile("a2"),
                       "--mode", "literal:4")
    assert code == 0
    assert d["ok"] is True
    assert d["category"]["dims_by_degree"] == {str(k): 2 for k in range(5)}


def test_resolve_minimal(capsys, gfile):
    code, d = run_json(capsys, "resolve", "--graph", gfile("a2"),
                       "--target", "simple:1", "--positions", "3")
    assert code == 0
    assert d["exact"] is True and d["verdict"] == "exact"
    rows = d["positions"]
    assert rows["0"] == [{"vertex": 1, "shift": 0, "multiplicity": 1}]
    assert rows["-2"] == [{"vertex": 2, "shift": -3, "multiplicity": 1}]
    assert d["linear_up_to"] == 1


def test_resolve_cone_method(capsys, gfile):
    code, d = run_json(capsys, "resolve", "--graph", gfile("c3"),
                       "--target", "mw:1:2,3", "--method", "cone:2",
                       "--positions", "4")
    assert code == 0
    assert d["exact"] is True
    assert d["method"] == "cone:2"
    assert d["linear_up_to"] >= 2


def test_resolve_depth_error(capsys, gfile):
    code, _ = run(capsys, "resolve", "--graph", gfile("c3"),
                  "--target", "mw:1:2,3", "--method", "cone:5",
                  "--positions", "3")
    assert code == 2


def test_ses_gamma_report(capsys, gfile):
    code, d = run_json(capsys, "ses", "--graph", gfile("c3"),
                       "--target", "gamma:1:2,3:2")
    assert code == 0
    assert d["kind"] == "gamma"
    assert d["degenerate"] is False
    assert d["verified_exact"] is True


def test_ses_hypothesis_violation(capsys, gfile):
    code, _ = run(capsys, "ses", "--graph", gfile("tri_pendant"),
                  "--target", "gamma:3:4:4")
    assert code == 3


def test_ses_degenerate_beta(capsys, gfile):
    code, d = run_json(capsys, "ses", "--graph", gfile("a2"),
                       "--target", "beta:1:2")
    assert code == 0
    assert d["degenerate"] is True


def test_koszulity_pass_and_fail(capsys, gfile):
    code, d = run_json(capsys, "koszulity", "--graph", gfile("c3"),
                       "--positions", "4")
    assert code == 0 and d["verdict"] == "pass"
    code, d = run_json(capsys, "koszulity", "--graph", gfile("a2"),
                       "--positions", "3")
    assert code == 4 and d["verdict"] == "fail"
    assert d["witness"] == [2, 1, 2, 3]


def test_ext_command(capsys, gfile):
    code, d = run_json(capsys, "ext", "--graph", gfile("c3"),
                       "--positions", "2")
    assert code == 0
    entries = {(e["n"], e["source"], e["target"], e["shift"]): e["dim"]
               for e in d["entries"]}
    assert entries[(1, 1, 2, 1)] == 1
    assert all(n == m for (n, _, _, m) in entries)


def test_figure_module(capsys, gfile):
    code, out = run(capsys, "figure", "--graph", gfile("c3"),
                    "--target", "projective:1", "--format", "text")
    assert code == 0
    assert "deg 0: 1" in out
    assert "deg 1: 2 3" in out
    assert "deg 2: 1" in out


def test_figure_resolution(capsys, gfile):
    code, out = run(capsys, "figure", "--graph", gfile("c3"),
                    "--target", "resolution:simple:1", "--positions", "3",
                    "--format", "text")
    assert code == 0
    assert "deg \\ pos" in out


def test_byte_determinism(capsys, gfile):
    path = gfile("c4")
    args = ("koszulity", "--graph", path, "--positions", "4",
            "--format", "json")
    _, first = run(capsys, *args)
    _, second = run(capsys, *args)
    assert first == second and first.endswith("\n")


def test_out_flag(capsys, gfile, tmp_path):
    dest = tmp_path / "report.json"
    code, out = run(capsys, "check", "--graph", gfile("c3"),
                    "--format", "json", "--out", str(dest))
    assert code == 0 and out == ""
    assert json.loads(dest.read_text())["connected"] is True


def test_bad_inputs(capsys, gfile, tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("1 2\n1 2\n")
    assert run(capsys, "check", "--graph", str(bad))[0] == 2
    assert run(capsys, "check", "--graph", str(tmp_path / "none.txt"))[0] == 2
    assert run(capsys, "algebra", "--graph", gfile("c3"),
               "--field", "fp:6")[0] == 2
    assert run(capsys, "algebra", "--graph", gfile("c3"),
               "--mode", "literal:1")[0] == 2
    assert run(capsys, "resolve", "--graph", gfile("c3"),
               "--target", "simple:9")[0] == 2
    assert run(capsys, "resolve", "--graph", gfile("c3"),
               "--target", "nonsense:1")[0] == 2


def test_field_q(capsys, gfile):
    code, d = run_json(capsys, "resolve", "--graph", gfile("c3"),
                       "--target", "m1:1:2", "--field", "q",
                       "--positions", "3")
    assert code == 0 and d["exact"] is True
    assert d["field"] == "q"
