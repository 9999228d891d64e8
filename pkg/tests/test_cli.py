import json
import shutil
import subprocess

import pytest

from cfum.cli import main
from cfum.hypergraph import format_coloring, format_hypergraph, parse_coloring, parse_hypergraph
from cfum.trees import complete_binary, format_tree, parse_tree, path_tree


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, (json.loads(out.out) if out.out.strip() else None), out.err


@pytest.fixture
def files(tmp_path):
    def write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return write


def test_verify_b7_passes(capsys, tmp_path):
    code, data, _ = run(capsys, "color", "b7", "--out", str(tmp_path / "b7"))
    assert code == 0 and data["colors_used"] == 6
    code, cert, err = run(capsys, "verify", "--kind", "cf", "--tree", str(tmp_path / "b7.tree"), "--coloring", str(tmp_path / "b7.coloring"))
    assert code == 0 and cert["verdict"] == "pass" and "pass" in err


def test_verify_failure_exit_code(capsys, files):
    tree = files("p4.tree", format_tree(path_tree(4)))
    col = files("c.txt", "1 1 1 1\n")
    code, cert, _ = run(capsys, "verify", "--kind", "um", "--tree", tree, "--coloring", col)
    assert code == 1 and cert["verdict"] == "fail" and cert["reason"] == "max_not_unique"
    assert set(cert) >= {"verdict", "kind", "edge", "reason"}


def test_input_errors(capsys, files):
    bad = files("bad.hg", "3 x\n")
    col = files("c.txt", "1 1 1\n")
    assert run(capsys, "verify", "--kind", "cf", "--input", bad, "--coloring", col)[0] == 2
    good = files("g.hg", "3 1\n0 1\n")
    assert run(capsys, "verify", "--kind", "cf", "--input", good, "--coloring", files("short.txt", "1 2\n"))[0] == 2
    assert run(capsys, "verify", "--kind", "cf", "--input", good, "--coloring", "/nonexistent")[0] == 2
    assert run(capsys, "verify", "--kind", "cf", "--coloring", col)[0] == 2
    assert run(capsys, "verify", "--kind", "nope", "--input", good, "--coloring", col)[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_solve_tree_and_hypergraph(capsys, files):
    tree = files("p7.tree", format_tree(path_tree(7)))
    for kind in ("um", "cf", "odd"):
        code, data, _ = run(capsys, "solve", "--kind", kind, "--tree", tree)
        assert code == 0 and data["chi"] == 3 and data["status"] == "exact"
        assert set(data) >= {"chi", "witness", "status", "stats"}


def test_solve_budget(capsys, files, monkeypatch):
    from itertools import combinations

    from cfum.hypergraph import Hypergraph

    hg = files("t.hg", format_hypergraph(Hypergraph(12, list(combinations(range(12), 3)))))
    code, data, _ = run(capsys, "solve", "--kind", "cf", "--input", hg, "--node-limit", "20")
    assert code == 0 and data["status"] == "unknown" and data["chi"] is None
    monkeypatch.setenv("CFUM_TIME_LIMIT", "0.000001")
    code, data, _ = run(capsys, "solve", "--kind", "um", "--input", hg)
    assert data["status"] == "unknown"


def test_gen_extremal_round_trip(capsys, tmp_path):
    prefix = str(tmp_path / "e62")
    code, data, _ = run(capsys, "gen", "extremal", "--n", "6", "--k", "2", "--out", prefix)
    assert code == 0
    H = parse_hypergraph((tmp_path / "e62.hg").read_text())
    assert format_hypergraph(H) == data["hypergraph"]
    C = parse_coloring((tmp_path / "e62.coloring").read_text())
    assert format_coloring(C) == data["part_coloring"]
    code, sol, _ = run(capsys, "solve", "--kind", "um", "--input", prefix + ".hg")
    assert sol["chi"] == 4
    code, out, _ = run(capsys, "color", "um-from-cf", "--input", prefix + ".hg", "--cf", prefix + ".coloring")
    assert code == 0 and out["colors_used"] == 4 and out["certificate"]["verdict"] == "pass"


def test_gen_uniform_and_transfer(capsys, tmp_path):
    prefix = str(tmp_path / "u")
    code, data, _ = run(capsys, "gen", "extremal", "--n", "12", "--k", "2", "--l", "3", "--out", prefix)
    assert code == 0 and data["warnings"] == []
    code, out, _ = run(capsys, "color", "um-from-cf", "--input", prefix + ".hg", "--cf", prefix + ".coloring", "--uniform", "3")
    assert code == 0 and out["colors_used"] == 7


def test_um_from_cf_rejects_non_cf_input(capsys, files):
    hg = files("h.hg", "2 1\n0 1\n")
    code, data, _ = run(capsys, "color", "um-from-cf", "--input", hg, "--cf", files("c.txt", "1 1\n"))
    assert code == 2 and data["certificate"]["edge"] == [0, 1]


def test_gen_critical_and_extract(capsys, tmp_path, files):
    prefix = str(tmp_path / "c4")
    code, data, _ = run(capsys, "gen", "critical", "--k", "4", "--out", prefix)
    assert code == 0 and parse_tree(data["tree"]).n == 8
    code, res, _ = run(capsys, "extract", "--input", prefix + ".tree", "--k", "4", "--l", "2")
    assert code == 0 and res["type"] == "path" and len(res["path"]) == 4
    recipe = files("r.json", json.dumps({"join": [1, 0], "left": {"join": [0, 0], "left": None, "right": None}, "right": {"join": [0, 0], "left": None, "right": None}}))
    code, data, _ = run(capsys, "gen", "critical", "--k", "3", "--recipe", recipe)
    assert code == 0 and sorted(map(sorted, parse_tree(data["tree"]).edges)) == [[0, 1], [1, 2], [2, 3]]
    assert run(capsys, "gen", "critical")[0] == 2
    assert run(capsys, "extract", "--input", prefix + ".tree", "--k", "5", "--l", "2")[0] == 2


def test_gen_binary_and_refute(capsys, tmp_path, files):
    prefix = str(tmp_path / "b9")
    assert run(capsys, "gen", "binary", "--d", "9", "--out", prefix)[0] == 0
    assert parse_tree((tmp_path / "b9.tree").read_text()) == complete_binary(9)
    col = files("c.txt", "k=2 " + " ".join(["1", "2"] * 255 + ["1"]))
    code, cert, _ = run(capsys, "refute", "--tree", prefix + ".tree", "--coloring", col, "--k", "2")
    assert code == 1 and cert["reason"] == "all_even" and cert["detail"]["forced"]
    wit = files("w.json", json.dumps({"levels": 2, "branch_map": [0, 1, 2], "paths": [[0, 1], [0, 2]]}))
    code, cert, _ = run(capsys, "refute", "--tree", prefix + ".tree", "--coloring", col, "--k", "2", "--witness", wit)
    assert code in (0, 1) and cert["kind"] == "odd"
    assert run(capsys, "refute", "--tree", files("p.tree", format_tree(path_tree(4))), "--coloring", files("d.txt", "1 1 1 1"), "--k", "1")[0] == 2


def test_color_constructions(capsys):
    for argv, colors in [
        (("color", "psf", "--n", "4", "--k", "2", "--r", "1"), 6),
        (("color", "b7", "--iterate", "1"), 6),
        (("color", "um-path", "--n", "15"), 4),
        (("color", "um-binary", "--d", "5"), 5),
    ]:
        code, data, _ = run(capsys, *argv)
        assert code == 0 and data["colors_used"] == colors and data["certificate"]["verdict"] == "pass"
    assert run(capsys, "color", "psf", "--n", "4")[0] == 2


def test_experiment_command(capsys):
    code, rep, err = run(capsys, "experiment", "gap-tree-8")
    assert code == 0 and rep["schema"] == "cfum.report/1" and rep["verdict"] == "pass"
    assert all(set(c) == {"anchor", "expected", "computed", "verdict"} for c in rep["claims"])
    assert "claims pass" in err
    code, rep, _ = run(capsys, "experiment", "hierarchy", "--seed", "3")
    assert code == 0 and rep["seed"] == 3
    assert run(capsys, "experiment", "nope")[0] == 2


@pytest.mark.skipif(shutil.which("cfum") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["cfum", "color", "um-path", "--n", "7"], capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["colors_used"] == 3
