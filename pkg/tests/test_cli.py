"""CLI smoke tests: every subcommand end to end through main()."""

import json

import pytest

from sparsewitness.cli import main
from sparsewitness.graphs import read_edge_list
from sparsewitness.witness import build_W, w_star_vertex_count


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_build_w(tmp_path, capsys):
    out = tmp_path / "w.edges"
    code, _, _ = run(capsys, "build", "--family", "w", "--a", "2",
                     "--gamma", "1", "--r", "4", "--out", str(out))
    assert code == 0
    g = read_edge_list(out.read_text())
    ref = build_W(2, 1, 4).graph
    assert (g.n, g.m) == (ref.n, ref.m)
    roles = (tmp_path / "w.edges.roles").read_text()
    assert roles.strip()


def test_build_wstar_stdout(capsys):
    code, out, _ = run(capsys, "build", "--family", "wstar", "--a", "1",
                       "--gamma", "2", "--r", "2")
    assert code == 0
    body, _, roles = out.partition("# roles\n")
    g = read_edge_list(body)
    assert g.n == 10  # path on 3*gamma + 4 vertices
    assert roles.strip()


def test_process(tmp_path, capsys):
    out = tmp_path / "proc.edges"
    code, _, err = run(capsys, "process", "--gamma", "2", "--r", "2",
                       "--steps", "11", "--out", str(out))
    assert code == 0
    assert "floor 2" in err
    g = read_edge_list(out.read_text())
    assert g.n == w_star_vertex_count(2, 2, 2)


def test_sample_and_detect_roundtrip(tmp_path, capsys):
    graph_file = tmp_path / "g.edges"
    code, out, _ = run(capsys, "sample", "--n", "25", "--p", "0.4",
                       "--seed", "11")
    assert code == 0
    graph_file.write_text(out)
    code, out, _ = run(capsys, "detect", "--graph", str(graph_file),
                       "--gamma", "0", "--r", "4", "--a", "1", "--count")
    record = json.loads(out)
    assert record["outcome"] in ("found", "none", "budget_exceeded")
    assert code == (0 if record["outcome"] == "found" else 1)


def test_sample_requires_p_or_alpha(capsys):
    with pytest.raises(SystemExit):
        main(["sample", "--n", "10"])


def test_detect_dominating(tmp_path, capsys):
    graph_file = tmp_path / "w.edges"
    run(capsys, "build", "--family", "w", "--a", "2", "--gamma", "0",
        "--r", "4", "--out", str(graph_file))
    code, out, _ = run(capsys, "detect", "--graph", str(graph_file),
                       "--gamma", "0", "--r", "4", "--a-min", "1",
                       "--a-max", "2", "--dominating")
    record = json.loads(out)
    assert code == 0 and record["outcome"] == "found" and record["a"] == 2


def test_evaluate(tmp_path, capsys):
    graph_file = tmp_path / "g.edges"
    formula_file = tmp_path / "phi.txt"
    run(capsys, "build", "--family", "w", "--a", "1", "--gamma", "1",
        "--r", "4", "--out", str(graph_file))
    formula_file.write_text("EXSET X (@isoW(X) & @max(X))\n")
    code, out, _ = run(capsys, "evaluate", "--graph", str(graph_file),
                       "--formula", str(formula_file), "--gamma", "1")
    assert code == 0 and out.strip() == "true"


def test_thresholds(capsys):
    code, out, _ = run(capsys, "thresholds", "--n", "500", "--alpha", "0.3",
                       "--gamma", "13")
    report = json.loads(out)
    assert code == 0
    assert report["window"] == "existence"
    assert report["window_low"] < report["window_high"]


def test_sequences_part1(capsys):
    code, out, _ = run(capsys, "sequences", "--mode", "part1", "--i-max", "4",
                       "--gamma", "13")
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 0
    assert [r["i"] for r in rows] == [3, 4]
    assert all(r["gap_certificate"] for r in rows)


def test_sequences_part2(capsys):
    code, out, _ = run(capsys, "sequences", "--mode", "part2", "--i-max", "2",
                       "--alpha", "0.6", "--beta", "0.25", "--gamma", "4",
                       "--r", "4")
    rows = [json.loads(line) for line in out.strip().splitlines()]
    assert code == 0 and len(rows) == 2
    assert all(r["n_certificate"]["size_ok"] for r in rows)


def test_experiment(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    out = tmp_path / "out.csv"
    cfg.write_text(json.dumps({
        "n_values": [12], "trials": 10, "seed": 5, "budget": 100000,
    }))
    code, _, _ = run(capsys, "experiment", "--config", str(cfg),
                     "--out", str(out))
    assert code == 0
    lines = out.read_text().strip().splitlines()
    assert len(lines) == 2 and lines[0].startswith("n,alpha,p,")
