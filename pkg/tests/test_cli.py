import json

import pytest

from ddcolor.cli import main
from ddcolor.io import load_edge_list, read_coloring, read_rows


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_color_er(capsys):
    code, out, _ = run(capsys, "color", "--er", "1000", "0.015", "--q", "10", "--beta", "0", "--seed", "7")
    assert code == 0
    doc = json.loads(out)
    assert doc["nodes"] == 1000 and 0 <= doc["f_d"] <= 1 and doc["r_max"] >= 1


def test_generate_color_metrics(tmp_path, capsys):
    g = tmp_path / "g.txt"
    c = tmp_path / "c.txt"
    assert run(capsys, "generate", "--er", "60", "0.05", "--seed", "3", "--out", str(g))[0] == 0
    graph = load_edge_list(g)
    assert graph.node_count == 60
    code, out, _ = run(capsys, "color", "--graph", str(g), "--no-lcc", "--q", "8", "--seed", "1",
                       "--coloring-out", str(c))
    assert code == 0
    colored = json.loads(out)
    assert read_coloring(c, 60).q == 8
    code, out, _ = run(capsys, "metrics", "--graph", str(g), "--coloring", str(c))
    assert code == 0
    measured = json.loads(out)
    assert measured["f_d"] == colored["f_d"] and measured["r_max"] == colored["r_max"]


def test_metrics_on_proper_coloring(tmp_path, capsys):
    g = tmp_path / "tri.txt"
    g.write_text("0 1\n1 2\n2 0\n")
    c = tmp_path / "c.txt"
    c.write_text("0 0\n1 1\n2 2\n")
    code, out, _ = run(capsys, "metrics", "--graph", str(g), "--coloring", str(c))
    doc = json.loads(out)
    assert code == 0 and doc["f_d"] == 0 and doc["r_max"] == 1


def test_missing_file_names_path(capsys, tmp_path):
    missing = tmp_path / "nope.txt"
    code, _, err = run(capsys, "color", "--graph", str(missing), "--q", "3")
    assert code != 0
    assert str(missing) in err


def test_usage_errors(capsys):
    assert run(capsys, "frobnicate")[0] == 2
    assert run(capsys, "color", "--er", "10", "0.1", "--q", "3", "--bogus")[0] == 2
    assert run(capsys, "color", "--q", "3")[0] == 2


def test_sweep_colors_writes_rows_and_manifest(tmp_path, capsys):
    out = tmp_path / "rows.csv"
    summary = tmp_path / "summary.csv"
    code, _, _ = run(capsys, "sweep-colors", "--er", "80", "0.08", "--q", "2", "4", "--runs", "3",
                     "--out", str(out), "--summary", str(summary))
    assert code == 0
    rows = read_rows(out)
    assert len(rows) == 2 * 2 * 3
    assert {r["scheme"] for r in rows} == {"Random", "DDC"}
    manifest = json.loads((tmp_path / "rows.csv.manifest.json").read_text())
    assert manifest["command"] == "sweep-colors" and manifest["sweep"]["base_seed"] == 0
    assert summary.read_text().startswith("scheme,q,beta,runs,")


def test_sweep_colors_optimal_beta(tmp_path, capsys):
    out = tmp_path / "rows.json"
    code, _, _ = run(capsys, "sweep-colors", "--er", "40", "0.1", "--q", "3", "--runs", "2",
                     "--optimal-beta", "--beta-step", "1.0", "--format", "json", "--out", str(out))
    assert code == 0
    manifest = json.loads((tmp_path / "rows.json.manifest.json").read_text())
    assert {b["objective"] for b in manifest["beta_star"]} == {"f_d", "r_max"}
    assert {r["beta"] for r in read_rows(out)} == {None, -2.0, -1.0, 0.0, 1.0, 2.0}


def test_sweep_beta(tmp_path, capsys):
    out = tmp_path / "b.csv"
    code, _, _ = run(capsys, "sweep-beta", "--sf", "150", "2.5", "3", "--q", "3", "--betas", "0", "1",
                     "--runs", "2", "--out", str(out))
    assert code == 0
    assert {r["beta"] for r in read_rows(out)} == {0.0, 1.0}


def test_sweep_community(capsys):
    code, out, _ = run(capsys, "sweep-community", "--n", "60", "--total", "0.1", "--p-in", "0.05", "0.1",
                       "--q", "3", "--runs", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("p_in,p_out,scheme,q,beta")
    assert len(lines) == 1 + 2 * 2
    assert lines[-1].startswith("0.1,0,DDC,3,0,")


def test_profile(capsys):
    code, out, _ = run(capsys, "profile", "--er", "3", "1.0", "--q", "3", "--runs", "4")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "sweep,mean_f_d"
    assert lines[-1].endswith(",0")


@pytest.mark.parametrize("argv", [
    ["sweep-colors", "--sf", "150", "2.5", "3", "--q", "3", "5", "--runs", "3"],
    ["sweep-beta", "--er", "100", "0.05", "--q", "4", "--beta-step", "1", "--runs", "2"],
    ["color", "--sf", "200", "2.5", "3", "--q", "4", "--beta", "1", "--seed", "5"],
])
def test_cli_byte_identical(tmp_path, capsys, argv):
    outs = []
    for i in range(2):
        if argv[0] == "color":
            run(capsys, *argv, "--coloring-out", str(tmp_path / f"c{i}.txt"))
            outs.append((tmp_path / f"c{i}.txt").read_bytes())
        else:
            run(capsys, *argv, "--out", str(tmp_path / f"o{i}.csv"))
            outs.append((tmp_path / f"o{i}.csv").read_bytes())
    assert outs[0] == outs[1]
