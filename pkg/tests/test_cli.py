import csv
import json

import pytest

from cli.commands import main
from cli.manifest import manifest_path
from ingest.graph_io import read_graph
from models.reports import BOUND_CSV_FIELDS


@pytest.fixture
def five_user_file(tmp_path):
    path = tmp_path / "log.tsv"
    path.write_text("u1\ta b d\nu2\ta b d\nu3\ta b c\nu4\ta c\nu5\ta c\n", encoding="utf-8")
    return path


def first_line(capsys) -> str:
    return capsys.readouterr().out.splitlines()[0]


def test_build_graph_purchase(tmp_path):
    log = tmp_path / "log.csv"
    log.write_text("user_id,item,position\nu1,a,0\nu1,b,1\nu2,a,0\n", encoding="utf-8")
    out = tmp_path / "graph.tsv"
    assert main(["build-graph", "--log", str(log), "--min-count", "1", "--out", str(out)]) == 0
    g = read_graph(out)
    assert g.labels == ("a", "b")
    assert g.arcs == {(0, 0): 1.0, (1, 1): 0.5, (0, 1): 0.5}
    manifest = json.loads(manifest_path(out).read_text(encoding="utf-8"))
    assert manifest["command"] == "build-graph"
    assert manifest["outputs"] == [str(out)]


def test_build_graph_empty_log(tmp_path):
    log = tmp_path / "empty.csv"
    log.write_text("", encoding="utf-8")
    out = tmp_path / "graph.tsv"
    assert main(["build-graph", "--log", str(log), "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == "#vertices 0\n"


def test_build_graph_errors(tmp_path, capsys):
    log = tmp_path / "bad.csv"
    log.write_text("u1,a,0\nu1,b\n", encoding="utf-8")
    out = tmp_path / "graph.tsv"
    assert main(["build-graph", "--log", str(log), "--out", str(out)]) == 1
    assert "line 2" in capsys.readouterr().err
    good = tmp_path / "good.csv"
    good.write_text("u1,a,0\n", encoding="utf-8")
    assert main(["build-graph", "--log", str(good), "--task", "navigation", "--out", str(out)]) == 2


def test_build_navigation_graph(tmp_path, capsys):
    paths = tmp_path / "paths.tsv"
    paths.write_text("p1\ta b c\np2\ta b d\n", encoding="utf-8")
    links = tmp_path / "links.csv"
    links.write_text("src,dst\na,b\nb,c\n", encoding="utf-8")
    out = tmp_path / "nav.tsv"
    args = ["build-graph", "--log", str(paths), "--task", "navigation", "--links", str(links)]
    assert main(args + ["--min-count", "1", "--out", str(out)]) == 0
    assert "dropped transitions: 1" in capsys.readouterr().out
    g = read_graph(out)
    idx = g.vertex_index()
    assert g.arcs[(idx["a"], idx["b"])] == 1.0
    assert g.arcs[(idx["b"], idx["c"])] == 0.5


def run_args(log, out, *extra):
    return ["run", "--log", str(log), "--g", "1", "--k", "3", "--min-count", "1", "--out", str(out), *extra]


def test_run_is_deterministic(five_user_file, tmp_path):
    first, second = tmp_path / "first.csv", tmp_path / "second.csv"
    assert main(run_args(five_user_file, first, "--seed", "7", "--trials", "2")) == 0
    assert main(run_args(five_user_file, second, "--seed", "7", "--trials", "2")) == 0
    assert first.read_bytes() == second.read_bytes()
    assert (tmp_path / "first.json").read_bytes() == (tmp_path / "second.json").read_bytes()
    assert manifest_path(first).exists()


def test_run_writes_one_row_per_trial_and_policy(five_user_file, tmp_path):
    out = tmp_path / "metrics.csv"
    assert main(run_args(five_user_file, out, "--trials", "5", "--policies", "greedy,frequency")) == 0
    with open(out, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 10
    assert sorted({int(r["trial"]) for r in rows}) == [0, 1, 2, 3, 4]
    assert all(r["relevance_distance"] == "" for r in rows)
    summary = json.loads((tmp_path / "metrics.json").read_text(encoding="utf-8"))
    assert summary["task"] == "purchase"
    assert {s["policy"] for s in summary["summary"]} == {"greedy", "frequency"}


def test_run_json_out_keeps_the_summary_apart(five_user_file, tmp_path):
    out = tmp_path / "metrics.json"
    assert main(run_args(five_user_file, out, "--trials", "1", "--policies", "frequency")) == 0
    assert out.read_text(encoding="utf-8").startswith("trial,k,policy,users,skipped,")
    summary = json.loads((tmp_path / "metrics.summary.json").read_text(encoding="utf-8"))
    assert summary["task"] == "purchase"
    assert json.loads(manifest_path(out).read_text(encoding="utf-8"))["outputs"] == [
        str(out),
        str(tmp_path / "metrics.summary.json"),
    ]


def test_run_config_file(five_user_file, tmp_path):
    config = tmp_path / "cfg.json"
    config.write_text(json.dumps({"trials": 1, "policies": ["frequency"]}), encoding="utf-8")
    out = tmp_path / "metrics.csv"
    assert main(run_args(five_user_file, out, "--config", str(config))) == 0
    with open(out, encoding="utf-8", newline="") as f:
        assert [r["policy"] for r in csv.DictReader(f)] == ["frequency"]


def test_run_usage_errors(five_user_file, tmp_path):
    out = tmp_path / "metrics.csv"
    assert main(run_args(five_user_file, out, "--policies", "oracle")) == 2
    assert main(run_args(five_user_file, out, "--task", "navigation")) == 2
    assert main(run_args(five_user_file, out, "--split", "1.5")) == 1


def test_verify_zero_instances(tmp_path):
    out = tmp_path / "bounds.csv"
    assert main(["verify", "--instances", "0", "--out", str(out)]) == 0
    assert out.read_text(encoding="utf-8") == ",".join(BOUND_CSV_FIELDS) + "\n"
    assert json.loads(manifest_path(out).read_text(encoding="utf-8"))["command"] == "verify digraph"


def test_verify_small_campaign(tmp_path):
    out = tmp_path / "bounds.csv"
    assert main(["verify", "--instances", "3", "--max-vertices", "5", "--max-set", "3", "--out", str(out)]) == 0
    with open(out, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 3
    assert all(r["holds"] == "true" for r in rows)


def test_verify_capacity_guard(tmp_path):
    out = tmp_path / "bounds.csv"
    assert main(["verify", "--instances", "1", "--max-vertices", "12", "--out", str(out)]) == 2
    assert main(["verify", "--instances", "-1", "--out", str(out)]) == 2


def test_estimate_gamma_movie_fixture(tmp_path, capsys):
    out = tmp_path / "gamma.json"
    assert main(["estimate-gamma", "--fixture", "movie", "--out", str(out)]) == 0
    assert float(first_line(capsys)) <= 0.5
    assert json.loads(out.read_text(encoding="utf-8"))["gamma_hat"] <= 0.5
    assert manifest_path(out).exists()


def test_estimate_gamma_linear_point_mass(tmp_path, capsys):
    graph = tmp_path / "g.tsv"
    graph.write_text("#vertices 3\n0\t1\t0.5\n1\t2\t0.5\n2\t2\t0.5\n", encoding="utf-8")
    args = ["estimate-gamma", "--graph", str(graph), "--utility", "linear", "--distribution", "point"]
    assert main(args + ["--states", "1,0,1"]) == 0
    assert first_line(capsys) == "1.000000"
    assert main(args) == 2


def test_estimate_gamma_single_edge(tmp_path, capsys):
    graph = tmp_path / "g.tsv"
    graph.write_text("#vertices 2\n0\t1\t1.0\n", encoding="utf-8")
    assert main(["estimate-gamma", "--graph", str(graph)]) == 0
    assert first_line(capsys) == "1.000000"


@pytest.mark.parametrize(
    "edges, k, expected",
    [
        ("0 1\n1 2\n0 2\n", 3, "3"),
        ("0 1\n1 2\n", 2, "1"),
        ("#vertices 3\n", 2, "0"),
    ],
)
def test_reduce_dks(tmp_path, capsys, edges, k, expected):
    source = tmp_path / "edges.txt"
    source.write_text(edges, encoding="utf-8")
    out = tmp_path / "dks.tsv"
    assert main(["reduce-dks", "--edges", str(source), "--out", str(out), "--solve", "--k", str(k)]) == 0
    assert first_line(capsys) == expected
    assert read_graph(out).n == 3
    assert manifest_path(out).exists()


def test_reduce_dks_needs_k(tmp_path):
    source = tmp_path / "edges.txt"
    source.write_text("0 1\n", encoding="utf-8")
    assert main(["reduce-dks", "--edges", str(source), "--out", str(tmp_path / "o.tsv"), "--solve"]) == 2


def test_bad_arguments_exit_with_usage_code():
    assert main(["verify"]) == 2
