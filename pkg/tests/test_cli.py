import io
import json

import pytest

from domhad.cli import main
from domhad.graph import parse_edge_list
from domhad.models import CliqueModel, verify_model


def run(argv, stdin="", monkeypatch=None, capsys=None):
    monkeypatch.setattr("sys.stdin", io.StringIO(stdin))
    code = main(argv)
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture
def cli(monkeypatch, capsys):
    def call(argv, stdin=""):
        code, out, err = run(argv, stdin, monkeypatch, capsys)
        return code, out, err

    return call


def gen(cli, *args):
    code, out, _ = cli(["gen", *args])
    assert code == 0
    return out


def test_subdivided_k4_exact(cli):
    code, out, err = cli(["find", "--exact"], gen(cli, "subdivided-complete", "4", "1"))
    data = json.loads(out)
    assert code == 0 and data["t"] == 3 and data["status"] == "exact"
    assert "domhad = 3" in err


def test_colour_certificate_branch(cli):
    code, out, _ = cli(["colour", "--t", "4"], gen(cli, "complete", "5"))
    data = json.loads(out)
    assert code == 0 and data["status"] == "certificate" and data["branch"] == "model"
    g = parse_edge_list(gen(cli, "complete", "5"))
    assert verify_model(g, CliqueModel.from_dict(data["certificate"]))


def test_colour_colouring_branch(cli):
    code, out, _ = cli(["colour", "--t", "4"], gen(cli, "cycle", "6"))
    data = json.loads(out)
    assert code == 0 and data["status"] == "ok" and data["colouring"]["palette_size"] <= 3


def test_verify_tampered_model(cli, tmp_path):
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"flavour": "dominating", "parts": [[0, 1], [2]]}))
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"flavour": "dominating", "parts": [[0], [2]]}))
    graph = gen(cli, "cycle", "5")
    code, out, _ = cli(["verify", "--model", str(good)], graph)
    assert code == 0 and json.loads(out)["status"] == "certificate"
    code, out, _ = cli(["verify", "--model", str(bad)], graph)
    data = json.loads(out)
    assert code == 1 and data["status"] == "refuted" and data["witness"] == [0, 1, 2]


def test_find_fixed_t(cli):
    graph = gen(cli, "complete", "5")
    code, out, _ = cli(["find", "--exact", "--t", "5"], graph)
    assert code == 0 and json.loads(out)["t"] == 5
    code, out, _ = cli(["find", "--t", "6"], graph)
    assert code == 1 and json.loads(out)["refutation"]["method"] == "max-degree"
    code, out, _ = cli(["find", "--exact", "--t", "4"], gen(cli, "subdivided-complete", "4", "1"))
    assert code == 1


def test_find_budget_exhausted(cli):
    code, out, _ = cli(["find", "--exact", "--t", "7", "--budget-nodes", "1"], gen(cli, "gnp", "12", "0.5", "3"))
    assert code == 2 and json.loads(out)["status"] == "unknown"


def test_find_minor(cli):
    graph = gen(cli, "subdivided-complete", "4", "1")
    code, out, _ = cli(["find", "--minor", "--t", "4"], graph)
    assert code == 0 and json.loads(out)["certificate"]["flavour"] == "plain"
    code, _, _ = cli(["find", "--minor", "--t", "5"], graph)
    assert code == 1


def test_find_heuristic(cli):
    code, out, _ = cli(["find"], gen(cli, "complete", "6"))
    assert code == 0 and json.loads(out)["t"] == 6
    code, out, _ = cli(["find"], gen(cli, "gnp", "40", "0.3", "1"))
    assert code == 2 and json.loads(out)["status"] == "lower-bound"


def test_construct_methods(cli):
    code, out, _ = cli(["construct", "--method", "mindeg3"], gen(cli, "complete", "4"))
    assert code == 0 and json.loads(out)["t"] == 4
    code, out, _ = cli(["construct", "--method", "avgdeg", "--t", "3", "--root", "2"], gen(cli, "complete", "4"))
    assert code == 0 and 2 in json.loads(out)["certificate"]["parts"][0]
    code, out, _ = cli(["construct", "--method", "minsum"], gen(cli, "cycle", "5"))
    assert code == 0 and json.loads(out)["t"] == 3
    graph = gen(cli, "random-regular", "40", "12", "1")
    code, out, _ = cli(["construct", "--method", "regular-pseudo", "--t", "2", "--seed", "4"], graph)
    assert code == 0 and json.loads(out)["certificate"]["flavour"] == "pseudo-dominating"


def test_randomized_commands_need_seed(cli):
    graph = gen(cli, "complete", "9")
    code, out, _ = cli(["construct", "--method", "regular-pseudo", "--t", "2"], graph)
    assert code == 3 and "seed" in json.loads(out)["error"]
    code, _, _ = cli(["construct", "--method", "dense", "--t", "2", "--c", "0.5"], graph)
    assert code == 3
    code, _, _ = cli(["gen", "gnp", "10", "0.5"])
    assert code == 3


def test_precondition_failures_are_errors(cli):
    code, out, _ = cli(["construct", "--method", "mindeg3"], gen(cli, "cycle", "5"))
    assert code == 3 and json.loads(out)["status"] == "error"


def test_bad_flags_and_input(cli):
    code, _, err = cli(["colour"])
    assert code == 3 and "usage" in err
    code, _, _ = cli(["nonsense"])
    assert code == 3
    code, out, _ = cli(["find"], "3 2\n0 1\n0 9\n")
    assert code == 3 and "line 3" in json.loads(out)["error"]


def test_graph6_pipeline(cli):
    graph = gen(cli, "gnp", "20", "0.5", "2", "--format", "graph6")
    code, out, _ = cli(["decompose", "--format", "graph6"], graph)
    assert code == 0 and json.loads(out)["components"]


def test_decompose_per_component(cli):
    code, out, _ = cli(["decompose"], "5 2\n0 1\n3 4\n")
    comps = json.loads(out)["components"]
    assert [c["vertices"] for c in comps] == [[0, 1], [2], [3, 4]]
    assert comps[2]["nodes"][0]["part"] == [3]


def test_indep_set(cli):
    code, out, _ = cli(["indep-set", "--t", "4"], gen(cli, "cycle", "5"))
    data = json.loads(out)
    assert code == 0 and data["size"] >= data["target"] == 2
    code, out, _ = cli(["indep-set", "--t", "4"], gen(cli, "complete", "6"))
    assert code == 0 and json.loads(out)["status"] == "certificate"


def test_experiment_outputs(cli, tmp_path):
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"n": [20], "p": [0.5], "trials": 2, "epsilon": 0.5, "seed": 1}))
    report, table = tmp_path / "r.json", tmp_path / "r.csv"
    code, out, _ = cli(["experiment", "--grid", str(grid), "--out", str(report), "--csv", str(table)])
    assert code == 0 and json.loads(out)["cells"][0]["complete"]
    assert json.loads(report.read_text())["cells"][0]["trials"]
    assert table.read_text().splitlines()[0] == "n,p,trial,domhad_lower,chi_upper,avg_degree,runtime_ms"
    grid.write_text(json.dumps({"n": [20], "p": [0.5], "trials": 2}))
    code, _, _ = cli(["experiment", "--grid", str(grid)])
    assert code == 3


def test_gen_arity(cli):
    code, _, _ = cli(["gen", "subdivided-complete", "4"])
    assert code == 3
