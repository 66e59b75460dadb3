import json

import pytest
import yaml

from iset import report
from iset.cli import main
from iset.graph import read_edge_list


def run(tmp_path, *argv, name="out.json"):
    out = tmp_path / name
    code = main([*argv, "--json", "--out", str(out)])
    return code, (json.loads(out.read_text()) if out.exists() else None)


def write(tmp_path, text, name="g.txt"):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


C5 = "5 5\n0 1\n1 2\n2 3\n3 4\n4 0\n"


def test_gen_roundtrip(tmp_path, capsys):
    out = tmp_path / "g.txt"
    assert main(["gen", "tfp:n=30", "--seed", "4", "--out", str(out)]) == 0
    g = read_edge_list(out)
    assert g.n == 30 and g.is_triangle_free()
    assert "triangle_free=true" in capsys.readouterr().out


def test_gen_to_stdout(capsys):
    assert main(["gen", "clique-union:r=2,k=3"]) == 0
    cap = capsys.readouterr()
    assert cap.out.splitlines()[1] == "6 6"
    assert "n=6" in cap.err


def test_count(tmp_path):
    code, doc = run(tmp_path, "count", write(tmp_path, C5), "--profile")
    assert code == 0
    assert doc["result"]["count"] == {"decimal": "11", "log2": pytest.approx(3.4594316186372973)}
    assert doc["result"]["alpha"] == 2 and doc["result"]["size_profile"] == ["1", "5", "5"]
    assert doc["graph_stats"]["t"] == "2" and doc["config"]["seed"] == 0
    assert set(doc) == {"artifact", "config", "graph_stats", "result", "timing"}


def test_yaml_default(tmp_path, capsys):
    assert main(["count", "--graph", "clique-union:r=3,k=2"]) == 0
    doc = yaml.safe_load(capsys.readouterr().out)
    assert doc["result"]["count"]["decimal"] == "27"


def test_aks(tmp_path):
    code, doc = run(tmp_path, "aks", "--graph", "bipartite:l=100,r=100,p=0.05", "--k", "2", "--R", "2",
                    "--seed", "3")
    assert code == 0
    res = doc["result"]
    assert res["path"] in ("SparseUnion", "TuranFallback")
    assert res["size"] == len(res["independent_set"])
    assert doc["verdicts"]["independent"] and doc["verdicts"]["structural_problems"] == []
    assert doc["trace"][0]["nu_i"] == "undefined"


def test_verify_lemma(tmp_path):
    code, doc = run(tmp_path, "verify-lemma", "--graph", "bipartite:l=100,r=100,p=0.05", "--k", "2",
                    "--trials", "2000", "--seed", "1")
    assert code == 0
    assert all(v["verdict"] != "violated" for v in doc["verdicts"])
    assert set(doc["result"]["stats"]) == {"n_M", "e_M", "e_H"}


def test_bounds(tmp_path):
    code, doc = run(tmp_path, "bounds", "--graph", "clique-union:r=800,k=3")
    assert code == 0
    assert doc["result"]["exact_log2"] == pytest.approx(1600)
    assert all(doc["verdicts"].values())
    code, doc = run(tmp_path, "bounds", "--formula", "1000000", "1000", name="f.json")
    assert code == 0 and doc["result"]["main_log2"] == pytest.approx(41.382023503507426)


def test_distinct(tmp_path):
    code, doc = run(tmp_path, "distinct", "--graph", "tfp:n=6", "--runs", "20", "--k", "1", "--R", "1")
    assert code == 0 and doc["result"]["distinct_sets"] >= 1


def test_exit_parse(tmp_path, capsys):
    assert main(["count", write(tmp_path, "3 1\n0 0\n")]) == 2
    assert main(["count", str(tmp_path / "missing.txt")]) == 2
    assert main(["count", "--graph", "nope:n=3"]) == 2
    assert main(["count"]) == 2
    assert main(["count", write(tmp_path, C5), "--graph", "tfp:n=4"]) == 2
    assert "error" in capsys.readouterr().err


def test_exit_budget(tmp_path):
    assert main(["count", "--graph", "gnp:n=80,p=0.3", "--budget", "10"]) == 3


def test_exit_degenerate():
    assert main(["aks", "--graph", "clique-union:r=40,k=2"]) == 4
    assert main(["aks", "--graph", "clique-union:r=10,k=5"]) == 4


def test_bad_subcommand():
    with pytest.raises(SystemExit) as info:
        main(["frobnicate"])
    assert info.value.code == 2


def test_workers_do_not_change_payload(tmp_path):
    argv = ["aks", "--graph", "bipartite:l=80,r=80,p=0.06", "--k", "2", "--R", "2", "--seed", "8"]
    _, a = run(tmp_path, *argv, "--workers", "1", name="a.json")
    _, b = run(tmp_path, *argv, "--workers", "2", name="b.json")
    assert report.payload(a) == report.payload(b)
    assert a["timing"]["workers"] == 1 and b["timing"]["workers"] == 2
