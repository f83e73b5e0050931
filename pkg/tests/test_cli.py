import json
import shutil
import subprocess

import pytest

from ladderepp.cli import main
from ladderepp.graph import Graph, disjoint_union
from ladderepp.io import dump_graph, parse_graph
from ladderepp.solver import EppCertificate, verify_certificate
from ladderepp.walls import build_condensed_wall

PRISM = Graph(range(6), [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else out)


@pytest.fixture
def prism_file(tmp_path):
    p = tmp_path / "prism.json"
    p.write_bytes(dump_graph(PRISM))
    return p


def test_gen_wall_round_trips(capsys, tmp_path):
    out = tmp_path / "w.json"
    code, _ = run(capsys, "gen", "wall", "--size", 2, "--out", out)
    assert code == 0
    g, labels = parse_graph(out.read_bytes())
    assert g.order == 13 and g.size == 20 and labels["a"] == 0


def test_gen_bad_size(capsys):
    assert run(capsys, "gen", "wall", "--size", 0)[0] == 2
    assert run(capsys, "gen", "wall")[0] == 2


def test_detect_and_classify(capsys, prism_file):
    code, doc = run(capsys, "detect", "--pattern", "ladder3", prism_file)
    assert code == 0 and doc["found"]
    code, doc = run(capsys, "classify", "--pattern", "ladder3", prism_file)
    assert code == 0 and doc["kind"] == "ladder"


def test_solve_packing_and_hitting(capsys, tmp_path, prism_file):
    code, doc = run(capsys, "solve", "--pattern", "ladder3", "--k", 1, prism_file)
    assert code == 0
    cert = EppCertificate.from_json(doc["certificate"] if "certificate" in doc else doc)
    assert cert.kind == "packing" and verify_certificate(PRISM, 1, cert)
    code, doc = run(capsys, "solve", "--pattern", "ladder3", "--k", 2, "--report", prism_file)
    assert code == 10
    cert = EppCertificate.from_json(doc["certificate"])
    assert cert.kind == "hitting" and verify_certificate(PRISM, 2, cert)
    assert doc["report"]["pattern"] == "ladder3"


def test_amtree_exit_codes(capsys, tmp_path):
    two, _ = disjoint_union(Graph(range(3), [(0, 1), (1, 2), (0, 2)]), Graph(range(3), [(0, 1), (1, 2), (0, 2)]))
    p = tmp_path / "t.json"
    p.write_bytes(dump_graph(two))
    assert run(capsys, "amtree", "--A", "0,1,2,3,4,5", "--m", 3, "--k", 2, p)[0] == 0
    star = Graph(range(5), [(0, i) for i in range(1, 5)])
    p.write_bytes(dump_graph(star))
    assert run(capsys, "amtree", "--A", "1,2,3,4", "--m", 3, "--k", 2, p)[0] == 10


def test_bad_input_exits_2(capsys, tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"vertices":[0],"edges":[[0,0]]}')
    assert run(capsys, "solve", "--pattern", "house", "--k", 1, p)[0] == 2
    p.write_text("{not json")
    assert run(capsys, "solve", "--pattern", "house", "--k", 1, p)[0] == 2
    assert run(capsys, "solve", "--pattern", "house", "--k", 1, tmp_path / "missing.json")[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["solve", "--pattern", "ladder9", "--k", "1", str(p)])
    assert exc.value.code == 2


def test_budget_exceeded_exits_3(capsys, tmp_path):
    w = build_condensed_wall(3)
    p = tmp_path / "w.json"
    p.write_bytes(dump_graph(w.graph, w.labels()))
    assert run(capsys, "detect", "--pattern", "ladder", "--l", 7, "--budget", 50, p)[0] == 3


def test_env_budget(capsys, tmp_path, monkeypatch):
    w = build_condensed_wall(3)
    p = tmp_path / "w.json"
    p.write_bytes(dump_graph(w.graph, w.labels()))
    monkeypatch.setenv("EPP_BUDGET", "50")
    assert run(capsys, "detect", "--pattern", "ladder", "--l", 7, p)[0] == 3


def test_verify_exit_codes(capsys):
    code, doc = run(capsys, "verify", "--lemma", "no-two-linkages", "--size", 2)
    assert code == 0 and doc["result"] == "holds"
    assert run(capsys, "verify", "--lemma", "fuzz", "--count", 10)[0] == 2
    code, doc = run(capsys, "verify", "--lemma", "fuzz", "--seed", 1, "--count", 10)
    assert code == 0
    assert run(capsys, "verify", "--lemma", "ladder-bounds", "--size", 3, "--budget", 1000)[0] == 3


def test_export_dot(capsys, tmp_path, prism_file):
    code, out = run(capsys, "export-dot", prism_file, "--edges", "0,1")
    assert code == 0 and out.startswith("graph G {") and out.count("style=bold") == 2
    assert run(capsys, "export-dot", prism_file, "--edges", "99")[0] == 2


def test_pack13_and_dot_side_output(capsys, tmp_path):
    dot = tmp_path / "p.dot"
    code, doc = run(capsys, "pack13", "--size", 5, "--n", 1, "--dot", dot)
    assert code == 0 and dot.read_text().startswith("graph G {")


@pytest.mark.skipif(shutil.which("ladderepp") is None, reason="console script not installed")
def test_console_script(prism_file):
    res = subprocess.run(["ladderepp", "solve", "--pattern", "house", "--k", "1", str(prism_file)], capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.endswith("\n")
