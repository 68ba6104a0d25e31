from __future__ import annotations

import json
import subprocess
import sys

import pytest

from listdist.cli import main
from listdist.graph import complete_graph, cycle_graph, petersen, star, to_graph6
from listdist.lists import generate_lists


def run(capsys, *argv: str) -> tuple[int, dict]:
    code = main(list(argv))
    return code, json.loads(capsys.readouterr().out)


@pytest.fixture
def files(tmp_path):
    def write(name: str, text: str) -> str:
        p = tmp_path / name
        p.write_text(text)
        return str(p)
    return write


def test_colour_petersen_mixed_lists(capsys, files, tmp_path):
    g = petersen()
    lists = files("l.json", json.dumps(generate_lists(g, 2, 4, 5).to_json()))
    dot = tmp_path / "out.dot"
    code, out = run(capsys, "colour", "--graph", files("p.g6", to_graph6(g)), "--lists", lists, "--dot", str(dot))
    assert code == 0 and out["verified"] is True and out["engine"] == "cyclic"
    assert len(out["colouring"]) == 15
    text = dot.read_text()
    assert text.startswith("graph G {") and text.count("--") == 15


def test_colour_k4_is_exceptional(capsys, files):
    code, out = run(capsys, "colour", "--graph", files("k4.g6", to_graph6(complete_graph(4))))
    assert code == 2
    assert out["error"] == "ExceptionalGraph" and out["hint"] == "required_list_size = 3"


def test_colour_edge_list_tree_with_trace(capsys, files):
    code, out = run(capsys, "colour", "--graph", files("t.txt", "0 1\n0 2\n0 3\n3 4\n"), "--seed", "3", "--trace")
    assert code == 0 and out["engine"] == "tree" and out["trace"]


def test_bad_input_exit_codes(capsys, files):
    code, out = run(capsys, "classify", "--graph", files("bad.txt", "0 0\n"))
    assert code == 2 and out["error"] == "LoopEdge"
    code, out = run(capsys, "colour", "--graph", files("two.txt", "0 1\n0 1\n"))
    assert code == 2 and out["error"] == "DuplicateEdge"


def test_verify(capsys, files):
    gp = files("c3.txt", "0 1\n1 2\n2 0\n")
    good = files("good.json", json.dumps({"edges": [[0, 1, 1], [0, 2, 2], [1, 2, 3]]}))
    bad = files("bad.json", json.dumps({"edges": [[0, 1, 1], [0, 2, 1], [1, 2, 2]]}))
    code, out = run(capsys, "verify", "--graph", gp, "--colouring", good)
    assert code == 0 and out["distinguishing"] is True
    code, out = run(capsys, "verify", "--graph", gp, "--colouring", bad)
    assert code == 3 and out["distinguishing"] is False and out["colour_preserving_automorphisms"] == 2


def test_classify(capsys, files):
    code, out = run(capsys, "classify", "--graph", files("s.txt", "0 1\n0 2\n0 3\n"))
    assert code == 0
    assert out["class"] == "SymmetricTree(h=1,d=3)" and out["required_list_size"] == 3 and out["exceptional"]


def test_oracle_dprime_probe(capsys, files):
    c5 = files("c5.g6", to_graph6(cycle_graph(5)))
    code, out = run(capsys, "oracle", "--graph", c5, "--k", "2", "--universe", "3", "--mode", "identical")
    assert code == 3 and out["feasible"] is False
    code, out = run(capsys, "oracle", "--graph", c5, "--all", "--k", "2", "--universe", "3")
    assert code == 3 and out["infeasible_assignments"] == [[[0, 1]] * 5]
    code, out = run(capsys, "dprime", "--graph", c5)
    assert (code, out["dprime"]) == (0, 3)
    code, out = run(capsys, "probe", "--graph", files("s.g6", to_graph6(star(3))), "--k", "2")
    assert code == 0 and out["counterexample"] is False and out["known_exceptional"] is True


def test_budget_exit_code(capsys, files):
    code, out = run(capsys, "oracle", "--graph", files("p.g6", to_graph6(petersen())), "--k", "1", "--budget", "3")
    assert code == 3 and out["error"] == "BudgetExceeded"


def test_corpus_stream(capsys, files):
    from listdist.corpus import corpus_lines
    stream = files("c5.g6", "\n".join(corpus_lines("connected", 5)) + "\n")
    code, out = run(capsys, "corpus", "--graph", stream, "--seeds", "2")
    assert code == 0 and out["failures"] == 0 and out["graphs"] == 21


def test_output_file_and_module_entry(tmp_path, files):
    out = tmp_path / "r.json"
    gp = files("k4.g6", to_graph6(complete_graph(4)))
    proc = subprocess.run([sys.executable, "-m", "listdist", "dprime", "--graph", gp, "--out", str(out)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout == ""
    assert json.loads(out.read_text())["dprime"] == 3


def test_seeded_lists_reproducible(capsys, files):
    gp = files("p.g6", to_graph6(petersen()))
    a = run(capsys, "colour", "--graph", gp, "--seed", "11")
    b = run(capsys, "colour", "--graph", gp, "--seed", "11")
    assert a == b
