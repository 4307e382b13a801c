import io
import json
import subprocess
import sys
from fractions import Fraction

import pytest

from ksgadget.cli import run, scalar, vertex
from ksgadget.constructions import build_clifton
from ksgadget.graph import Graph, canonical_json


def _stdin(obj) -> io.StringIO:
    return io.StringIO(canonical_json(obj))


@pytest.fixture
def clifton_file(tmp_path):
    p = tmp_path / "clifton.json"
    res = run(["build", "clifton", "--out", str(p)])
    assert res.code == 0
    return p


def test_build_out_round_trip(clifton_file):
    data = json.loads(clifton_file.read_text())
    assert data["construction"] == "clifton"
    again = run(["build", "clifton"])
    assert clifton_file.read_text() == again.text


def test_graph_check(clifton_file):
    res = run(["graph", "check", str(clifton_file)])
    assert res.code == 0
    assert res.verdict["command"] == "graph check"
    assert len(res.verdict["input_sha256"]) == 64
    res = run(["graph", "check", str(clifton_file), "--cap", "100"])
    assert res.code == 0


def test_uncolorable_exit_code(tmp_path):
    p = tmp_path / "ks.json"
    assert run(["build", "ks", "--out", str(p)]).code == 0
    res = run(["graph", "check", str(p)])
    assert res.code == 1
    assert run(["graph", "check", str(p), "--budget", "3"]).code == 2


def test_lp_and_bounds(clifton_file):
    res = run(["lp", "max-pair", str(clifton_file), "u1", "u8"])
    assert res.code == 0 and res.verdict["optimum"] == "3/2"
    res = run(["lp", "max-pair", str(clifton_file), "1", "8"])
    assert res.verdict["optimum"] == "3/2"
    res = run(["bounds", str(clifton_file), "--pair", "u1", "u8"])
    assert res.code == 0
    text = res.text
    assert '"1/27"' in text and '"3/4"' in text


def test_stdin_input_and_forbidden():
    c4 = Graph(4, frozenset({(0, 1), (1, 2), (2, 3), (0, 3)}))
    res = run(["forbidden", "-", "--d", "3"], stdin=_stdin(c4.to_json()))
    assert res.code == 1
    res = run(["forbidden", "-", "--d", "3"], stdin=_stdin(build_clifton().to_json()))
    assert res.code == 0


def test_malformed_input():
    res = run(["graph", "check", "-"], stdin=io.StringIO('{"n": 3,\n "edges": [[0, 1]'))
    assert res.code == 2
    assert "line" in res.verdict["error"]
    res = run(["graph", "check", "-"], stdin=io.StringIO('{"n": 3, "edges": [[2, 1]]}'))
    assert res.code == 2
    assert run(["graph", "bogus", "-"]).code == 2
    assert run(["graph", "check", "/nonexistent/file.json"]).code == 2


def test_reduce_and_table(tmp_path):
    tri = Graph(3, frozenset({(0, 1), (0, 2), (1, 2)}))
    m = tmp_path / "map.json"
    res = run(["reduce", "-", "--map", str(m)], stdin=_stdin(tri.to_json()))
    assert res.code == 0
    assert json.loads(m.read_text())["omega"] == 3
    pit = run(["build", "pitowsky", "--overlap", "1/3"])
    res = run(["lp", "table", "-"], stdin=io.StringIO(pit.text))
    assert res.code == 0


def test_token_parsing():
    g = build_clifton().graph
    assert vertex(g, "u8") == 7
    assert vertex(g, "1") == 0
    assert scalar("3/10") == Fraction(3, 10)
    assert abs(float(scalar("0.95")) - 0.95) < 1e-12


def test_subprocess_pipeline():
    build = subprocess.run([sys.executable, "-m", "ksgadget.cli", "build", "clifton"],
                           capture_output=True, text=True, check=True)
    check = subprocess.run([sys.executable, "-m", "ksgadget.cli", "graph", "check", "-"],
                           input=build.stdout, capture_output=True, text=True)
    assert check.returncode == 0
    assert json.loads(check.stdout)["command"] == "graph check"
