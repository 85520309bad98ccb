import io
import json
from pathlib import Path

import pytest

from grpd.cli import run
from grpd.graph import parse_graph

FIX = Path(__file__).resolve().parent.parent / "fixtures"


def gph(name):
    return str(FIX / f"{name}.gph")


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


def test_analyze_example_e():
    code, out, _ = call("analyze", gph("example32_E"), "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["isolated_ep"] == "omega" and doc["discrete"] is True
    assert doc["condition_L"] is False and doc["simple_cycles"] == 1


def test_analyze_table():
    code, out, _ = call("analyze", gph("loop_exit_sink"))
    assert code == 0
    assert "isolated_finite" in out and "omega" in out


def test_json_is_sorted_and_deterministic():
    a = call("analyze", gph("example32_G"), "--json")[1]
    assert a == call("analyze", gph("example32_G"), "--json")[1]
    assert a == json.dumps(json.loads(a), sort_keys=True, indent=2) + "\n"


def test_classify_points():
    code, out, _ = call("classify", gph("example32_F"), "--json")
    rows = json.loads(out)["points"]
    assert code == 0 and rows and all(r["type"] == "finite" for r in rows)


def test_classify_explicit_point(tmp_path):
    code, out, _ = call("classify", gph("loop_exit_sink"), "--point", "finite v: f", "--json")
    assert code == 0
    (row,) = json.loads(out)["points"]
    assert row["isolated"] and row["type"] == "finite"


def test_classify_bad_point():
    code, _, err = call("classify", gph("loop"), "--point", "finite v: nope")
    assert code == 65 and err


def test_stabilize_output_parses():
    code, out, _ = call("stabilize", gph("sink"))
    g = parse_graph(out)
    assert code == 0 and len(g.heads) == 1


@pytest.mark.parametrize("left, right, mode, code", [
    ("example32_F", "example32_G", "iso", 0),
    ("example32_E", "example32_G", "iso", 1),
    ("example32_E", "example32_F", "oe", 0),
    ("example32_E", "example32_F", "oe-ep", 1),
    ("sink", "two_sinks", "oe", 1),
    ("loop_exit_sink", "sink", "iso", 2),
    ("two_loops", "three_loops", "refute", 2),
    ("loop", "sink", "refute", 1),
])
def test_compare_exit_codes(left, right, mode, code):
    got, out, _ = call("compare", gph(left), gph(right), "--mode", mode, "--json")
    assert got == code
    assert json.loads(out)["answer"] == {0: "yes", 1: "no", 2: "undecided"}[code]


def test_compare_obstruction():
    _, out, _ = call("compare", gph("example32_E"), gph("example32_G"), "--mode", "iso", "--json")
    assert json.loads(out)["obstruction"]["invariant"] == "isotropy mismatch"


def test_oracle_loop():
    code, out, _ = call("oracle", gph("loop"), "--depth", "8", "--json")
    doc = json.loads(out)
    assert code == 0 and doc["disagreements"] == [] and doc["depth"] == 8


def test_emit_dot():
    code, out, _ = call("emit-dot", gph("example32_G"))
    assert code == 0 and out.startswith("digraph") and '"R..."' in out


def test_usage_errors():
    assert call()[0] == 64
    assert call("bogus")[0] == 64
    assert call("compare", gph("loop"))[0] == 64
    assert call("analyze", "/nonexistent/graph.gph")[0] == 64
    assert call("oracle", gph("loop"), "--depth", "0")[0] == 64


def test_parse_error(tmp_path):
    p = tmp_path / "bad.gph"
    p.write_text("vertex v\nedge e: v -> w\n")
    code, _, err = call("analyze", str(p))
    assert code == 65 and "line 2" in err


def test_cap_exceeded(monkeypatch):
    monkeypatch.setenv("GRPD_NODE_CAP", "2")
    assert call("analyze", gph("three_loops"))[0] == 70


def test_bad_cap_setting(monkeypatch):
    monkeypatch.setenv("GRPD_NODE_CAP", "lots")
    code, _, err = call("analyze", gph("loop"))
    assert code == 64 and "GRPD_NODE_CAP" in err
