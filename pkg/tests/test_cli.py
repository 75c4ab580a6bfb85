import json
import subprocess
import sys

import pytest

from netarcs import cli
from netarcs.constructions import REGISTRY


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_table_oval_text(capsys):
    code, out, _ = run(capsys, "table", "--kind", "oval", "--q", "2..9")
    assert code == 0
    assert out.splitlines() == [
        "q=2   O_d = {3}",
        "q=3   O_d = {3, 4}",
        "q=4   O_d = {3, 4, 5}",
        "q=5   O_d = {3, 4, 5, 6}",
        "q=7   O_d = {3, 4, 6, 7, 8}",
        "q=8   O_d = {3, 4, 7, 8, 9}",
        "q=9   O_d = {3, 4, 5, 8, 9, 10}",
    ]


def test_table_json(capsys):
    code, out, _ = run(capsys, "table", "--kind", "hyperoval", "--q", "4,8", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["schema"] == 1
    assert [row["values"] for row in doc["rows"]] == [[3, 5], [3, 7, 9]]


def test_table_csv_columns(capsys):
    code, out, _ = run(capsys, "table", "--kind", "hyperoval", "--q", "4", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == ",".join(cli.SEARCH_CSV_COLUMNS)
    assert lines[1].startswith("4,3,hyperoval,found,")


def test_construct_quadfree(capsys):
    code, out, _ = run(capsys, "construct", "gf8-quadfree-hyperoval", "--format", "json")
    rec = json.loads(out)["construction"]
    assert code == 0 and rec["verified"] is True
    assert rec["field"] == "2^3/1,1,0,1"
    assert rec["points"] == ["(0,0)", "(0,5)", "(1,1)", "(1,2)", "(2,1)", "(2,5)", "(5,0)", "(5,2)"]


def test_verify_inline_hyperoval(capsys):
    pts = "1,1; 1,0; 0,0; 0,w; w+1,w; w+1,1"
    code, out, _ = run(capsys, "verify", "--field", "2^2", "--slopes", "0,1,inf,w,w+1", "--points", pts)
    assert code == 0 and out.startswith("kind=hyperoval")


def test_verify_failure_exit_code(capsys):
    code, out, _ = run(capsys, "verify", "--field", "5", "--slopes", "0,1,inf", "--points", "0,0;1,1;2,2")
    assert code == 1 and "not-arc" in out


def test_verify_infers_slopes(capsys):
    code, out, _ = run(capsys, "verify", "--field", "11", "--points", "1,1;1,0;0,0;0,3;4,3", "--expect", "oval")
    assert code == 0


def test_unknown_construction_lists_names(capsys):
    code, out, _ = run(capsys, "construct", "nope", "--format", "json")
    err = json.loads(out)
    assert code == 2 and err["schema"] == 1
    assert all(name in err["error"]["message"] for name in REGISTRY)


def test_invalid_inputs(capsys):
    assert run(capsys, "search", "--field", "6", "--r", "3")[0] == 2
    assert run(capsys, "search", "--field", "5", "--r", "6", "--kind", "hyperoval")[0] == 2
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "construct", "conic-oval", "--field", "3", "--line-type", "secant")[0] == 2


def test_search_budget_exit_code(capsys, monkeypatch):
    monkeypatch.setenv("NETS_BUDGET_NODES", "5")
    code, out, _ = run(capsys, "search", "--field", "9", "--r", "10", "--format", "json")
    assert code == 3 and json.loads(out)["result"]["status"] == "budget-exceeded"


def test_search_enumerate_orbits(capsys):
    code, out, _ = run(capsys, "search", "--field", "8", "--r", "7", "--kind", "hyperoval",
                       "--mode", "enumerate-orbits", "--format", "json")
    assert code == 0 and json.loads(out)["result"]["orbit_count"] >= 2


def test_timings_opt_in(capsys):
    _, out, _ = run(capsys, "search", "--field", "7", "--r", "5", "--format", "json")
    assert "millis" not in out
    _, out, _ = run(capsys, "search", "--field", "7", "--r", "5", "--format", "json", "--timings")
    assert "millis" in out


def test_equiv(capsys, tmp_path):
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    run(capsys, "construct", "subgroup-hyperoval", "--field", "8", "--k", "3", "--output", str(a))
    run(capsys, "construct", "gf8-quadfree-hyperoval", "--output", str(b))
    code, out, _ = run(capsys, "equiv", "--a-file", str(a), "--b-file", str(b), "--expect", "inequivalent")
    assert code == 0 and out.strip() == "inequivalent"
    code, out, _ = run(capsys, "equiv", "--field", "11", "--a", "1,1;1,0;0,0;0,3;4,3",
                       "--b", "1,1;1,0;0,0;0,7;8,7", "--format", "json")
    doc = json.loads(out)
    assert code == 0 and doc["equivalent"] and len(doc["collineation"]) == 7


ROUNDTRIP = [
    ("subgroup-hyperoval", "16", ["--k", "3"]),
    ("conic-oval", "9", ["--line-type", "exterior"]),
    ("conic-oval", "8", ["--line-type", "secant"]),
    ("conic-hyperoval", "8", []),
    ("root-of-unity-oval", "13", ["--r", "7"]),
    ("standard-5net-oval", "11", []),
    ("standard-5net-hyperoval", "4", []),
    ("oval-7net", "7", []),
    ("oval-6net", "16", []),
    ("gf8-quadfree-hyperoval", None, []),
    ("small-degree-sets", "2", ["--which", "3-hyperoval"]),
]


@pytest.mark.parametrize("name,field,extra", ROUNDTRIP)
def test_construct_then_verify_roundtrip(capsys, tmp_path, name, field, extra):
    path = tmp_path / "pts.txt"
    argv = ["construct", name, "--output", str(path), "--format", "json"] + extra
    if field:
        argv += ["--field", field]
    code, out, _ = run(capsys, *argv)
    kind = json.loads(out)["construction"]["expected_kind"]
    assert code == 0
    code, out, _ = run(capsys, "verify", "--file", str(path), "--expect", kind, "--format", "json")
    assert code == 0 and json.loads(out)["report"]["kind"] == kind


def test_points_file_comments(capsys, tmp_path):
    path = tmp_path / "o.txt"
    path.write_text("# golden oval\n11\nslopes: 0,1,inf,9,8\n1,1\n1,0\n0,0  # origin\n0,3\n4,3\n")
    code, out, _ = run(capsys, "verify", "--file", str(path))
    assert code == 0 and out.startswith("kind=oval")


def test_output_is_byte_stable():
    argv = [sys.executable, "-m", "netarcs", "table", "--kind", "oval", "--q", "2..8", "--format", "json"]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second and first


def test_suite_command(capsys):
    code, out, _ = run(capsys, "suite")
    lines = out.splitlines()
    assert code == 0 and len(lines) == 9
    assert all(line.startswith("PASS ") for line in lines)
