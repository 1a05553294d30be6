import csv
import json
import subprocess
import sys

import pytest

from timmp.cli import main
from timmp.graphs import Digraph, canonical_form


@pytest.fixture
def files(tmp_path):
    paths = {
        "c3": tmp_path / "c3.json",
        "c32": tmp_path / "c32.json",
        "tri": tmp_path / "tri.json",
        "chordal": tmp_path / "chordal.json",
        "bad": tmp_path / "bad.json",
    }
    paths["c3"].write_text(json.dumps({"n": 3, "arcs": [[1, 2], [2, 3], [3, 1]]}))
    paths["c32"].write_text(json.dumps({"rows": 3, "cols": 3, "data": [[1, 1, 0], [0, 1, 1], [1, 0, 1]]}))
    paths["tri"].write_text(json.dumps({"K": 4, "transmit_sets": {str(j): list(range(1, j + 1)) for j in range(1, 5)}}))
    paths["chordal"].write_text(json.dumps({"K": 3, "transmit_sets": {"1": [1, 3], "2": [1, 2], "3": [1, 2, 3]}}))
    paths["bad"].write_text("{not json")
    return {k: str(v) for k, v in paths.items()}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_analyze_c3(capsys, files, tmp_path):
    report = tmp_path / "r.json"
    code, out, _ = run(capsys, "analyze", "--digraph", files["c3"], "--report", str(report))
    assert code == 0
    assert "d_sym=2/3" in out and "status=optimal" in out
    data = json.loads(report.read_text())
    assert data["symmetric_dof"]["achievable"] == "2/3"
    assert all("." not in x for p in data["region"]["extreme_points"] for x in p)


def test_analyze_structures(capsys):
    code, out, _ = run(capsys, "--json", "analyze", "--named", "c52", "--dump-structures")
    data = json.loads(out)
    assert code == 0 and len(data["structures"]["minimal_dicycles"]) == 5


def test_census(capsys):
    code, out, _ = run(capsys, "census", "--n", "3", "--no-cache")
    assert code == 0 and out.strip() == "16 instances, 16 optimal"


def test_census_n5_needs_flag(capsys):
    code, _, err = run(capsys, "census", "--n", "5")
    assert code == 3 and err.startswith("error E_GUARD")


def test_census_out_of_range(capsys):
    assert run(capsys, "census", "--n", "7")[0] == 3


def test_matrix_check_ideal(capsys, files):
    code, out, _ = run(capsys, "--json", "matrix-check", "--kind", "ideal", "--file", files["c32"])
    data = json.loads(out)
    assert code == 0 and data["result"] is False
    assert data["mni"]["name"] == "circulant(3,2)"
    assert data["witness"]["vertex"] == ["1/2", "1/2", "1/2"]


@pytest.mark.parametrize("kind,named,expected", [("tu", "circulant:3,2", "false"), ("balanced", "circulant:4,2", "true")])
def test_matrix_check_named(capsys, kind, named, expected):
    code, out, _ = run(capsys, "matrix-check", "--kind", kind, "--named", named)
    assert code == 0 and out.startswith(f"{kind}: {expected}")


def test_matrix_check_mni(capsys):
    code, out, _ = run(capsys, "matrix-check", "--kind", "mni", "--named", "projective:4")
    assert code == 0 and "projective(4)" in out


def test_schedule(capsys, tmp_path):
    out_file = tmp_path / "s.json"
    code, out, _ = run(capsys, "schedule", "--named", "pentagram", "--out", str(out_file))
    assert code == 0 and "simulation ok" in out
    data = json.loads(out_file.read_text())
    assert set(data["simulation"]["rates"].values()) == {"2/5"}


def test_tradeoff(capsys, files, tmp_path):
    out_file = tmp_path / "curve.csv"
    code, _, _ = run(capsys, "tradeoff", "--topology", files["tri"], "--budget", "6", "--out", str(out_file))
    rows = list(csv.DictReader(open(out_file)))
    assert code == 0
    assert [(int(r["p"]), int(r["r"])) for r in rows] == [(0, 4), (1, 3), (2, 2), (3, 2), (4, 2), (5, 2), (6, 1)]


@pytest.mark.parametrize(
    "op,extra,needle",
    [
        ("rate", [], "single-round rate 2"),
        ("reduce", [], "rate=3/2"),
        ("critical", [], "1->2: critical"),
    ],
)
def test_sic_ops(capsys, files, op, extra, needle):
    code, out, _ = run(capsys, "sic", "--digraph", files["c3"], "--op", op, *extra)
    assert code == 0 and needle in out


def test_sic_helpful(capsys, files):
    code, out, _ = run(capsys, "--json", "sic", "--topology", files["chordal"], "--op", "helpful", "--arc", "1,3")
    data = json.loads(out)
    assert code == 0 and data["helpful"] is True
    assert (data["dsym_before"], data["dsym_after"]) == ("1/3", "1/2")


def test_sic_helpful_needs_arc(capsys, files):
    assert run(capsys, "sic", "--digraph", files["c3"], "--op", "helpful")[0] == 2


def test_export_dot_round_trip(capsys, tmp_path):
    dot = tmp_path / "j3.dot"
    code, _, _ = run(capsys, "export-dot", "--named", "j3", "--out", str(dot))
    sidecar = json.loads((tmp_path / "j3.json").read_text())
    d = Digraph.from_json(sidecar)
    assert code == 0
    assert canonical_form(d)[0] == sidecar["canonical_form"]
    assert canonical_form(Digraph.from_dot(dot.read_text()))[0] == sidecar["canonical_form"]


def test_quiet(capsys, files):
    code, out, _ = run(capsys, "--quiet", "analyze", "--digraph", files["c3"])
    assert code == 0 and out == ""


def test_json_is_deterministic(capsys, files):
    a = run(capsys, "--json", "analyze", "--digraph", files["c3"])[1]
    b = run(capsys, "analyze", "--digraph", files["c3"], "--json")[1]
    assert a == b


@pytest.mark.parametrize(
    "argv,code,prefix",
    [
        (["analyze", "--digraph", "{bad}"], 2, "error E_SCHEMA"),
        (["analyze", "--digraph", "/nonexistent.json"], 2, "error E_IO"),
        (["analyze", "--named", "nope"], 2, "error E_SCHEMA"),
        (["sic", "--named", "clique-feeder", "--op", "rate"], 3, "error E_GUARD"),
    ],
)
def test_errors(capsys, files, argv, code, prefix):
    argv = [files["bad"] if a == "{bad}" else a for a in argv]
    status, _, err = run(capsys, *argv)
    assert status == code and err.startswith(prefix) and err.count("\n") == 1


def test_exclusive_inputs(capsys, files):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "--digraph", files["c3"], "--named", "c52"])
    assert exc.value.code == 2


def test_module_entry_point(files):
    proc = subprocess.run([sys.executable, "-m", "timmp", "census", "--n", "2", "--no-cache"], capture_output=True, text=True)
    assert proc.returncode == 0 and proc.stdout.strip() == "3 instances, 3 optimal"
