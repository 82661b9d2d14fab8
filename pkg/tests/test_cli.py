import json
import subprocess
import sys
from importlib import resources
from pathlib import Path

import pytest

from conftest import ALL
from matro import cli, io
from matro import matroid as mm
from matro.errors import ParseError, ValidationError

ROOT = Path(__file__).resolve().parents[1]


def run(*argv):
    status, out, err = cli.run(list(argv))
    return status, out, err


def run_json(*argv):
    status, out, _ = run(*argv, "--json")
    return status, json.loads(out)


def test_shipped_schema_matches_docs_copy():
    shipped = resources.files("matro").joinpath("data/spec.schema.json")
    assert shipped.read_text() == (ROOT / "docs" / "spec.schema.json").read_text()


@pytest.mark.parametrize("name", ALL)
def test_corpus_files_are_schema_valid(name):
    io.validate(json.loads(io.corpus_path(name).read_text()))


def test_info_r10():
    status, doc = run_json("info", "r10")
    assert status == 0
    m = doc["matroid"]
    assert (m["n"], m["r"], m["bases"], m["connected"], m["loops"]) == (10, 5, 162, True, [])
    assert doc["result"]["flats_per_rank"] == [1, 10, 45, 75, 30, 1]


def test_info_u24_text():
    status, out, _ = run("info", "u24")
    assert status == 0
    assert out.splitlines()[0] == "u24: n=4 r=2 bases=6 connected loops={}"


def test_malformed_json_is_a_parse_error(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "bases",\n "n": 3 "r": 1}')
    status, doc = run_json("info", str(p))
    assert status == 3
    assert doc["error"]["code"] == "ParseError"
    assert "line 2, column 9" in doc["error"]["message"]
    with pytest.raises(ParseError) as exc:
        io.parse_text(p.read_text())
    assert (exc.value.line, exc.value.column) == (2, 9)


def test_schema_violation(tmp_path):
    p = tmp_path / "s.json"
    p.write_text(json.dumps({"kind": "vectors", "matrix": [[1, "x"]]}))
    status, doc = run_json("info", str(p))
    assert status == 2 and doc["error"]["code"] == "ValidationError"
    with pytest.raises(ValidationError):
        io.parse_text(json.dumps({"kind": "bases", "n": 3}))


def test_missing_file_is_a_parse_error():
    status, doc = run_json("info", "/nonexistent/spec.json")
    assert status == 3 and doc["error"]["code"] == "ParseError"


def test_matroid_errors_surface_with_codes(tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"kind": "bases", "n": 4, "r": 2, "bases": [[1, 2], [3, 4]]}))
    status, doc = run_json("info", str(p))
    assert status == 2
    assert doc["error"]["code"] == "ExchangeAxiomViolated"
    assert "{1,2}" in doc["error"]["message"]


def test_precondition_errors_exit_four(tmp_path):
    p = tmp_path / "d.json"
    p.write_text(json.dumps({"kind": "bases", "n": 2, "r": 2, "bases": [[1, 2]]}))
    status, doc = run_json("polytope", str(p))
    assert status == 4 and doc["error"]["code"] == "NotConnected"
    assert "components {1}, {2}" in doc["error"]["message"]
    p.write_text(json.dumps({"kind": "bases", "n": 3, "r": 1, "bases": [[1], [2]]}))
    status, doc = run_json("bergman", str(p))
    assert status == 4 and doc["error"]["code"] == "HasLoops"


def test_bergman_commands():
    assert run_json("bergman", "k4")[1]["result"]["count"] == 15
    assert run_json("bergman", "cube6", "--mode", "fvector")[1]["result"]["f_vector"] == [9, 24, 23]
    faces = run_json("bergman", "k4e", "--mode", "faces")[1]["result"]
    assert faces["count"] == 6 + 9
    first = run_json("bergman", "u24")[1]["result"]["facets"][0]
    assert first == [[1], [2, 3, 4]]


def test_nested_commands():
    assert run_json("nested", "r10")[1]["result"]["count"] == 405
    doc = run_json("nested", "k4e", "--mode", "triangulation")[1]["result"]
    assert doc["subdivided"] == 1
    (sub,) = [t for t in doc["triangulation"] if t["subdivided"]]
    assert len(sub["simplices"]) == 2
    assert run_json("nested", "k4", "--building", "max", "--mode", "fvector")[1]["result"]["f_vector"] == [13, 18]
    status, out, _ = run("nested", "k4e", "--mode", "triangulation")
    assert "not subdivided" in out


def test_nested_facets_are_listed_in_canonical_order():
    _, M = io.load("k4e")
    facets = run_json("nested", "k4e")[1]["result"]["facets"]

    def key(F):
        return M.rank(sum(1 << (e - 1) for e in F)), F

    for S in facets:
        assert all(F == sorted(F) for F in S)
        assert S == sorted(S, key=key)


def test_check_command():
    assert run_json("check", "k4")[1]["result"] == {"verdict": "EQUAL"}
    res = run_json("check", "k4e")[1]["result"]
    assert res["verdict"] == "NOT-EQUAL" and set(res["witness"]) == {"F", "G"}
    assert run_json("check", "cube8")[1]["result"]["verdict"] == "EQUAL"


def test_member_command():
    res = run_json("member", "u24", "--w", "1,0,0,0")[1]["result"]
    assert res["verdict"] == "IN" and res["face_matroid"]["bases"] == 3
    assert run_json("member", "u24", "--w", "1,1,0,0")[1]["result"]["verdict"] == "OUT"
    res = run_json("member", "k4", "--w", "0,0,0,0,0,0")[1]["result"]
    assert res["verdict"] == "IN" and res["face_matroid"]["bases"] == 16
    assert run_json("member", "u24", "--w", "1/2,-3,0,0")[1]["result"]["w"] == ["1/2", "-3", "0", "0"]
    status, doc = run_json("member", "u24", "--w", "1,0")
    assert status == 2 and doc["error"]["code"] == "LengthMismatch"
    status, doc = run_json("member", "u24", "--w", "1,a,0,0")
    assert status == 2 and doc["error"]["code"] == "RationalParseError"


def test_polytope_command():
    res = run_json("polytope", "cube6")[1]["result"]
    assert len(res["flacet_inequalities"]) == 9
    res = run_json("polytope", "u24")[1]["result"]
    assert res["dimension"] == 3
    assert [row["flat"] for row in res["flacet_inequalities"]] == [[1], [2], [3], [4]]
    assert all(row["rhs"] == 1 for row in res["flacet_inequalities"])


def test_timing_only_on_request():
    assert "timing" not in run_json("info", "u24")[1]
    assert "timing" in run_json("info", "u24", "--timing")[1]


def test_output_is_byte_identical_across_threads():
    outs = set()
    for k in ("1", "3"):
        proc = subprocess.run(
            [sys.executable, "-m", "matro.cli", "bergman", "r10", "--json", "--threads", k],
            capture_output=True, text=True, check=True,
        )
        outs.add(proc.stdout)
    assert len(outs) == 1


def test_console_script_exit_status(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text("{")
    proc = subprocess.run([sys.executable, "-m", "matro.cli", "info", str(p)], capture_output=True, text=True)
    assert proc.returncode == 3
    assert "[ParseError]" in proc.stderr


@pytest.mark.parametrize("name", ["k4", "cube6", "r10", "mk5dual"])
def test_bases_spec_round_trip(name, tmp_path):
    _, M = io.load(name)
    p = tmp_path / f"{name}.json"
    p.write_text(io.dumps(M, name))
    again_name, again = io.load(str(p))
    assert again_name == name and again == M
    assert io.to_spec(again, name) == io.to_spec(M, name)


def test_uniform_and_dualize_kinds():
    doc = {"kind": "uniform", "n": 5, "r": 2, "dualize": True}
    M = io.build(io.parse_text(json.dumps(doc)))
    assert M == mm.uniform(3, 5)
