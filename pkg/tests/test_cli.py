import csv
import io
import json
import subprocess
import sys

import pytest

from grassindex.cli import EXIT_USAGE, divisor_violations, main, parse_n_list
from grassindex.kernel import IndexReport


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_index_json(capsys):
    code, out, _ = run(capsys, "index", "--n", "4", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["hind"] == 7 and data["n"] == 4 and data["schemaVersion"] == 1
    assert data["flags"]["theoremExact"] is True
    code, out, _ = run(capsys, "index", "--n", "1", "--format", "json")
    assert json.loads(out)["hind"] == 1


def test_index_text(capsys):
    code, out, _ = run(capsys, "index", "--n", "2")
    assert code == 0 and "hind = 3" in out and "matches proven value: ok" in out


def test_index_csv(capsys):
    code, out, _ = run(capsys, "index", "--n", "3", "--format", "csv")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert [int(r["d"]) for r in rows] == list(range(1, 7))
    assert rows[0]["cInIdeal"] == "false" and rows[1]["cInIdeal"] == "true"
    assert {r["hind"] for r in rows} == {"1"}


def test_index_json_round_trip(capsys, tmp_path):
    path = tmp_path / "r.json"
    code, out, _ = run(capsys, "index", "--n", "5", "--format", "json", "--certificates", "-o", str(path))
    assert code == 0 and out == ""
    data = json.loads(path.read_text())
    assert IndexReport.from_dict(data).to_dict() == data


def test_threads_do_not_change_output(capsys):
    _, one, _ = run(capsys, "index", "--n", "6", "--format", "json", "--threads", "1", "--certificates")
    _, two, _ = run(capsys, "index", "--n", "6", "--format", "json", "--threads", "2", "--certificates")
    assert one == two


def test_degree_cap(capsys):
    code, out, _ = run(capsys, "index", "--n", "4", "--degree-cap", "3", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["flags"]["truncated"] and len(data["degrees"]) == 3
    code, _, err = run(capsys, "index", "--n", "4", "--degree-cap", "9")
    assert code == EXIT_USAGE and "degree-cap" in err


def test_relations(capsys):
    assert run(capsys, "relations", "--n", "3", "--degree", "1")[1] == "c + Od[1, w1]\n"
    assert run(capsys, "relations", "--n", "2", "--degree", "2")[1] == "c^2 + Sq[w1] + Od[1, w2]\n"
    out = run(capsys, "relations", "--n", "1")[1]
    assert out.splitlines() == ["g1 = c + Od[1, w1]", "g2 = Sq[w1]"]
    data = json.loads(run(capsys, "relations", "--n", "2", "--format", "json")[1])
    assert [g["d"] for g in data["generators"]] == [1, 2, 3, 4]
    assert run(capsys, "relations", "--n", "2", "--degree", "5")[0] == EXIT_USAGE


def test_table(capsys):
    code, out, _ = run(capsys, "table", "--n-list", "2,4,8", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["divisibilityMonotone"]
    assert [r["hind"] for r in data["rows"]] == [3, 7, 15]
    code, out, _ = run(capsys, "table", "--n-list", "1..3", "--format", "csv")
    assert out.splitlines()[0] == "n,hind,theoremLower,theoremUpper,match,exploratory"
    assert len(out.splitlines()) == 4


@pytest.mark.parametrize("argv", [
    ["table", "--n-list", ""],
    ["table", "--n-list", "3..1"],
    ["table", "--n-list", "x"],
    ["table", "--n-list", "0,1"],
    ["index", "--n", "0"],
    ["index"],
    ["verify-numeric", "--n", "2", "--samples", "0"],
    ["relations", "--n", "2", "--format", "csv"],
    ["bogus"],
])
def test_usage_errors(capsys, argv):
    try:
        code = main(argv)
    except SystemExit as exc:
        code = exc.code
    assert code == EXIT_USAGE


def test_parse_n_list():
    assert parse_n_list("1..4,8") == [1, 2, 3, 4, 8]
    assert parse_n_list("4, 2 ,2") == [2, 4]


def test_divisor_violations():
    assert divisor_violations({2: 3, 4: 7, 8: 15}) == []
    assert divisor_violations({2: 3, 6: 1}) == [(2, 6)]


def test_verify_numeric_is_byte_identical(capsys):
    _, a, _ = run(capsys, "verify-numeric", "--n", "2", "--samples", "300", "--seed", "7")
    _, b, _ = run(capsys, "verify-numeric", "--n", "2", "--samples", "300", "--seed", "7")
    assert a == b
    data = json.loads(a)
    assert data["passed"] and data["samples"] == 300


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "grassindex", "relations", "--n", "3", "--degree", "1"],
                         capture_output=True, text=True, check=True)
    assert out.stdout == "c + Od[1, w1]\n"


def test_reports_match_published_schema(capsys):
    jsonschema = pytest.importorskip("jsonschema")
    from pathlib import Path

    schema = json.loads((Path(__file__).parent.parent / "docs" / "report-schema.json").read_text())
    for argv in (["--n", "3"], ["--n", "2", "--certificates"], ["--n", "4", "--degree-cap", "3"]):
        _, out, _ = run(capsys, "index", *argv, "--format", "json")
        jsonschema.validate(json.loads(out), schema)
