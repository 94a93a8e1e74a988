from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from klein.classify import REPORT_SCHEMA
from klein.cli import Config, UsageError, main, parse_degrees
from klein.ideals import IDEAL_SCHEMA, MEMBERSHIP_SCHEMA


def run(capsys, *argv):
    try:
        code = main(list(argv))
    except SystemExit as exc:  # argparse rejects bad choices itself
        code = exc.code
    out, err = capsys.readouterr()
    return code, out, err


def flags(text: str) -> dict[str, str]:
    out = {}
    for line in text.splitlines():
        parts = line.split(None, 1)
        if len(parts) == 2 and not line.startswith(" "):
            out[parts[0]] = parts[1].strip()
    return out


def test_check_ideal_flat_example(capsys):
    code, out, _ = run(capsys, "check-ideal", "a^3", "b^4")
    f = flags(out)
    assert code == 0
    assert (f["parameter"], f["steenrod-closed"], f["c3-invariant"]) == ("✓", "✓", "✗")
    assert "Sq(a^3) =" in out


def test_check_ideal_maximal(capsys):
    code, out, _ = run(capsys, "check-ideal", "a", "b")
    f = flags(out)
    assert code == 0
    assert f["parameter"] == f["c3-invariant"] == f["steenrod-closed"] == f["orbit-generated"] == "✓"
    assert f["rep-type"] == "nontrivial"


def test_check_ideal_common_factor(capsys):
    code, out, _ = run(capsys, "check-ideal", "a*b", "b^2")
    assert code == 0 and flags(out)["parameter"] == "✗"


def test_check_ideal_json(capsys):
    code, out, _ = run(capsys, "check-ideal", "a^2*b + a*b^2", "a^4 + a^2*b^2 + b^4", "--format", "json")
    data = json.loads(out)
    assert code == 0
    jsonschema.validate(data["ideal"], IDEAL_SCHEMA)
    for cert in data["certificates"]:
        jsonschema.validate({"member": cert["member"], "coefficients": cert["coefficients"]},
                            MEMBERSHIP_SCHEMA)
    assert data["rep_type"] == "trivial"
    assert data["invariant_generating_system"] is not None


@pytest.mark.parametrize("argv", [
    ["check-ideal", "a^"],
    ["check-ideal", "a + a^2", "b"],
    ["check-ideal", "a^65", "b"],
    ["search", "--degrees", "21"],
    ["search", "--degrees", "x..y"],
    ["search", "--degrees", "3", "--workers", "0"],
    ["search", "--degrees", "3", "--degree-cap", "65"],
    ["selftest", "--suite", "nope"],
])
def test_usage_errors_exit_2(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2 and "error" in err


def test_search_text(capsys):
    code, out, _ = run(capsys, "search", "--degrees", "3")
    assert code == 0 and "survivors: none" in out


def test_search_json_schema(capsys):
    code, out, _ = run(capsys, "search", "--degrees", "1..8", "--format", "json")
    reports = json.loads(out)
    assert code == 0
    for r in reports:
        jsonschema.validate(r, REPORT_SCHEMA)
    assert [r["degree"] for r in reports if r["survivors"]] == [1, 2, 4, 8]


def _strip_timing(reports):
    for r in reports:
        r.pop("elapsed_ms")
        r.pop("config")
    return reports


def test_search_workers_deterministic(capsys):
    _, one, _ = run(capsys, "search", "--degrees", "8", "--workers", "1", "--format", "json")
    _, four, _ = run(capsys, "search", "--degrees", "8", "--workers", "4", "--format", "json")
    assert _strip_timing(json.loads(one)) == _strip_timing(json.loads(four))
    _, one, _ = run(capsys, "search", "--degrees", "14", "--workers", "1", "--format", "json")
    _, two, _ = run(capsys, "search", "--degrees", "14", "--workers", "2", "--format", "json")
    assert _strip_timing(json.loads(one)) == _strip_timing(json.loads(two))


def test_env_fallbacks(capsys, monkeypatch):
    monkeypatch.setenv("KLEIN_DEGREE_CAP", "4")
    code, _, err = run(capsys, "search", "--degrees", "5")
    assert code == 2 and "cap" in err
    code, _, _ = run(capsys, "search", "--degrees", "5", "--degree-cap", "5")
    assert code == 0
    monkeypatch.setenv("KLEIN_WORKERS", "zero")
    code, _, err = run(capsys, "search", "--degrees", "2")
    assert code == 2 and "KLEIN_WORKERS" in err


def test_config_validation():
    with pytest.raises(UsageError):
        Config(worker_count=0)
    with pytest.raises(UsageError):
        Config(degree_cap=100)
    assert Config().degree_cap == 20


def test_parse_degrees():
    assert parse_degrees("5") == [5]
    assert parse_degrees("1..4") == [1, 2, 3, 4]
    assert parse_degrees("1,3..4") == [1, 3, 4]
    with pytest.raises(UsageError):
        parse_degrees("0..2")


def test_admissible_csv(capsys):
    code, out, _ = run(capsys, "admissible", "4", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert code == 0
    assert rows[0] == ["m_plus_1", "n_plus_1", "families"]
    keys = {(int(a), int(b)) for a, b, _ in rows[1:]}
    assert {(2, 3), (3, 4), (1, 1), (2, 2), (4, 4)} <= keys
    _, out, _ = run(capsys, "admissible", "1", "--format", "csv")
    assert out.splitlines()[1:] == ["1,1,C"]


def test_density_table(capsys):
    code, out, _ = run(capsys, "density", "64", "256", "1024", "--format", "json")
    rows = json.loads(out)
    assert code == 0
    assert rows[0]["density"] > rows[1]["density"] > rows[2]["density"]
    assert [r["family_c"] for r in rows] == [7, 9, 11]


def test_selftest_pass_and_seed(capsys):
    code, out, _ = run(capsys, "selftest", "--suite", "kameko", "--cases", "50", "--seed", "7")
    assert code == 0
    assert "seed 7" in out and "kameko" in out and "cartan" not in out


def test_selftest_corruption_fails(capsys):
    code, out, _ = run(capsys, "selftest", "--suite", "cartan", "--cases", "50", "--simulate-corruption")
    assert code == 1 and "FAIL" in out


def test_single_degree(capsys):
    code, out, _ = run(capsys, "single-degree", "2", "--format", "json")
    data = json.loads(out)
    assert code == 0 and data["subspaces"] == 7 and data["all_three"] == [["b^2", "a^2"]]


def test_console_entry_points():
    for cmd in (["klein"], [sys.executable, "-m", "klein"]):
        p = subprocess.run(cmd + ["check-ideal", "a", "b"], capture_output=True, text=True)
        assert p.returncode == 0 and "nontrivial" in p.stdout
        p = subprocess.run(cmd + ["check-ideal", "a^"], capture_output=True, text=True)
        assert p.returncode == 2
