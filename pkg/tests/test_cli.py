"""The command-line surface: formats, exit codes, cache, determinism."""

import io
import json
from contextlib import redirect_stderr, redirect_stdout

import pytest

from eulerian_workbench import cli, verify
from eulerian_workbench.common import CheckReport

from reference_tables import TABLE1, TABLE2


def run_cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = cli.run(list(argv))
    return code, out.getvalue(), err.getvalue()


def test_stats_worked_line():
    code, out, err = run_cli("stats", "5624713")
    assert code == 0
    assert out == "des=2 ides=3 inv=13 asc=4 exc=3 run=3\n"
    assert err == ""


def test_stats_many_words_one_line_each():
    code, out, _ = run_cli("stats", "1234", "4321")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "des=0 ides=0 inv=0 asc=3 exc=0 run=1"
    assert lines[1] == "des=3 ides=3 inv=6 asc=0 exc=2 run=4"


def test_stats_json_and_csv():
    code, out, _ = run_cli("stats", "5624713", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj == {
        "w": "5624713",
        "des": "2",
        "ides": "3",
        "inv": "13",
        "asc": "4",
        "exc": "3",
        "run": "3",
    }
    code, out, _ = run_cli("stats", "5624713", "21", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "w,des,ides,inv,asc,exc,run"
    assert lines[1] == "5624713,2,3,13,4,3,3"
    assert lines[2] == "21,1,1,1,0,1,2"


def test_eulerian_csv_row_8():
    code, out, _ = run_cli("eulerian", "--n", "8", "--format", "csv")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split(",")[0] == "n\\i"
    assert lines[1] == "8," + ",".join(str(c) for c in TABLE1[8])


def test_eulerian_json_shapes():
    code, out, _ = run_cli("eulerian", "--n", "4", "--format", "json")
    assert json.loads(out) == {"n": "4", "A": ["1", "11", "11", "1"]}
    code, out, _ = run_cli("eulerian", "--n-max", "3", "--format", "json")
    objs = json.loads(out)
    assert [o["n"] for o in objs] == ["1", "2", "3"]
    assert objs[2]["A"] == ["1", "4", "1"]


def test_eulerian_text_triangle():
    code, out, _ = run_cli("eulerian", "--n-max", "8")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].startswith("n\\i")
    for n, line in enumerate(lines[1:], start=1):
        cells = line.split()
        assert cells[0] == str(n)
        assert tuple(int(c) for c in cells[1:]) == TABLE1[n]


def test_two_sided_json_matches_reference():
    code, out, _ = run_cli("two-sided", "--n-max", "8", "--format", "json")
    assert code == 0
    for obj in json.loads(out):
        n = int(obj["n"])
        got = tuple(tuple(int(c) for c in row) for row in obj["A"])
        assert got == TABLE2[n]


def test_two_sided_text_blocks():
    code, out, _ = run_cli("two-sided", "--n-max", "3")
    blocks = out.strip().split("\n\n")
    assert [b.splitlines()[0] for b in blocks] == ["n=1", "n=2", "n=3"]
    last = blocks[2].splitlines()
    assert last[1].split() == ["i\\j", "1", "2", "3"]
    assert last[3].split() == ["2", "0", "4", "0"]


def test_gamma_outputs():
    code, out, _ = run_cli("gamma", "--n", "5", "--format", "json")
    assert json.loads(out) == {
        "n": "5",
        "A": ["1", "26", "66", "26", "1"],
        "gamma": ["1", "22", "16"],
    }
    code, out, _ = run_cli("gamma", "--n", "5")
    assert out == "n=5: gamma = [1, 22, 16]\n"
    code, out, _ = run_cli("gamma", "--n-max", "5", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "n\\i,1,2,3"
    assert lines[5] == "5,1,22,16"


def test_gessel_outputs():
    code, out, _ = run_cli("gessel", "--n", "5", "--format", "json")
    obj = json.loads(out)
    assert obj["gamma"] == {
        "(1,0)": "1",
        "(2,0)": "16",
        "(2,1)": "6",
        "(3,0)": "16",
    }
    assert obj["gessel_nonnegative"] is True
    code, out, _ = run_cli("gessel", "--n", "5")
    assert (
        out
        == "n=5: gamma(1,0)=1 gamma(2,0)=16 gamma(2,1)=6 gamma(3,0)=16 "
        "verdict=NONNEGATIVE\n"
    )
    code, out, _ = run_cli("gessel", "--n", "4", "--format", "csv")
    assert out.splitlines() == [
        "n,i,j,gamma",
        "4,1,0,1",
        "4,2,0,7",
        "4,2,1,1",
    ]


def test_orbit_json_contract():
    code, out, _ = run_cli("orbit", "863247159", "--format", "json")
    assert code == 0
    obj = json.loads(out)
    assert obj["input"] == "863247159"
    assert obj["representative"] == "234671589"
    assert obj["size"] == "64"
    assert obj["peaks"] == ["7"]
    assert obj["valleys"] == ["2", "1"]
    assert obj["free"] == ["8", "6", "3", "4", "5", "9"]
    assert obj["uni"] == "t^2(1+t)^6"
    assert obj["bi"] == "s^3 t^2 (1+t)^2 (1+st)^4"
    assert obj["uni_terms"]["var"] == "t"
    assert obj["uni_terms"]["terms"][0] == [2, "1"]
    assert obj["bi_terms"]["var"] == "st"
    assert obj["bi_terms"]["terms"][0] == [3, 2, "1"]


def test_orbit_csv_lists_members():
    code, out, _ = run_cli("orbit", "123", "--format", "csv")
    lines = out.splitlines()
    assert lines[0] == "member,des,ides"
    assert set(lines[1:]) == {"123,0,0", "213,1,1", "312,1,1", "321,2,2"}


def test_orbits_census_output():
    code, out, _ = run_cli("orbits", "--n", "5", "--format", "json")
    assert json.loads(out) == {
        "n": "5",
        "classes": {"0": "1", "1": "22", "2": "16"},
    }
    code, out, _ = run_cli("orbits", "--n", "3")
    assert out.splitlines() == ["peaks=0: 1", "peaks=1: 2", "total classes: 3"]


def test_series_univariate():
    code, out, _ = run_cli("series", "--n", "3", "--terms", "5")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "0 1 8 27 64 125"
    assert "match" in lines[1]
    code, out, _ = run_cli("series", "--n", "3", "--terms", "5", "--format", "json")
    obj = json.loads(out)
    assert obj["coefficients"] == ["0", "1", "8", "27", "64", "125"]
    assert obj["matches_closed_form"] is True


def test_series_bivariate():
    code, out, _ = run_cli(
        "series", "--n", "2", "--terms", "3", "--bivariate", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["kind"] == "grid"
    assert obj["grid"][2][3] == "21"  # binomial(2*3 + 1, 2)
    assert obj["matches_closed_form"] is True


def test_verify_text_and_exit():
    code, out, err = run_cli("verify", "--suite", "eulerian", "--n-max", "4")
    assert code == 0
    lines = out.splitlines()
    assert all(line.startswith("[PASS]") for line in lines[:-1])
    assert lines[-1].startswith("suite eulerian:")
    assert "finished in" in err


def test_verify_json_report_round_trip():
    code, out, _ = run_cli(
        "verify", "--suite", "boxes", "--n-max", "3", "--format", "json"
    )
    assert code == 0
    obj = json.loads(out)
    assert obj["status"] == "pass"
    suite, checks = cli.report_from_obj(obj)
    assert suite == "boxes"
    assert all(c.ok for c in checks)
    assert cli.report_to_obj(suite, checks) == obj


def test_verify_failure_exits_one(monkeypatch):
    def broken(bounds):
        return [CheckReport(False, "synthetic failing check", "injected")]

    monkeypatch.setitem(verify.SUITES, "eulerian", broken)
    code, out, _ = run_cli("verify", "--suite", "eulerian")
    assert code == 1
    assert "[FAIL] synthetic failing check :: injected" in out


def test_usage_errors_exit_two():
    code, _, err = run_cli("bogus")
    assert code == 2
    code, _, err = run_cli("eulerian", "--n", "3", "--n-max", "5")
    assert code == 2
    code, _, err = run_cli("eulerian")
    assert code == 2
    code, _, err = run_cli("stats", "1232")
    assert code == 2
    assert "not a permutation" in err
    code, _, err = run_cli("eulerian", "--n", "0")
    assert code == 2


def test_guard_rails_exit_three():
    code, _, err = run_cli("orbits", "--n", "12")
    assert code == 3
    assert "force" in err
    code, _, err = run_cli("eulerian", "--n", "12", "--source", "brute")
    assert code == 3


def test_help_exits_zero():
    code, out, _ = run_cli("--help")
    assert code == 0
    assert "eulerian-workbench" in out


# ---------------------------------------------------------------------------
# cache behavior


def test_cache_store_and_hit(tmp_path):
    cache = str(tmp_path / "cache")
    code, first, err = run_cli(
        "eulerian", "--n", "7", "--cache", cache, "--format", "json"
    )
    assert code == 0
    assert (tmp_path / "cache" / "eulerian-n7.json").exists()
    code, second, err = run_cli(
        "eulerian", "--n", "7", "--cache", cache, "--format", "json"
    )
    assert second == first
    assert err == ""


def test_cache_rejects_corruption(tmp_path):
    cache = tmp_path / "cache"
    run_cli("two-sided", "--n", "5", "--cache", str(cache), "--format", "json")
    path = cache / "twosided-n5.json"
    body = json.loads(path.read_text())
    body["payload"]["A"][1][1] = "999"
    path.write_text(json.dumps(body))
    code, out, err = run_cli(
        "two-sided", "--n", "5", "--cache", str(cache), "--format", "json"
    )
    assert code == 0
    assert "rejected" in err and "checksum" in err
    got = tuple(tuple(int(c) for c in row) for row in json.loads(out)["A"])
    assert got == TABLE2[5]


def test_cache_rejects_wrong_row_sum(tmp_path):
    cache = tmp_path / "cache"
    run_cli("eulerian", "--n", "4", "--cache", str(cache))
    path = cache / "eulerian-n4.json"
    payload = {"n": "4", "A": ["1", "11", "12", "1"]}
    cli.cache_store(cache, "eulerian", 4, payload)
    code, out, err = run_cli(
        "eulerian", "--n", "4", "--cache", str(cache), "--format", "csv"
    )
    assert code == 0
    assert "rejected" in err
    assert out.splitlines()[1] == "4,1,11,11,1"


def test_cache_env_variable(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "envcache"))
    code, _, _ = run_cli("gamma", "--n", "6")
    assert code == 0
    assert (tmp_path / "envcache" / "eulerian-n6.json").exists()


def test_brute_source_bypasses_cache(tmp_path, monkeypatch):
    monkeypatch.setenv(cli.CACHE_ENV, str(tmp_path / "envcache"))
    code, _, _ = run_cli("eulerian", "--n", "5", "--source", "brute")
    assert code == 0
    assert not (tmp_path / "envcache").exists()


# ---------------------------------------------------------------------------
# determinism


def test_shard_counts_do_not_change_bytes():
    outputs = []
    for shards in ("1", "4"):
        code, out, _ = run_cli(
            "eulerian",
            "--n-max",
            "7",
            "--source",
            "brute",
            "--shards",
            shards,
            "--format",
            "json",
        )
        assert code == 0
        outputs.append(out)
    assert outputs[0] == outputs[1]


def test_repeat_runs_are_byte_identical():
    first = run_cli("two-sided", "--n-max", "6", "--format", "csv")
    second = run_cli("two-sided", "--n-max", "6", "--format", "csv")
    assert first == second
