import json
import subprocess
import sys

import pytest

from rdlab.cli import EXIT_BUDGET, EXIT_EXHAUSTED, EXIT_NOT_RATIONAL, EXIT_OK, EXIT_USAGE, main
from rdlab.parametrization import builtin_octic


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_check_point_found_solution(capsys):
    code, out, _ = run(capsys, "check-point", "--a", "4/11", "--x", "-8/13", "--y", "-25/78")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["d"] == ["40/39", "25/39", "548/429", "427/429"]
    assert obj["verdict"].startswith("Undetermined")
    assert (obj["v3x"], obj["v3z"]) == (0, -1)
    assert obj["rational_distances"] == 4


def test_check_point_equals_form(capsys):
    code, out, _ = run(capsys, "check-point", "--a=4/11", "--x=-8/13", "--y=-25/78")
    assert code == EXIT_OK


def test_check_point_not_rational(capsys):
    code, out, _ = run(capsys, "check-point", "--a", "1", "--x", "6493/28900", "--y", "12463/14450")
    assert code == EXIT_NOT_RATIONAL
    obj = json.loads(out)
    assert obj["d"][1] is None and obj["rational_distances"] == 3
    assert (obj["v3x"], obj["v3z"]) == (0, 0)


def test_check_point_bad_rational(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check-point", "--a", "1.5", "--x", "0", "--y", "0"])
    assert exc.value.code == EXIT_USAGE


def test_check_point_zero_a(capsys):
    code, _, err = run(capsys, "check-point", "--a", "0", "--x", "0", "--y", "0")
    assert code == EXIT_USAGE and "error" in err


def test_search_to_file(tmp_path, capsys):
    out = tmp_path / "r.jsonl"
    code, _, err = run(capsys, "search", "--a", "3/4", "--height", "8", "--include-trivial", "--out", str(out))
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert json.loads(lines[0])["header"]["height"] == 8
    assert any(json.loads(l).get("x") == "3/8" and json.loads(l).get("y") == "0" for l in lines[1:])
    assert "found=" in err


def test_search_filter_does_not_change_bytes(tmp_path, capsys):
    a, b = tmp_path / "a.jsonl", tmp_path / "b.jsonl"
    run(capsys, "search", "--a", "5/7", "--height", "10", "--out", str(a))
    run(capsys, "search", "--a", "5/7", "--height", "10", "--no-filter", "--out", str(b))
    body = lambda p: p.read_text().splitlines()[1:]  # noqa: E731
    assert body(a) == body(b)


def test_filter_stats_csv(capsys):
    code, out, _ = run(capsys, "filter-stats", "--a", "1", "--height", "3")
    assert code == EXIT_OK
    assert out.splitlines() == ["total,pruned,fraction", "225,137,137/225"]


def test_filter_stats_warns_without_hypothesis(capsys):
    code, _, err = run(capsys, "filter-stats", "--a", "3", "--height", "3")
    assert code == EXIT_OK and "v3(a) = 1" in err


def test_lift_count(capsys):
    code, out, _ = run(capsys, "lift", "count", "--system", "three-and-one", "--levels", "3")
    assert code == EXIT_OK
    assert out.splitlines() == ["level,count,quotient", "1,16,", "2,1296,81", "3,34992,27"]


def test_lift_count_rejects_scaled(capsys):
    code, _, err = run(capsys, "lift", "count", "--system", "scaled", "--levels", "2")
    assert code == EXIT_USAGE and "census" in err


def test_lift_exist_witness(capsys):
    code, out, _ = run(capsys, "lift", "exist", "--depth", "20")
    assert code == EXIT_OK
    obj = json.loads(out)
    assert obj["level"] == 20 and len(obj["entries"]) == 5


def test_lift_exist_nondegenerate(capsys):
    code, out, _ = run(capsys, "lift", "exist", "--depth", "20", "--nondegenerate")
    T = int(json.loads(out)["entries"][3])
    assert code == EXIT_OK and T % 3 == 0 and T % 9 != 0


def test_lift_exist_budget(capsys):
    code, _, _ = run(capsys, "lift", "exist", "--depth", "30", "--budget", "3")
    assert code == EXIT_BUDGET


def test_lift_exist_exhausted(capsys, monkeypatch):
    monkeypatch.setattr("rdlab.cli.lift_exists_to_depth", lambda *a, **k: None)
    code, _, err = run(capsys, "lift", "exist", "--depth", "3")
    assert code == EXIT_EXHAUSTED and "no constrained solution" in err


def test_lift_census(capsys):
    assert run(capsys, "lift", "census", "--system", "scaled")[1].splitlines() == ["rank,count", "2,24"]
    assert run(capsys, "lift", "census", "--system", "three-and-one")[1].splitlines() == ["rank,count", "1,16"]
    out = run(capsys, "lift", "census", "--system", "two-dist-pair", "--a", "1")[1]
    assert out.splitlines() == ["rank,count", "0,3", "1,4"]


def test_param_obstruct_builtin(capsys):
    code, out, _ = run(capsys, "param", "obstruct", "--builtin", "octic")
    obj = json.loads(out)
    assert code == EXIT_OK and obj["verdict"] == "Obstructed"
    assert obj["case_nonneg"]["T_mod3"] == {"0": 1, "1": 1, "2": 1}
    assert obj["case_neg"]["note"] == "v3(Z) = v3(T) = 8*v3(t)"


def test_param_file(tmp_path, capsys):
    path = tmp_path / "p.json"
    path.write_text(json.dumps(builtin_octic().to_json()))
    code, out, _ = run(capsys, "param", "verify", "--file", str(path))
    assert code == EXIT_OK and json.loads(out)["holds"] is False


def test_param_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "param", "obstruct", "--file", str(tmp_path / "nope.json"))
    assert code == EXIT_USAGE


def test_param_needs_source(capsys):
    assert run(capsys, "param", "obstruct")[0] == EXIT_USAGE


def test_gen_two_dist(capsys):
    code, out, _ = run(capsys, "gen", "two-dist", "--max-leg", "20")
    lines = out.splitlines()
    assert code == EXIT_OK and lines[0] == "x,y,r1,r2"
    assert "3,7/4,13/4,15/4" in lines


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "rdlab.cli", "filter-stats", "--a", "1", "--height", "1"],
        capture_output=True,
        text=True,
        check=False,
    )
    assert proc.returncode == 0
    assert proc.stdout.splitlines()[-1] == "9,9,1"
