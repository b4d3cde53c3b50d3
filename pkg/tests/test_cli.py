import json

import pytest

from charlab import cli


def run_cli(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_gen_exit_zero_and_json(capsys):
    code, out, _ = run_cli(capsys, "gen", "--group", "SL", "--n", "2",
                           "--genus", "2", "--seed", "1")
    assert code == 0
    envelope = json.loads(out)
    assert envelope["report"]["results"]["representation"]["residual"] <= 1e-10


def test_cohom_torus(capsys):
    code, out, _ = run_cli(capsys, "cohom", "--group", "TORUS", "--genus", "2")
    assert code == 0
    assert json.loads(out)["report"]["results"]["h1"] == 4


def test_out_file(tmp_path, capsys):
    path = tmp_path / "report.json"
    code, out, _ = run_cli(capsys, "--out", str(path), "gen", "--seed", "2")
    assert code == 0
    assert out == ""
    envelope = json.loads(path.read_text())
    assert envelope["report"]["command"] == "gen"


def test_check_failure_exit_one(capsys):
    # impossible tolerance: computation succeeds, check fails
    code, out, err = run_cli(capsys, "oracle-check", "--pairs", "5",
                             "--pairing-tol", "1e-18")
    assert code == 1
    assert "check failure" in err


def test_usage_error_exit_two(capsys):
    code, _, err = run_cli(capsys, "gen", "--genus", "1")
    assert code == 2
    assert "invalid request" in err


def test_bad_flag_exit_two(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["gen", "--no-such-flag"])
    assert exc.value.code == 2


def test_numeric_failure_exit_three(capsys):
    code, out, err = run_cli(capsys, "abelian",
                             "--branch-points=-5,-3,-1,1,3,3.00000003",
                             "--quadrature-order", "16")
    assert code == 3
    assert "numeric failure" in err


def test_report_determinism_excludes_timestamp(tmp_path, capsys):
    p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run_cli(capsys, "--out", str(p1), "goldman", "--seed", "4",
                   "--samples", "10")[0] == 0
    assert run_cli(capsys, "--out", str(p2), "goldman", "--seed", "4",
                   "--samples", "10")[0] == 0
    e1, e2 = json.loads(p1.read_text()), json.loads(p2.read_text())
    assert json.dumps(e1["report"], sort_keys=True) == \
        json.dumps(e2["report"], sort_keys=True)


def test_abelian_cli(capsys):
    code, out, _ = run_cli(capsys, "abelian",
                           "--branch-points=-5,-3,-1,1,3,5",
                           "--pairs", "10")
    assert code == 0
    results = json.loads(out)["report"]["results"]
    assert results["relation1_residual"] <= 1e-6
    assert results["pullback_worst_relative_error"] <= 1e-6


def test_report_command_aggregates_criteria(capsys):
    code, out, _ = run_cli(capsys, "report")
    assert code == 0
    criteria = json.loads(out)["report"]["results"]["criteria"]
    assert len(criteria) == 9
    assert all(c["passed"] for c in criteria)


def test_branch_point_parse_error(capsys):
    with pytest.raises(SystemExit) as exc:
        cli.main(["abelian", "--branch-points=a,b,c"])
    assert exc.value.code == 2
