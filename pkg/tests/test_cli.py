import csv
import io
import json

import pytest
from click.testing import CliRunner

from cubic_orbits import __version__
from cubic_orbits.commands.cli import cli


@pytest.fixture
def runner():
    return CliRunner()


def invoke(runner, *args):
    return runner.invoke(cli, [str(a) for a in args])


def test_version(runner):
    result = invoke(runner, "--version")
    assert result.exit_code == 0
    assert __version__ in result.output


def test_classify_text(runner):
    result = invoke(runner, "classify", "--q", 5, "--workers", 1)
    assert result.exit_code == 0
    assert "EnG" in result.output
    assert "✅ EnG = 480" in result.output


def test_classify_json(runner):
    result = invoke(runner, "classify", "--q", 7, "--workers", 1, "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["counts"]["EnG"] == 2016
    assert data["total_lines"] == data["expected_total"] == 2850


def test_classify_csv(runner):
    result = invoke(runner, "classify", "--q", 5, "--workers", 1, "--format", "csv")
    rows = list(csv.reader(io.StringIO(result.output)))
    assert rows[0] == ["q", "class_or_theorem", "value", "multiplicity_or_verdict"]
    assert ["5", "EnG", "count", "480"] in rows


@pytest.mark.parametrize("q", [6, 3, 12])
def test_bad_field_order_exits_2(runner, q):
    result = invoke(runner, "classify", "--q", q)
    assert result.exit_code == 2
    assert "❌" in result.output


def test_census_guardrail_exits_3(runner):
    result = invoke(runner, "census", "--q", 9, "--max-q", 8)
    assert result.exit_code == 3
    assert "guardrail" in result.output


def test_orbit_of_lambda(runner):
    result = invoke(runner, "orbit", "--q", 7, "--lambda-line", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["size"] == 112
    assert data["stabilizer_order"] == 3
    assert data["group_id"] == "C3"
    assert data["class"] == "EnG"


def test_orbit_from_points_matches_lambda(runner):
    by_points = json.loads(invoke(runner, "orbit", "--q", 5, "--points", "1,0,0,1", "0,0,1,0", "--format", "json").output)
    by_flag = json.loads(invoke(runner, "orbit", "--q", 5, "--lambda-line", "--format", "json").output)
    assert by_points == by_flag


def test_orbit_mu_fraction(runner):
    result = invoke(runner, "orbit", "--q", 11, "--mu", "-1/3", "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["size"] == 660
    assert data["group_id"] == "C2"


def test_orbit_text(runner):
    result = invoke(runner, "orbit", "--q", 7, "--mu", 2)
    assert result.exit_code == 0
    assert "C2xC2" in result.output
    assert "84 x 4 = 336" in result.output


@pytest.mark.parametrize(
    "args",
    [
        ["--lambda-line", "--mu", "2"],
        [],
        ["--line", "1,0,0,0,0,1"],
        ["--points", "1,0,0,0", "2,0,0,0"],
        ["--points", "1,0,0", "0,1,0,0"],
        ["--mu", "1/7"],
    ],
)
def test_orbit_bad_input_exits_2(runner, args):
    result = invoke(runner, "orbit", "--q", 7, *args)
    assert result.exit_code == 2


def test_orbit_guardrail(runner):
    result = invoke(runner, "orbit", "--q", 11, "--lambda-line", "--max-q", 7)
    assert result.exit_code == 3


def test_census_json(runner):
    result = invoke(runner, "census", "--q", 5, "--workers", 1, "--format", "json")
    assert result.exit_code == 0
    data = json.loads(result.output)
    assert data["orbits"] == [{"length": 120, "multiplicity": 2}, {"length": 60, "multiplicity": 4}]


def test_census_same_output_across_workers(runner):
    one = invoke(runner, "census", "--q", 7, "--workers", 1, "--format", "json")
    two = invoke(runner, "census", "--q", 7, "--workers", 2, "--format", "json")
    assert one.exit_code == two.exit_code == 0
    assert one.output == two.output


def test_census_all_lines(runner):
    result = invoke(runner, "census", "--q", 5, "--all-lines", "--workers", 1, "--format", "json")
    data = json.loads(result.output)
    assert data["orbit_count"] == 16
    assert data["total_lines"] == 806


def test_explore(runner):
    result = invoke(runner, "explore", "--q", 8, "--workers", 1)
    assert result.exit_code == 0
    assert "✅ census matches" in result.output


def test_census_saves_report(runner, tmp_path):
    target = tmp_path / "reports" / "q5.json"
    result = invoke(runner, "census", "--q", 5, "--workers", 1, "--format", "csv", "--output", target)
    assert result.exit_code == 0
    assert json.loads(target.read_text())["orbit_count"] == 6


def test_verify_q5(runner):
    result = invoke(runner, "verify", "--q", 5, "--workers", 1, "--quiet", "--format", "json")
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert data["passed"]
    verdicts = {c["check_id"]: c["verdict"] for c in data["checks"]}
    assert verdicts["engline-census"] == "pass"
    assert verdicts["char3-pairs"] == "not-applicable"
    assert verdicts["mu-even-distinct"] == "not-applicable"


def test_verify_selected_checks(runner):
    result = invoke(runner, "verify", "--q", 9, "--check", "char3", "--quiet", "--format", "json")
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    verdicts = {c["check_id"]: c["verdict"] for c in data["checks"]}
    assert set(verdicts) == {"char3-pairs", "char3-orbit-count", "char3-triples", "char3-triple-formula"}
    assert verdicts["char3-triple-formula"] == "measured"
    assert verdicts["char3-orbit-count"] == "pass"


def test_verify_check_alias(runner):
    result = invoke(runner, "verify", "--q", 8, "--theorem", "mu-even", "--quiet")
    assert result.exit_code == 0
    assert "mu-even-distinct" in result.output


def test_verify_unknown_check(runner):
    result = invoke(runner, "verify", "--q", 7, "--check", "no-such-claim", "--quiet")
    assert result.exit_code == 2


def test_verify_by_theorem_id(runner):
    result = invoke(runner, "verify", "--q", 9, "--theorem", "6.5", "--workers", 1, "--quiet", "--format", "json")
    assert result.exit_code == 0, result.output
    data = json.loads(result.output)
    assert [c["check_id"] for c in data["checks"]] == ["char3-orbit-count", "char3-triples"]
    assert {c["theorem_id"] for c in data["checks"]} == {"6.5"}


def test_verify_text_shows_theorem_ids(runner):
    result = invoke(runner, "verify", "--q", 7, "--check", "class-size", "--workers", 1, "--quiet")
    assert result.exit_code == 0, result.output
    assert "[2.2(ii)]" in result.output


def test_explore_json_carries_residues(runner):
    result = invoke(runner, "explore", "--q", 8, "--workers", 1, "--format", "json")
    assert result.exit_code == 0
    residues = json.loads(result.output)["residues"]
    assert residues["xi"] == -1
    assert residues["q_mod_4"] == 0
    assert residues["minus3_is_square"] is False


def test_census_guardrail_from_environment(runner, monkeypatch):
    monkeypatch.setenv("CUBIC_ORBITS_CENSUS_MAX_Q", "5")
    result = invoke(runner, "classify", "--q", 7, "--workers", 1)
    assert result.exit_code == 3
    assert "census guardrail q <= 5" in result.output
