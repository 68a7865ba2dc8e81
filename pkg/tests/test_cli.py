import json

import pytest
from click.testing import CliRunner

from cli import cli
from config import settings
from schemas.verification import IdentityResult, IdentityStatus, VerificationReport
from services import runs

KNIGHT = "(2,-1);(-1,2)"
SQUARE = "(0,1);(1,0);(0,-1);(-1,0)"


@pytest.fixture
def runner():
    return CliRunner(mix_stderr=False)


def test_enumerate_kreweras_origin(runner):
    result = runner.invoke(cli, ["enumerate", "--model", "kreweras", "--max-len", "9", "--aggregate", "origin"])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["values"] == ["1", "0", "0", "2", "0", "0", "16", "0", "0", "192"]


def test_enumerate_raw_steps(runner):
    result = runner.invoke(cli, ["enumerate", "--steps", KNIGHT, "--start", "1,1", "--max-len", "5"])
    assert result.exit_code == 0
    data = json.loads(result.stdout)
    assert data["start"] == [1, 1]
    assert data["entries"][0] == {"n": 0, "i": 1, "j": 1, "count": "1"}


def test_enumerate_csv(runner):
    result = runner.invoke(cli, ["enumerate", "--model", "square", "--max-len", "1", "--format", "csv"])
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["n,i,j,count", "0,0,0,1", "1,0,1,1", "1,1,0,1"]


@pytest.mark.parametrize(
    "args",
    [
        ["enumerate", "--steps", SQUARE, "--start", "-1,0", "--max-len", "3"],
        ["enumerate", "--model", "square", "--steps", SQUARE],
        ["enumerate"],
        ["enumerate", "--model", "hexagonal"],
        ["enumerate", "--steps", "(1,0);(1,0)"],
        ["verify", "square", "--order", "-1"],
        ["criterion", "--model", "square", "--format", "csv"],
    ],
)
def test_bad_input_exits_with_2(runner, args):
    assert runner.invoke(cli, args).exit_code == 2


def test_verify_order_zero(runner):
    result = runner.invoke(cli, ["verify", "square", "--order", "0"])
    assert result.exit_code == 0
    report = VerificationReport.parse_raw(result.stdout)
    assert report.passed and report.order == 0


def test_verify_kreweras(runner):
    result = runner.invoke(cli, ["verify", "kreweras", "--order", "16", "--format", "text"])
    assert result.exit_code == 0
    assert result.stdout.rstrip().endswith("kreweras: all checks passed")


def test_verify_failure_exits_with_1(runner, monkeypatch):
    failed = VerificationReport(
        model="square", order=2, results=[IdentityResult(name="broken", status=IdentityStatus.FAILED)],
    )
    monkeypatch.setattr(runs.VerificationService, "run", lambda self: failed)
    result = runner.invoke(cli, ["verify", "square", "--order", "2"])
    assert result.exit_code == 1


def test_series_x(runner):
    result = runner.invoke(cli, ["series", "--model", "kreweras", "--what", "X", "--order", "10", "--format", "text"])
    assert result.exit_code == 0
    assert result.stdout.strip() == "X = 2*t + 8*t^4 + 96*t^7 + 1536*t^10 + O(t^11)"


def test_series_x_needs_kreweras(runner):
    result = runner.invoke(cli, ["series", "--model", "square", "--what", "X"])
    assert result.exit_code == 2


def test_orbit_output(runner):
    result = runner.invoke(cli, ["series", "--model", "kreweras", "--what", "orbit"])
    assert result.exit_code == 0
    assert len(json.loads(result.stdout)["orbit"]) == 6


@pytest.mark.parametrize(
    "args, expected",
    [
        (["--steps", SQUARE], True),
        (["--model", "diagonal"], True),
        (["--model", "kreweras"], False),
        (["--model", "knight"], False),
    ],
)
def test_criterion(runner, args, expected):
    result = runner.invoke(cli, ["criterion", *args])
    assert result.exit_code == 0
    assert json.loads(result.stdout)["holonomy_sufficient"] is expected


def test_asymptotics_structural_zero_csv(runner):
    result = runner.invoke(
        cli, ["asymptotics", "--model", "knight", "--aggregate", "endpoint(3,3)", "--max-n", "22", "--format", "csv"],
    )
    assert result.exit_code == 0
    assert result.stdout.splitlines() == ["n", "4"]


def test_asymptotics_csv_columns(runner):
    result = runner.invoke(cli, ["asymptotics", "--model", "square", "--max-n", "400", "--format", "csv"])
    assert result.exit_code == 0
    lines = result.stdout.splitlines()
    assert lines[0] == "n,a_n,mu_n,alpha_n"
    assert len(lines) > 1


def test_output_goes_to_the_output_directory(runner, tmp_path, monkeypatch):
    monkeypatch.setattr(settings, "OUTPUT_DIR", str(tmp_path))
    result = runner.invoke(cli, ["criterion", "--model", "square", "--output", "criterion.json"])
    assert result.exit_code == 0
    assert result.stdout == ""
    assert json.loads((tmp_path / "criterion.json").read_text())["y_symmetric"] is True
