import pytest

from core.exceptions import InputError
from models.catalog import ModelSpec, builtin_model
from models.stepset import parse_steps
from schemas.verification import IdentityStatus, VerificationReport
from services.verification import VerificationService, compare_counts


@pytest.mark.parametrize("model", ["kreweras", "square"])
def test_full_suite_passes(model):
    report = VerificationService(builtin_model(model), 16).run()
    assert report.passed
    assert report.order == 16
    statuses = {result.status for result in report.results}
    assert IdentityStatus.PASSED in statuses
    assert IdentityStatus.FAILED not in statuses


@pytest.mark.parametrize("model", ["diagonal", "knight"])
def test_suite_passes_without_kernel_identities(model):
    report = VerificationService(builtin_model(model), 12).run()
    assert report.passed
    names = [result.name for result in report.results]
    assert "functional equation" in names
    assert not any(name.startswith("R(x) + R(Y0)") for name in names)


def test_order_zero_is_trivial():
    report = VerificationService(builtin_model("square"), 0).run()
    assert report.passed
    assert report.order == 0


def test_raw_step_set():
    spec = ModelSpec.custom(parse_steps("(1,1);(-1,0);(0,-1);(1,-1)"), (0, 1))
    report = VerificationService(spec, 10).run()
    assert report.passed
    assert [result.name for result in report.results] == ["step-by-step functional equation"]


def test_symmetric_raw_step_set_gets_the_symmetric_equation():
    spec = ModelSpec.custom(parse_steps("(1,1);(-1,1);(0,-1);(1,-2);(-1,-2)"))
    report = VerificationService(spec, 8).run()
    assert report.passed
    assert "symmetric functional equation" in [result.name for result in report.results]


def test_negative_order():
    with pytest.raises(InputError):
        VerificationService(builtin_model("square"), -1)


def test_compare_counts_reports_first_mismatch():
    result = compare_counts("values", [("a", 1, 1), ("b", 2, 3), ("c", 4, 5)], 3)
    assert result.status == IdentityStatus.FAILED
    assert result.detail == "b: expected 2, got 3"
    assert compare_counts("values", [("a", 1, 1)]).status == IdentityStatus.PASSED


def test_report_round_trips_and_tracks_failures():
    report = VerificationService(builtin_model("diagonal"), 6).run()
    assert VerificationReport.parse_raw(report.json()) == report
    failed = report.results + [compare_counts("broken", [("x", 0, 1)])]
    assert not VerificationReport(model="diagonal", order=6, results=failed).passed
