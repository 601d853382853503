import pytest

from cubic_orbits.exceptions import FieldTooSmall, GuardrailExceeded, InvalidRunConfig, NotPrimePower
from cubic_orbits.models.reports import FAIL, PASS, CheckResult, RunConfig, VerifyReport
from cubic_orbits.services.verification_service import VerificationService


def test_run_config_defaults():
    config = RunConfig(q=7, command="census")
    assert config.workers == 1
    assert config.output_format == "text"
    assert config.guardrail(64) == 64


@pytest.mark.parametrize(
    "kwargs, error",
    [
        ({"q": 6}, NotPrimePower),
        ({"q": 3}, FieldTooSmall),
        ({"q": 7, "workers": 0}, InvalidRunConfig),
        ({"q": 7, "output_format": "xml"}, InvalidRunConfig),
    ],
)
def test_run_config_rejects(kwargs, error):
    with pytest.raises(error):
        RunConfig(command="census", **kwargs)


def test_run_config_guardrail():
    config = RunConfig(q=9, command="census", max_q=8)
    assert config.guardrail(64) == 8
    with pytest.raises(GuardrailExceeded) as err:
        config.check_guardrail(64, "census")
    assert err.value.exit_code == 3
    RunConfig(q=9, command="census").check_guardrail(64, "census")


def test_report_fails_on_any_failed_check():
    report = VerifyReport(q=5)
    report.checks.append(CheckResult("class-size", "", 1, 1, PASS))
    assert report.passed
    report.checks.append(CheckResult("engline-census", "", 1, 2, FAIL))
    assert not report.passed
    assert report.summary() == {"fail": 1, "pass": 1}


def test_every_check_has_theorem_ids():
    for check_id in VerificationService.CHECKS:
        assert VerificationService.THEOREMS[check_id]


@pytest.mark.parametrize(
    "only, expected",
    [
        (["6.5"], ["char3-orbit-count", "char3-triples"]),
        (["2.2"], ["class-size", "null-polarity"]),
        (["2.2(ii)"], ["class-size", "null-polarity"]),
        (["char3-p"], ["char3-pairs"]),
        (["3.5", "6.6"], ["lambda-stabilizer", "char3-triple-formula"]),
        (["6"], []),
    ],
)
def test_selected_checks(only, expected):
    assert VerificationService(9, workers=1, only=only).selected_checks() == expected
