"""Suites de aceptación con tamaños reducidos; los barridos completos van marcados slow."""

from fractions import Fraction

import pytest

from app.core.errors import VerificationFailed
from app.models.process import ProcessModel
from app.services import verification
from app.services.verification import SUITES, SuiteReport, VerifyOptions, run_suite

SMALL = {
    "lattice": 5,
    "mobius": 4,
    "vanishing": 4,
    "oracle": 3,
    "ito": 3,
    "orthogonality": 3,
    "ks-consistency": 6,
    "chebyshev": 10,
    "poisson-charlier": 6,
    "compound": 5,
    "transforms": 6,
}


def test_every_suite_has_a_small_size():
    assert set(SMALL) == set(SUITES)


@pytest.mark.parametrize("name", sorted(SMALL))
def test_suite_passes_small(name):
    opts = VerifyOptions(max_n=SMALL[name], times=(Fraction(1),))
    [report] = run_suite(name, opts)
    assert report.passed
    assert report.checks > 0


def test_orthogonality_with_user_process_is_centered():
    opts = VerifyOptions(max_n=3, processes=[ProcessModel.free_poisson(1)])
    [report] = run_suite("orthogonality", opts)
    assert report.passed
    assert list(report.details) == ["free-poisson,t=1,centered"]


def test_vanishing_reports_example():
    [report] = run_suite("vanishing", VerifyOptions(max_n=2))
    assert report.details["example"] == {"-1": "2", "-2": "-1", "-3": "-1"}


def test_unknown_suite():
    with pytest.raises(ValueError):
        run_suite("nope")


def test_failing_suite_raises(monkeypatch):
    def broken(opts):
        report = SuiteReport("broken")
        report.check(False, "siempre falla")
        return report

    monkeypatch.setitem(verification.SUITES, "broken", broken)
    with pytest.raises(VerificationFailed) as info:
        run_suite("broken")
    assert info.value.failures == ["broken: siempre falla"]


@pytest.mark.slow
def test_all_suites_default_sizes():
    reports = run_suite("all")
    assert [r.suite for r in reports] == list(SUITES)
    assert all(r.passed for r in reports)
