from __future__ import annotations

from math import inf
from typing import TYPE_CHECKING

from pytest import mark, param
from rich.console import Console

from bichromatic.kinematics import Beam
from bichromatic.potential import OpticalPotentialParams
from bichromatic.validate import (
    Check,
    check_asymptotic,
    check_bessel_oracles,
    check_coulomb,
    check_coulomb_closed_form,
    check_generating_function,
    check_jacobi_anger,
    check_modulation_depth,
    check_single_photon_dominance,
    check_small_argument,
    check_sum_rule,
    check_symmetry,
    check_total,
    check_transforms,
    report,
    run_validation,
)

if TYPE_CHECKING:
    from collections.abc import Callable


class TestCheck:
    def test_passed(self) -> None:
        assert Check(name="x", value=1e-9, tolerance=1e-8).passed
        assert not Check(name="x", value=1e-7, tolerance=1e-8).passed


class TestChecks:
    @mark.parametrize(
        "check",
        [
            param(check_sum_rule),
            param(check_jacobi_anger),
            param(check_generating_function),
            param(check_bessel_oracles),
            param(check_asymptotic),
            param(check_small_argument),
        ],
    )
    def test_special_functions(self, *, check: Callable[[], Check]) -> None:
        result = check()
        assert result.passed, result

    @mark.parametrize("m", [param(2), param(3)])
    def test_symmetry(self, *, m: int) -> None:
        assert check_symmetry(m).passed

    def test_transforms(self) -> None:
        checks = check_transforms(OpticalPotentialParams())
        assert len(checks) == 4
        assert all(check.passed for check in checks), checks

    def test_coulomb(self) -> None:
        assert check_coulomb(OpticalPotentialParams()).passed

    def test_coulomb_closed_form(self) -> None:
        check = check_coulomb_closed_form(OpticalPotentialParams())
        assert check.informational
        assert check.passed
        assert check.detail.startswith("q=0.5: ")

    def test_total(self) -> None:
        check = check_total(Beam(), OpticalPotentialParams())
        assert check.passed, check
        assert "calibrated prefactor" in check.detail

    def test_total_standard_prefactor(self) -> None:
        params = OpticalPotentialParams(born_normalization="standard")
        assert not check_total(Beam(), params).passed

    def test_laser_checks(self) -> None:
        beam = Beam()
        assert check_single_photon_dominance(beam).passed
        assert check_modulation_depth(beam).passed


class TestRunValidation:
    def test_main(self) -> None:
        checks = run_validation()
        assert len(checks) == 18
        assert all(check.passed for check in checks), checks


class TestReport:
    def test_main(self) -> None:
        checks = [
            Check(name="good", value=0.0, tolerance=1.0),
            Check(name="bad", value=2.0, tolerance=1.0, detail="too large"),
        ]
        console = Console(record=True, width=200)
        console.print(report(checks))
        text = console.export_text()
        assert "PASS" in text
        assert "FAIL" in text
        assert "too large" in text

    def test_informational(self) -> None:
        checks = [
            Check(name="gap", value=0.3, tolerance=inf, detail="q=1: 0.3", informational=True)
        ]
        console = Console(record=True, width=200)
        console.print(report(checks))
        text = console.export_text()
        assert "INFO" in text
        assert "PASS" not in text
