from __future__ import annotations

from logging import WARNING
from math import pi, radians
from typing import TYPE_CHECKING

from pytest import approx, fixture, mark, param, raises

from bichromatic.constants import HBAR_C, PROTON_ELECTRON_MASS_RATIO, PROTON_MASS
from bichromatic.errors import ChannelClosedError, DomainError
from bichromatic.kinematics import (
    Beam,
    LaserField,
    critical_intensity,
    dressing_arguments,
    dressing_arguments_for,
    dressing_arguments_simplified,
    final_momentum,
    initial_momentum,
    intensity_to_a0,
    kinematics_for,
    momentum_transfer,
    momentum_transfer_approx,
    photon_energy,
    proton_intensity_parameter,
)

if TYPE_CHECKING:
    from pytest import LogCaptureFixture


@fixture
def beam() -> Beam:
    return Beam()


@fixture
def laser() -> LaserField:
    return LaserField()


class TestLaserField:
    def test_photon_energy(self, *, laser: LaserField) -> None:
        assert photon_energy(0.8) == approx(1.5498, rel=1e-4)
        assert laser.photon_energy == photon_energy(0.8)

    def test_intensity_parameters(self) -> None:
        assert intensity_to_a0(2.13e18, 0.8) == approx(1.0, rel=1e-2)
        laser = LaserField(intensity_1=1e12, intensity_m=1e12, m=2)
        assert laser.a0_harmonic == approx(laser.a0 / 2.0)
        assert laser.proton_parameter == approx(laser.a0 / 1836.0)
        assert proton_intensity_parameter(1836.0) == approx(1.0, rel=1e-3)

    def test_critical_intensity(self) -> None:
        assert critical_intensity(0.8) == approx(2.13e18, rel=1e-2)
        proton = critical_intensity(0.8, mass_ratio=PROTON_ELECTRON_MASS_RATIO)
        assert proton == approx(3.91e21, rel=1e-2)

    def test_monochromatic(self) -> None:
        assert LaserField(intensity_m=0.0).monochromatic
        assert not LaserField().monochromatic

    def test_warning(self, *, caplog: LogCaptureFixture) -> None:
        with caplog.at_level(WARNING, logger="bichromatic"):
            _ = LaserField(intensity_1=1e23)
        assert "dipole treatment is doubtful" in caplog.text

    def test_no_warning(self, *, caplog: LogCaptureFixture) -> None:
        with caplog.at_level(WARNING, logger="bichromatic"):
            _ = LaserField(intensity_1=1e14)
        assert caplog.text == ""

    @mark.parametrize(
        ("kwargs", "match"),
        [
            param({"wavelength": 0.0}, "wavelength"),
            param({"intensity_1": -1.0}, "intensity_1"),
            param({"intensity_m": float("nan")}, "intensity_m"),
            param({"m": 1}, "harmonic order"),
            param({"phase": float("inf")}, "phase"),
        ],
    )
    def test_error(self, *, kwargs: dict[str, float], match: str) -> None:
        with raises(DomainError, match=match):
            _ = LaserField(**kwargs)


class TestBeam:
    def test_initial_momentum(self, *, beam: Beam) -> None:
        assert beam.p_i == approx((2.0 * PROTON_MASS * 49.0) ** 0.5)
        assert initial_momentum(beam) == beam.p_i

    @mark.parametrize(
        ("kwargs", "match"),
        [
            param({"kinetic_energy": 0.0}, "kinetic_energy"),
            param({"projectile_mass": -1.0}, "projectile_mass"),
            param({"target_mass_number": 0.5}, "target_mass_number"),
        ],
    )
    def test_error(self, *, kwargs: dict[str, float], match: str) -> None:
        with raises(DomainError, match=match):
            _ = Beam(**kwargs)


class TestFinalMomentum:
    def test_elastic(self, *, beam: Beam) -> None:
        assert final_momentum(beam.p_i, 0, 1.5498, PROTON_MASS) == beam.p_i

    def test_single_photon(self, *, beam: Beam, laser: LaserField) -> None:
        p_f = final_momentum(beam.p_i, 1, laser.photon_energy, PROTON_MASS)
        assert 1.0 - p_f / beam.p_i == approx(1.5815e-8, rel=1e-3)

    @mark.parametrize("n", [param(-3), param(-1), param(1), param(4)])
    def test_energy_conservation(self, *, beam: Beam, laser: LaserField, n: int) -> None:
        p_f = final_momentum(beam.p_i, n, laser.photon_energy, PROTON_MASS)
        kinetic = p_f**2 / (2.0 * PROTON_MASS)
        expected = beam.kinetic_energy - n * laser.photon_energy * 1e-6
        assert abs(kinetic - expected) <= 1e-12 * beam.kinetic_energy

    def test_absorption_raises_momentum(self, *, beam: Beam) -> None:
        assert final_momentum(beam.p_i, -1, 1.5498, PROTON_MASS) > beam.p_i

    def test_error_closed(self, *, beam: Beam, laser: LaserField) -> None:
        with raises(ChannelClosedError, match=r"Channel n=1000000000 is closed"):
            _ = final_momentum(beam.p_i, 10**9, laser.photon_energy, PROTON_MASS)

    def test_error_momentum(self) -> None:
        with raises(DomainError, match="p_i"):
            _ = final_momentum(0.0, 1, 1.5498, PROTON_MASS)


class TestMomentumTransfer:
    def test_forward(self, *, beam: Beam) -> None:
        assert momentum_transfer(beam.p_i, beam.p_i, 0.0) == 0.0

    def test_backward(self, *, beam: Beam) -> None:
        assert momentum_transfer(beam.p_i, beam.p_i, pi) == approx(2.0 * beam.p_i / HBAR_C)

    def test_approx(self, *, beam: Beam, laser: LaserField) -> None:
        for theta in map(radians, range(1, 180, 2)):
            approximate = momentum_transfer_approx(beam.p_i, theta)
            for n in range(-10, 11):
                kin = kinematics_for(beam, laser, theta, n)
                assert kin.q == approx(approximate, rel=1e-5)

    def test_inelastic_forward(self, *, beam: Beam, laser: LaserField) -> None:
        kin = kinematics_for(beam, laser, 0.0, 2)
        assert kin.q == approx((kin.p_i - kin.p_f) / HBAR_C)
        assert kin.q > 0.0
        assert kin.flux_ratio < 1.0

    @mark.parametrize("theta", [param(-0.1), param(4.0), param(float("nan"))])
    def test_error(self, *, beam: Beam, laser: LaserField, theta: float) -> None:
        with raises(DomainError, match="theta out of domain"):
            _ = kinematics_for(beam, laser, theta, 0)


class TestDressingArguments:
    def test_forward(self, *, beam: Beam, laser: LaserField) -> None:
        assert dressing_arguments(laser, beam, 0.0) == (0.0, 0.0)
        assert dressing_arguments_simplified(laser, 0.0) == (0.0, 0.0)

    def test_simplified(self, *, laser: LaserField) -> None:
        a, b = dressing_arguments_simplified(laser, radians(7.0))
        assert a == approx(0.74538, rel=1e-4)
        assert b == approx(a * (0.5**0.5) / 2.0)

    def test_exact_against_simplified(self, *, beam: Beam, laser: LaserField) -> None:
        exact, _ = dressing_arguments(laser, beam, radians(7.0))
        simplified, _ = dressing_arguments_simplified(laser, radians(7.0))
        assert exact / simplified == approx(0.729, rel=1e-2)

    def test_exact_harmonic_scaling(self, *, beam: Beam) -> None:
        second = LaserField(intensity_m=1e12, m=2)
        third = LaserField(intensity_m=1e12, m=3)
        _, b_2 = dressing_arguments(second, beam, radians(20.0))
        _, b_3 = dressing_arguments(third, beam, radians(20.0))
        assert b_3 / b_2 == approx(4.0 / 9.0, rel=1e-12)

    def test_intensity_scaling(self, *, beam: Beam) -> None:
        weak = LaserField(intensity_1=1e12)
        strong = LaserField(intensity_1=4e12)
        for theta in [radians(5.0), radians(90.0)]:
            assert dressing_arguments(strong, beam, theta)[0] == approx(
                2.0 * dressing_arguments(weak, beam, theta)[0]
            )
            assert dressing_arguments_simplified(strong, theta)[0] == approx(
                2.0 * dressing_arguments_simplified(weak, theta)[0]
            )

    def test_increasing_in_angle(self, *, laser: LaserField) -> None:
        values = [dressing_arguments_simplified(laser, radians(t))[0] for t in range(0, 181, 10)]
        assert values == sorted(values)

    def test_dispatch(self, *, beam: Beam) -> None:
        exact = LaserField(argument_formula="exact")
        simplified = LaserField(argument_formula="simplified")
        theta = radians(12.0)
        assert dressing_arguments_for(exact, beam, theta) == dressing_arguments(
            exact, beam, theta
        )
        assert dressing_arguments_for(
            simplified, beam, theta
        ) == dressing_arguments_simplified(simplified, theta)
