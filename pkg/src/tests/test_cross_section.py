from __future__ import annotations

from dataclasses import replace
from itertools import pairwise
from math import inf, pi, radians
from typing import TYPE_CHECKING

import numpy as np
from hypothesis import given, settings
from hypothesis.strategies import floats, sampled_from
from pytest import approx, fixture, mark, param, raises
from scipy.special import jv

from bichromatic.cross_section import (
    born_dcs,
    born_dcs_at_q,
    born_scale,
    born_table,
    closure_residual,
    dressed_dcs,
    dressed_table,
    dressing_probability,
    inelastic_fraction,
    inelastic_table,
    laser_at_ratio,
    map_ordered,
    monochromatic_inelastic_fraction,
    phase_scan,
    ratio_scan,
    total_cross_section,
)
from bichromatic.errors import DomainError
from bichromatic.kinematics import (
    Beam,
    LaserField,
    dressing_arguments_for,
    kinematics_for,
)
from bichromatic.potential import OpticalPotentialParams
from bichromatic.special_functions import GeneralizedBesselParams, generalized_bessel

if TYPE_CHECKING:
    from bichromatic.types import RadiusConvention


@fixture
def beam() -> Beam:
    return Beam()


@fixture
def laser() -> LaserField:
    return LaserField()


@fixture
def params() -> OpticalPotentialParams:
    return OpticalPotentialParams()


def _phases(num: int = 37, /) -> list[float]:
    return list(np.linspace(0.0, 2.0 * pi, num=num))


def _zero_strengths(params: OpticalPotentialParams, /) -> OpticalPotentialParams:
    return replace(params, v_r=0.0, w_v=0.0, w_s=0.0, v_so=0.0, w_so=0.0)


class TestBornDcs:
    def test_quadratic_in_strengths(
        self, *, beam: Beam, params: OpticalPotentialParams
    ) -> None:
        doubled = replace(
            params, v_r=2.0 * params.v_r, w_s=2.0 * params.w_s, v_so=2.0 * params.v_so
        )
        theta = radians(25.0)
        assert born_dcs(theta, beam, doubled) == approx(
            4.0 * born_dcs(theta, beam, params), rel=1e-12
        )

    def test_vanishing_potential(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        assert born_dcs(radians(25.0), beam, _zero_strengths(params)) == 0.0

    def test_coulomb_switch(
        self, *, beam: Beam, params: OpticalPotentialParams
    ) -> None:
        theta = radians(2.0)
        nuclear = born_dcs(theta, beam, params)
        full = born_dcs(theta, beam, params, include_coulomb=True)
        assert full != nuclear

    @mark.parametrize("theta", [param(0.0), param(-0.1), param(3.5)])
    def test_error(self, *, beam: Beam, params: OpticalPotentialParams, theta: float) -> None:
        with raises(DomainError, match="theta out of domain"):
            _ = born_dcs(theta, beam, params)


class TestDressedDcs:
    def test_field_free_limit(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        dark = LaserField(intensity_1=0.0, intensity_m=0.0)
        for theta in [radians(3.0), radians(45.0), pi]:
            assert dressed_dcs(theta, 0, beam, dark, params) == born_dcs(theta, beam, params)
            assert dressed_dcs(theta, 1, beam, dark, params) == 0.0

    @mark.parametrize("n", [param(-2), param(0), param(1), param(3)])
    def test_factorization(
        self, *, beam: Beam, laser: LaserField, params: OpticalPotentialParams, n: int
    ) -> None:
        theta = radians(20.0)
        kin = kinematics_for(beam, laser, theta, n)
        a, b = dressing_arguments_for(laser, beam, theta)
        bessel = generalized_bessel(n, GeneralizedBesselParams(a=a, b=b, phase=0.0))
        expected = kin.flux_ratio * born_dcs_at_q(kin.q, beam, params) * abs(bessel) ** 2
        assert dressed_dcs(theta, n, beam, laser, params) == approx(expected, rel=1e-14)

    @mark.parametrize("n", [param(0), param(1), param(-2)])
    def test_monochromatic(self, *, n: int) -> None:
        laser = LaserField(intensity_m=0.0)
        assert dressing_probability(n, 0.9, 0.4, laser) == approx(
            jv(n, 0.9) ** 2, rel=1e-14
        )

    def test_reversed_order_symmetry(self) -> None:
        a, b, phase = 0.9, 0.5, 1.1
        forward = LaserField(phase=phase)
        shifted = LaserField(phase=phase - pi)
        for n in range(1, 5):
            assert dressing_probability(-n, a, b, forward) == approx(
                dressing_probability(n, a, b, shifted), rel=1e-12
            )

    def test_closure(
        self, *, beam: Beam, laser: LaserField, params: OpticalPotentialParams
    ) -> None:
        for theta in [radians(5.0), radians(40.0), radians(120.0)]:
            assert closure_residual(theta, beam, laser, params) < 1e-6


class TestInelasticFraction:
    def test_forward(self, *, beam: Beam, laser: LaserField) -> None:
        assert inelastic_fraction(0.0, beam, laser) == 0.0

    def test_forward_angles(self, *, beam: Beam, laser: LaserField) -> None:
        assert inelastic_fraction(radians(5.0), beam, laser) > 0.01

    def test_second_harmonic_matters(self, *, beam: Beam, laser: LaserField) -> None:
        theta = radians(30.0)
        assert inelastic_fraction(theta, beam, laser) != approx(
            monochromatic_inelastic_fraction(theta, beam, laser), rel=1e-6
        )

    @given(
        theta=floats(0.0, pi),
        intensity_1=floats(0.0, 1e13),
        intensity_m=floats(0.0, 1e13),
        m=sampled_from([2, 3]),
        phase=floats(0.0, 2.0 * pi),
    )
    @settings(max_examples=50, deadline=None)
    def test_probability(
        self, *, theta: float, intensity_1: float, intensity_m: float, m: int, phase: float
    ) -> None:
        laser = LaserField(
            intensity_1=intensity_1, intensity_m=intensity_m, m=m, phase=phase
        )
        assert 0.0 <= inelastic_fraction(theta, Beam(), laser) <= 1.0


class TestPhaseScan:
    def test_periodic(self, *, beam: Beam, laser: LaserField) -> None:
        scan = phase_scan(radians(7.0), [1, 2], laser, beam, _phases())
        for n in [1, 2]:
            assert scan.magnitudes[n][0] == approx(scan.magnitudes[n][-1], rel=1e-12)

    def test_single_photon_dominates(self, *, beam: Beam) -> None:
        laser = LaserField(intensity_1=1e12, intensity_m=1e12, m=2)
        scan = phase_scan(radians(7.0), [1, 2, 3], laser, beam, _phases(73))
        for c1, c2, c3 in zip(
            scan.magnitudes[1], scan.magnitudes[2], scan.magnitudes[3], strict=True
        ):
            assert c1 > max(c2, c3)

    def test_metadata(self, *, beam: Beam, laser: LaserField) -> None:
        scan = phase_scan(radians(7.0), [1], laser, beam, _phases(5))
        assert scan.metadata["a"] == approx(0.74538, rel=1e-4)
        assert scan.theta == radians(7.0)

    def test_third_harmonic_symmetry(self, *, beam: Beam) -> None:
        laser = LaserField(intensity_m=1e12, m=3)
        scan = phase_scan(radians(20.0), [-2, 2], laser, beam, _phases())
        assert scan.magnitudes[-2] == approx(scan.magnitudes[2], rel=1e-12)

    @mark.parametrize("phase", [param(-0.1), param(7.0)])
    def test_error(self, *, beam: Beam, laser: LaserField, phase: float) -> None:
        with raises(DomainError, match="phase out of domain"):
            _ = phase_scan(radians(7.0), [1], laser, beam, [0.0, phase])


class TestRatioScan:
    def test_modulation_falls_with_ratio(self, *, beam: Beam) -> None:
        laser = LaserField(intensity_1=1e12, intensity_m=1e12, m=2)
        ratios = [1.0, 2.0, 10.0]
        scan = ratio_scan(radians(7.0), 1, laser, beam, ratios, _phases(73))
        depths = [scan.modulation_depth(ratio) for ratio in ratios]
        assert all(later < earlier for earlier, later in pairwise(depths))

    def test_no_harmonic_is_flat(self, *, beam: Beam, laser: LaserField) -> None:
        scan = ratio_scan(radians(7.0), 1, laser, beam, [inf], _phases())
        assert scan.modulation_depth(inf) == 0.0

    def test_laser_at_ratio(self, *, laser: LaserField) -> None:
        assert laser_at_ratio(laser, 4.0).intensity_m == laser.intensity_1 / 4.0
        assert laser_at_ratio(laser, inf).monochromatic

    def test_error(self, *, beam: Beam, laser: LaserField) -> None:
        with raises(DomainError, match="ratio out of domain"):
            _ = ratio_scan(radians(7.0), 1, laser, beam, [0.0], _phases())


class TestTotalCrossSection:
    def test_vanishing_potential(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        assert total_cross_section(beam, _zero_strengths(params)) == 0.0

    def test_quadratic_in_depth(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        volume_only = replace(params, w_s=0.0, v_so=0.0)
        halved = replace(volume_only, v_r=volume_only.v_r / 2.0)
        assert total_cross_section(beam, halved) == approx(
            total_cross_section(beam, volume_only) / 4.0, rel=1e-4
        )

    def test_magnitude(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        assert 150.75 <= total_cross_section(beam, params) <= 251.25

    @mark.parametrize(
        ("radius_convention", "expected"),
        [param("absolute", 132.85), param("reduced", 1404.46)],
    )
    def test_standard_prefactor(
        self,
        *,
        beam: Beam,
        params: OpticalPotentialParams,
        radius_convention: RadiusConvention,
        expected: float,
    ) -> None:
        standard = replace(
            params, radius_convention=radius_convention, born_normalization="standard"
        )
        assert born_scale(standard) == 1.0
        assert total_cross_section(beam, standard) == approx(expected, rel=2e-2)

    @mark.parametrize("radius_convention", [param("absolute"), param("reduced")])
    def test_calibrated_prefactor(
        self,
        *,
        beam: Beam,
        params: OpticalPotentialParams,
        radius_convention: RadiusConvention,
    ) -> None:
        calibrated = replace(params, radius_convention=radius_convention)
        standard = replace(calibrated, born_normalization="standard")
        assert born_scale(calibrated) == approx(
            201.0 / total_cross_section(beam, standard), rel=1e-12
        )
        assert total_cross_section(beam, calibrated) == approx(201.0, rel=1e-5)

    def test_reduced_radii_are_larger(
        self, *, beam: Beam, params: OpticalPotentialParams
    ) -> None:
        standard = replace(params, born_normalization="standard")
        reduced = replace(standard, radius_convention="reduced")
        assert total_cross_section(beam, reduced) > total_cross_section(beam, standard)

    @mark.parametrize("theta_min", [param(0.0), param(pi)])
    def test_error(
        self, *, beam: Beam, params: OpticalPotentialParams, theta_min: float
    ) -> None:
        with raises(DomainError, match="theta_min out of domain"):
            _ = total_cross_section(beam, params, theta_min=theta_min)


class TestTables:
    def test_born_table(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        angles = [radians(t) for t in [5.0, 10.0, 15.0]]
        table = born_table(angles, beam, params)
        assert table.born == [born_dcs(theta, beam, params) for theta in angles]
        assert table.metadata["units"]["dcs"] == "mb/sr"

    def test_dressed_table(
        self, *, beam: Beam, laser: LaserField, params: OpticalPotentialParams
    ) -> None:
        angles = [radians(t) for t in [5.0, 10.0]]
        table = dressed_table(angles, [1, 2], beam, laser, params, max_workers=2)
        assert table.orders == [1, 2]
        for i, theta in enumerate(angles):
            assert table.dressed[2][i] == dressed_dcs(theta, 2, beam, laser, params)

    def test_dressed_table_factorizes(
        self, *, beam: Beam, laser: LaserField, params: OpticalPotentialParams
    ) -> None:
        angles = [radians(t) for t in [1.0, 7.0, 30.0, 90.0, 179.0]]
        table = dressed_table(angles, [-3, -1, 0, 2, 5], beam, laser, params)
        for n in table.orders:
            for i, theta in enumerate(angles):
                kin = kinematics_for(beam, laser, theta, n)
                born = born_dcs_at_q(kin.q, beam, params)
                assert table.dressed[n][i] == kin.flux_ratio * born * table.ratios[n][i]

    def test_inelastic_table(self, *, beam: Beam, laser: LaserField) -> None:
        angles = [radians(t) for t in [5.0, 30.0]]
        table = inelastic_table(angles, beam, laser)
        assert table.bichromatic[1] == inelastic_fraction(angles[1], beam, laser)
        assert table.a[0] < table.a[1]

    def test_error(self, *, beam: Beam, params: OpticalPotentialParams) -> None:
        with raises(DomainError, match="theta out of domain"):
            _ = born_table([radians(5.0), 0.0], beam, params)


class TestMapOrdered:
    @mark.parametrize("max_workers", [param(None), param(1), param(3)])
    def test_main(self, *, max_workers: int | None) -> None:
        items = list(range(20))
        assert map_ordered(lambda x: x**2, items, max_workers=max_workers) == [
            x**2 for x in items
        ]
