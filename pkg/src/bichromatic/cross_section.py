from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from functools import cache
from math import inf, isfinite, pi, radians, sin
from typing import TYPE_CHECKING, Any, assert_never

from bichromatic.constants import HBAR_C, KAPPA, MB_PER_FM2, REFERENCE_TOTAL_MB
from bichromatic.errors import DomainError
from bichromatic.kinematics import (
    Beam,
    dressing_arguments_for,
    initial_momentum,
    kinematics_for,
    momentum_transfer,
)
from bichromatic.logging import LOGGER
from bichromatic.potential import OpticalPotentialParams, total_potential_q
from bichromatic.special_functions import (
    GeneralizedBesselParams,
    adaptive_quad,
    bessel_j,
    dressing_spectrum_adaptive,
    generalized_bessel,
)

if TYPE_CHECKING:
    from collections.abc import Callable, Iterable, Sequence

    from bichromatic.kinematics import LaserField
    from bichromatic.types import RadiusConvention, StrDict


DEFAULT_THETA_MIN = radians(1.0)
TOTAL_EPSABS = 1e-3


@dataclass(frozen=True, kw_only=True, slots=True)
class CrossSectionTable:
    """Angle grid (radians) with Born and per-order dressed cross sections in mb/sr."""

    angles: list[float]
    q_values: list[float]
    born: list[float]
    dressed: dict[int, list[float]] = field(default_factory=dict)
    ratios: dict[int, list[float]] = field(default_factory=dict)
    metadata: StrDict = field(default_factory=dict)

    @property
    def orders(self) -> list[int]:
        return sorted(self.dressed)


@dataclass(frozen=True, kw_only=True, slots=True)
class InelasticTable:
    angles: list[float]
    a: list[float]
    b: list[float]
    bichromatic: list[float]
    monochromatic: list[float]
    metadata: StrDict = field(default_factory=dict)


@dataclass(frozen=True, kw_only=True, slots=True)
class PhaseScan:
    """|C_n| over a phase grid, one series per photon order."""

    theta: float
    phases: list[float]
    magnitudes: dict[int, list[float]]
    metadata: StrDict = field(default_factory=dict)

    def modulation_depth(self, n: int, /) -> float:
        series = self.magnitudes[n]
        return max(series) - min(series)


@dataclass(frozen=True, kw_only=True, slots=True)
class RatioScan:
    """|C_n| over a phase grid, one series per intensity ratio I / I_m."""

    theta: float
    n: int
    phases: list[float]
    magnitudes: dict[float, list[float]]
    metadata: StrDict = field(default_factory=dict)

    def modulation_depth(self, ratio: float, /) -> float:
        series = self.magnitudes[ratio]
        return max(series) - min(series)


##


def born_prefactor(projectile_mass: float, /) -> float:
    """(m c^2 / (2 pi (hbar c)^2))^2 in fm^-4 MeV^-2."""
    return (projectile_mass / (2.0 * pi * HBAR_C**2)) ** 2


def born_scale(params: OpticalPotentialParams, /) -> float:
    """Factor on the standard prefactor selected by `params.born_normalization`."""
    match params.born_normalization:
        case "standard":
            return 1.0
        case "calibrated":
            return _calibration(params.radius_convention)
        case never:
            assert_never(never)


@cache
def _calibration(radius_convention: RadiusConvention, /) -> float:
    """Maps the nuclear total of 49 MeV p + 12C above 1 deg onto 201 mb."""
    reference = OpticalPotentialParams(
        radius_convention=radius_convention, born_normalization="standard"
    )
    total = total_cross_section(Beam(), reference)
    scale = REFERENCE_TOTAL_MB / total
    LOGGER.info(
        "Born prefactor for %s radii calibrated by %.6g (standard total %.6g mb)",
        radius_convention,
        scale,
        total,
    )
    return scale


def born_dcs_at_q(
    q: float,
    beam: Beam,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = False,
) -> float:
    potential = total_potential_q(q, params, include_coulomb=include_coulomb)
    amplitude = abs(potential.total / KAPPA)
    prefactor = born_prefactor(beam.projectile_mass) * born_scale(params)
    return MB_PER_FM2 * prefactor * amplitude**2


def born_dcs(
    theta: float,
    beam: Beam,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = False,
) -> float:
    """First Born elastic cross section in mb/sr."""
    _check_angle(theta)
    p_i = initial_momentum(beam)
    q = momentum_transfer(p_i, p_i, theta)
    return born_dcs_at_q(q, beam, params, include_coulomb=include_coulomb)


def dressing_probability(n: int, a: float, b: float, laser: LaserField, /) -> float:
    if laser.monochromatic:
        return bessel_j(n, a) ** 2
    bessel = GeneralizedBesselParams(a=a, b=b, m=laser.m, phase=laser.phase)
    return abs(generalized_bessel(n, bessel)) ** 2


def dressed_dcs(
    theta: float,
    n: int,
    beam: Beam,
    laser: LaserField,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = False,
) -> float:
    """(p_f / p_i) dsigma_B(q_n) |C_n(a, b_m; phase)|^2 in mb/sr."""
    _check_angle(theta)
    kin = kinematics_for(beam, laser, theta, n)
    born = born_dcs_at_q(kin.q, beam, params, include_coulomb=include_coulomb)
    a, b = dressing_arguments_for(laser, beam, theta)
    return kin.flux_ratio * born * dressing_probability(n, a, b, laser)


def inelastic_fraction(theta: float, beam: Beam, laser: LaserField, /) -> float:
    """Probability 1 - |C_0|^2 that the collision exchanges photons at all."""
    a, b = dressing_arguments_for(laser, beam, theta)
    return _clip_unit(1.0 - dressing_probability(0, a, b, laser))


def monochromatic_inelastic_fraction(
    theta: float, beam: Beam, laser: LaserField, /
) -> float:
    return inelastic_fraction(theta, beam, replace(laser, intensity_m=0.0))


def closure_residual(
    theta: float,
    beam: Beam,
    laser: LaserField,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = False,
) -> float:
    """Relative gap between the Born cross section and the flux-corrected sum of dressed ones."""
    a, b = dressing_arguments_for(laser, beam, theta)
    spectrum = dressing_spectrum_adaptive(
        GeneralizedBesselParams(a=a, b=b, m=laser.m, phase=laser.phase)
    )
    born = born_dcs(theta, beam, params, include_coulomb=include_coulomb)
    total = math.fsum(
        born_dcs_at_q(
            kinematics_for(beam, laser, theta, n).q,
            beam,
            params,
            include_coulomb=include_coulomb,
        )
        * probability
        for n, probability in spectrum.probabilities().items()
    )
    return abs(total - born) / born


##


def total_cross_section(
    beam: Beam,
    params: OpticalPotentialParams,
    /,
    *,
    theta_min: float = DEFAULT_THETA_MIN,
    include_coulomb: bool = False,
) -> float:
    """2 pi int_theta_min^pi dsigma_B sin(theta) dtheta in mb."""
    if not (isfinite(theta_min) and (0.0 < theta_min < pi)):
        raise DomainError(
            name="theta_min", value=theta_min, reason="must lie strictly within (0, pi)"
        )
    integral = adaptive_quad(
        lambda theta: born_dcs(theta, beam, params, include_coulomb=include_coulomb)
        * sin(theta),
        theta_min,
        pi,
        quantity="total elastic cross section",
        strict=True,
        epsabs=TOTAL_EPSABS / (2.0 * pi),
        epsrel=1e-8,
        limit=200,
    )
    return 2.0 * pi * integral


##


def born_table(
    angles: Sequence[float],
    beam: Beam,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = False,
    max_workers: int | None = None,
) -> CrossSectionTable:
    for theta in angles:
        _check_angle(theta)
    metadata = _born_metadata(beam, params)
    p_i = initial_momentum(beam)
    q_values = [momentum_transfer(p_i, p_i, theta) for theta in angles]
    born = map_ordered(
        lambda q: born_dcs_at_q(q, beam, params, include_coulomb=include_coulomb),
        q_values,
        max_workers=max_workers,
    )
    return CrossSectionTable(
        angles=list(angles),
        q_values=q_values,
        born=born,
        metadata=metadata,
    )


def dressed_table(
    angles: Sequence[float],
    orders: Iterable[int],
    beam: Beam,
    laser: LaserField,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = False,
    max_workers: int | None = None,
) -> CrossSectionTable:
    base = born_table(
        angles, beam, params, include_coulomb=include_coulomb, max_workers=max_workers
    )
    arguments = [dressing_arguments_for(laser, beam, theta) for theta in angles]
    dressed: dict[int, list[float]] = {}
    ratios: dict[int, list[float]] = {}
    for n in orders:
        ratios[n] = map_ordered(
            lambda ab, n=n: dressing_probability(n, *ab, laser),
            arguments,
            max_workers=max_workers,
        )
        dressed[n] = map_ordered(
            lambda theta, n=n: dressed_dcs(
                theta, n, beam, laser, params, include_coulomb=include_coulomb
            ),
            angles,
            max_workers=max_workers,
        )
    LOGGER.debug("Dressed table over %d angles and orders %s", len(angles), sorted(dressed))
    return replace(base, dressed=dressed, ratios=ratios)


def inelastic_table(
    angles: Sequence[float],
    beam: Beam,
    laser: LaserField,
    /,
    *,
    max_workers: int | None = None,
) -> InelasticTable:
    arguments = [dressing_arguments_for(laser, beam, theta) for theta in angles]
    return InelasticTable(
        angles=list(angles),
        a=[a for a, _ in arguments],
        b=[b for _, b in arguments],
        bichromatic=map_ordered(
            lambda theta: inelastic_fraction(theta, beam, laser),
            angles,
            max_workers=max_workers,
        ),
        monochromatic=map_ordered(
            lambda theta: monochromatic_inelastic_fraction(theta, beam, laser),
            angles,
            max_workers=max_workers,
        ),
    )


def phase_scan(
    theta: float,
    orders: Iterable[int],
    laser: LaserField,
    beam: Beam,
    phases: Sequence[float],
    /,
    *,
    max_workers: int | None = None,
) -> PhaseScan:
    _check_phases(phases)
    a, b = dressing_arguments_for(laser, beam, theta)
    magnitudes = {
        n: map_ordered(
            lambda phase, n=n: abs(
                generalized_bessel(
                    n, GeneralizedBesselParams(a=a, b=b, m=laser.m, phase=phase)
                )
            ),
            phases,
            max_workers=max_workers,
        )
        for n in orders
    }
    return PhaseScan(
        theta=theta,
        phases=list(phases),
        magnitudes=magnitudes,
        metadata={"a": a, "b": b},
    )


def ratio_scan(
    theta: float,
    n: int,
    laser: LaserField,
    beam: Beam,
    ratios: Iterable[float],
    phases: Sequence[float],
    /,
    *,
    max_workers: int | None = None,
) -> RatioScan:
    """Scan |C_n| over the phase for each I / I_m, holding the fundamental fixed."""
    magnitudes: dict[float, list[float]] = {}
    arguments: dict[str, Any] = {}
    for ratio in ratios:
        scan = phase_scan(
            theta,
            [n],
            laser_at_ratio(laser, ratio),
            beam,
            phases,
            max_workers=max_workers,
        )
        magnitudes[ratio] = scan.magnitudes[n]
        arguments[f"{ratio:g}"] = scan.metadata
        LOGGER.debug(
            "Modulation depth of |C_%d| at I/I_m=%g: %.6g",
            n,
            ratio,
            scan.modulation_depth(n),
        )
    return RatioScan(
        theta=theta,
        n=n,
        phases=list(phases),
        magnitudes=magnitudes,
        metadata={"arguments": arguments},
    )


##


def laser_at_ratio(laser: LaserField, ratio: float, /) -> LaserField:
    """`laser` with its harmonic set to I / ratio; an infinite ratio removes it."""
    if not (ratio > 0.0):
        raise DomainError(name="ratio", value=ratio, reason="must be positive")
    intensity_m = 0.0 if ratio == inf else laser.intensity_1 / ratio
    return replace(laser, intensity_m=intensity_m)


##


def map_ordered[T, U](
    func: Callable[[T], U], items: Iterable[T], /, *, max_workers: int | None = None
) -> list[U]:
    """Map over a thread pool, keeping the input order."""
    items = list(items)
    if (max_workers == 1) or (len(items) <= 1):
        return list(map(func, items))
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(func, items))


def _born_metadata(beam: Beam, params: OpticalPotentialParams, /) -> StrDict:
    return {
        "kappa": KAPPA,
        "born_prefactor_fm4_per_mev2": born_prefactor(beam.projectile_mass),
        "born_normalization": params.born_normalization,
        "born_scale": born_scale(params),
        "units": {"angle": "rad", "q": "fm^-1", "dcs": "mb/sr"},
    }


def _check_angle(theta: float, /) -> None:
    if not (isfinite(theta) and (0.0 < theta <= pi)):
        raise DomainError(name="theta", value=theta, reason="must lie in (0, pi]")


def _check_phases(phases: Sequence[float], /) -> None:
    for phase in phases:
        if not (isfinite(phase) and (0.0 <= phase <= 2.0 * pi)):
            raise DomainError(name="phase", value=phase, reason="must lie in [0, 2 pi]")


def _clip_unit(x: float, /) -> float:
    return min(max(x, 0.0), 1.0)


__all__ = [
    "DEFAULT_THETA_MIN",
    "CrossSectionTable",
    "InelasticTable",
    "PhaseScan",
    "RatioScan",
    "born_dcs",
    "born_dcs_at_q",
    "born_prefactor",
    "born_scale",
    "born_table",
    "closure_residual",
    "dressed_dcs",
    "dressed_table",
    "dressing_probability",
    "inelastic_fraction",
    "inelastic_table",
    "laser_at_ratio",
    "map_ordered",
    "monochromatic_inelastic_fraction",
    "phase_scan",
    "ratio_scan",
    "total_cross_section",
]
