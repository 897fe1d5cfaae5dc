from __future__ import annotations

from dataclasses import dataclass
from math import isfinite, pi, sin, sqrt
from typing import TYPE_CHECKING, assert_never

from bichromatic.constants import (
    A0_COEFFICIENT,
    DEFAULT_ENERGY,
    DEFAULT_HARMONIC,
    DEFAULT_INTENSITY,
    DEFAULT_TARGET_A,
    DEFAULT_WAVELENGTH,
    DEFAULT_Z_P,
    DEFAULT_Z_T,
    SIMPLIFIED_COEFFICIENT,
    HBAR_C,
    HC_EV_UM,
    MEV_PER_EV,
    PROTON_A_WARN,
    PROTON_ELECTRON_MASS_RATIO,
    PROTON_MASS,
)
from bichromatic.errors import ChannelClosedError, DomainError
from bichromatic.logging import LOGGER

if TYPE_CHECKING:
    from bichromatic.types import ArgumentFormula


@dataclass(frozen=True, kw_only=True, slots=True)
class LaserField:
    """Fundamental of `wavelength` plus its m-th harmonic, both polarized along p_i.

    Intensities in W/cm^2, wavelength in um, phase in radians.
    """

    wavelength: float = DEFAULT_WAVELENGTH
    intensity_1: float = DEFAULT_INTENSITY
    intensity_m: float = DEFAULT_INTENSITY / 2.0
    m: int = DEFAULT_HARMONIC
    phase: float = 0.0
    argument_formula: ArgumentFormula = "simplified"

    def __post_init__(self) -> None:
        if not (isfinite(self.wavelength) and (self.wavelength > 0.0)):
            raise DomainError(
                name="wavelength", value=self.wavelength, reason="must be positive"
            )
        for name in ["intensity_1", "intensity_m"]:
            value = getattr(self, name)
            if not (isfinite(value) and (value >= 0.0)):
                raise DomainError(name=name, value=value, reason="must be non-negative")
        if self.m < 2:
            raise DomainError(
                name="m", value=self.m, reason="harmonic order must be at least 2"
            )
        if not isfinite(self.phase):
            raise DomainError(name="phase", value=self.phase, reason="must be finite")
        if (a_p := self.proton_parameter) > PROTON_A_WARN:
            LOGGER.warning(
                "Proton intensity parameter %.3g exceeds %g; the dipole treatment is doubtful",
                a_p,
                PROTON_A_WARN,
            )

    @property
    def monochromatic(self) -> bool:
        return self.intensity_m == 0.0

    @property
    def photon_energy(self) -> float:
        return photon_energy(self.wavelength)

    @property
    def a0(self) -> float:
        return intensity_to_a0(self.intensity_1, self.wavelength)

    @property
    def a0_harmonic(self) -> float:
        return intensity_to_a0(self.intensity_m, self.wavelength / self.m)

    @property
    def proton_parameter(self) -> float:
        return proton_intensity_parameter(max(self.a0, self.a0_harmonic))


@dataclass(frozen=True, kw_only=True, slots=True)
class Beam:
    """Projectile of lab kinetic energy `kinetic_energy` (MeV) on a target at rest."""

    kinetic_energy: float = DEFAULT_ENERGY
    projectile_mass: float = PROTON_MASS
    target_mass_number: float = DEFAULT_TARGET_A
    z_p: float = DEFAULT_Z_P
    z_t: float = DEFAULT_Z_T

    def __post_init__(self) -> None:
        for name in ["kinetic_energy", "projectile_mass"]:
            value = getattr(self, name)
            if not (isfinite(value) and (value > 0.0)):
                raise DomainError(name=name, value=value, reason="must be positive")
        if not (
            isfinite(self.target_mass_number) and (self.target_mass_number >= 1.0)
        ):
            raise DomainError(
                name="target_mass_number",
                value=self.target_mass_number,
                reason="must be at least 1",
            )

    @property
    def p_i(self) -> float:
        return initial_momentum(self)


@dataclass(frozen=True, kw_only=True, slots=True)
class Kinematics:
    p_i: float
    p_f: float
    theta: float
    q: float
    n: int

    @property
    def flux_ratio(self) -> float:
        return self.p_f / self.p_i


##


def photon_energy(wavelength: float, /) -> float:
    """Photon energy in eV for a wavelength in um."""
    if not (isfinite(wavelength) and (wavelength > 0.0)):
        raise DomainError(name="wavelength", value=wavelength, reason="must be positive")
    return HC_EV_UM / wavelength


def intensity_to_a0(intensity: float, wavelength: float, /) -> float:
    """Electron intensity parameter a0 = 8.55e-10 sqrt(I) lambda."""
    if not (isfinite(intensity) and (intensity >= 0.0)):
        raise DomainError(name="intensity", value=intensity, reason="must be non-negative")
    return A0_COEFFICIENT * sqrt(intensity) * wavelength


def proton_intensity_parameter(a0: float, /) -> float:
    return a0 / PROTON_ELECTRON_MASS_RATIO


def critical_intensity(wavelength: float, /, *, mass_ratio: float = 1.0) -> float:
    """Intensity at which a0 / mass_ratio reaches the quoted unit threshold, in W/cm^2.

    The electron threshold is where a0 = 1. For protons the quoted threshold scales
    linearly with the mass ratio.
    """
    if not (isfinite(wavelength) and (wavelength > 0.0)):
        raise DomainError(name="wavelength", value=wavelength, reason="must be positive")
    return mass_ratio / (A0_COEFFICIENT * wavelength) ** 2


def initial_momentum(beam: Beam, /) -> float:
    """Non-relativistic p_i c = sqrt(2 m c^2 T) in MeV."""
    return sqrt(2.0 * beam.projectile_mass * beam.kinetic_energy)


def final_momentum(
    p_i: float, n: int, photon_energy: float, projectile_mass: float, /
) -> float:
    """p_f from p_f^2 = p_i^2 - 2 m c^2 n hbar omega; n > 0 is emission."""
    if not (isfinite(p_i) and (p_i > 0.0)):
        raise DomainError(name="p_i", value=p_i, reason="must be positive")
    if n == 0:
        return p_i
    p_f_squared = p_i**2 - 2.0 * projectile_mass * n * photon_energy * MEV_PER_EV
    if p_f_squared <= 0.0:
        raise ChannelClosedError(p_i=p_i, n=n, photon_energy=photon_energy)
    return sqrt(p_f_squared)


def momentum_transfer(p_i: float, p_f: float, theta: float, /) -> float:
    """|p_i - p_f| / hbar c in fm^-1."""
    if (p_i <= 0.0) or (p_f <= 0.0):
        raise DomainError(name="p", value=min(p_i, p_f), reason="must be positive")
    # law of cosines without the cancellation near theta = 0
    squared = (p_i - p_f) ** 2 + 4.0 * p_i * p_f * sin(theta / 2.0) ** 2
    return sqrt(squared) / HBAR_C


def momentum_transfer_approx(p_i: float, theta: float, /) -> float:
    return 2.0 * p_i * abs(sin(theta / 2.0)) / HBAR_C


def kinematics_for(beam: Beam, laser: LaserField, theta: float, n: int, /) -> Kinematics:
    _check_theta(theta)
    p_i = beam.p_i
    p_f = final_momentum(p_i, n, laser.photon_energy, beam.projectile_mass)
    return Kinematics(
        p_i=p_i, p_f=p_f, theta=theta, q=momentum_transfer(p_i, p_f, theta), n=n
    )


##


def dressing_arguments(
    laser: LaserField, beam: Beam, theta: float, /
) -> tuple[float, float]:
    """a and b_m from the proton intensity parameters, with both fields along p_i."""
    _check_theta(theta)
    longitudinal = beam.p_i * _one_minus_cos(theta)
    omega = laser.photon_energy * MEV_PER_EV
    a = proton_intensity_parameter(laser.a0) * longitudinal / omega
    b = proton_intensity_parameter(laser.a0_harmonic) * longitudinal / (laser.m * omega)
    return a, b


def dressing_arguments_simplified(laser: LaserField, theta: float, /) -> tuple[float, float]:
    """a = 1e-4 sqrt(I) (1 - cos theta) and b_m = 1e-4 sqrt(I_m) (1 - cos theta) / m."""
    _check_theta(theta)
    factor = SIMPLIFIED_COEFFICIENT * _one_minus_cos(theta)
    a = factor * sqrt(laser.intensity_1)
    b = factor * sqrt(laser.intensity_m) / laser.m
    return a, b


def dressing_arguments_for(
    laser: LaserField, beam: Beam, theta: float, /
) -> tuple[float, float]:
    match laser.argument_formula:
        case "exact":
            return dressing_arguments(laser, beam, theta)
        case "simplified":
            return dressing_arguments_simplified(laser, theta)
        case never:
            assert_never(never)


def _one_minus_cos(theta: float, /) -> float:
    return 2.0 * sin(theta / 2.0) ** 2


def _check_theta(theta: float, /) -> None:
    if not (isfinite(theta) and (0.0 <= theta <= pi)):
        raise DomainError(name="theta", value=theta, reason="must lie in [0, pi]")


__all__ = [
    "Beam",
    "Kinematics",
    "LaserField",
    "critical_intensity",
    "dressing_arguments",
    "dressing_arguments_for",
    "dressing_arguments_simplified",
    "final_momentum",
    "initial_momentum",
    "intensity_to_a0",
    "kinematics_for",
    "momentum_transfer",
    "momentum_transfer_approx",
    "photon_energy",
    "proton_intensity_parameter",
]
