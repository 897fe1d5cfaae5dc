from __future__ import annotations

from dataclasses import dataclass
from math import cos, exp, expm1, isfinite, log, pi, sin, sqrt
from typing import TYPE_CHECKING, Literal, assert_never

import numpy as np
from numpy.polynomial import polynomial
from scipy.special import expit, spherical_jn

from bichromatic.constants import (
    DEFAULT_A_0,
    DEFAULT_A_S,
    DEFAULT_A_SO,
    DEFAULT_R_0,
    DEFAULT_R_C,
    DEFAULT_R_S,
    DEFAULT_R_SO,
    DEFAULT_TARGET_A,
    DEFAULT_V_R,
    DEFAULT_V_SO,
    DEFAULT_W_S,
    DEFAULT_W_SO,
    DEFAULT_W_V,
    DEFAULT_Z_P,
    DEFAULT_Z_T,
    E_SQUARED,
    KAPPA,
    Q_REFERENCE,
    Q_SERIES,
    Q_SERIES_FIT,
)
from bichromatic.errors import DomainError
from bichromatic.special_functions import adaptive_quad, cosine_integral, sine_integral

if TYPE_CHECKING:
    from collections.abc import Callable

    from bichromatic.types import BornNormalization, RadiusConvention


type Term = Literal["volume", "surface", "spin_orbit"]
_POLE_TOL = 1e-18
_POLE_CAP = 100_000
_TAIL_DIFFUSENESSES = 40.0


@dataclass(frozen=True, kw_only=True, slots=True)
class OpticalPotentialParams:
    """Woods-Saxon optical potential plus a uniformly charged sphere.

    Strengths in MeV, lengths in fm. The radius parameters are reduced radii
    (R = r A^(1/3)) or absolute radii according to `radius_convention`; the
    Coulomb radius is always reduced. `born_normalization` selects the prefactor
    the cross sections apply to these transforms.
    """

    v_r: float = DEFAULT_V_R
    w_v: float = DEFAULT_W_V
    w_s: float = DEFAULT_W_S
    v_so: float = DEFAULT_V_SO
    w_so: float = DEFAULT_W_SO
    a_0: float = DEFAULT_A_0
    a_s: float = DEFAULT_A_S
    a_so: float = DEFAULT_A_SO
    r_0v: float = DEFAULT_R_0
    r_s: float = DEFAULT_R_S
    r_so: float = DEFAULT_R_SO
    r_c: float = DEFAULT_R_C
    a_t: float = DEFAULT_TARGET_A
    z_p: float = DEFAULT_Z_P
    z_t: float = DEFAULT_Z_T
    radius_convention: RadiusConvention = "absolute"
    born_normalization: BornNormalization = "calibrated"

    def __post_init__(self) -> None:
        for name in ["v_r", "w_v", "w_s", "v_so", "w_so", "z_p", "z_t"]:
            if not isfinite(value := getattr(self, name)):
                raise DomainError(name=name, value=value, reason="must be finite")
        for name in ["a_0", "a_s", "a_so", "r_0v", "r_s", "r_so", "r_c"]:
            value = getattr(self, name)
            if not (isfinite(value) and (value > 0.0)):
                raise DomainError(name=name, value=value, reason="must be positive")
        if not (isfinite(self.a_t) and (self.a_t >= 1.0)):
            raise DomainError(name="a_t", value=self.a_t, reason="must be at least 1")

    def _radius(self, r: float, /) -> float:
        match self.radius_convention:
            case "reduced":
                return r * self.a_t ** (1.0 / 3.0)
            case "absolute":
                return r
            case never:
                assert_never(never)

    @property
    def radius_volume(self) -> float:
        return self._radius(self.r_0v)

    @property
    def radius_surface(self) -> float:
        return self._radius(self.r_s)

    @property
    def radius_spin_orbit(self) -> float:
        return self._radius(self.r_so)

    @property
    def radius_coulomb(self) -> float:
        return self.r_c * self.a_t ** (1.0 / 3.0)

    @property
    def charge_product(self) -> float:
        return self.z_p * self.z_t


@dataclass(frozen=True, kw_only=True, slots=True)
class MomentumSpacePotential:
    """Closed-form transforms at one momentum transfer, MeV fm^3 in the KAPPA convention."""

    q: float
    volume: complex
    surface: complex
    spin_orbit: complex
    coulomb: complex

    @property
    def total(self) -> complex:
        return self.volume + self.surface + self.spin_orbit + self.coulomb


##


def ws_shape(r: float, radius: float, a: float, /) -> float:
    """f(r) = 1 / (1 + exp((r - R) / a))."""
    _check_shape_arguments(r, a)
    return float(expit((radius - r) / a))


def ws_shape_derivative(r: float, radius: float, a: float, /) -> float:
    f = ws_shape(r, radius, a)
    return -f * (1.0 - f) / a


def ws_shape_g(r: float, radius: float, a: float, /) -> float:
    """f'(r) / r."""
    if r <= 0.0:
        raise DomainError(name="r", value=r, reason="f'(r)/r requires r > 0")
    return ws_shape_derivative(r, radius, a) / r


def _check_shape_arguments(r: float, a: float, /) -> None:
    if not (isfinite(r) and (r >= 0.0)):
        raise DomainError(name="r", value=r, reason="must be finite and non-negative")
    if not (isfinite(a) and (a > 0.0)):
        raise DomainError(name="a", value=a, reason="diffuseness must be positive")


##


def coulomb_r(r: float, params: OpticalPotentialParams, /) -> float:
    if not (isfinite(r) and (r >= 0.0)):
        raise DomainError(name="r", value=r, reason="must be finite and non-negative")
    radius = params.radius_coulomb
    strength = params.charge_product * E_SQUARED
    if r < radius:
        return strength * (3.0 - r**2 / radius**2) / (2.0 * radius)
    return strength / r


def volume_ws_r(r: float, params: OpticalPotentialParams, /) -> float:
    return -params.v_r * ws_shape(r, params.radius_volume, params.a_0)


def volume_imag_r(r: float, params: OpticalPotentialParams, /) -> float:
    return -params.w_v * ws_shape(r, params.radius_surface, params.a_s)


def surface_r(r: float, params: OpticalPotentialParams, /) -> float:
    return 4.0 * params.a_s * params.w_s * ws_shape_derivative(
        r, params.radius_surface, params.a_s
    )


def spin_orbit_r(r: float, params: OpticalPotentialParams, /) -> complex:
    strength = complex(params.v_so, params.w_so)
    return 2.0 * strength * ws_shape_g(r, params.radius_spin_orbit, params.a_so)


def potential_r(r: float, params: OpticalPotentialParams, /) -> complex:
    """Coherent scalar sum V_c + V_ws + i(W + W_s) + V_ls at r > 0."""
    return (
        coulomb_r(r, params)
        + volume_ws_r(r, params)
        + 1j * (volume_imag_r(r, params) + surface_r(r, params))
        + spin_orbit_r(r, params)
    )


##


def ft_volume_ws(
    q: float, params: OpticalPotentialParams, /, *, pole_terms: int | None = None
) -> float:
    return _ft_fermi(
        q, params.v_r, params.radius_volume, params.a_0, pole_terms=pole_terms
    )


def ft_volume_imag(
    q: float, params: OpticalPotentialParams, /, *, pole_terms: int | None = None
) -> float:
    """Imaginary volume term; it shares the surface geometry."""
    return _ft_fermi(
        q, params.w_v, params.radius_surface, params.a_s, pole_terms=pole_terms
    )


def _ft_fermi(
    q: float, strength: float, radius: float, a: float, /, *, pole_terms: int | None
) -> float:
    _check_q(q)
    if q < Q_SERIES:
        return _series_continuation(
            lambda k: _ft_fermi(k, strength, radius, a, pole_terms=pole_terms), q
        )
    x = pi * a * q
    em = -expm1(-2.0 * x)
    ep = 1.0 + exp(-2.0 * x)
    residue = (
        pi
        * a
        * exp(-x)
        / (q * em**2)
        * (radius * em * cos(q * radius) - pi * a * ep * sin(q * radius))
    )
    poles = a**3 * _pole_sum(q, radius, a, power=1, denominator=2, terms=pole_terms)
    return strength / pi**2 * (residue - poles)


def ft_surface(
    q: float, params: OpticalPotentialParams, /, *, pole_terms: int | None = None
) -> float:
    return _ft_surface(q, params, pole_terms=pole_terms, pole_sign=-1.0)


def ft_surface_printed(q: float, params: OpticalPotentialParams, /) -> float:
    """The surface transform with the pole series added and cut at two terms, as printed."""
    return _ft_surface(q, params, pole_terms=2, pole_sign=1.0)


def _ft_surface(
    q: float,
    params: OpticalPotentialParams,
    /,
    *,
    pole_terms: int | None,
    pole_sign: float,
) -> float:
    _check_q(q)
    if q < Q_SERIES:
        return _series_continuation(
            lambda k: _ft_surface(k, params, pole_terms=pole_terms, pole_sign=pole_sign),
            q,
        )
    a, radius = params.a_s, params.radius_surface
    x = pi * a * q
    em = -expm1(-2.0 * x)
    ep = 1.0 + exp(-2.0 * x)
    residue = (
        pi
        * a
        * exp(-x)
        / em**2
        * (
            (pi * a * ep - em / q) * cos(q * radius)
            + radius * em * sin(q * radius)
        )
    )
    poles = a**2 * _pole_sum(q, radius, a, power=2, denominator=2, terms=pole_terms)
    return -4.0 * a * params.w_s / pi**2 * (residue + pole_sign * poles)


def ft_spin_orbit(
    q: float, params: OpticalPotentialParams, /, *, pole_terms: int | None = None
) -> complex:
    _check_q(q)
    if q < Q_SERIES:
        return _series_continuation_complex(
            lambda k: ft_spin_orbit(k, params, pole_terms=pole_terms), q
        )
    a, radius = params.a_so, params.radius_spin_orbit
    x = pi * a * q
    residue = 2.0 * pi * exp(-x) / -expm1(-2.0 * x) * sin(q * radius)
    poles = _pole_sum(q, radius, a, power=1, denominator=1, terms=pole_terms)
    strength = complex(params.v_so, params.w_so)
    return -a / pi**2 * strength * (residue + poles)


def _pole_sum(
    q: float,
    radius: float,
    a: float,
    /,
    *,
    power: int,
    denominator: int,
    terms: int | None = None,
) -> float:
    """sum_n (-1)^(n-1) n^power exp(-n R/a) / (n^2 + a^2 q^2)^denominator."""
    ratio = radius / a
    total = 0.0
    n = 1
    while True:
        term = (
            (-1.0) ** (n - 1)
            * n**power
            * exp(-n * ratio)
            / (n**2 + (a * q) ** 2) ** denominator
        )
        total += term
        if terms is None:
            if (abs(term) <= _POLE_TOL * abs(total)) or (n >= _POLE_CAP):
                return total
        elif n >= terms:
            return total
        n += 1


def _series_continuation(func: Callable[[float], float], q: float, /) -> float:
    """Even quartic in q fitted where the closed forms are well conditioned."""
    nodes = np.linspace(*Q_SERIES_FIT, num=16)
    values = np.array([func(k) for k in nodes])
    coefficients = polynomial.polyfit(nodes**2, values, 2)
    return float(polynomial.polyval(q**2, coefficients))


def _series_continuation_complex(
    func: Callable[[float], complex], q: float, /
) -> complex:
    real = _series_continuation(lambda k: func(k).real, q)
    imag = _series_continuation(lambda k: func(k).imag, q)
    return complex(real, imag)


def _check_q(q: float, /) -> None:
    if not (isfinite(q) and (q >= 0.0)):
        raise DomainError(name="q", value=q, reason="must be finite and non-negative")


##


def ft_coulomb(q: float, params: OpticalPotentialParams, /) -> complex:
    """The printed closed form for the charged sphere, evaluated as it stands."""
    if not (isfinite(q) and (q > 0.0)):
        raise DomainError(name="q", value=q, reason="must be finite and positive")
    strength = params.charge_product * E_SQUARED
    c = 2.0 ** (2.0 / 3.0) * 3.0 ** (1.0 / 3.0)
    oscillating = (
        strength
        / (2.0 ** (5.0 / 6.0) * sqrt(pi) * q**3)
        * (
            -2.0 * 3.0 ** (1.0 / 3.0) * q * cos(c * q)
            + 2.0 ** (1.0 / 3.0)
            * (1.0 + 2.0 * 2.0 ** (1.0 / 3.0) * 3.0 ** (2.0 / 3.0) * q**2)
            * sin(c * q)
        )
    )
    integrals = (
        3.0
        * strength
        * sqrt(2.0 / pi)
        * (
            1j * pi * abs(q) / (2.0 * q)
            - cosine_integral(c * q)
            + log(q)
            - log(abs(q))
            - 1j * sine_integral(c * q)
        )
    )
    return oscillating + integrals


def ft_coulomb_sphere(q: float, params: OpticalPotentialParams, /) -> float:
    """KAPPA * 4 pi Z_p Z_t e^2 F(q R_c) / q^2 with F the uniform-sphere form factor."""
    if not (isfinite(q) and (q > 0.0)):
        raise DomainError(name="q", value=q, reason="must be finite and positive")
    x = q * params.radius_coulomb
    form_factor = 3.0 * float(spherical_jn(1, x)) / x
    strength = params.charge_product * E_SQUARED
    return KAPPA * 4.0 * pi * strength * form_factor / q**2


def ft_coulomb_numeric(
    q: float,
    params: OpticalPotentialParams,
    /,
    *,
    screening_lengths: tuple[float, float, float] = (100.0, 200.0, 400.0),
) -> float:
    """Screened radial quadrature, extrapolated to infinite screening length."""
    if not (isfinite(q) and (q > 0.0)):
        raise DomainError(name="q", value=q, reason="must be finite and positive")
    radius = params.radius_coulomb
    strength = params.charge_product * E_SQUARED
    interior = adaptive_quad(
        lambda r: r * coulomb_r(r, params),
        0.0,
        radius,
        quantity=f"Coulomb interior at q={q:g}",
        quiet=True,
        weight="sin",
        wvar=q,
        epsabs=1e-13,
        epsrel=1e-12,
        limit=200,
    )
    values: list[float] = []
    for length in screening_lengths:
        exterior = adaptive_quad(
            lambda r, length=length: strength * exp(-(r - radius) / length),
            radius,
            np.inf,
            quantity=f"screened Coulomb tail at q={q:g}, length={length:g}",
            quiet=True,
            weight="sin",
            wvar=q,
            epsabs=1e-12,
            limlst=200,
        )
        values.append(KAPPA * 4.0 * pi / q * (interior + exterior))
    inverse = 1.0 / np.array(screening_lengths)
    coefficients = polynomial.polyfit(inverse, np.array(values), 2)
    return float(coefficients[0])


##


def total_potential_q(
    q: float,
    params: OpticalPotentialParams,
    /,
    *,
    include_coulomb: bool = True,
    pole_terms: int | None = None,
) -> MomentumSpacePotential:
    volume = complex(
        ft_volume_ws(q, params, pole_terms=pole_terms),
        ft_volume_imag(q, params, pole_terms=pole_terms),
    )
    surface = 1j * ft_surface(q, params, pole_terms=pole_terms)
    spin_orbit = ft_spin_orbit(q, params, pole_terms=pole_terms)
    coulomb = complex(ft_coulomb_sphere(q, params)) if include_coulomb else 0j
    return MomentumSpacePotential(
        q=q, volume=volume, surface=surface, spin_orbit=spin_orbit, coulomb=coulomb
    )


##


def radial_transform_quad(
    r_times_potential: Callable[[float], float],
    q: float,
    r_max: float,
    /,
    *,
    quantity: str = "radial transform",
) -> float:
    """(4 pi / q) int_0^r_max r V(r) sin(q r) dr, taking r V(r) as the integrand."""
    if not (isfinite(q) and (q > 0.0)):
        raise DomainError(name="q", value=q, reason="must be finite and positive")
    integral = adaptive_quad(
        r_times_potential,
        0.0,
        r_max,
        quantity=quantity,
        quiet=True,
        weight="sin",
        wvar=q,
        epsabs=1e-14,
        epsrel=1e-12,
        limit=1000,
    )
    return 4.0 * pi / q * integral


def ft_numeric(term: Term, q: float, params: OpticalPotentialParams, /) -> complex:
    """Standard (unnormalized) transform of one r-space term by radial quadrature."""
    match term:
        case "volume":
            radius, a = params.radius_volume, params.a_0
            value = radial_transform_quad(
                lambda r: r * volume_ws_r(r, params),
                q,
                radius + _TAIL_DIFFUSENESSES * a,
                quantity=f"volume term at q={q:g}",
            )
            return complex(value)
        case "surface":
            radius, a = params.radius_surface, params.a_s
            value = radial_transform_quad(
                lambda r: r * surface_r(r, params),
                q,
                radius + _TAIL_DIFFUSENESSES * a,
                quantity=f"surface term at q={q:g}",
            )
            return complex(value)
        case "spin_orbit":
            radius, a = params.radius_spin_orbit, params.a_so
            # r g(r) = f'(r) is regular at the origin
            value = radial_transform_quad(
                lambda r: 2.0 * ws_shape_derivative(r, radius, a),
                q,
                radius + _TAIL_DIFFUSENESSES * a,
                quantity=f"spin-orbit term at q={q:g}",
            )
            return complex(params.v_so, params.w_so) * value
        case never:
            assert_never(never)


def ft_analytic(term: Term, q: float, params: OpticalPotentialParams, /) -> complex:
    match term:
        case "volume":
            return complex(ft_volume_ws(q, params))
        case "surface":
            return complex(ft_surface(q, params))
        case "spin_orbit":
            return ft_spin_orbit(q, params)
        case never:
            assert_never(never)


def normalization_constant(
    params: OpticalPotentialParams, /, *, q_ref: float = Q_REFERENCE
) -> float:
    """KAPPA as fitted by matching the closed-form volume term to quadrature at `q_ref`."""
    return ft_volume_ws(q_ref, params) / ft_numeric("volume", q_ref, params).real


def hard_sphere_transform(q: float, radius: float, /) -> float:
    """4 pi (sin qR - qR cos qR) / q^3, the sharp-edge limit of the Fermi shape."""
    x = q * radius
    return 4.0 * pi * (sin(x) - x * cos(x)) / q**3


__all__ = [
    "MomentumSpacePotential",
    "OpticalPotentialParams",
    "Term",
    "coulomb_r",
    "ft_analytic",
    "ft_coulomb",
    "ft_coulomb_numeric",
    "ft_coulomb_sphere",
    "ft_numeric",
    "ft_spin_orbit",
    "ft_surface",
    "ft_surface_printed",
    "ft_volume_imag",
    "ft_volume_ws",
    "hard_sphere_transform",
    "normalization_constant",
    "potential_r",
    "radial_transform_quad",
    "spin_orbit_r",
    "surface_r",
    "total_potential_q",
    "volume_imag_r",
    "volume_ws_r",
    "ws_shape",
    "ws_shape_derivative",
    "ws_shape_g",
]
