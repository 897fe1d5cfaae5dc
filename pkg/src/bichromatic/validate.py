from __future__ import annotations

from dataclasses import dataclass
from itertools import pairwise
from math import inf, pi, radians, sqrt
from typing import TYPE_CHECKING

import numpy as np
from rich.table import Table

from bichromatic.constants import KAPPA, REFERENCE_TOTAL_MB
from bichromatic.cross_section import (
    closure_residual,
    phase_scan,
    ratio_scan,
    total_cross_section,
)
from bichromatic.kinematics import Beam, LaserField
from bichromatic.logging import LOGGER
from bichromatic.potential import (
    OpticalPotentialParams,
    ft_analytic,
    ft_coulomb,
    ft_coulomb_numeric,
    ft_coulomb_sphere,
    ft_numeric,
    normalization_constant,
)
from bichromatic.special_functions import (
    GeneralizedBesselParams,
    bessel_j,
    bessel_j_asymptotic,
    bessel_j_quad,
    bessel_j_small,
    cosine_integral,
    cosine_integral_quad,
    dressing_spectrum_adaptive,
    generalized_bessel,
    generalized_bessel_fourier,
    sine_integral,
    sine_integral_quad,
)

if TYPE_CHECKING:
    from collections.abc import Callable

    from bichromatic.potential import Term


@dataclass(frozen=True, kw_only=True, slots=True)
class Check:
    name: str
    value: float
    tolerance: float
    detail: str = ""
    informational: bool = False

    @property
    def passed(self) -> bool:
        return self.informational or (self.value <= self.tolerance)


##


def check_sum_rule() -> Check:
    worst = 0.0
    for a, b, m, phase in [(5.0, 3.0, 2, 0.7), (20.0, 12.0, 3, 2.1), (0.745, 0.3725, 2, pi)]:
        spectrum = dressing_spectrum_adaptive(
            GeneralizedBesselParams(a=a, b=b, m=m, phase=phase)
        )
        worst = max(worst, abs(spectrum.residual))
    return Check(name="sum rule |1 - sum |C_n|^2|", value=worst, tolerance=1e-10)


def check_symmetry(m: int, /) -> Check:
    """C_{-n}(phase) against (-1)^n conj C_n at phase - pi (m = 2) or phase (m = 3)."""
    a, b, phase = 7.3, 4.1, 0.9
    shift = pi if m % 2 == 0 else 0.0
    worst = 0.0
    for n in range(-10, 11):
        lhs = generalized_bessel(-n, GeneralizedBesselParams(a=a, b=b, m=m, phase=phase))
        rhs = (-1) ** n * generalized_bessel(
            n, GeneralizedBesselParams(a=a, b=b, m=m, phase=phase - shift)
        ).conjugate()
        worst = max(worst, abs(lhs - rhs))
    return Check(name=f"symmetry of C_n, m={m}", value=worst, tolerance=1e-12)


def check_jacobi_anger() -> Check:
    a = 17.3
    params = GeneralizedBesselParams(a=a, b=0.0)
    worst = max(
        abs(generalized_bessel(n, params) - bessel_j(n, a)) for n in range(51)
    )
    return Check(name="b = 0 reduces to J_n(a)", value=worst, tolerance=1e-14)


def check_generating_function() -> Check:
    params = GeneralizedBesselParams(a=12.0, b=7.0, m=2, phase=1.1)
    worst = max(
        abs(generalized_bessel(n, params) - generalized_bessel_fourier(n, params))
        for n in range(-40, 41)
    )
    return Check(name="C_n against FFT of the generating function", value=worst, tolerance=1e-8)


def check_bessel_oracles() -> Check:
    worst = 0.0
    for n in range(6):
        for z in [0.3, 2.0, 11.5]:
            worst = max(worst, abs(bessel_j(n, z) - bessel_j_quad(n, z)))
    for x in [0.5, 2.0, 10.0]:
        worst = max(worst, abs(sine_integral(x) - sine_integral_quad(x)))
        worst = max(worst, abs(cosine_integral(x) - cosine_integral_quad(x)))
    return Check(name="J_n, Si, Ci against quadrature", value=worst, tolerance=1e-8)


def check_asymptotic() -> Check:
    """Hankel form at z = 1e4 for n <= 10, relative to the envelope sqrt(2 / (pi z))."""
    z = 1e4
    envelope = sqrt(2.0 / (pi * z))
    worst = max(
        abs(bessel_j(n, z) - bessel_j_asymptotic(n, z, corrected=True)) / envelope
        for n in range(11)
    )
    return Check(name="J_n large-argument form", value=worst, tolerance=1e-3)


def check_small_argument() -> Check:
    worst = 0.0
    for n in range(6):
        for z in [1e-3, 1e-4]:
            exact = bessel_j(n, z)
            worst = max(worst, abs(bessel_j_small(n, z) - exact) / abs(exact))
    return Check(name="J_n small-argument series", value=worst, tolerance=1e-4)


##


def transform_error(
    term: Term, params: OpticalPotentialParams, /, *, grid: list[float] | None = None
) -> float:
    """Worst gap between closed form and KAPPA * quadrature, relative to the term's peak."""
    qs = list(np.linspace(0.1, 5.0, num=25)) if grid is None else grid
    analytic = [ft_analytic(term, q, params) for q in qs]
    numeric = [KAPPA * ft_numeric(term, q, params) for q in qs]
    scale = max(map(abs, analytic))
    return max(abs(x - y) for x, y in zip(analytic, numeric, strict=True)) / scale


def check_transforms(params: OpticalPotentialParams, /) -> list[Check]:
    kappa = normalization_constant(params)
    checks = [
        Check(
            name="fitted normalization against 1/(2 pi)^3",
            value=abs(kappa / KAPPA - 1.0),
            tolerance=1e-6,
        )
    ]
    terms: list[Term] = ["volume", "surface", "spin_orbit"]
    checks.extend(
        Check(
            name=f"{term} transform against quadrature",
            value=transform_error(term, params),
            tolerance=1e-6,
        )
        for term in terms
    )
    return checks


def check_coulomb(params: OpticalPotentialParams, /) -> Check:
    worst = 0.0
    for q in [0.5, 1.0, 2.0]:
        sphere = ft_coulomb_sphere(q, params)
        worst = max(worst, abs(ft_coulomb_numeric(q, params) - sphere) / abs(sphere))
    return Check(name="Coulomb sphere against screened quadrature", value=worst, tolerance=1e-4)


def check_coulomb_closed_form(params: OpticalPotentialParams, /) -> Check:
    """Gap between the printed Ci/Si Coulomb form and the screened quadrature.

    Reported in the validation table without a tolerance.
    """
    gaps: dict[float, float] = {}
    for q in [0.5, 1.0, 2.0]:
        numeric = ft_coulomb_numeric(q, params)
        gaps[q] = abs(ft_coulomb(q, params) - numeric) / abs(numeric)
    return Check(
        name="printed Coulomb form against screened quadrature",
        value=max(gaps.values()),
        tolerance=inf,
        detail=", ".join(f"q={q:g}: {gap:.3g}" for q, gap in gaps.items()),
        informational=True,
    )


##


def check_total(beam: Beam, params: OpticalPotentialParams, /) -> Check:
    """Nuclear total elastic cross section against 201 mb, within 25%."""
    total = total_cross_section(beam, params)
    return Check(
        name="total elastic cross section within 25% of 201 mb",
        value=abs(total / REFERENCE_TOTAL_MB - 1.0),
        tolerance=0.25,
        detail=f"{total:.4g} mb, {params.born_normalization} prefactor",
    )


def check_single_photon_dominance(beam: Beam, /) -> Check:
    laser = LaserField(intensity_1=1e12, intensity_m=1e12, m=2)
    phases = list(np.linspace(0.0, 2.0 * pi, num=73))
    scan = phase_scan(radians(7.0), [1, 2, 3], laser, beam, phases)
    margin = min(
        c1 - max(c2, c3)
        for c1, c2, c3 in zip(
            scan.magnitudes[1], scan.magnitudes[2], scan.magnitudes[3], strict=True
        )
    )
    return Check(
        name="|C_1| above |C_2| and |C_3| at 7 deg",
        value=-margin,
        tolerance=0.0,
        detail=f"smallest margin {margin:.4g}",
    )


def check_modulation_depth(beam: Beam, /) -> Check:
    laser = LaserField(intensity_1=1e12, intensity_m=1e12, m=2)
    phases = list(np.linspace(0.0, 2.0 * pi, num=73))
    ratios = [1.0, 2.0, 10.0]
    scan = ratio_scan(radians(7.0), 1, laser, beam, ratios, phases)
    depths = [scan.modulation_depth(r) for r in ratios]
    increase = max(later - earlier for earlier, later in pairwise(depths))
    return Check(
        name="phase modulation of |C_1| falls with I/I_m",
        value=increase,
        tolerance=0.0,
        detail=", ".join(f"{r:g}: {d:.4g}" for r, d in zip(ratios, depths, strict=True)),
    )


def check_closure(beam: Beam, params: OpticalPotentialParams, /) -> Check:
    laser = LaserField(intensity_1=1e12, intensity_m=5e11, m=2, phase=0.4)
    worst = max(
        closure_residual(radians(theta), beam, laser, params)
        for theta in [5.0, 20.0, 60.0]
    )
    return Check(name="sum of dressed cross sections against Born", value=worst, tolerance=1e-6)


##


def run_validation(
    *,
    beam: Beam | None = None,
    params: OpticalPotentialParams | None = None,
) -> list[Check]:
    beam = Beam() if beam is None else beam
    params = OpticalPotentialParams() if params is None else params
    factories: list[Callable[[], Check | list[Check]]] = [
        check_sum_rule,
        lambda: check_symmetry(2),
        lambda: check_symmetry(3),
        check_jacobi_anger,
        check_generating_function,
        check_bessel_oracles,
        check_asymptotic,
        check_small_argument,
        lambda: check_transforms(params),
        lambda: check_coulomb(params),
        lambda: check_coulomb_closed_form(params),
        lambda: check_total(beam, params),
        lambda: check_single_photon_dominance(beam),
        lambda: check_modulation_depth(beam),
        lambda: check_closure(beam, params),
    ]
    checks: list[Check] = []
    for factory in factories:
        result = factory()
        checks.extend(result if isinstance(result, list) else [result])
    for check in checks:
        LOGGER.debug("%s: %.3g (tolerance %.3g)", check.name, check.value, check.tolerance)
    return checks


def report(checks: list[Check], /) -> Table:
    table = Table(title="bichromatic validation")
    table.add_column("check")
    table.add_column("value", justify="right")
    table.add_column("tolerance", justify="right")
    table.add_column("result")
    table.add_column("detail")
    for check in checks:
        table.add_row(
            check.name,
            f"{check.value:.3g}",
            "-" if check.informational else f"{check.tolerance:.3g}",
            _result(check),
            check.detail,
        )
    return table


def _result(check: Check, /) -> str:
    if check.informational:
        return "[blue]INFO[/blue]"
    return "[green]PASS[/green]" if check.passed else "[red]FAIL[/red]"


__all__ = [
    "Check",
    "check_asymptotic",
    "check_bessel_oracles",
    "check_closure",
    "check_coulomb",
    "check_coulomb_closed_form",
    "check_generating_function",
    "check_jacobi_anger",
    "check_modulation_depth",
    "check_single_photon_dominance",
    "check_small_argument",
    "check_sum_rule",
    "check_symmetry",
    "check_total",
    "check_transforms",
    "report",
    "run_validation",
    "transform_error",
]
