from __future__ import annotations

import math
from dataclasses import dataclass, field
from logging import DEBUG, WARNING
from math import ceil, isfinite, pi
from typing import TYPE_CHECKING, Any, Literal, assert_never

import numpy as np
from scipy.integrate import quad
from scipy.special import jv, sici

from bichromatic.constants import (
    BESSEL_Z_MAX,
    LAMBDA_CAP,
    LAMBDA_TAIL_RUN,
    LAMBDA_TAIL_TOL,
    SERIES_BANDWIDTH_MAX,
    SPECTRUM_EDGE,
    SPECTRUM_INCOMPLETE,
    SPECTRUM_TOL,
)
from bichromatic.errors import (
    DomainError,
    GeneralizedBesselConvergenceError,
    QuadratureError,
)
from bichromatic.logging import LOGGER

if TYPE_CHECKING:
    from collections.abc import Callable

    from bichromatic.types import (
        ComplexArray,
        FloatArray,
        IntArray,
        SpectrumMethod,
    )


@dataclass(frozen=True, kw_only=True, slots=True)
class GeneralizedBesselParams:
    """Arguments of the two-colour Bessel coefficients C_n(a, b; phase)."""

    a: float
    b: float
    m: int = 2
    phase: float = 0.0

    def __post_init__(self) -> None:
        for name, value in [("a", self.a), ("b", self.b), ("phase", self.phase)]:
            if not isfinite(value):
                raise DomainError(name=name, value=value, reason="must be finite")
        if self.m < 2:
            raise DomainError(
                name="m", value=self.m, reason="harmonic order must be at least 2"
            )

    @property
    def reduced_phase(self) -> float:
        return self.phase % (2.0 * pi)


@dataclass(frozen=True, kw_only=True, slots=True)
class DressingSpectrum:
    """C_n for |n| <= n_window.

    `truncation_lambda` is the lambda cutoff of the series sums and `samples` the
    FFT length; each is zero when the other method produced the coefficients.
    """

    params: GeneralizedBesselParams
    coefficients: dict[int, complex] = field(default_factory=dict)
    method: Literal["series", "fft"] = "series"
    truncation_lambda: int = 0
    samples: int = 0
    residual: float = 0.0

    @property
    def complete(self) -> bool:
        return abs(self.residual) <= SPECTRUM_INCOMPLETE

    @property
    def n_window(self) -> int:
        return max(map(abs, self.coefficients), default=0)

    def probabilities(self) -> dict[int, float]:
        return {n: abs(c) ** 2 for n, c in self.coefficients.items()}


##


def bessel_j(n: int, z: float, /) -> float:
    """Integer-order Bessel function of the first kind."""
    _check_bessel_argument(z)
    return float(jv(n, z))


def _check_bessel_argument(z: float, /) -> None:
    if not isfinite(z):
        raise DomainError(name="z", value=z, reason="must be finite")
    if abs(z) > BESSEL_Z_MAX:
        raise DomainError(
            name="z", value=z, reason=f"|z| must be at most {BESSEL_Z_MAX:g}"
        )


def bessel_j_small(n: int, z: float, /) -> float:
    """Leading term (z/2)^n / n! of the power series."""
    order = abs(n)
    value = (z / 2.0) ** order / math.factorial(order)
    return value if (n >= 0) or (order % 2 == 0) else -value


def bessel_j_asymptotic(n: int, z: float, /, *, corrected: bool = False) -> float:
    """Large-argument form of J_n(z), optionally with the first Hankel correction."""
    if z <= 0.0:
        raise DomainError(name="z", value=z, reason="must be positive")
    chi = z - n * pi / 2.0 - pi / 4.0
    envelope = math.sqrt(2.0 / (pi * z))
    if not corrected:
        return envelope * math.cos(chi)
    mu = 4.0 * n**2
    p = 1.0 - (mu - 1.0) * (mu - 9.0) / (2.0 * (8.0 * z) ** 2)
    q = (mu - 1.0) / (8.0 * z)
    return envelope * (p * math.cos(chi) - q * math.sin(chi))


##


def sine_integral(x: float, /) -> float:
    if not isfinite(x):
        raise DomainError(name="x", value=x, reason="must be finite")
    si, _ = sici(x)
    return float(si)


def cosine_integral(x: float, /) -> float:
    if not (isfinite(x) and (x > 0.0)):
        raise DomainError(name="x", value=x, reason="Ci requires a finite x > 0")
    _, ci = sici(x)
    return float(ci)


##


def generalized_bessel(
    n: int,
    params: GeneralizedBesselParams,
    /,
    *,
    tol: float = LAMBDA_TAIL_TOL,
    run: int = LAMBDA_TAIL_RUN,
    cap: int = LAMBDA_CAP,
) -> complex:
    """C_n(a, b; phase) = sum_lambda J_{n - m lambda}(a) J_lambda(b) exp(-i lambda phase)."""
    sums, _ = _sum_orders(np.array([n], dtype=np.int64), params, tol=tol, run=run, cap=cap)
    return complex(sums[0])


def dressing_spectrum(
    params: GeneralizedBesselParams,
    n_window: int,
    /,
    *,
    method: SpectrumMethod = "series",
    tol: float = LAMBDA_TAIL_TOL,
    run: int = LAMBDA_TAIL_RUN,
    cap: int = LAMBDA_CAP,
) -> DressingSpectrum:
    spectrum = _spectrum(params, n_window, method=method, tol=tol, run=run, cap=cap)
    if not spectrum.complete:
        LOGGER.warning(
            "Dressing spectrum for %s is incomplete at n_window=%d; residual %.3g",
            params,
            n_window,
            spectrum.residual,
        )
    return spectrum


def dressing_spectrum_adaptive(
    params: GeneralizedBesselParams,
    /,
    *,
    tol: float = SPECTRUM_TOL,
    method: SpectrumMethod = "auto",
) -> DressingSpectrum:
    """Widen the photon window until the sum rule closes to `tol`.

    The window starts past the classical edge a + m b by a multiple of the
    Airy width (a + m^3 b)^(1/3), so one attempt normally suffices.
    """
    a, b, m = abs(params.a), abs(params.b), params.m
    edge = SPECTRUM_EDGE * (a + m**3 * b) ** (1.0 / 3.0)
    n_window = ceil(_bandwidth(params) + edge) + 8
    while True:
        spectrum = _spectrum(params, n_window, method=method)
        if abs(spectrum.residual) < tol:
            return spectrum
        if n_window >= LAMBDA_CAP:
            raise GeneralizedBesselConvergenceError(
                n=n_window,
                partial_sum=complex(1.0 - spectrum.residual),
                residual=spectrum.residual,
                cap=LAMBDA_CAP,
            )
        LOGGER.debug("Residual %.3g at n_window=%d; widening", spectrum.residual, n_window)
        n_window = min(n_window + max(16, n_window // 4), LAMBDA_CAP)


def _spectrum(
    params: GeneralizedBesselParams,
    n_window: int,
    /,
    *,
    method: SpectrumMethod,
    tol: float = LAMBDA_TAIL_TOL,
    run: int = LAMBDA_TAIL_RUN,
    cap: int = LAMBDA_CAP,
) -> DressingSpectrum:
    if n_window < 1:
        raise DomainError(name="n_window", value=n_window, reason="must be at least 1")
    orders = np.arange(-n_window, n_window + 1, dtype=np.int64)
    resolved = _resolve_method(method, params)
    half = samples = 0
    match resolved:
        case "series":
            sums, half = _sum_orders(orders, params, tol=tol, run=run, cap=cap)
        case "fft":
            samples = _fourier_samples(n_window, params)
            sums = _fourier_coefficients(params, samples)[orders % samples]
        case never:
            assert_never(never)
    coefficients = {int(n): complex(c) for n, c in zip(orders, sums, strict=True)}
    residual = 1.0 - math.fsum(abs(c) ** 2 for c in coefficients.values())
    return DressingSpectrum(
        params=params,
        coefficients=coefficients,
        method=resolved,
        truncation_lambda=half,
        samples=samples,
        residual=residual,
    )


def _bandwidth(params: GeneralizedBesselParams, /) -> float:
    """Largest instantaneous frequency a + m b of the generating function."""
    return abs(params.a) + params.m * abs(params.b)


def _resolve_method(
    method: SpectrumMethod, params: GeneralizedBesselParams, /
) -> Literal["series", "fft"]:
    match method:
        case "auto":
            return "series" if _bandwidth(params) <= SERIES_BANDWIDTH_MAX else "fft"
        case "series" | "fft":
            return method
        case never:
            assert_never(never)


def _sum_orders(
    orders: IntArray,
    params: GeneralizedBesselParams,
    /,
    *,
    tol: float = LAMBDA_TAIL_TOL,
    run: int = LAMBDA_TAIL_RUN,
    cap: int = LAMBDA_CAP,
) -> tuple[ComplexArray, int]:
    a, b = abs(params.a), abs(params.b)
    span = int(np.max(np.abs(orders)))
    half = min(ceil(b + (span + a) / params.m) + 4 * run, cap)
    while True:
        lam = np.arange(-half, half + 1, dtype=np.int64)
        terms = _lambda_terms(orders, params, lam)
        sums = terms.sum(axis=1)
        bound = tol * np.abs(sums)[:, np.newaxis]
        magnitudes = np.abs(terms)
        tails = np.concatenate([magnitudes[:, :run], magnitudes[:, -run:]], axis=1)
        converged = np.all(tails <= bound, axis=1)
        if np.all(converged):
            LOGGER.debug("Generalized Bessel sums converged at |lambda| <= %d", half)
            return sums, half
        if half >= cap:
            i = int(np.argmin(converged))
            raise GeneralizedBesselConvergenceError(
                n=int(orders[i]),
                partial_sum=complex(sums[i]),
                residual=float(np.max(tails[i])),
                cap=cap,
            )
        half = min(2 * half, cap)


def _lambda_terms(
    orders: IntArray, params: GeneralizedBesselParams, lam: IntArray, /
) -> ComplexArray:
    shifted = orders[:, np.newaxis] - params.m * lam[np.newaxis, :]
    terms = jv(shifted, abs(params.a)) * jv(lam, abs(params.b))[np.newaxis, :]
    # J_k(-x) = (-1)^k J_k(x)
    if params.a < 0.0:
        terms = terms * _parity(shifted)
    if params.b < 0.0:
        terms = terms * _parity(lam)[np.newaxis, :]
    return terms * np.exp(-1j * lam * params.reduced_phase)[np.newaxis, :]


def _parity(k: IntArray, /) -> FloatArray:
    return np.where(k % 2 == 0, 1.0, -1.0)


##


def adaptive_quad(
    func: Callable[[float], float],
    lower: float,
    upper: float,
    /,
    *,
    quantity: str,
    strict: bool = False,
    quiet: bool = False,
    **kwargs: Any,
) -> float:
    """scipy's QUADPACK with its diagnostics routed to the logger.

    `strict` turns a diagnostic into `QuadratureError`; `quiet` logs it at DEBUG,
    for oracles whose accuracy is judged by the caller.
    """
    result = quad(func, lower, upper, full_output=1, **kwargs)
    if len(result) >= 4:
        message = str(result[3])
        if strict:
            raise QuadratureError(quantity=quantity, message=message)
        LOGGER.log(
            DEBUG if quiet else WARNING, "Quadrature for %s: %s", quantity, message
        )
    return float(result[0])


def bessel_j_quad(n: int, z: float, /) -> float:
    """Bessel's integral (1/pi) int_0^pi cos(n t - z sin t) dt."""
    value = adaptive_quad(
        lambda t: math.cos(n * t - z * math.sin(t)),
        0.0,
        pi,
        quantity=f"J_{n}({z:g})",
        quiet=True,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=500,
    )
    return value / pi


def sine_integral_quad(x: float, /) -> float:
    return adaptive_quad(
        lambda t: float(np.sinc(t / pi)),
        0.0,
        x,
        quantity=f"Si({x:g})",
        quiet=True,
        epsabs=1e-14,
        epsrel=1e-13,
        limit=500,
    )


def cosine_integral_quad(x: float, /) -> float:
    """-int_x^inf cos(t)/t dt via QUADPACK's Fourier-integral routine."""
    if x <= 0.0:
        raise DomainError(name="x", value=x, reason="Ci requires x > 0")
    tail = adaptive_quad(
        lambda t: 1.0 / t,
        x,
        np.inf,
        quantity=f"Ci({x:g})",
        quiet=True,
        weight="cos",
        wvar=1.0,
        epsabs=1e-14,
        limlst=100,
    )
    return -tail


def generalized_bessel_fourier(
    n: int, params: GeneralizedBesselParams, /, *, samples: int | None = None
) -> complex:
    """n-th Fourier coefficient of exp{i[a sin t + b sin(m t - phase)]}, by FFT.

    The harmonic enters with -phase so that the coefficients carry exp(-i lambda phase)
    term by term.
    """
    if samples is None:
        samples = _fourier_samples(abs(n), params)
    return complex(_fourier_coefficients(params, samples)[n % samples])


def _fourier_samples(span: int, params: GeneralizedBesselParams, /) -> int:
    return 1 << ceil(math.log2(4 * (span + _bandwidth(params) + 64)))


def _fourier_coefficients(params: GeneralizedBesselParams, samples: int, /) -> ComplexArray:
    t = 2.0 * pi * np.arange(samples) / samples
    generating = np.exp(
        1j * (params.a * np.sin(t) + params.b * np.sin(params.m * t - params.phase))
    )
    return np.fft.fft(generating) / samples


__all__ = [
    "DressingSpectrum",
    "GeneralizedBesselParams",
    "adaptive_quad",
    "bessel_j",
    "bessel_j_asymptotic",
    "bessel_j_quad",
    "bessel_j_small",
    "cosine_integral",
    "cosine_integral_quad",
    "dressing_spectrum",
    "dressing_spectrum_adaptive",
    "generalized_bessel",
    "generalized_bessel_fourier",
    "sine_integral",
    "sine_integral_quad",
]
