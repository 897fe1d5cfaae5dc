from __future__ import annotations

from dataclasses import dataclass
from typing import override


class BichromaticError(Exception): ...


##


@dataclass(kw_only=True, slots=True)
class ConfigError(BichromaticError):
    key: str
    value: object
    reason: str

    @override
    def __str__(self) -> str:
        return f"Invalid config {self.key!r}: got {self.value!r}; {self.reason}"


##


class ComputationError(BichromaticError): ...


@dataclass(kw_only=True, slots=True)
class DomainError(ComputationError):
    name: str
    value: object
    reason: str

    @override
    def __str__(self) -> str:
        return f"{self.name} out of domain: got {self.value!r}; {self.reason}"


@dataclass(kw_only=True, slots=True)
class GeneralizedBesselConvergenceError(ComputationError):
    n: int
    partial_sum: complex
    residual: float
    cap: int

    @override
    def __str__(self) -> str:
        return f"Generalized Bessel sum for n={self.n} did not converge within |lambda| <= {self.cap}; partial sum {self.partial_sum:.6g}, tail residual {self.residual:.3g}"


@dataclass(kw_only=True, slots=True)
class ChannelClosedError(ComputationError):
    p_i: float
    n: int
    photon_energy: float

    @override
    def __str__(self) -> str:
        return f"Channel n={self.n} is closed: emitting {self.n} photons of {self.photon_energy:g} eV exceeds the kinetic energy at p_i={self.p_i:g} MeV/c"


@dataclass(kw_only=True, slots=True)
class QuadratureError(ComputationError):
    quantity: str
    message: str

    @override
    def __str__(self) -> str:
        return f"Quadrature for {self.quantity} did not converge: {self.message}"


__all__ = [
    "BichromaticError",
    "ChannelClosedError",
    "ComputationError",
    "ConfigError",
    "DomainError",
    "GeneralizedBesselConvergenceError",
    "QuadratureError",
]
