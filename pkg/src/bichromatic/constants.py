from __future__ import annotations

from math import pi
from pathlib import Path

from scipy.constants import physical_constants

# physical constants (MeV, fm, eV, um)
HBAR_C = physical_constants["reduced Planck constant times c in MeV fm"][0]
PROTON_MASS = physical_constants["proton mass energy equivalent in MeV"][0]
ELECTRON_MASS = physical_constants["electron mass energy equivalent in MeV"][0]
FINE_STRUCTURE = physical_constants["fine-structure constant"][0]
E_SQUARED = FINE_STRUCTURE * HBAR_C
HC_EV_UM = 2.0 * pi * HBAR_C * 1e-3  # eV um
MEV_PER_EV = 1e-6
MB_PER_FM2 = 10.0

# ratios the laser formulas embed
PROTON_ELECTRON_MASS_RATIO = 1836.0
A0_COEFFICIENT = 8.55e-10  # a0 = A0_COEFFICIENT * sqrt(I / W cm^-2) * lambda / um
SIMPLIFIED_COEFFICIENT = 1e-4
PROTON_A_WARN = 0.1

# Fourier convention of the closed-form transforms: U(q) = KAPPA * int exp(-iqr) U(r) d^3r
KAPPA = 1.0 / (2.0 * pi) ** 3
Q_SERIES = 1e-4
Q_SERIES_FIT = (1e-4, 1e-2)
Q_REFERENCE = 1.0

# p + 12C at 49 MeV
DEFAULT_ENERGY = 49.0
DEFAULT_TARGET_A = 12
DEFAULT_Z_P = 1
DEFAULT_Z_T = 6
DEFAULT_V_R = 31.31
DEFAULT_W_V = 0.0
DEFAULT_W_S = 5.98
DEFAULT_V_SO = 2.79
DEFAULT_W_SO = 0.0
DEFAULT_A_0 = 0.68
DEFAULT_A_S = 0.586
DEFAULT_A_SO = 0.22
DEFAULT_R_0 = 1.276
DEFAULT_R_S = 0.89
DEFAULT_R_SO = 0.716
DEFAULT_R_C = 1.25
DEFAULT_WAVELENGTH = 0.8
DEFAULT_INTENSITY = 1e12
DEFAULT_HARMONIC = 2
REFERENCE_TOTAL_MB = 201.0

# truncation of the generalized Bessel sums
LAMBDA_TAIL_TOL = 1e-15
LAMBDA_TAIL_RUN = 5
LAMBDA_CAP = 10**6
SPECTRUM_INCOMPLETE = 1e-6
SPECTRUM_TOL = 1e-10
SPECTRUM_EDGE = 8.0  # window margin in Airy widths (a + m^3 b)^(1/3)
SERIES_BANDWIDTH_MAX = 256.0  # above this a + m b, spectra come from one FFT
BESSEL_Z_MAX = 1e5

CONFIG_FILE = Path("bichromatic.toml")
CONFIG_SECTION = "bichromatic"
CONFIG_ENV_VAR = "BICHROMATIC_CONFIG"
ENV_PREFIX = "BICHROMATIC_"
JSON_SCHEMA_VERSION = 1


__all__ = [
    "A0_COEFFICIENT",
    "BESSEL_Z_MAX",
    "CONFIG_ENV_VAR",
    "CONFIG_FILE",
    "CONFIG_SECTION",
    "DEFAULT_A_0",
    "DEFAULT_A_S",
    "DEFAULT_A_SO",
    "DEFAULT_ENERGY",
    "DEFAULT_HARMONIC",
    "DEFAULT_INTENSITY",
    "DEFAULT_R_0",
    "DEFAULT_R_C",
    "DEFAULT_R_S",
    "DEFAULT_R_SO",
    "DEFAULT_TARGET_A",
    "DEFAULT_V_R",
    "DEFAULT_V_SO",
    "DEFAULT_WAVELENGTH",
    "DEFAULT_W_S",
    "DEFAULT_W_SO",
    "DEFAULT_W_V",
    "DEFAULT_Z_P",
    "DEFAULT_Z_T",
    "ELECTRON_MASS",
    "ENV_PREFIX",
    "E_SQUARED",
    "FINE_STRUCTURE",
    "HBAR_C",
    "HC_EV_UM",
    "JSON_SCHEMA_VERSION",
    "KAPPA",
    "LAMBDA_CAP",
    "LAMBDA_TAIL_RUN",
    "LAMBDA_TAIL_TOL",
    "MB_PER_FM2",
    "MEV_PER_EV",
    "PROTON_A_WARN",
    "PROTON_ELECTRON_MASS_RATIO",
    "PROTON_MASS",
    "Q_REFERENCE",
    "Q_SERIES",
    "Q_SERIES_FIT",
    "REFERENCE_TOTAL_MB",
    "SERIES_BANDWIDTH_MAX",
    "SIMPLIFIED_COEFFICIENT",
    "SPECTRUM_EDGE",
    "SPECTRUM_INCOMPLETE",
    "SPECTRUM_TOL",
]
