from __future__ import annotations

from typed_settings import (
    EnvLoader,
    FileLoader,
    TomlFormat,
    load_settings,
    option,
    settings,
)

from bichromatic.constants import (
    CONFIG_ENV_VAR,
    CONFIG_FILE,
    CONFIG_SECTION,
    DEFAULT_A_0,
    DEFAULT_A_S,
    DEFAULT_A_SO,
    DEFAULT_ENERGY,
    DEFAULT_HARMONIC,
    DEFAULT_INTENSITY,
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
    DEFAULT_WAVELENGTH,
    DEFAULT_Z_P,
    DEFAULT_Z_T,
    ENV_PREFIX,
    PROTON_MASS,
)
from bichromatic.types import (
    ArgumentFormula,
    BornNormalization,
    OutputFormat,
    PhaseUnits,
    RadiusConvention,
)


@settings
class BeamSettings:
    kinetic_energy: float = option(default=DEFAULT_ENERGY, help="Lab energy (MeV)")
    projectile_mass: float = option(
        default=PROTON_MASS, help="Projectile rest energy (MeV)"
    )
    target_mass_number: int = option(
        default=DEFAULT_TARGET_A, help="Target mass number"
    )
    z_p: int = option(default=DEFAULT_Z_P, help="Projectile charge")
    z_t: int = option(default=DEFAULT_Z_T, help="Target charge")


@settings
class LaserSettings:
    wavelength: float = option(
        default=DEFAULT_WAVELENGTH, help="Fundamental wavelength (um)"
    )
    intensity: float = option(
        default=DEFAULT_INTENSITY, help="Fundamental intensity (W/cm^2)"
    )
    intensity_m: float = option(
        default=DEFAULT_INTENSITY / 2.0, help="Harmonic intensity (W/cm^2)"
    )
    m: int = option(default=DEFAULT_HARMONIC, help="Harmonic order")
    phase: float = option(default=0.0, help="Relative phase, in 'phase_units'")
    argument_formula: ArgumentFormula = option(
        default="simplified", help="Dressing arguments: 'exact' or 'simplified'"
    )


@settings
class PotentialSettings:
    v_r: float = option(default=DEFAULT_V_R, help="Real volume depth (MeV)")
    w_v: float = option(default=DEFAULT_W_V, help="Imaginary volume depth (MeV)")
    w_s: float = option(default=DEFAULT_W_S, help="Surface absorption depth (MeV)")
    v_so: float = option(default=DEFAULT_V_SO, help="Real spin-orbit depth (MeV)")
    w_so: float = option(default=DEFAULT_W_SO, help="Imaginary spin-orbit depth (MeV)")
    a_0: float = option(default=DEFAULT_A_0, help="Volume diffuseness (fm)")
    a_s: float = option(default=DEFAULT_A_S, help="Surface diffuseness (fm)")
    a_so: float = option(default=DEFAULT_A_SO, help="Spin-orbit diffuseness (fm)")
    r_0v: float = option(default=DEFAULT_R_0, help="Volume radius (fm)")
    r_s: float = option(default=DEFAULT_R_S, help="Surface radius (fm)")
    r_so: float = option(default=DEFAULT_R_SO, help="Spin-orbit radius (fm)")
    r_c: float = option(default=DEFAULT_R_C, help="Coulomb reduced radius (fm)")
    radius_convention: RadiusConvention = option(
        default="absolute", help="Radii are 'absolute' or 'reduced' (times A^1/3)"
    )
    born_normalization: BornNormalization = option(
        default="calibrated",
        help="Born prefactor: 'standard', or 'calibrated' to the 201 mb p + 12C total",
    )


@settings
class Settings:
    beam: BeamSettings = option(factory=BeamSettings)
    laser: LaserSettings = option(factory=LaserSettings)
    potential: PotentialSettings = option(factory=PotentialSettings)
    theta: float = option(default=7.0, help="Fixed angle of the phase scans (deg)")
    n: str = option(default="1,2,3", help="Comma-separated photon orders")
    theta_min: float = option(default=1.0, help="Smallest angle (deg)")
    theta_max: float = option(default=179.0, help="Largest angle (deg)")
    theta_step: float = option(default=0.25, help="Angle spacing (deg)")
    phase_points: int = option(default=73, help="Points on the phase grid [0, 2 pi]")
    ratios: str = option(default="1,2,10", help="Comma-separated ratios I/I_m")
    phase_units: PhaseUnits = option(default="rad", help="Phase units: 'rad' or 'pi'")
    format: OutputFormat = option(default="csv", help="Output format: 'csv' or 'json'")
    output: str | None = option(default=None, help="Output path (stdout if unset)")
    include_coulomb: bool = option(
        default=False, help="Add the Coulomb transform to the nuclear terms"
    )
    n_window: int | None = option(
        default=None, help="Photon window of the closure residuals (adaptive if unset)"
    )
    max_workers: int | None = option(default=None, help="Thread cap for the scans")


def file_loader(*files: str) -> FileLoader:
    return FileLoader(
        formats={"*.toml": TomlFormat(CONFIG_SECTION)},
        files=list(files),
        env_var=CONFIG_ENV_VAR,
    )


LOADERS = [file_loader(str(CONFIG_FILE)), EnvLoader(ENV_PREFIX)]


def load(*files: str) -> Settings:
    """Defaults, then `files`, then BICHROMATIC_CONFIG, then BICHROMATIC_* variables."""
    return load_settings(Settings, [file_loader(*files), EnvLoader(ENV_PREFIX)])


__all__ = [
    "LOADERS",
    "BeamSettings",
    "LaserSettings",
    "PotentialSettings",
    "Settings",
    "file_loader",
    "load",
]
