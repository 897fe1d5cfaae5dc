from __future__ import annotations

import csv
import json
from dataclasses import dataclass, field
from io import StringIO
from math import degrees, floor, isclose, isfinite, pi, radians
from pathlib import Path
from typing import TYPE_CHECKING, Any, assert_never

import tomlkit
from attrs import asdict
from utilities.atomicwrites import writer
from utilities.whenever import get_now

from bichromatic import __version__
from bichromatic.constants import CONFIG_SECTION, JSON_SCHEMA_VERSION, KAPPA
from bichromatic.cross_section import (
    born_scale,
    born_table,
    dressed_table,
    inelastic_table,
    laser_at_ratio,
    phase_scan,
    ratio_scan,
    total_cross_section,
)
from bichromatic.errors import ConfigError, DomainError
from bichromatic.kinematics import Beam, LaserField, dressing_arguments_for
from bichromatic.logging import LOGGER
from bichromatic.potential import OpticalPotentialParams
from bichromatic.special_functions import (
    GeneralizedBesselParams,
    dressing_spectrum,
    dressing_spectrum_adaptive,
)
if TYPE_CHECKING:
    from bichromatic.settings import Settings
    from bichromatic.special_functions import DressingSpectrum
    from bichromatic.types import OutputFormat, PhaseUnits, StrDict, TableSubcommand


_LASER_KEYS = {"intensity_1": "intensity"}
_POTENTIAL_KEYS = {"a_t": "target_mass_number"}


@dataclass(frozen=True, kw_only=True, slots=True)
class ScanConfig:
    """Grids and output switches; angles and phases in radians."""

    theta: float
    orders: tuple[int, ...]
    theta_min: float
    theta_max: float
    theta_step: float
    phase_points: int
    ratios: tuple[float, ...]
    phase_units: PhaseUnits = "rad"
    format: OutputFormat = "csv"
    output: Path | None = None
    include_coulomb: bool = False
    n_window: int | None = None
    max_workers: int | None = None

    def angles(self) -> list[float]:
        """Steps of `theta_step` from `theta_min`, always ending on `theta_max`."""
        count = floor((self.theta_max - self.theta_min) / self.theta_step + 1e-9) + 1
        angles = [self.theta_min + i * self.theta_step for i in range(count)]
        if isclose(angles[-1], self.theta_max, rel_tol=1e-9):
            angles[-1] = self.theta_max
        else:
            angles.append(self.theta_max)
        return angles

    def phases(self) -> list[float]:
        step = 2.0 * pi / (self.phase_points - 1)
        return [min(i * step, 2.0 * pi) for i in range(self.phase_points)]

    def phase_out(self, phase: float, /) -> float:
        match self.phase_units:
            case "rad":
                return phase
            case "pi":
                return phase / pi
            case never:
                assert_never(never)


@dataclass(frozen=True, kw_only=True, slots=True)
class RunConfig:
    beam: Beam
    laser: LaserField
    potential: OpticalPotentialParams
    scan: ScanConfig


@dataclass(frozen=True, kw_only=True, slots=True)
class Output:
    columns: list[str]
    rows: list[list[float]]
    metadata: StrDict = field(default_factory=dict)


##


def to_run_config(settings: Settings, /) -> RunConfig:
    """Validate `settings`; every bad value raises `ConfigError` naming its key."""
    phase_factor = pi if settings.phase_units == "pi" else 1.0
    try:
        beam = Beam(
            kinetic_energy=settings.beam.kinetic_energy,
            projectile_mass=settings.beam.projectile_mass,
            target_mass_number=settings.beam.target_mass_number,
            z_p=settings.beam.z_p,
            z_t=settings.beam.z_t,
        )
    except DomainError as error:
        raise _config_error("beam", error) from None
    try:
        laser = LaserField(
            wavelength=settings.laser.wavelength,
            intensity_1=settings.laser.intensity,
            intensity_m=settings.laser.intensity_m,
            m=settings.laser.m,
            phase=settings.laser.phase * phase_factor,
            argument_formula=settings.laser.argument_formula,
        )
    except DomainError as error:
        raise _config_error("laser", error, keys=_LASER_KEYS) from None
    try:
        potential = OpticalPotentialParams(
            v_r=settings.potential.v_r,
            w_v=settings.potential.w_v,
            w_s=settings.potential.w_s,
            v_so=settings.potential.v_so,
            w_so=settings.potential.w_so,
            a_0=settings.potential.a_0,
            a_s=settings.potential.a_s,
            a_so=settings.potential.a_so,
            r_0v=settings.potential.r_0v,
            r_s=settings.potential.r_s,
            r_so=settings.potential.r_so,
            r_c=settings.potential.r_c,
            a_t=beam.target_mass_number,
            z_p=beam.z_p,
            z_t=beam.z_t,
            radius_convention=settings.potential.radius_convention,
            born_normalization=settings.potential.born_normalization,
        )
    except DomainError as error:
        raise _config_error("potential", error, keys=_POTENTIAL_KEYS) from None
    scan = ScanConfig(
        theta=radians(_check_angle("theta", settings.theta)),
        orders=_parse_orders(settings.n),
        theta_min=radians(_check_angle("theta_min", settings.theta_min)),
        theta_max=radians(_check_angle("theta_max", settings.theta_max)),
        theta_step=radians(_check_positive("theta_step", settings.theta_step)),
        phase_points=_check_at_least("phase_points", settings.phase_points, 2),
        ratios=_parse_ratios(settings.ratios),
        phase_units=settings.phase_units,
        format=settings.format,
        output=None if settings.output is None else Path(settings.output),
        include_coulomb=settings.include_coulomb,
        n_window=None
        if settings.n_window is None
        else _check_at_least("n_window", settings.n_window, 1),
        max_workers=None
        if settings.max_workers is None
        else _check_at_least("max_workers", settings.max_workers, 1),
    )
    if scan.theta_min >= scan.theta_max:
        raise ConfigError(
            key="theta_min",
            value=settings.theta_min,
            reason=f"must be below theta_max={settings.theta_max:g}",
        )
    return RunConfig(beam=beam, laser=laser, potential=potential, scan=scan)


def _config_error(
    block: str, error: DomainError, /, *, keys: StrDict | None = None
) -> ConfigError:
    name = (keys or {}).get(error.name, error.name)
    return ConfigError(key=f"{block}.{name}", value=error.value, reason=error.reason)


def _check_angle(key: str, value: float, /) -> float:
    if not (isfinite(value) and (0.0 < value <= 180.0)):
        raise ConfigError(key=key, value=value, reason="must lie in (0, 180] degrees")
    return value


def _check_positive(key: str, value: float, /) -> float:
    if not (isfinite(value) and (value > 0.0)):
        raise ConfigError(key=key, value=value, reason="must be positive")
    return value


def _check_at_least(key: str, value: int, minimum: int, /) -> int:
    if value < minimum:
        raise ConfigError(key=key, value=value, reason=f"must be at least {minimum}")
    return value


def _parse_orders(text: str, /) -> tuple[int, ...]:
    try:
        orders = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(
            key="n", value=text, reason="expected comma-separated integers"
        ) from None
    return orders


def _parse_ratios(text: str, /) -> tuple[float, ...]:
    try:
        ratios = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise ConfigError(
            key="ratios", value=text, reason="expected comma-separated numbers"
        ) from None
    for ratio in ratios:
        if not (ratio > 0.0):
            raise ConfigError(key="ratios", value=text, reason="ratios must be positive")
    return ratios


##


def run(subcommand: TableSubcommand, config: RunConfig, /) -> Output:
    match subcommand:
        case "born":
            return run_born(config)
        case "dressed":
            return run_dressed(config)
        case "inelastic":
            return run_inelastic(config)
        case "phase-scan":
            return run_phase_scan(config)
        case "ratio-scan":
            return run_ratio_scan(config)
        case "total":
            return run_total(config)
        case never:
            assert_never(never)


def run_born(config: RunConfig, /) -> Output:
    scan = config.scan
    table = born_table(
        scan.angles(),
        config.beam,
        config.potential,
        include_coulomb=scan.include_coulomb,
        max_workers=scan.max_workers,
    )
    rows = [
        [degrees(theta), q, dcs]
        for theta, q, dcs in zip(table.angles, table.q_values, table.born, strict=True)
    ]
    return Output(
        columns=["theta_deg", "q_fm_inv", "dcs_mb_sr"], rows=rows, metadata=table.metadata
    )


def run_dressed(config: RunConfig, /) -> Output:
    scan = config.scan
    table = dressed_table(
        scan.angles(),
        scan.orders,
        config.beam,
        config.laser,
        config.potential,
        include_coulomb=scan.include_coulomb,
        max_workers=scan.max_workers,
    )
    columns = ["theta_deg", "q_fm_inv", "born_mb_sr"]
    for n in scan.orders:
        columns.extend([f"dressed_{n}_mb_sr", f"c2_{n}"])
    rows: list[list[float]] = []
    for i, theta in enumerate(table.angles):
        row = [degrees(theta), table.q_values[i], table.born[i]]
        for n in scan.orders:
            row.extend([table.dressed[n][i], table.ratios[n][i]])
        rows.append(row)
    spectrum = _spectrum_at(config, config.scan.theta_max)
    metadata = table.metadata | _spectrum_metadata(spectrum)
    return Output(columns=columns, rows=rows, metadata=metadata)


def _spectrum_at(
    config: RunConfig, theta: float, /, *, laser: LaserField | None = None
) -> DressingSpectrum:
    """Dressing spectrum at `theta`; adaptive unless `n_window` is set."""
    laser = config.laser if laser is None else laser
    a, b = dressing_arguments_for(laser, config.beam, theta)
    params = GeneralizedBesselParams(a=a, b=b, m=laser.m, phase=laser.phase)
    if config.scan.n_window is None:
        return dressing_spectrum_adaptive(params)
    return dressing_spectrum(params, config.scan.n_window)


def _spectrum_metadata(*spectra: DressingSpectrum) -> StrDict:
    """Truncation of the least complete of `spectra`."""
    worst = max(spectra, key=lambda spectrum: abs(spectrum.residual))
    return {
        "truncation_residual": worst.residual,
        "n_window": worst.n_window,
        "spectrum_method": worst.method,
        "truncation_lambda": worst.truncation_lambda,
        "fft_samples": worst.samples,
    }


def run_inelastic(config: RunConfig, /) -> Output:
    scan = config.scan
    table = inelastic_table(
        scan.angles(), config.beam, config.laser, max_workers=scan.max_workers
    )
    rows = [
        [degrees(theta), a, b, bi, mono]
        for theta, a, b, bi, mono in zip(
            table.angles,
            table.a,
            table.b,
            table.bichromatic,
            table.monochromatic,
            strict=True,
        )
    ]
    spectrum = _spectrum_at(config, scan.theta_max)
    metadata = {"kappa": KAPPA} | _spectrum_metadata(spectrum)
    return Output(
        columns=["theta_deg", "a", "b", "bichromatic", "monochromatic"],
        rows=rows,
        metadata=metadata,
    )


def run_phase_scan(config: RunConfig, /) -> Output:
    scan = config.scan
    result = phase_scan(
        scan.theta,
        scan.orders,
        config.laser,
        config.beam,
        scan.phases(),
        max_workers=scan.max_workers,
    )
    columns = [f"phase_{scan.phase_units}", *(f"abs_c_{n}" for n in scan.orders)]
    rows = [
        [scan.phase_out(phase), *(result.magnitudes[n][i] for n in scan.orders)]
        for i, phase in enumerate(result.phases)
    ]
    metadata = result.metadata | {
        "kappa": KAPPA,
        "theta_deg": degrees(scan.theta),
        "modulation_depth": {str(n): result.modulation_depth(n) for n in scan.orders},
        **_spectrum_metadata(_spectrum_at(config, scan.theta)),
    }
    return Output(columns=columns, rows=rows, metadata=metadata)


def run_ratio_scan(config: RunConfig, /) -> Output:
    scan = config.scan
    n = scan.orders[0]
    result = ratio_scan(
        scan.theta,
        n,
        config.laser,
        config.beam,
        scan.ratios,
        scan.phases(),
        max_workers=scan.max_workers,
    )
    columns = [
        f"phase_{scan.phase_units}",
        *(f"abs_c_{n}_ratio_{ratio:g}" for ratio in scan.ratios),
    ]
    rows = [
        [scan.phase_out(phase), *(result.magnitudes[r][i] for r in scan.ratios)]
        for i, phase in enumerate(result.phases)
    ]
    depths = {f"{r:g}": result.modulation_depth(r) for r in scan.ratios}
    LOGGER.info("Phase-modulation depth of |C_%d| by ratio: %s", n, depths)
    spectra = [
        _spectrum_at(config, scan.theta, laser=laser_at_ratio(config.laser, ratio))
        for ratio in scan.ratios
    ]
    metadata = result.metadata | {
        "kappa": KAPPA,
        "theta_deg": degrees(scan.theta),
        "n": n,
        "modulation_depth": depths,
        **_spectrum_metadata(*spectra),
    }
    return Output(columns=columns, rows=rows, metadata=metadata)


def run_total(config: RunConfig, /) -> Output:
    scan = config.scan
    total = total_cross_section(
        config.beam,
        config.potential,
        theta_min=scan.theta_min,
        include_coulomb=scan.include_coulomb,
    )
    LOGGER.info(
        "Total elastic cross section above %.3g deg: %.6g mb",
        degrees(scan.theta_min),
        total,
    )
    return Output(
        columns=["theta_min_deg", "total_mb"],
        rows=[[degrees(scan.theta_min), total]],
        metadata={
            "kappa": KAPPA,
            "born_normalization": config.potential.born_normalization,
            "born_scale": born_scale(config.potential),
            "include_coulomb": scan.include_coulomb,
        },
    )


##


def settings_dict(settings: Settings, /) -> StrDict:
    return _drop_none(asdict(settings))


def _drop_none(obj: Any, /) -> Any:
    if isinstance(obj, dict):
        return {k: _drop_none(v) for k, v in obj.items() if v is not None}
    return obj


def config_echo(settings: Settings, /) -> str:
    """TOML text that loads back into `settings`."""
    return tomlkit.dumps({CONFIG_SECTION: settings_dict(settings)})


def run_metadata(settings: Settings, output: Output, /) -> StrDict:
    return {
        "tool": "bichromatic",
        "version": __version__,
        "timestamp": get_now().format_iso(),
        **_drop_none(output.metadata),
    }


def render(output: Output, settings: Settings, format_: OutputFormat, /) -> str:
    metadata = run_metadata(settings, output)
    match format_:
        case "csv":
            return render_csv(output, metadata, settings)
        case "json":
            return render_json(output, metadata, settings)
        case never:
            assert_never(never)


def render_csv(output: Output, metadata: StrDict, settings: Settings, /) -> str:
    header = tomlkit.dumps(
        {"metadata": metadata, CONFIG_SECTION: settings_dict(settings)}
    )
    lines = [f"# {line}".rstrip() for line in header.splitlines()]
    stream = StringIO()
    csv_writer = csv.writer(stream, lineterminator="\n")
    csv_writer.writerow(output.columns)
    csv_writer.writerows(output.rows)
    return "\n".join(lines) + "\n" + stream.getvalue()


def render_json(output: Output, metadata: StrDict, settings: Settings, /) -> str:
    data = {
        "schema_version": JSON_SCHEMA_VERSION,
        "metadata": metadata,
        "config": {CONFIG_SECTION: settings_dict(settings)},
        "columns": output.columns,
        "rows": output.rows,
    }
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def extract_echo(text: str, /) -> str:
    """The config echo embedded in a CSV metadata block or a JSON document."""
    if text.lstrip().startswith("{"):
        config = json.loads(text)["config"]
        return tomlkit.dumps(config)
    header = "\n".join(
        line.removeprefix("# ").removeprefix("#")
        for line in text.splitlines()
        if line.startswith("#")
    )
    document = tomlkit.parse(header)
    return tomlkit.dumps({CONFIG_SECTION: document[CONFIG_SECTION]})


def data_rows(text: str, /) -> list[str]:
    """Data lines of a CSV output, without the metadata block."""
    return [line for line in text.splitlines() if not line.startswith("#")]


def write_output(text: str, path: Path, /) -> None:
    LOGGER.info("Writing '%s'...", path)
    with writer(path, overwrite=True) as temp:
        _ = temp.write_text(text)


__all__ = [
    "Output",
    "RunConfig",
    "ScanConfig",
    "config_echo",
    "data_rows",
    "extract_echo",
    "render",
    "render_csv",
    "render_json",
    "run",
    "run_born",
    "run_dressed",
    "run_inelastic",
    "run_metadata",
    "run_phase_scan",
    "run_ratio_scan",
    "run_total",
    "settings_dict",
    "to_run_config",
    "write_output",
]
