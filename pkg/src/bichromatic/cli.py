from __future__ import annotations

import sys
from typing import TYPE_CHECKING, NoReturn

from click import echo, group, version_option
from rich.console import Console
from rich.pretty import pretty_repr
from typed_settings import click_options
from utilities.click import CONTEXT_SETTINGS
from utilities.inflect import counted_noun
from utilities.logging import basic_config
from utilities.os import is_pytest
from utilities.text import strip_and_dedent

from bichromatic import __version__
from bichromatic.errors import ComputationError, ConfigError
from bichromatic.lib import render, run, to_run_config, write_output
from bichromatic.logging import LOGGER
from bichromatic.settings import LOADERS, Settings
from bichromatic.validate import report, run_validation

if TYPE_CHECKING:
    from bichromatic.types import Subcommand, TableSubcommand


@group(**CONTEXT_SETTINGS)
@version_option(__version__)
def _main() -> None:
    if not is_pytest():
        basic_config(obj=LOGGER)


@_main.command(**CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def born(settings: Settings, /) -> None:
    """Born elastic cross section over the angle grid."""
    _run_table("born", settings)


@_main.command(**CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def dressed(settings: Settings, /) -> None:
    """Laser-dressed cross sections for each photon order in --n."""
    _run_table("dressed", settings)


@_main.command(**CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def inelastic(settings: Settings, /) -> None:
    """Photon-exchange probability, bichromatic and monochromatic."""
    _run_table("inelastic", settings)


@_main.command(name="phase-scan", **CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def phase_scan(settings: Settings, /) -> None:
    """|C_n| against the relative phase at --theta."""
    _run_table("phase-scan", settings)


@_main.command(name="ratio-scan", **CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def ratio_scan(settings: Settings, /) -> None:
    """|C_n| against the relative phase for each intensity ratio in --ratios."""
    _run_table("ratio-scan", settings)


@_main.command(**CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def total(settings: Settings, /) -> None:
    """Angle-integrated elastic cross section above --theta-min."""
    _run_table("total", settings)


@_main.command(**CONTEXT_SETTINGS)
@click_options(Settings, LOADERS, show_envvars_in_help=True)
def validate(settings: Settings, /) -> None:
    """Compare every closed form against its oracle and print a report."""
    _log_banner("validate", settings)
    try:
        config = to_run_config(settings)
        checks = run_validation(beam=config.beam, params=config.potential)
    except ConfigError as error:
        _fail(error, code=1)
    except ComputationError as error:
        _fail(error, code=2)
    Console().print(report(checks))
    failed = [check for check in checks if not check.passed]
    if len(failed) >= 1:
        LOGGER.error(
            "%s: %s",
            counted_noun(failed, "failed check"),
            ", ".join(check.name for check in failed),
        )
        sys.exit(2)


##


def _run_table(subcommand: TableSubcommand, settings: Settings, /) -> None:
    _log_banner(subcommand, settings)
    try:
        config = to_run_config(settings)
        output = run(subcommand, config)
    except ConfigError as error:
        _fail(error, code=1)
    except ComputationError as error:
        _fail(error, code=2)
    text = render(output, settings, config.scan.format)
    if config.scan.output is None:
        echo(text, nl=False)
    else:
        write_output(text, config.scan.output)
    LOGGER.info("Finished with %s", counted_noun(output.rows, "row"))


def _log_banner(subcommand: Subcommand, settings: Settings, /) -> None:
    LOGGER.info(
        strip_and_dedent("""
            Running 'bichromatic %s' (version %s) with settings:
            %s
        """),
        subcommand,
        __version__,
        pretty_repr(settings),
    )


def _fail(error: Exception, /, *, code: int) -> NoReturn:
    echo(f"Error: {error}", err=True)
    sys.exit(code)


if __name__ == "__main__":
    _main()
