"""Plumbing shared by the subcommands: options, input, reports and exit
codes.
"""

__all__ = [
    "CommandError",
    "Builder",
    "config_options",
    "override_config",
    "run_command",
    "setup_logging",
]

import dataclasses
import functools
import logging
import sys
from typing import Any, Callable, Dict, List, Optional, Tuple

import click

from tensorhn.algebra.poly import RationalPoly, parse_rational
from tensorhn.config import LOG_LEVELS, OUTPUT_FORMATS, Config
from tensorhn.errors import ConsistencyError, InputError, SearchError
from tensorhn.report import Report, read_document

Builder = Callable[[Config, Any], Tuple[Dict[str, Any], List[str]]]
"""Turn the configuration and the input document into a result payload
and a list of warnings.
"""


class CommandError(click.ClickException):
    """A `click.ClickException` with a configurable exit code.

    Input errors exit with code 2, uncertified verdicts under
    ``--strict`` with code 3 and failed consistency checks with code 1.
    """

    def __init__(self, message: str, exit_code: int = 2) -> None:
        super().__init__(message)
        self.exit_code = exit_code


def setup_logging(level: str) -> None:
    """Send log messages of at least ``level`` to standard error."""
    logging.basicConfig(
        level=level.upper(),
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def override_config(
    config: Config,
    input_path: Optional[str] = None,
    tau: Optional[str] = None,
    delta: Optional[str] = None,
    m: Optional[int] = None,
    strict: bool = False,
    jobs: Optional[int] = None,
    output_format: Optional[str] = None,
    log_level: Optional[str] = None,
) -> Config:
    """Copy of ``config`` with the options that were given replaced.

    Raises
    ------
    InputError
        If a new value is malformed or out of range.
    """
    changes: Dict[str, Any] = {}
    if input_path is not None:
        changes["input"] = input_path
    if tau is not None:
        changes["tau"] = parse_rational(tau)
    if delta is not None:
        changes["delta"] = RationalPoly.parse(delta)
    if m is not None:
        changes["m"] = m
    if strict:
        changes["strict"] = True
    if jobs is not None:
        changes["jobs"] = jobs
    if output_format is not None:
        changes["output_format"] = output_format
    if log_level is not None:
        changes["log_level"] = log_level
    return dataclasses.replace(config, **changes)


_OPTIONS = (
    click.option(
        "-i",
        "--input",
        "input_path",
        default=None,
        help="JSON input document, - for standard input.",
    ),
    click.option("--tau", default=None, help="Stability parameter, e.g. 7/2."),
    click.option(
        "--delta", default=None, help="Stability polynomial in m, e.g. m+1."
    ),
    click.option(
        "--m", "m", type=int, default=None, help="Kempf evaluation point."
    ),
    click.option(
        "--strict",
        is_flag=True,
        help="Exit with code 3 when a verdict cannot be certified.",
    ),
    click.option(
        "-j", "--jobs", type=int, default=None, help="Worker processes."
    ),
    click.option(
        "-f",
        "--format",
        "output_format",
        type=click.Choice(OUTPUT_FORMATS),
        default=None,
        help="Report format.",
    ),
    click.option(
        "--log-level",
        type=click.Choice(LOG_LEVELS, case_sensitive=False),
        default=None,
        help="Level of log messages on standard error.",
    ),
)

_OPTION_NAMES = (
    "input_path",
    "tau",
    "delta",
    "m",
    "strict",
    "jobs",
    "output_format",
    "log_level",
)


def config_options(command: Callable[..., Any]) -> Callable[..., Any]:
    """Accept the global options after the subcommand name too.

    Options given to the subcommand replace the ones given to the group.
    """

    @functools.wraps(command)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        options = {name: kwargs.pop(name) for name in _OPTION_NAMES}
        ctx = click.get_current_context()
        ctx.ensure_object(dict)
        try:
            ctx.obj["config"] = override_config(
                ctx.obj.get("config", Config()), **options
            )
        except InputError as e:
            raise CommandError(str(e), exit_code=2) from e
        if options["log_level"] is not None:
            setup_logging(options["log_level"])
        return command(*args, **kwargs)

    decorated: Callable[..., Any] = wrapper
    for option in reversed(_OPTIONS):
        decorated = option(decorated)
    return decorated


def run_command(
    ctx: click.Context,
    command: str,
    build: Builder,
    needs_input: bool = True,
) -> None:
    """Read the input, run ``build`` and echo the report."""
    config: Config = ctx.obj["config"]
    raw = b""
    document = None
    try:
        if needs_input:
            raw, document = read_document(config.input)
        result, warnings = build(config, document)
    except SearchError as e:
        raise CommandError(str(e), exit_code=3) from e
    except InputError as e:
        raise CommandError(str(e), exit_code=2) from e
    except ConsistencyError as e:
        raise CommandError(str(e), exit_code=1) from e
    report = Report(
        command=command,
        inputs_digest=Report.digest(raw) if needs_input else "",
        options=config.to_dict(),
        result=result,
        warnings=warnings,
    )
    click.echo(report.render(config.output_format))
