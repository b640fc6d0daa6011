"""Tensorhn Command Line Interface."""

__all__ = ("main", "help", "selftest")

from typing import Any, Optional

import click

from tensorhn.algebra.poly import RationalPoly, parse_rational
from tensorhn.commands import (
    CommandError,
    config_options,
    run_command,
    setup_logging,
)
from tensorhn.config import LOG_LEVELS, OUTPUT_FORMATS, Config
from tensorhn.coverings.cli import covering, fiber
from tensorhn.envelope.cli import envelope
from tensorhn.errors import InputError
from tensorhn.selftest import run_selftest
from tensorhn.tensors.cli import hn, kempf, stability

# Add -h as a help shortcut option
CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])


@click.group(context_settings=CONTEXT_SETTINGS)
@click.option(
    "-i",
    "--input",
    "input_path",
    envvar="TENSORHN_INPUT",
    default="-",
    show_default=True,
    help=(
        "JSON input document, - for standard input. "
        "Alternatively set via $TENSORHN_INPUT env var."
    ),
)
@click.option(
    "--tau",
    envvar="TENSORHN_TAU",
    default="1",
    show_default=True,
    help=(
        "Stability parameter as an exact rational, e.g. 7/2. "
        "Alternatively set via $TENSORHN_TAU env var."
    ),
)
@click.option(
    "--delta",
    envvar="TENSORHN_DELTA",
    default="1",
    show_default=True,
    help=(
        "Stability polynomial in m with rational coefficients, e.g. m+1/2. "
        "Alternatively set via $TENSORHN_DELTA env var."
    ),
)
@click.option(
    "--m",
    "m",
    envvar="TENSORHN_M",
    type=int,
    default=20,
    show_default=True,
    help=(
        "Evaluation point of the Kempf function. "
        "Alternatively set via $TENSORHN_M env var."
    ),
)
@click.option(
    "--strict",
    envvar="TENSORHN_STRICT",
    is_flag=True,
    help=(
        "Exit with code 3 when a verdict cannot be certified. "
        "Alternatively set via $TENSORHN_STRICT env var."
    ),
)
@click.option(
    "-j",
    "--jobs",
    envvar="TENSORHN_JOBS",
    type=int,
    default=1,
    show_default=True,
    help=(
        "Worker processes for candidate evaluation. "
        "Alternatively set via $TENSORHN_JOBS env var."
    ),
)
@click.option(
    "-f",
    "--format",
    "output_format",
    envvar="TENSORHN_FORMAT",
    type=click.Choice(OUTPUT_FORMATS),
    default="json",
    show_default=True,
    help="Report format. Alternatively set via $TENSORHN_FORMAT env var.",
)
@click.option(
    "--log-level",
    envvar="TENSORHN_LOG_LEVEL",
    type=click.Choice(LOG_LEVELS, case_sensitive=False),
    default="WARNING",
    show_default=True,
    help=(
        "Level of log messages on standard error. "
        "Alternatively set via $TENSORHN_LOG_LEVEL env var."
    ),
)
@click.version_option(message="%(version)s")
@click.pass_context
def main(
    ctx: click.Context,
    input_path: str,
    tau: str,
    delta: str,
    m: int,
    strict: bool,
    jobs: int,
    output_format: str,
    log_level: str,
) -> None:
    """Command-line interface for tensorhn.

    tensorhn decides the stability of rank two tensors over the projective
    line with exact arithmetic, finds their Harder-Narasimhan subsheaf and
    evaluates the Kempf function of the destabilizing filtration.
    """
    try:
        config = Config(
            input=input_path,
            tau=parse_rational(tau),
            delta=RationalPoly.parse(delta),
            m=m,
            strict=strict,
            jobs=jobs,
            output_format=output_format,
            log_level=log_level,
        )
    except InputError as e:
        raise CommandError(str(e), exit_code=2) from e
    setup_logging(config.log_level)
    ctx.ensure_object(dict)
    ctx.obj["config"] = config


@main.command()
@click.argument("topic", default=None, required=False, nargs=1)
@click.pass_context
def help(ctx: click.Context, topic: Optional[str], **kw: Any) -> None:
    """Show help for any command."""
    # The help command implementation is taken from
    # https://www.burgundywall.com/post/having-click-help-subcommand
    if topic:
        if topic in main.commands:
            ctx.info_name = topic
            click.echo(main.commands[topic].get_help(ctx))
        else:
            raise click.UsageError(f"Unknown help topic {topic}", ctx)
    else:
        assert ctx.parent
        click.echo(ctx.parent.get_help())


@main.command("selftest")
@config_options
@click.option(
    "--seed", default=0, show_default=True, help="Random seed of the suites."
)
@click.option(
    "--count",
    default=100,
    show_default=True,
    help="Random inputs per suite.",
)
@click.pass_context
def selftest(ctx: click.Context, seed: int, count: int) -> None:
    """Run the embedded oracle checks.

    Exits with code 1 if any suite fails.
    """
    suites = run_selftest(seed=seed, count=count)
    run_command(
        ctx,
        "selftest",
        lambda config, document: (
            {
                "seed": seed,
                "suites": [suite.to_dict() for suite in suites],
            },
            [],
        ),
        needs_input=False,
    )
    if not all(suite.passed for suite in suites):
        ctx.exit(1)


# Add subcommands from other modules
main.add_command(envelope)
main.add_command(stability)
main.add_command(hn)
main.add_command(kempf)
main.add_command(covering)
main.add_command(fiber)
