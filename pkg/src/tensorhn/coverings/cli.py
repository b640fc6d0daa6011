"""CLI for the covering and fiber commands."""

__all__ = ["covering", "fiber"]

from typing import Any, Dict, List, Sequence, Tuple

import click

from tensorhn.algebra.poly import parse_rational
from tensorhn.commands import config_options, run_command
from tensorhn.config import Config
from tensorhn.coverings.surface import (
    covering_stability,
    fiber_point_stability,
)
from tensorhn.errors import InputError, TieAnomaly
from tensorhn.tensors.bundle import validate_tensor

Result = Tuple[Dict[str, Any], List[str]]


def _fibers(document: Any) -> List[Any]:
    raw = document.get("fibers", []) if isinstance(document, dict) else []
    if not isinstance(raw, list):
        raise InputError("Field 'fibers' must be a list of rationals.")
    return [parse_rational(x) for x in raw]


def _covering(config: Config, document: Any) -> Result:
    T = validate_tensor(document)
    report = covering_stability(
        T,
        config.tau,
        fibers=_fibers(document),
        jobs=config.jobs,
        strict=config.strict,
    )
    if config.strict and report.tie:
        raise TieAnomaly(report.warnings[-1])
    return report.to_dict(), report.warnings


@click.command("covering")
@config_options
@click.pass_context
def covering(ctx: click.Context) -> None:
    """Decide tau-stability of the covering attached to a tensor.

    Reads a tensor JSON document, optionally with a ``fibers`` list of
    rational points whose fibers are classified as well.
    """
    run_command(ctx, "covering", _covering)


@click.command("fiber")
@config_options
@click.option(
    "--x",
    "points",
    multiple=True,
    required=True,
    help="Rational point of the base; may be repeated.",
)
@click.pass_context
def fiber(ctx: click.Context, points: Sequence[str]) -> None:
    """Classify the point configurations in fibers of the covering."""

    def build(config: Config, document: Any) -> Result:
        T = validate_tensor(document)
        samples = [
            fiber_point_stability(T, parse_rational(x)) for x in points
        ]
        return {"fibers": [s.to_dict() for s in samples]}, []

    run_command(ctx, "fiber", build)
