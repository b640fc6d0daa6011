"""CLI for the tensor stability commands."""

__all__ = ["stability", "hn", "kempf"]

import logging
from typing import Any, Dict, List, Tuple

import click

from tensorhn.commands import config_options, run_command
from tensorhn.config import Config
from tensorhn.envelope.graph import KempfParameters
from tensorhn.errors import InvalidParameters, TieAnomaly
from tensorhn.tensors import stability as library
from tensorhn.tensors.bundle import validate_tensor

logger = logging.getLogger("tensorhn")

Result = Tuple[Dict[str, Any], List[str]]


def _stability(config: Config, document: Any) -> Result:
    T = validate_tensor(document)
    report = library.stability(
        T, config.tau, jobs=config.jobs, strict=config.strict
    )
    if config.strict and report.tie:
        raise TieAnomaly(report.warnings[-1])
    return report.to_dict(), report.warnings


def _hn(config: Config, document: Any) -> Result:
    T = validate_tensor(document)
    report = library.stability(
        T, config.tau, jobs=config.jobs, strict=config.strict
    )
    result: Dict[str, Any] = {
        "verdict": report.verdict.value,
        "value": report.to_dict()["value"],
        "hn": None,
    }
    warnings = report.warnings
    if report.verdict is not library.Verdict.UNSTABLE:
        return result, warnings
    try:
        hn_result = library.hn_subsheaf(
            T, config.tau, jobs=config.jobs, strict=config.strict
        )
    except TieAnomaly as e:
        if config.strict:
            raise
        logger.warning("%s", e)
        return result, warnings
    result["hn"] = hn_result.to_dict()
    return result, warnings


def _kempf(config: Config, document: Any) -> Result:
    T = validate_tensor(document)
    params = KempfParameters(
        r=2, s=T.s, delta=config.delta, P=T.bundle.hilbert_polynomial()
    )
    params.ratio(config.m)
    report = library.delta_stability(T, config.delta, strict=config.strict)
    if config.strict and report.tie:
        raise TieAnomaly("Several subbundles attain the maximal K.")
    warnings: List[str] = []
    identifications: List[library.KempfIdentification] = []
    for candidate in report.candidates:
        try:
            identifications.append(
                library.kempf_identification(
                    T, candidate.section, config.delta, config.m
                )
            )
        except InvalidParameters as e:
            logger.warning("%s", e)
            warnings.append(f"Skipped {candidate.section}: {e}")
    result = report.to_dict()
    result["m"] = config.m
    result["identifications"] = [
        {
            "section": ident.section.to_dict(),
            "epsilon": ident.epsilon,
            "K_value": ident.to_dict()["K_value"],
            "kempf_sign": ident.kempf.sign,
            "kempf_square": ident.kempf.to_dict()["square"],
            "closed_form_square": ident.closed_form.to_dict()["square"],
            "envelope_square": ident.envelope_mu.to_dict()["square"],
            "filter_dimension": (
                str(ident.filter_dimension)
                if ident.filter_dimension is not None
                else None
            ),
        }
        for ident in identifications
    ]
    if not report.complete:
        warnings.append("Candidate search is incomplete.")
    if report.tie:
        warnings.append("Tie anomaly: several subbundles attain the maximum.")
    return result, warnings


@click.command("stability")
@config_options
@click.pass_context
def stability(ctx: click.Context) -> None:
    """Decide tau-stability of a tensor.

    Reads a tensor JSON document and reports the verdict, the maximal
    destabilizing value and the candidate table.
    """
    run_command(ctx, "stability", _stability)


@click.command("hn")
@config_options
@click.pass_context
def hn(ctx: click.Context) -> None:
    """Find the Harder-Narasimhan subsheaf of a tau-unstable tensor.

    The ``hn`` field is null when the tensor is not unstable.
    """
    run_command(ctx, "hn", _hn)


@click.command("kempf")
@config_options
@click.pass_context
def kempf(ctx: click.Context) -> None:
    """Evaluate the Kempf function of every candidate filtration.

    Uses the --delta polynomial and the --m evaluation point; the witness
    is the candidate whose K polynomial is eventually largest.
    """
    run_command(ctx, "kempf", _kempf)
