"""CLI for the envelope command."""

__all__ = ["envelope"]

from typing import Any, Dict, List, Tuple

import click

from tensorhn.algebra.poly import format_rational, parse_rational
from tensorhn.commands import config_options, run_command
from tensorhn.config import Config
from tensorhn.envelope.graph import (
    FiltrationGraph,
    WeightedVector,
    envelope_maximize,
    isotonic_regression,
)
from tensorhn.errors import ConsistencyError, InputError


def _rationals(document: Dict[str, Any], key: str) -> Tuple[Any, ...]:
    values = document.get(key)
    if not isinstance(values, list):
        raise InputError(f"Field {key!r} must be a list of rationals.")
    return tuple(parse_rational(value) for value in values)


def load_weighted_vector(document: Any) -> WeightedVector:
    """Weighted vector from ``{"b": [...], "v": [...]}``.

    The values may instead be given as graph heights ``"w"``, with
    ``v_i = -w_i / b_i``.
    """
    if not isinstance(document, dict) or "b" not in document:
        raise InputError("A graph document needs a 'b' list.")
    b = _rationals(document, "b")
    if "v" in document:
        return WeightedVector(b, _rationals(document, "v"))
    if "w" in document:
        w = _rationals(document, "w")
        if len(w) != len(b) or any(bi == 0 for bi in b):
            raise InputError("Fields 'b' and 'w' must match in length.")
        return FiltrationGraph(b, w).weighted_vector()
    raise InputError("A graph document needs a 'v' or a 'w' list.")


def _envelope(config: Config, document: Any) -> Tuple[Dict[str, Any], List]:
    wv = load_weighted_vector(document)
    result = envelope_maximize(wv)
    pooled = isotonic_regression(wv.b, wv.v)
    if pooled != result.gamma:
        raise ConsistencyError(
            f"Envelope slopes {result.gamma} differ from the isotonic "
            f"fit {pooled}."
        )
    payload = result.to_dict()
    payload["graph"] = FiltrationGraph(wv.b, wv.heights).to_dict()
    payload["v"] = [format_rational(x) for x in wv.v]
    return payload, []


@click.command("envelope")
@config_options
@click.pass_context
def envelope(ctx: click.Context) -> None:
    """Maximize a weighted graph through its concave envelope.

    Reads ``{"b": [...], "v": [...]}`` and reports the maximizer Gamma,
    the signed square of its value and the pooled blocks.
    """
    run_command(ctx, "envelope", _envelope)
