"""Tensorhn run configuration."""

__all__ = ["Config", "OUTPUT_FORMATS", "LOG_LEVELS"]

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict

from tensorhn.algebra.poly import RationalPoly, format_rational
from tensorhn.errors import (
    InputError,
    InvalidDelta,
    InvalidParameters,
    NonpositiveTau,
)

OUTPUT_FORMATS = ("json", "table")

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR")


@dataclass
class Config:
    """Application configuration."""

    input: str = "-"
    """Path of the JSON input document, ``-`` for standard input.
    """

    tau: Fraction = Fraction(1)
    """Stability parameter for the ``stability``, ``hn`` and ``covering``
       commands. Must be positive.
    """

    delta: RationalPoly = RationalPoly.constant(1)
    """Stability polynomial in ``m`` for the ``kempf`` command.
       Must have a positive leading coefficient.
    """

    m: int = 20
    """Evaluation point of the Kempf function.
    """

    strict: bool = False
    """Fail with exit code 3 when a verdict cannot be certified.
       Default: False
    """

    jobs: int = 1
    """Number of worker processes used to evaluate candidates.
    """

    output_format: str = "json"
    """Either ``json`` or ``table``.
    """

    log_level: str = "WARNING"
    """Level of the messages written to standard error.
    """

    def __post_init__(self) -> None:
        """Post init validation."""
        if self.tau <= 0:
            raise NonpositiveTau(
                f"'tau' must be positive, got {format_rational(self.tau)}."
            )
        if self.delta.is_zero or self.delta.leading <= 0:
            raise InvalidDelta(
                f"'delta' = {self.delta.to_string('m')} needs a positive "
                "leading coefficient."
            )
        if self.m < 1:
            raise InvalidParameters(f"'m' must be positive, got {self.m}.")
        if self.jobs < 1:
            raise InputError(f"'jobs' must be at least 1, got {self.jobs}.")
        if self.output_format not in OUTPUT_FORMATS:
            raise InputError(
                f"'output_format' must be one of {', '.join(OUTPUT_FORMATS)}."
            )
        if self.log_level.upper() not in LOG_LEVELS:
            raise InputError(
                f"'log_level' must be one of {', '.join(LOG_LEVELS)}."
            )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "input": self.input,
            "tau": format_rational(self.tau),
            "delta": self.delta.to_string("m"),
            "m": self.m,
            "strict": self.strict,
            "jobs": self.jobs,
            "output_format": self.output_format,
            "log_level": self.log_level.upper(),
        }
