"""Exceptions raised by tensorhn.

Library code raises these; only the command-line interface turns them into
exit codes.
"""

__all__ = [
    "TensorHNError",
    "InputError",
    "ParseError",
    "ZeroPolynomial",
    "DegreeZero",
    "ZeroDirection",
    "DegenerateTensor",
    "InvalidParameters",
    "InvalidWeights",
    "DegreeMismatch",
    "ZeroTensor",
    "NonpositiveTau",
    "InvalidDelta",
    "NotUnstable",
    "DegenerateFiber",
    "SearchError",
    "IncompleteSearch",
    "TieAnomaly",
    "ConsistencyError",
]


class TensorHNError(Exception):
    """Base class for all tensorhn errors."""


class InputError(TensorHNError, ValueError):
    """The input data cannot be processed."""


class ParseError(InputError):
    """A polynomial or rational string is malformed."""


class ZeroPolynomial(InputError):
    """An operation requires a nonzero polynomial."""


class DegreeZero(InputError):
    """Polar derivative of a form of degree zero."""


class ZeroDirection(InputError):
    """Polar derivative in the direction (0, 0)."""


class DegenerateTensor(InputError):
    """The tensor vanishes on the all-top multi-index."""


class InvalidParameters(InputError):
    """Kempf parameters are not admissible at the evaluation point."""


class InvalidWeights(InputError):
    """Filtration weights must be positive."""


class DegreeMismatch(InputError):
    """A tensor coefficient exceeds its degree bound."""


class ZeroTensor(InputError):
    """The tensor form is identically zero."""


class NonpositiveTau(InputError):
    """The stability parameter tau must be positive."""


class InvalidDelta(InputError):
    """The stability polynomial delta must have positive leading
    coefficient.
    """


class NotUnstable(InputError):
    """The Harder-Narasimhan subsheaf exists only for unstable tensors."""


class DegenerateFiber(InputError):
    """Every coefficient vanishes at the requested fiber."""


class SearchError(TensorHNError):
    """A verdict could not be certified."""


class IncompleteSearch(SearchError):
    """The candidate search skipped factors that are not defined over
    Q(x).
    """


class TieAnomaly(SearchError):
    """Two distinct subbundles attain the maximal destabilizing value."""


class ConsistencyError(TensorHNError, AssertionError):
    """Two independent computations of the same quantity disagree."""
