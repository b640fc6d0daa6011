"""Degree ``s`` coverings inside the ruled surface of a rank two bundle.

A tensor ``(E, phi)`` on the projective line cuts out a curve in
``P(E)`` that covers the line with degree ``s``. After twisting so that
``max(a, b) = 0`` the surface has invariant ``e = -deg E'`` and a line
subbundle ``L`` becomes a section ``D`` with ``deg L = -e - C0.D``.
"""

__all__ = [
    "NormalizedTensor",
    "SectionDivisor",
    "CoveringCandidate",
    "CoveringReport",
    "FiberClassification",
    "normalize",
    "intersection_numbers",
    "covering_value",
    "covering_stability",
    "fiber_point_stability",
]

import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

from tensorhn.algebra.forms import BinaryFormOverP1, Direction
from tensorhn.algebra.poly import (
    RationalPoly,
    format_rational,
    squarefree_decompose,
)
from tensorhn.errors import ConsistencyError, DegenerateFiber
from tensorhn.tensors.bundle import LineSubbundle, Rank2Tensor
from tensorhn.tensors.stability import (
    Verdict,
    epsilon_of,
    is_nondegenerate,
    stability,
)

logger = logging.getLogger("tensorhn")


@dataclass(frozen=True)
class NormalizedTensor:
    """A tensor twisted by ``O(twist)`` so that ``max(a, b) = 0``."""

    tensor: Rank2Tensor
    twist: int

    @property
    def e(self) -> int:
        """Invariant ``e = -deg E'`` of the ruled surface."""
        return -self.tensor.bundle.deg


@dataclass(frozen=True)
class SectionDivisor:
    """Intersection data of the section given by a line subbundle."""

    section: LineSubbundle
    deg_sigma: int
    C0_dot_D: int
    branches: int
    """Branches of the covering that generically coincide with ``D``."""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "section": self.section.to_dict(),
            "deg_sigma": self.deg_sigma,
            "C0_dot_D": self.C0_dot_D,
            "branches": self.branches,
        }


@dataclass(frozen=True)
class CoveringCandidate:
    divisor: SectionDivisor
    value: Fraction

    def to_dict(self) -> Dict[str, Any]:
        data = self.divisor.to_dict()
        data["value"] = format_rational(self.value)
        return data


@dataclass(frozen=True)
class FiberClassification:
    """Point configuration cut out on the fiber over ``x = x0``."""

    x0: Fraction
    coeffs: Tuple[Fraction, ...]
    max_multiplicity: int
    verdict: Verdict
    direction_multiplicity: Optional[int] = None
    """Multiplicity at the fiber point of a given section, if asked."""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "x0": format_rational(self.x0),
            "coeffs": [format_rational(c) for c in self.coeffs],
            "max_multiplicity": self.max_multiplicity,
            "verdict": self.verdict.value,
            "direction_multiplicity": self.direction_multiplicity,
        }


@dataclass(frozen=True)
class CoveringReport:
    """Stability of the covering, with the section that destabilizes it."""

    verdict: Verdict
    hn_section: Optional[SectionDivisor]
    value: Fraction
    e: int
    twist: int
    fiber_samples: Tuple[FiberClassification, ...]
    candidates: Tuple[CoveringCandidate, ...]
    complete: bool
    tie: bool
    nondegenerate: bool

    @property
    def warnings(self) -> List[str]:
        messages = []
        if not self.complete:
            messages.append(
                "Candidate search is incomplete: the covering has a "
                "multisection component."
            )
        if self.tie:
            messages.append(
                "Tie anomaly: several sections attain the maximal value."
            )
        return messages

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "value": format_rational(self.value),
            "e": self.e,
            "twist": self.twist,
            "hn_section": (
                self.hn_section.to_dict() if self.hn_section else None
            ),
            "fiber_samples": [f.to_dict() for f in self.fiber_samples],
            "candidates": [c.to_dict() for c in self.candidates],
            "complete": self.complete,
            "tie": self.tie,
            "nondegenerate": self.nondegenerate,
        }


def normalize(T: Rank2Tensor) -> NormalizedTensor:
    """Twist by ``k = -max(a, b)``; coefficients stay the same
    polynomials.
    """
    k = -T.bundle.a
    return NormalizedTensor(T.twist(k), k)


def intersection_numbers(
    L: LineSubbundle, N: NormalizedTensor, epsilon: Optional[int] = None
) -> SectionDivisor:
    """Section data of ``L`` (a subbundle of the normalized bundle).

    ``C0.D = -e - deg L`` and ``D`` carries ``s - epsilon`` branches;
    ``epsilon`` is computed from the tensor when it is not given.
    """
    if epsilon is None:
        epsilon = epsilon_of(L, N.tensor)
    return SectionDivisor(
        section=L,
        deg_sigma=L.c,
        C0_dot_D=-N.e - L.c,
        branches=N.tensor.s - epsilon,
    )


def covering_value(
    divisor: SectionDivisor, e: int, s: int, tau: Fraction
) -> Fraction:
    """``-2 C0.D - e + tau (s - 2 eps(D))``."""
    epsilon = s - divisor.branches
    return -2 * divisor.C0_dot_D - e + Fraction(tau) * (s - 2 * epsilon)


def _fiber_verdict(multiplicity: int, s: int) -> Verdict:
    return Verdict.from_sign(2 * multiplicity - s)


def fiber_point_stability(
    T: Rank2Tensor, x0: Fraction, direction: Optional[Direction] = None
) -> FiberClassification:
    """Classify the ``s`` points of the fiber over ``x = x0``.

    Multiplicities over the complex numbers come from the squarefree
    decomposition of the dehomogenized form together with the order of
    the point at infinity ``(1 : 0)``. The configuration is unstable when
    one point has multiplicity above ``s/2``, semistable when the largest
    one is exactly ``s/2`` and stable otherwise.

    Raises
    ------
    DegenerateFiber
        If every coefficient vanishes at ``x0``.
    """
    x0 = Fraction(x0)
    coeffs = T.form.specialize(x0)
    if not any(coeffs):
        raise DegenerateFiber(
            f"Every coefficient of the tensor vanishes at x = "
            f"{format_rational(x0)}."
        )
    f = RationalPoly(coeffs)
    at_infinity = T.s - int(f.degree)
    finite = [m for _, m in squarefree_decompose(f).factors]
    max_multiplicity = max([at_infinity] + finite)
    direction_multiplicity = None
    if direction is not None:
        p, q = direction
        fiber_form = BinaryFormOverP1.from_coeffs(
            [RationalPoly.constant(c) for c in coeffs]
        )
        direction_multiplicity = fiber_form.multiplicity_at(
            RationalPoly.constant(p(x0)), RationalPoly.constant(q(x0))
        )
    verdict = _fiber_verdict(max_multiplicity, T.s)
    logger.debug(
        "Fiber at x=%s: max multiplicity %d, %s",
        x0,
        max_multiplicity,
        verdict.value,
    )
    return FiberClassification(
        x0=x0,
        coeffs=coeffs,
        max_multiplicity=max_multiplicity,
        verdict=verdict,
        direction_multiplicity=direction_multiplicity,
    )


def _sample_fibers(
    T: Rank2Tensor,
    fibers: Sequence[Fraction],
    direction: Optional[Direction],
    jobs: int,
) -> Tuple[FiberClassification, ...]:
    if jobs <= 1 or len(fibers) <= 1:
        return tuple(fiber_point_stability(T, x, direction) for x in fibers)
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return tuple(
            executor.map(
                fiber_point_stability,
                itertools.repeat(T),
                fibers,
                itertools.repeat(direction),
            )
        )


def covering_stability(
    T: Rank2Tensor,
    tau: Fraction,
    fibers: Sequence[Fraction] = (),
    jobs: int = 1,
    strict: bool = False,
) -> CoveringReport:
    """tau-stability of the covering attached to ``T``.

    The tensor is normalized, its candidate subbundles are turned into
    sections and each one is scored with ``-2 C0.D - e + tau (s - 2 eps)``.
    The fibers in ``fibers`` are classified, with the multiplicity at the
    Harder-Narasimhan section when the covering is unstable.

    Raises
    ------
    ConsistencyError
        If a section score differs from the bundle side value.
    """
    N = normalize(T)
    report = stability(N.tensor, tau, jobs=jobs, strict=strict)
    candidates = []
    for row in report.candidates:
        divisor = intersection_numbers(row.section, N, row.epsilon)
        value = covering_value(divisor, N.e, T.s, tau)
        if value != row.value or divisor.deg_sigma + divisor.C0_dot_D != -N.e:
            raise ConsistencyError(
                f"Section {row.section} scores {value} but the subbundle "
                f"value is {row.value}."
            )
        candidates.append(CoveringCandidate(divisor, value))
    hn_section: Optional[SectionDivisor] = None
    direction: Optional[Direction] = None
    if report.verdict is Verdict.UNSTABLE:
        winner = next(c for c in candidates if c.value == report.value)
        hn_section = winner.divisor
        direction = winner.divisor.section.direction
    samples = _sample_fibers(
        N.tensor, [Fraction(x) for x in fibers], direction, jobs
    )
    return CoveringReport(
        verdict=report.verdict,
        hn_section=hn_section,
        value=report.value,
        e=N.e,
        twist=N.twist,
        fiber_samples=samples,
        candidates=tuple(candidates),
        complete=report.complete,
        tie=report.tie,
        nondegenerate=is_nondegenerate(T),
    )
