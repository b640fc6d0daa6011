"""Stability of rank two tensors on the projective line.

Only one-step filtrations ``0 < L < E`` matter in rank two, so a verdict is
the maximum of ``2 deg L - deg E + tau (s - 2 eps(L))`` over line
subbundles ``L``. That maximum is attained on a finite candidate set:

* if ``eps(L) < s`` the direction of ``L`` is a root of the form over
  Q(x), so ``L`` is one of the root sections;
* if ``eps(L) = s`` the value is ``2 deg L - deg E - tau s``, largest for
  the subbundle of largest degree that is not a root: the first factor
  ``O(a)`` when ``(1, 0)`` is not a root, otherwise a constant section of
  degree ``b`` (degrees above ``b`` force ``q = 0``).
"""

__all__ = [
    "Verdict",
    "Candidate",
    "CandidateSet",
    "StabilityReport",
    "CorrectedPolys",
    "HNResult",
    "DeltaCandidate",
    "DeltaReport",
    "KempfIdentification",
    "polar_epsilon",
    "epsilon_of",
    "destabilizing_value",
    "K_polynomial",
    "corrected_polys",
    "candidate_sections",
    "is_nondegenerate",
    "stability",
    "hn_subsheaf",
    "delta_stability",
    "kempf_identification",
    "weighted_filtration_value",
]

import functools
import itertools
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

from tensorhn.algebra.forms import polar_derivative, rational_function_roots
from tensorhn.algebra.poly import (
    EventualOrder,
    RationalPoly,
    eventual_compare,
    format_rational,
)
from tensorhn.envelope.graph import (
    EnvelopeResult,
    FiltrationData,
    FiltrationGraph,
    KempfParameters,
    SignedSquare,
    build_graph,
    envelope_maximize,
    kempf_function,
)
from tensorhn.envelope.multiindex import epsilon_from_oracle, mu_closed_form
from tensorhn.errors import (
    ConsistencyError,
    IncompleteSearch,
    InputError,
    InvalidDelta,
    InvalidParameters,
    InvalidWeights,
    NonpositiveTau,
    NotUnstable,
    TieAnomaly,
)
from tensorhn.tensors.bundle import (
    LineSubbundle,
    Rank2Tensor,
    hilbert_polynomial,
)

logger = logging.getLogger("tensorhn")

ONE = RationalPoly.constant(1)


class Verdict(Enum):
    """Stability verdict."""

    STABLE = "stable"
    SEMISTABLE = "semistable"
    UNSTABLE = "unstable"

    @classmethod
    def from_sign(cls, sign: int) -> "Verdict":
        """Verdict for the sign of the maximal destabilizing quantity."""
        if sign > 0:
            return cls.UNSTABLE
        if sign == 0:
            return cls.SEMISTABLE
        return cls.STABLE


@dataclass(frozen=True)
class Candidate:
    """One row of the candidate table."""

    section: LineSubbundle
    epsilon: int
    value: Fraction

    def to_dict(self) -> Dict[str, Any]:
        return {
            "section": self.section.to_dict(),
            "epsilon": self.epsilon,
            "value": format_rational(self.value),
        }


@dataclass(frozen=True)
class CandidateSet:
    """Subbundles on which the destabilizing maximum is attained."""

    sections: Tuple[Tuple[LineSubbundle, int], ...]
    """Pairs ``(L, eps(L))``: root sections first, then the ``eps = s``
    representative.
    """

    complete: bool
    """False when the form keeps a factor without Q(x)-linear factors."""

    residual_degree: int


@dataclass(frozen=True)
class StabilityReport:
    """Outcome of the tau-stability test."""

    verdict: Verdict
    witness: Optional[LineSubbundle]
    value: Fraction
    candidates: Tuple[Candidate, ...]
    complete: bool
    tie: bool
    nondegenerate: bool

    @property
    def maximizers(self) -> List[Candidate]:
        return [c for c in self.candidates if c.value == self.value]

    @property
    def warnings(self) -> List[str]:
        messages = []
        if not self.complete:
            messages.append(
                "Candidate search is incomplete: the form has a factor "
                "without linear factors over Q(x)."
            )
        if self.tie:
            messages.append(
                "Tie anomaly: several subbundles attain the maximal value."
            )
        return messages

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "value": format_rational(self.value),
            "witness": self.witness.to_dict() if self.witness else None,
            "complete": self.complete,
            "tie": self.tie,
            "nondegenerate": self.nondegenerate,
            "candidates": [c.to_dict() for c in self.candidates],
        }


@dataclass(frozen=True)
class CorrectedPolys:
    """Hilbert polynomials corrected by the tensor contribution.

    ``P_bar_E = P_E - s*delta``, ``P_bar_L = P_L - eps(L)*delta`` and the
    quotient is their difference.
    """

    P_bar_E: RationalPoly
    P_bar_L: RationalPoly
    P_bar_quotient: RationalPoly

    @property
    def unstable_difference(self) -> RationalPoly:
        """``2*P_bar_L - P_bar_E``; eventually positive iff ``L``
        destabilizes.
        """
        return self.P_bar_L * 2 - self.P_bar_E

    @property
    def destabilizes(self) -> bool:
        order = eventual_compare(RationalPoly(), self.unstable_difference)
        return order is EventualOrder.PRECEDES

    def to_dict(self) -> Dict[str, Any]:
        return {
            "P_bar_E": self.P_bar_E.to_string("m"),
            "P_bar_L": self.P_bar_L.to_string("m"),
            "P_bar_quotient": self.P_bar_quotient.to_string("m"),
            "two_P_bar_L_minus_P_bar_E": self.unstable_difference.to_string(
                "m"
            ),
        }


@dataclass(frozen=True)
class HNResult:
    """Harder-Narasimhan subsheaf of an unstable tensor."""

    section: LineSubbundle
    epsilon: int
    value: Fraction
    corrected: CorrectedPolys

    def to_dict(self) -> Dict[str, Any]:
        return {
            "section": self.section.to_dict(),
            "epsilon": self.epsilon,
            "value": format_rational(self.value),
            "corrected": self.corrected.to_dict(),
        }


@dataclass(frozen=True)
class DeltaCandidate:
    section: LineSubbundle
    epsilon: int
    K: RationalPoly

    def to_dict(self) -> Dict[str, Any]:
        return {
            "section": self.section.to_dict(),
            "epsilon": self.epsilon,
            "K": self.K.to_string("m"),
        }


@dataclass(frozen=True)
class DeltaReport:
    """Stability for a polynomial ``delta``, ranking by eventual order."""

    verdict: Verdict
    witness: Optional[LineSubbundle]
    K: RationalPoly
    candidates: Tuple[DeltaCandidate, ...]
    complete: bool
    tie: bool

    def to_dict(self) -> Dict[str, Any]:
        return {
            "verdict": self.verdict.value,
            "K": self.K.to_string("m"),
            "witness": self.witness.to_dict() if self.witness else None,
            "complete": self.complete,
            "tie": self.tie,
            "candidates": [c.to_dict() for c in self.candidates],
        }


@dataclass(frozen=True)
class KempfIdentification:
    """Kempf function of the one-step filtration given by ``L``, computed
    three ways at level ``m``.
    """

    section: LineSubbundle
    epsilon: int
    m: int
    graph: FiltrationGraph
    envelope: Optional[EnvelopeResult]
    envelope_mu: SignedSquare
    """``mu_v(Gamma_v)`` of the graph, divided by ``m**(n+2)``."""

    kempf: SignedSquare
    closed_form: SignedSquare
    """``P K(m)**2 / ((P - s delta)**2 P_L P_Q)`` at ``m`` with the sign of
    ``K(m)``.
    """

    K: RationalPoly

    @property
    def filter_dimension(self) -> Optional[Fraction]:
        """Dimension of the filter picked out by the envelope, if any."""
        if self.envelope is None or len(self.envelope.blocks) < 2:
            return None
        return self.graph.b[0] * self.m

    def to_dict(self) -> Dict[str, Any]:
        return {
            "section": self.section.to_dict(),
            "epsilon": self.epsilon,
            "m": self.m,
            "graph": self.graph.to_dict(),
            "envelope": self.envelope.to_dict() if self.envelope else None,
            "envelope_mu": self.envelope_mu.to_dict(),
            "kempf": self.kempf.to_dict(),
            "closed_form": self.closed_form.to_dict(),
            "K": self.K.to_string("m"),
            "K_value": format_rational(self.K(self.m)),
        }


def polar_epsilon(L: LineSubbundle, T: Rank2Tensor) -> int:
    """Largest ``k`` such that ``k`` slots filled with ``L`` leave a
    nonzero form.
    """
    form = T.form
    k = 0
    while k < T.s:
        form = polar_derivative(form, L.direction)
        if form.is_zero:
            break
        k += 1
    return k


def epsilon_of(L: LineSubbundle, T: Rank2Tensor) -> int:
    """``eps(L)`` by polar iteration, checked against ``s`` minus the
    multiplicity of ``q*X0 - p*X1`` in the form.

    Raises
    ------
    ConsistencyError
        If the two computations disagree.
    """
    by_polar = polar_epsilon(L, T)
    by_factor = T.s - T.form.multiplicity_at(L.p, L.q)
    if by_polar != by_factor:
        raise ConsistencyError(
            f"eps({L}) is {by_polar} by polars but {by_factor} by factors."
        )
    return by_polar


def _check_tau(tau: Fraction) -> None:
    if tau <= 0:
        raise NonpositiveTau(f"tau must be positive, got {tau}.")


def destabilizing_value(
    L: LineSubbundle,
    T: Rank2Tensor,
    tau: Fraction,
    epsilon: Optional[int] = None,
) -> Fraction:
    """``2 deg L - deg E + tau (s - 2 eps(L))``.

    Raises
    ------
    NonpositiveTau
        If ``tau <= 0``.
    """
    _check_tau(tau)
    if epsilon is None:
        epsilon = epsilon_of(L, T)
    return 2 * L.c - T.bundle.deg + Fraction(tau) * (T.s - 2 * epsilon)


def _check_delta(delta: RationalPoly) -> None:
    if delta.leading <= 0:
        raise InvalidDelta(
            f"delta = {delta.to_string('m')} needs a positive leading "
            "coefficient."
        )


def K_polynomial(
    L: LineSubbundle,
    T: Rank2Tensor,
    delta: RationalPoly,
    genus: int = 0,
    epsilon: Optional[int] = None,
) -> RationalPoly:
    """``2 P_L - P_E + delta (s - 2 eps(L))`` as a polynomial in ``m``.

    On a curve the ``m`` terms of ``2 P_L - P_E`` cancel, leaving
    ``2c - d + delta (s - 2 eps)`` for every genus.

    Raises
    ------
    InvalidDelta
        If ``delta`` does not have a positive leading coefficient.
    """
    _check_delta(delta)
    if epsilon is None:
        epsilon = epsilon_of(L, T)
    P_E = hilbert_polynomial(2, T.bundle.deg, genus)
    P_L = hilbert_polynomial(1, L.c, genus)
    return P_L * 2 - P_E + delta * (T.s - 2 * epsilon)


def corrected_polys(
    L: LineSubbundle,
    T: Rank2Tensor,
    delta: RationalPoly,
    genus: int = 0,
    epsilon: Optional[int] = None,
) -> CorrectedPolys:
    """Corrected Hilbert polynomials of ``E``, ``L`` and ``E/L``."""
    _check_delta(delta)
    if epsilon is None:
        epsilon = epsilon_of(L, T)
    P_bar_E = hilbert_polynomial(2, T.bundle.deg, genus) - delta * T.s
    P_bar_L = hilbert_polynomial(1, L.c, genus) - delta * epsilon
    return CorrectedPolys(P_bar_E, P_bar_L, P_bar_E - P_bar_L)


def _small_integers() -> Iterator[int]:
    yield 0
    for k in itertools.count(1):
        yield k
        yield -k


def _generic_section(T: Rank2Tensor) -> LineSubbundle:
    """Largest-degree subbundle whose direction is not a root."""
    if not T.form.coeffs[-1].is_zero:
        return LineSubbundle.from_section(ONE, RationalPoly(), T.bundle)
    for value in _small_integers():
        p = RationalPoly.constant(value)
        if not T.form.evaluate(p, ONE).is_zero:
            logger.debug("Generic section (%s, 1) of degree b", value)
            return LineSubbundle.from_section(p, ONE, T.bundle)
    raise AssertionError("unreachable")  # pragma: no cover


def candidate_sections(T: Rank2Tensor) -> CandidateSet:
    """Root sections of the form plus the maximal ``eps = s`` subbundle."""
    search = rational_function_roots(T.form)
    sections = [
        (
            LineSubbundle.from_section(root.p, root.q, T.bundle),
            T.s - root.multiplicity,
        )
        for root in search.roots
    ]
    sections.append((_generic_section(T), T.s))
    if not search.complete:
        logger.warning(
            "Form keeps a factor of t-degree %d without Q(x)-linear "
            "factors; candidate search is incomplete",
            search.residual.s,
        )
    return CandidateSet(tuple(sections), search.complete, search.residual.s)


def is_nondegenerate(T: Rank2Tensor) -> bool:
    """Whether the form is not an ``s``-th power of a linear form."""
    search = rational_function_roots(T.form)
    return all(root.multiplicity < T.s for root in search.roots)


def _evaluate(
    T: Rank2Tensor, tau: Fraction, entry: Tuple[LineSubbundle, int]
) -> Candidate:
    section, expected = entry
    epsilon = epsilon_of(section, T)
    if epsilon != expected:
        raise ConsistencyError(
            f"eps({section}) is {epsilon} but the root multiplicity gives "
            f"{expected}."
        )
    value = destabilizing_value(section, T, tau, epsilon)
    return Candidate(section, epsilon, value)


def _evaluate_all(
    T: Rank2Tensor,
    tau: Fraction,
    sections: Sequence[Tuple[LineSubbundle, int]],
    jobs: int,
) -> List[Candidate]:
    if jobs <= 1 or len(sections) <= 1:
        return [_evaluate(T, tau, entry) for entry in sections]
    with ProcessPoolExecutor(max_workers=jobs) as executor:
        return list(
            executor.map(
                _evaluate,
                itertools.repeat(T),
                itertools.repeat(tau),
                sections,
            )
        )


def stability(
    T: Rank2Tensor, tau: Fraction, jobs: int = 1, strict: bool = False
) -> StabilityReport:
    """tau-stability verdict of a tensor.

    Unstable if the maximal destabilizing value is positive, semistable
    (not stable) if it is zero and stable if it is negative. Candidates are
    evaluated in ``jobs`` worker processes; the table order does not
    depend on ``jobs``.

    Raises
    ------
    NonpositiveTau
        If ``tau <= 0``.
    IncompleteSearch
        With ``strict``, when the search is incomplete and no candidate
        proves the tensor unstable.
    """
    _check_tau(tau)
    candidates = candidate_sections(T)
    rows = _evaluate_all(T, Fraction(tau), candidates.sections, jobs)
    best = max(row.value for row in rows)
    verdict = Verdict.from_sign((best > 0) - (best < 0))
    maximizers = [row for row in rows if row.value == best]
    report = StabilityReport(
        verdict=verdict,
        witness=maximizers[0].section if best >= 0 else None,
        value=best,
        candidates=tuple(rows),
        complete=candidates.complete,
        tie=verdict is Verdict.UNSTABLE and len(maximizers) > 1,
        nondegenerate=is_nondegenerate(T),
    )
    if not candidates.complete and verdict is not Verdict.UNSTABLE:
        message = (
            f"Verdict {verdict.value} is not certified: the form has a "
            f"factor of t-degree {candidates.residual_degree} without "
            "Q(x)-linear factors."
        )
        if strict:
            raise IncompleteSearch(message)
        logger.warning(message)
    logger.info("tau=%s: %s with value %s", tau, verdict.value, best)
    return report


def hn_subsheaf(
    T: Rank2Tensor, tau: Fraction, jobs: int = 1, strict: bool = False
) -> HNResult:
    """Harder-Narasimhan subsheaf: the maximizer of the destabilizing value.

    Raises
    ------
    NotUnstable
        If the tensor is not tau-unstable.
    TieAnomaly
        If two distinct candidates attain the maximum.
    IncompleteSearch
        With ``strict``, when the candidate search is incomplete.
    """
    report = stability(T, tau, jobs=jobs, strict=strict)
    if report.verdict is not Verdict.UNSTABLE:
        raise NotUnstable(
            f"The tensor is {report.verdict.value} for tau={tau}."
        )
    if report.tie:
        sections = ", ".join(str(c.section) for c in report.maximizers)
        raise TieAnomaly(f"Maximal value {report.value} at {sections}.")
    if strict and not report.complete:
        raise IncompleteSearch("Candidate search is incomplete.")
    winner = report.maximizers[0]
    corrected = corrected_polys(
        winner.section,
        T,
        RationalPoly.constant(tau),
        epsilon=winner.epsilon,
    )
    return HNResult(winner.section, winner.epsilon, winner.value, corrected)


def _eventual_cmp(first: RationalPoly, second: RationalPoly) -> int:
    order = eventual_compare(first, second)
    if order is EventualOrder.PRECEDES:
        return -1
    if order is EventualOrder.EQUAL:
        return 0
    return 1


def delta_stability(
    T: Rank2Tensor, delta: RationalPoly, strict: bool = False
) -> DeltaReport:
    """delta-stability with a polynomial ``delta``.

    Candidates are ranked by the eventual order of their ``K``
    polynomials; the verdict is the eventual sign of the largest one.
    """
    _check_delta(delta)
    candidates = candidate_sections(T)
    rows = [
        DeltaCandidate(section, epsilon, K_polynomial(section, T, delta))
        for section, epsilon in candidates.sections
    ]
    key = functools.cmp_to_key(_eventual_cmp)
    best = max((row.K for row in rows), key=key)
    maximizers = [row for row in rows if row.K == best]
    sign = _eventual_cmp(best, RationalPoly())
    verdict = Verdict.from_sign(sign)
    if not candidates.complete and verdict is not Verdict.UNSTABLE:
        message = "delta verdict is not certified: incomplete search."
        if strict:
            raise IncompleteSearch(message)
        logger.warning(message)
    return DeltaReport(
        verdict=verdict,
        witness=maximizers[0].section if sign >= 0 else None,
        K=best,
        candidates=tuple(rows),
        complete=candidates.complete,
        tie=verdict is Verdict.UNSTABLE and len(maximizers) > 1,
    )


def kempf_identification(
    T: Rank2Tensor,
    L: LineSubbundle,
    delta: RationalPoly,
    m: int,
    weights: Sequence[Fraction] = (Fraction(1),),
) -> KempfIdentification:
    """Evaluate the Kempf function of ``0 < H0(L(m)) < H0(E(m))``.

    The graph of the one-step filtration is built and maximized through
    its envelope, the Kempf function is evaluated for ``weights`` and the
    closed form ``P K(m)**2 / ((P - s delta)**2 P_L P_Q)`` is computed, with
    ``P_L`` and ``P_Q`` the dimensions of the two steps; the last two must
    agree, and when ``K(m) > 0`` the envelope value rescaled by
    ``m**(n+2)`` agrees as well.

    Raises
    ------
    InvalidParameters
        If ``P(m) - s*delta(m) <= 0`` or a filtration step is empty.
    ConsistencyError
        If the three computations disagree.
    """
    epsilon = epsilon_of(L, T)
    P = T.bundle.hilbert_polynomial()
    params = KempfParameters(r=2, s=T.s, delta=delta, P=P)
    dim_L = hilbert_polynomial(1, L.c)(m)
    dims = (dim_L, P(m) - dim_L)
    if min(dims) <= 0:
        raise InvalidParameters(
            f"Sections at m={m} give an empty filtration step {dims}."
        )
    data = FiltrationData(dims, (1, 1), (epsilon, T.s - epsilon))
    graph = build_graph(data, params, m)
    envelope: Optional[EnvelopeResult] = None
    if not graph.is_flat:
        envelope = envelope_maximize(graph.weighted_vector())
    rescale = Fraction(1, m ** (params.dimension + 2))
    envelope_mu = (
        envelope.mu_squared.scaled(rescale)
        if envelope is not None
        else SignedSquare.zero()
    )
    kempf = kempf_function(data, weights, params, m)
    K = K_polynomial(L, T, delta, epsilon=epsilon)
    denominator = P(m) - T.s * delta(m)
    closed_form = SignedSquare.of(
        K(m), denominator**2 * dims[0] * dims[1] / P(m)
    )
    if kempf != closed_form:
        raise ConsistencyError(
            f"Kempf value {kempf} differs from closed form {closed_form}."
        )
    if K(m) > 0 and envelope_mu != kempf:
        raise ConsistencyError(
            f"Envelope value {envelope_mu} differs from {kempf}."
        )
    return KempfIdentification(
        section=L,
        epsilon=epsilon,
        m=m,
        graph=graph,
        envelope=envelope,
        envelope_mu=envelope_mu,
        kempf=kempf,
        closed_form=closed_form,
        K=K,
    )


def weighted_filtration_value(
    T: Rank2Tensor,
    L: LineSubbundle,
    degrees: Sequence[int],
    weights: Sequence[Fraction],
    tau: Fraction,
) -> Fraction:
    """Weighted sum for a chain of subsheaves ``L_1 < ... < L_t < L``.

    ``L_i`` has degree ``degrees[i]`` and generically agrees with ``L``, so
    the tensor survives exactly on multi-indexes with at most ``eps(L)``
    slots in the chain. The sum is
    ``sum(n_i (2 c_i - deg E)) + tau * sum(n_i (s r_i - 2 eps_i))``.

    Raises
    ------
    InvalidWeights
        If weights are missing or not positive.
    InputError
        If the degrees are not nondecreasing or exceed ``deg L``.
    """
    _check_tau(tau)
    t = len(degrees)
    if t == 0 or len(weights) != t or any(n <= 0 for n in weights):
        raise InvalidWeights("Need one positive weight per chain member.")
    if any(x > y for x, y in zip(degrees, degrees[1:])) or degrees[-1] > L.c:
        raise InputError(
            f"Chain degrees {list(degrees)} must increase up to {L.c}."
        )
    eps_L = epsilon_of(L, T)
    ranks = [1] * t + [2]

    def nonzero(index: Tuple[int, ...]) -> bool:
        return sum(1 for i in index if i <= t) <= eps_L

    counts = epsilon_from_oracle(t, ranks, T.s, nonzero, weights)
    mu = mu_closed_form(weights, ranks[:t], counts.eps[:t], T.s, 2)
    degree_part = sum(
        (
            Fraction(n) * (2 * c - T.bundle.deg)
            for n, c in zip(weights, degrees)
        ),
        Fraction(0),
    )
    return degree_part + Fraction(tau) * mu
