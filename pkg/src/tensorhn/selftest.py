"""Seeded oracle checks that validate an installation.

Each suite compares two independent computations of the same quantity on
random exact inputs:

* the envelope maximizer against weighted isotonic regression;
* the brute force multi-index minimum against its closed form;
* the polar-iteration ``eps`` against the factor multiplicity.
"""

__all__ = [
    "SuiteResult",
    "random_fraction",
    "random_weighted_vector",
    "random_oracle",
    "random_filtration",
    "random_tensor",
    "check_envelope",
    "check_multiindex",
    "check_epsilon",
    "run_selftest",
]

import logging
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Tuple

from tensorhn.algebra.poly import RationalPoly
from tensorhn.envelope.graph import (
    WeightedVector,
    envelope_maximize,
    isotonic_regression,
)
from tensorhn.envelope.multiindex import (
    Oracle,
    epsilon_from_oracle,
    mu_closed_form,
    mu_minimum,
)
from tensorhn.errors import ConsistencyError
from tensorhn.tensors.bundle import Rank2Tensor, make_tensor
from tensorhn.tensors.stability import candidate_sections, epsilon_of

logger = logging.getLogger("tensorhn")

WEIGHT_SAMPLES = 100
"""Positive weight vectors tried on every random filtration."""


@dataclass
class SuiteResult:
    name: str
    cases: int = 0
    failures: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "cases": self.cases,
            "passed": self.passed,
            "failures": list(self.failures),
        }


def random_fraction(
    rng: random.Random, bound: int = 50, positive: bool = False
) -> Fraction:
    """Fraction with numerator and denominator bounded by ``bound``."""
    low = 1 if positive else -bound
    return Fraction(rng.randint(low, bound), rng.randint(1, bound))


def random_weighted_vector(
    rng: random.Random, max_length: int = 8, bound: int = 50
) -> WeightedVector:
    """Balanced weighted vector with at least two distinct values."""
    while True:
        length = rng.randint(2, max_length)
        b = [random_fraction(rng, bound, positive=True) for _ in range(length)]
        v = [random_fraction(rng, bound) for _ in range(length)]
        mean = sum(bi * vi for bi, vi in zip(b, v)) / sum(b)
        v = [vi - mean for vi in v]
        if any(v):
            return WeightedVector(tuple(b), tuple(v))


def random_oracle(rng: random.Random, t: int, s: int) -> Oracle:
    """Random set of multi-indexes closed upwards.

    With an index ``I`` the set holds every index that is at least ``I``
    slot by slot, as the pieces of a filtration grow; the top index is
    always in it.
    """
    generators = [
        tuple(rng.randint(1, t + 1) for _ in range(s))
        for _ in range(rng.randint(1, 3))
    ]

    def nonzero(index: Tuple[int, ...]) -> bool:
        return any(
            all(i >= g for i, g in zip(index, generator))
            for generator in generators
        )

    return nonzero


def random_filtration(
    rng: random.Random, max_t: int = 3, max_r: int = 5
) -> List[int]:
    """Ranks ``r_1, ..., r_t, r`` on which a single multi-index maximizes
    every ``eps_i``: one step of any rank, or steps of rank one in rank
    two.
    """
    if rng.random() < 0.5:
        r = rng.randint(2, max_r)
        return [rng.randint(1, r - 1), r]
    return [1] * rng.randint(1, max_t) + [2]


def _random_poly(rng: random.Random, degree: int) -> RationalPoly:
    return RationalPoly(
        tuple(Fraction(rng.randint(-3, 3)) for _ in range(degree + 1))
    )


def _multiply_forms(
    first: List[RationalPoly], second: List[RationalPoly]
) -> List[RationalPoly]:
    product = [RationalPoly()] * (len(first) + len(second) - 1)
    for i, a in enumerate(first):
        for j, b in enumerate(second):
            product[i + j] = product[i + j] + a * b
    return product


def random_tensor(
    rng: random.Random, max_s: int = 4, max_degree: int = 2
) -> Rank2Tensor:
    """Tensor whose form is mostly a product of linear factors over Q[x].

    Factors are repeated at random to produce multiple roots; with some
    probability a quadratic factor is left in, which may have no linear
    factor over Q(x).
    """
    s = rng.randint(1, max_s)
    form = [RationalPoly.constant(1)]
    factors: List[Tuple[RationalPoly, RationalPoly]] = []
    degree = 0
    while degree < s:
        if degree + 2 <= s and rng.random() < 0.15:
            quadratic = [_random_poly(rng, max_degree) for _ in range(3)]
            if all(c.is_zero for c in quadratic):
                continue
            form = _multiply_forms(form, quadratic)
            degree += 2
            continue
        if factors and rng.random() < 0.4:
            alpha, beta = rng.choice(factors)
        else:
            alpha = _random_poly(rng, rng.randint(0, max_degree))
            beta = _random_poly(rng, rng.randint(0, max_degree))
            if alpha.is_zero and beta.is_zero:
                continue
            factors.append((alpha, beta))
        # alpha*X0 + beta*X1
        form = _multiply_forms(form, [beta, alpha])
        degree += 1
    a = rng.randint(-2, 2)
    b = rng.randint(-2, 2)
    return make_tensor(a, b, s, form)


def check_envelope(rng: random.Random, count: int) -> SuiteResult:
    result = SuiteResult("envelope-isotonic")
    for _ in range(count):
        wv = random_weighted_vector(rng)
        gamma = envelope_maximize(wv).gamma
        expected = isotonic_regression(wv.b, wv.v)
        result.cases += 1
        if gamma != expected:
            result.failures.append(f"b={wv.b} v={wv.v}")
    return result


def check_multiindex(
    rng: random.Random, count: int, weight_samples: int = WEIGHT_SAMPLES
) -> SuiteResult:
    """The counts of the unweighted minimizer give the minimum for every
    choice of positive weights.
    """
    result = SuiteResult("multiindex-closed-form")
    for _ in range(count):
        ranks = random_filtration(rng)
        t = len(ranks) - 1
        r = ranks[-1]
        s = rng.randint(1, 4)
        nonzero = random_oracle(rng, t, s)
        counts = epsilon_from_oracle(t, ranks, s, nonzero)
        for _ in range(weight_samples):
            weights = [
                random_fraction(rng, 9, positive=True) for _ in range(t)
            ]
            closed = mu_closed_form(weights, ranks[:t], counts.eps[:t], s, r)
            direct = mu_minimum(weights, ranks, s, nonzero)
            result.cases += 1
            if closed != direct:
                result.failures.append(
                    f"ranks={ranks} s={s} weights={weights}: "
                    f"{closed} != {direct}"
                )
    return result


def check_epsilon(rng: random.Random, count: int) -> SuiteResult:
    result = SuiteResult("epsilon-polar-multiplicity")
    for _ in range(count):
        T = random_tensor(rng)
        for section, _ in candidate_sections(T).sections:
            result.cases += 1
            try:
                epsilon_of(section, T)
            except ConsistencyError as e:
                result.failures.append(str(e))
    return result


def run_selftest(seed: int = 0, count: int = 100) -> List[SuiteResult]:
    """Run every suite with ``count`` random inputs each."""
    rng = random.Random(seed)
    results = [
        check_envelope(rng, count),
        check_multiindex(rng, count),
        check_epsilon(rng, count),
    ]
    for suite in results:
        logger.info(
            "%s: %d cases, %d failures",
            suite.name,
            suite.cases,
            len(suite.failures),
        )
    return results
