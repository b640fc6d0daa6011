"""Minimizing multi-indexes and the numbers epsilon_i of a filtration.

Slots of a degree ``s`` tensor are filled with pieces ``1..t+1`` of a
filtration; ``nonzero(I)`` tells whether the tensor survives on the
multi-index ``I``. The weight of ``I`` is the sum of ``gamma_{r_{i_k}}``
where ``gamma`` is built from the filtration weights.
"""

__all__ = [
    "Oracle",
    "MultiIndexEpsilon",
    "epsilon_from_oracle",
    "gamma_vector",
    "mu_closed_form",
    "mu_minimum",
]

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterator, Optional, Sequence, Tuple

from tensorhn.errors import DegenerateTensor, InputError

Oracle = Callable[[Tuple[int, ...]], bool]
"""Predicate on multi-indexes (1-based filtration indexes)."""


@dataclass(frozen=True)
class MultiIndexEpsilon:
    """A minimizing multi-index and the counts it induces."""

    I0: Tuple[int, ...]
    eps: Tuple[int, ...]
    """``eps[i-1]`` counts the slots of ``I0`` whose rank is ``<= r_i``."""

    @property
    def eps_step(self) -> Tuple[int, ...]:
        """Increments ``eps_i - eps_{i-1}`` with ``eps_0 = 0``.

        These are the per-step numbers used by the filtration graph; they
        add up to ``s``.
        """
        previous = (0,) + self.eps[:-1]
        return tuple(e - p for e, p in zip(self.eps, previous))


def gamma_vector(
    weights: Sequence[Fraction], ranks: Sequence[int], r: int
) -> Tuple[Fraction, ...]:
    """``sum(n_l * gamma^(r_l))`` with
    ``gamma^(k) = (k - r, ..., k - r, k, ..., k)`` (``k`` entries ``k - r``).
    """
    return tuple(
        sum(
            (
                Fraction(n) * (rank - r * (j <= rank))
                for n, rank in zip(weights, ranks)
            ),
            Fraction(0),
        )
        for j in range(1, r + 1)
    )


def _multi_indexes(t: int, s: int) -> Iterator[Tuple[int, ...]]:
    return itertools.product(range(1, t + 2), repeat=s)


def _index_cost(
    index: Tuple[int, ...], ranks: Sequence[int], gamma: Sequence[Fraction]
) -> Fraction:
    return sum((gamma[ranks[i - 1] - 1] for i in index), Fraction(0))


def _check_ranks(t: int, ranks: Sequence[int]) -> None:
    if len(ranks) != t + 1:
        raise InputError(f"Expected {t + 1} ranks, got {len(ranks)}.")
    if any(a > b for a, b in zip(ranks, ranks[1:])) or ranks[0] < 1:
        raise InputError(
            f"Ranks {list(ranks)} must be positive and nondecreasing."
        )


def epsilon_from_oracle(
    t: int,
    ranks: Sequence[int],
    s: int,
    nonzero: Oracle,
    weights: Optional[Sequence[Fraction]] = None,
) -> MultiIndexEpsilon:
    """Find the minimizing multi-index by brute force over ``{1..t+1}^s``.

    Without ``weights`` the minimizer is the multi-index whose sorted rank
    tuple is lexicographically smallest, which minimizes the weight for
    every choice of positive weights in rank two. For longer filtrations
    pass ``weights``; ties are then broken the same way.

    Raises
    ------
    DegenerateTensor
        If the all-top multi-index is zero.
    """
    _check_ranks(t, ranks)
    top = (t + 1,) * s
    if not nonzero(top):
        raise DegenerateTensor("The tensor vanishes on the top multi-index.")
    gamma = (
        gamma_vector(weights, ranks[:t], ranks[-1])
        if weights is not None
        else None
    )

    def key(index: Tuple[int, ...]) -> Tuple:
        order = tuple(sorted(ranks[i - 1] for i in index))
        tail = (order, tuple(sorted(index)), index)
        if gamma is None:
            return tail
        return (_index_cost(index, ranks, gamma),) + tail

    best = min((i for i in _multi_indexes(t, s) if nonzero(i)), key=key)
    eps = tuple(
        sum(1 for i in best if ranks[i - 1] <= ranks[j]) for j in range(t + 1)
    )
    return MultiIndexEpsilon(I0=best, eps=eps)


def mu_closed_form(
    weights: Sequence[Fraction],
    ranks: Sequence[int],
    eps: Sequence[int],
    s: int,
    r: int,
) -> Fraction:
    """``sum_{i <= t} n_i (s r_i - eps_i r)``."""
    return sum(
        (
            Fraction(n) * (s * rank - e * r)
            for n, rank, e in zip(weights, ranks, eps)
        ),
        Fraction(0),
    )


def mu_minimum(
    weights: Sequence[Fraction],
    ranks: Sequence[int],
    s: int,
    nonzero: Oracle,
) -> Fraction:
    """Direct minimum of the multi-index weight over nonzero indexes.

    The weight of an index only depends on the ranks of its slots, so the
    minimum is taken over the distinct sorted rank profiles.
    """
    t = len(ranks) - 1
    _check_ranks(t, ranks)
    if not nonzero((t + 1,) * s):
        raise DegenerateTensor("The tensor vanishes on the top multi-index.")
    gamma = gamma_vector(weights, ranks[:t], ranks[-1])
    profiles = {
        tuple(sorted(ranks[i - 1] for i in index))
        for index in _multi_indexes(t, s)
        if nonzero(index)
    }
    return min(
        sum((gamma[rank - 1] for rank in profile), Fraction(0))
        for profile in profiles
    )
