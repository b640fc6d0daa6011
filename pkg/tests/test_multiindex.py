"""Tests for minimizing multi-indexes."""

from fractions import Fraction
from typing import Tuple

import pytest

from tensorhn.envelope.multiindex import (
    epsilon_from_oracle,
    gamma_vector,
    mu_closed_form,
    mu_minimum,
)
from tensorhn.errors import DegenerateTensor, InputError


def test_gamma_vector() -> None:
    """gamma vectors built from filtration weights."""
    assert gamma_vector([Fraction(1)], [1], 2) == (-1, 1)
    assert gamma_vector([Fraction(2), Fraction(1)], [1, 2], 3) == (-5, 1, 4)


def test_epsilon_of_line_in_rank_two() -> None:
    """A form vanishing to order one on L gives eps = s - 1."""

    def nonzero(index: Tuple[int, ...]) -> bool:
        return sum(1 for i in index if i == 1) <= 2

    result = epsilon_from_oracle(1, [1, 2], 3, nonzero)
    assert result.I0 == (1, 1, 2)
    assert result.eps == (2, 3)
    assert result.eps_step == (2, 1)


def test_closed_form_matches_minimum() -> None:
    """The closed form equals the brute force minimum."""
    weights = [Fraction(3, 2), Fraction(1, 3)]
    ranks = [1, 2, 4]

    def nonzero(index: Tuple[int, ...]) -> bool:
        return index.count(1) <= 1 and index.count(2) <= 1

    counts = epsilon_from_oracle(2, ranks, 3, nonzero, weights)
    closed = mu_closed_form(weights, ranks[:2], counts.eps[:2], 3, 4)
    assert closed == mu_minimum(weights, ranks, 3, nonzero)
    assert counts.eps[:2] == (1, 2)


def test_degenerate_tensor() -> None:
    """The top multi-index must be nonzero."""
    with pytest.raises(DegenerateTensor):
        epsilon_from_oracle(1, [1, 2], 2, lambda index: False)
    with pytest.raises(DegenerateTensor):
        mu_minimum([Fraction(1)], [1, 2], 2, lambda index: index != (2, 2))


def test_rank_validation() -> None:
    """Ranks must match the filtration and be nondecreasing."""
    with pytest.raises(InputError):
        epsilon_from_oracle(2, [1, 2], 2, lambda index: True)
    with pytest.raises(InputError):
        epsilon_from_oracle(1, [2, 1], 2, lambda index: True)
