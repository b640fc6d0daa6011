"""Binary forms in (X0, X1) with coefficients in Q[x].

A form of degree ``s`` is stored as ``coeffs[i] = a_i`` multiplying
``X0**i * X1**(s - i)``. Dehomogenizing with ``t = X0 / X1`` turns it into
the polynomial ``sum(a_i * t**i)`` over Q(x); a direction ``(p, q)`` is a
root when the linear form ``q*X0 - p*X1`` divides the form.
"""

__all__ = [
    "Direction",
    "BinaryFormOverP1",
    "RootSection",
    "RootSearch",
    "polar_derivative",
    "rational_function_roots",
    "section_key",
]

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, List, Optional, Sequence, Tuple

from tensorhn.algebra.poly import (
    RationalPoly,
    exact_quotient,
    monic_divisors,
    poly_gcd,
    rational_roots,
)
from tensorhn.errors import (
    DegreeZero,
    InputError,
    ZeroDirection,
    ZeroPolynomial,
)

logger = logging.getLogger("tensorhn")

Direction = Tuple[RationalPoly, RationalPoly]

ONE = RationalPoly.constant(1)
ZERO = RationalPoly()


@dataclass(frozen=True)
class BinaryFormOverP1:
    """A homogeneous form of degree ``s`` over Q[x].

    The zero form is representable since polar derivatives and quotients
    can vanish; tensors reject it separately.
    """

    s: int
    coeffs: Tuple[RationalPoly, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if self.s < 0:
            raise InputError(f"Form degree must be nonnegative, got {self.s}.")
        if len(self.coeffs) != self.s + 1:
            raise InputError(
                f"A form of degree {self.s} needs {self.s + 1} "
                f"coefficients, got {len(self.coeffs)}."
            )

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[RationalPoly]) -> "BinaryFormOverP1":
        """Build a form from ``[a_0, ..., a_s]``."""
        return cls(len(coeffs) - 1, tuple(coeffs))

    @classmethod
    def parse(cls, coeffs: Sequence[str]) -> "BinaryFormOverP1":
        """Build a form from polynomial strings ``[a_0, ..., a_s]``."""
        return cls.from_coeffs([RationalPoly.parse(c) for c in coeffs])

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def evaluate(self, p: RationalPoly, q: RationalPoly) -> RationalPoly:
        """Return ``F(p, q)``."""
        total = RationalPoly()
        for i, a in enumerate(self.coeffs):
            if not a.is_zero:
                total = total + a * p**i * q ** (self.s - i)
        return total

    def specialize(self, x0: Fraction) -> Tuple[Fraction, ...]:
        """Coefficients of the rational form obtained at ``x = x0``."""
        return tuple(a(x0) for a in self.coeffs)

    def polar(self, p: RationalPoly, q: RationalPoly) -> "BinaryFormOverP1":
        """Return ``p * dF/dX0 + q * dF/dX1``."""
        return polar_derivative(self, (p, q))

    def divide_linear(
        self, p: RationalPoly, q: RationalPoly
    ) -> Optional["BinaryFormOverP1"]:
        """Divide by ``q*X0 - p*X1`` if it is a factor, else `None`.

        For coprime ``(p, q)`` the linear form is primitive, so divisibility
        over Q(x) is the same as exact division in Q[x].
        """
        if self.s == 0:
            return None
        s = self.s
        a = self.coeffs
        g: List[RationalPoly] = [ZERO] * s
        if q.is_zero:
            if not a[s].is_zero:
                return None
            for k in range(s):
                quotient = exact_quotient(-a[k], p)
                if quotient is None:
                    return None
                g[k] = quotient
        else:
            carry = a[s]
            for k in range(s, 0, -1):
                quotient = exact_quotient(carry, q)
                if quotient is None:
                    return None
                g[k - 1] = quotient
                carry = a[k - 1] + p * quotient
            if not carry.is_zero:
                return None
        return BinaryFormOverP1(s - 1, tuple(g))

    def multiplicity_at(self, p: RationalPoly, q: RationalPoly) -> int:
        """Multiplicity of ``q*X0 - p*X1`` as a factor of the form.

        Raises
        ------
        ZeroPolynomial
            If the form is zero.
        """
        if self.is_zero:
            raise ZeroPolynomial("The zero form is divisible by everything.")
        return _divide_out(self, p, q)[1]

    def to_strings(self) -> List[str]:
        """Polynomial strings ``[a_0, ..., a_s]``."""
        return [str(c) for c in self.coeffs]


@dataclass(frozen=True)
class RootSection:
    """A root ``t = p/q`` over Q(x) with ``gcd(p, q) = 1`` and ``q`` monic.

    The root at infinity is ``(1, 0)``.
    """

    p: RationalPoly
    q: RationalPoly
    multiplicity: int


@dataclass(frozen=True)
class RootSearch:
    """Linear factors of a form over Q(x) and the leftover cofactor."""

    roots: Tuple[RootSection, ...]
    residual: BinaryFormOverP1
    """Cofactor without Q(x)-linear factors (a multisection if ``s >= 2``).
    """

    @property
    def complete(self) -> bool:
        """Whether the form splits into linear factors over Q(x)."""
        return self.residual.s == 0

    @property
    def linear_degree(self) -> int:
        return sum(root.multiplicity for root in self.roots)


def section_key(p: RationalPoly, q: RationalPoly) -> Tuple:
    """Deterministic order on directions."""
    return (q.sort_key(), p.sort_key())


def polar_derivative(
    form: BinaryFormOverP1, v: Direction
) -> BinaryFormOverP1:
    """Fill one slot of the symmetric form with the direction ``v``.

    Returns ``p * dF/dX0 + q * dF/dX1`` where ``v = (p, q)``; iterating
    ``k`` times fills ``k`` slots.

    Raises
    ------
    DegreeZero
        If the form has degree zero.
    ZeroDirection
        If ``v = (0, 0)``.
    """
    p, q = v
    if form.s == 0:
        raise DegreeZero("Cannot take the polar of a degree zero form.")
    if p.is_zero and q.is_zero:
        raise ZeroDirection("The polar direction must be nonzero.")
    s = form.s
    a = form.coeffs
    return BinaryFormOverP1(
        s - 1,
        tuple(
            p * ((j + 1) * a[j + 1]) + q * ((s - j) * a[j])
            for j in range(s)
        ),
    )


def _divide_out(
    form: BinaryFormOverP1, p: RationalPoly, q: RationalPoly
) -> Tuple[BinaryFormOverP1, int]:
    multiplicity = 0
    while True:
        quotient = form.divide_linear(p, q)
        if quotient is None:
            return form, multiplicity
        form = quotient
        multiplicity += 1


def _scalings(
    form: BinaryFormOverP1, numerator: RationalPoly, denominator: RationalPoly
) -> List[Fraction]:
    """Constants ``c`` that may make ``c*numerator/denominator`` a root.

    Clearing denominators gives ``sum(a_i c**i P**i Q**(n-i)) = 0``; every
    power of ``x`` must vanish, so the first nonzero one already pins down
    the rational candidates for ``c``.
    """
    n = form.s
    terms = [
        a * numerator**i * denominator ** (n - i)
        for i, a in enumerate(form.coeffs)
    ]
    width = max(len(term.coeffs) for term in terms)
    for k in range(width):
        in_c = RationalPoly(
            tuple(
                term.coeffs[k] if k < len(term.coeffs) else Fraction(0)
                for term in terms
            )
        )
        if not in_c.is_zero:
            return [c for c in rational_roots(in_c) if c != 0]
    return []


def _finite_directions(
    form: BinaryFormOverP1,
) -> Iterator[Tuple[RationalPoly, RationalPoly]]:
    low, high = form.coeffs[0], form.coeffs[-1]
    numerators = monic_divisors(low)
    denominators = monic_divisors(high)
    for numerator, denominator in itertools.product(numerators, denominators):
        if poly_gcd(numerator, denominator).degree > 0:
            continue
        for c in _scalings(form, numerator, denominator):
            yield numerator * c, denominator


def rational_function_roots(form: BinaryFormOverP1) -> RootSearch:
    """Every root ``t = p/q`` in Q(x) of the dehomogenized form.

    By the rational root theorem over the UFD Q[x], ``p`` divides the
    lowest nonzero coefficient and ``q`` the highest one, so enumerating
    monic divisors of both (from `factor_rational`) is complete. Factors
    of ``t``-degree two or more are left in `RootSearch.residual`.

    Raises
    ------
    ZeroPolynomial
        If the form is zero.
    """
    if form.is_zero:
        raise ZeroPolynomial("The zero form has no finite root structure.")
    roots = []
    remaining = form
    for p, q in ((ONE, ZERO), (ZERO, ONE)):
        remaining, multiplicity = _divide_out(remaining, p, q)
        if multiplicity:
            roots.append(RootSection(p, q, multiplicity))
    if remaining.s >= 1:
        for p, q in _finite_directions(remaining):
            remaining, multiplicity = _divide_out(remaining, p, q)
            if multiplicity:
                logger.debug(
                    "Root section (%s, %s) of order %d", p, q, multiplicity
                )
                roots.append(RootSection(p, q, multiplicity))
            if remaining.s == 0:
                break
    roots.sort(key=lambda root: section_key(root.p, root.q))
    if remaining.s >= 2:
        logger.debug(
            "Residual factor of t-degree %d has no Q(x)-linear factor",
            remaining.s,
        )
    return RootSearch(tuple(roots), remaining)
