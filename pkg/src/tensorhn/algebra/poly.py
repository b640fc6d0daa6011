"""Exact univariate polynomials over the rationals.

Coefficients are `fractions.Fraction` values stored from the constant term
upwards, so ``coeffs[i]`` multiplies ``x**i``. The same type is used for the
coefficient sections ``a_i(x)`` of a tensor and for Hilbert polynomials in
``m``; the parser accepts either variable name.
"""

__all__ = [
    "Rational",
    "Degree",
    "RationalPoly",
    "EventualOrder",
    "Factorization",
    "parse_rational",
    "format_rational",
    "poly_gcd",
    "exact_quotient",
    "squarefree_decompose",
    "factor_rational",
    "rational_roots",
    "monic_divisors",
    "eventual_compare",
    "root_bound",
]

import logging
import math
import re
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Any, List, NoReturn, Optional, Tuple, Union

from tensorhn.algebra.modular import zassenhaus
from tensorhn.errors import ParseError, ZeroPolynomial

logger = logging.getLogger("tensorhn")

Rational = Fraction
"""Exact rational numbers are plain `fractions.Fraction` values."""

Degree = Union[int, float]
"""Polynomial degree; the zero polynomial has degree ``-math.inf``."""

Scalar = Union[int, Fraction]

_TOKENS = re.compile(r"\d+|[xm]|[-+*/^()]")


def parse_rational(text: Union[str, int, Fraction]) -> Fraction:
    """Parse a rational literal such as ``"3/2"`` or ``"-7"``.

    Raises
    ------
    ParseError
        If ``text`` is not a rational number.
    """
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"Invalid rational number {text!r}.") from exc


def format_rational(value: Fraction) -> str:
    """Return the canonical ``"p/q"`` (or ``"n"``) string of a rational."""
    return str(Fraction(value))


@dataclass(frozen=True)
class RationalPoly:
    """A polynomial in one variable with rational coefficients.

    Parameters
    ----------
    coeffs : `tuple` of `fractions.Fraction`
        Coefficients from degree 0 upwards. Trailing zeros are removed on
        construction, so two equal polynomials compare equal structurally.
    """

    coeffs: Tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        coeffs = [Fraction(c) for c in self.coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coeffs", tuple(coeffs))

    @classmethod
    def constant(cls, value: Scalar) -> "RationalPoly":
        """Return the constant polynomial ``value``."""
        return cls((Fraction(value),))

    @classmethod
    def monomial(cls, degree: int, value: Scalar = 1) -> "RationalPoly":
        """Return ``value * x**degree``."""
        return cls(tuple([Fraction(0)] * degree + [Fraction(value)]))

    @classmethod
    def parse(cls, text: str) -> "RationalPoly":
        """Parse a polynomial string such as ``"3/2*x^2 - x + 7"``.

        Integer and ``a/b`` literals, the variable ``x`` (or ``m``), the
        operators ``+ - * ^`` and parentheses are accepted. Exponents must
        be nonnegative integer literals.

        Raises
        ------
        ParseError
            If the text does not follow the grammar.
        """
        return _PolyParser(text).parse()

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def degree(self) -> Degree:
        if not self.coeffs:
            return -math.inf
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        """Leading coefficient, zero for the zero polynomial."""
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def monic(self) -> "RationalPoly":
        if self.is_zero:
            return self
        lead = self.leading
        return RationalPoly(tuple(c / lead for c in self.coeffs))

    def derivative(self) -> "RationalPoly":
        return RationalPoly(
            tuple(i * c for i, c in enumerate(self.coeffs) if i > 0)
        )

    def __call__(self, value: Scalar) -> Fraction:
        result = Fraction(0)
        for c in reversed(self.coeffs):
            result = result * value + c
        return result

    def __bool__(self) -> bool:
        return not self.is_zero

    def __neg__(self) -> "RationalPoly":
        return RationalPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other: Any) -> "RationalPoly":
        rhs = _coerce(other)
        size = max(len(self.coeffs), len(rhs.coeffs))
        return RationalPoly(
            tuple(_at(self, i) + _at(rhs, i) for i in range(size))
        )

    __radd__ = __add__

    def __sub__(self, other: Any) -> "RationalPoly":
        return self + (-_coerce(other))

    def __rsub__(self, other: Any) -> "RationalPoly":
        return _coerce(other) - self

    def __mul__(self, other: Any) -> "RationalPoly":
        rhs = _coerce(other)
        if self.is_zero or rhs.is_zero:
            return RationalPoly()
        product = [Fraction(0)] * (len(self.coeffs) + len(rhs.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(rhs.coeffs):
                    product[i + j] += a * b
        return RationalPoly(tuple(product))

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "RationalPoly":
        if exponent < 0:
            raise ValueError("Negative exponent in polynomial power.")
        result = RationalPoly.constant(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __divmod__(self, other: Any) -> Tuple["RationalPoly", "RationalPoly"]:
        divisor = _coerce(other)
        if divisor.is_zero:
            raise ZeroDivisionError("Polynomial division by zero.")
        remainder = list(self.coeffs)
        shift = len(divisor.coeffs) - 1
        lead = divisor.leading
        quotient = [Fraction(0)] * max(len(remainder) - shift, 0)
        for k in range(len(remainder) - shift - 1, -1, -1):
            factor = remainder[k + shift] / lead
            quotient[k] = factor
            if factor:
                for j, c in enumerate(divisor.coeffs):
                    remainder[k + j] -= factor * c
        return (
            RationalPoly(tuple(quotient)),
            RationalPoly(tuple(remainder[:shift])),
        )

    def __floordiv__(self, other: Any) -> "RationalPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: Any) -> "RationalPoly":
        return divmod(self, other)[1]

    def sort_key(self) -> Tuple[int, Tuple[Fraction, ...]]:
        """Key giving a deterministic total order on polynomials."""
        return (len(self.coeffs), tuple(reversed(self.coeffs)))

    def to_string(self, var: str = "x") -> str:
        """Canonical text form, parseable by `RationalPoly.parse`."""
        if self.is_zero:
            return "0"
        text = ""
        for degree in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[degree]
            if c == 0:
                continue
            magnitude = abs(c)
            if degree == 0:
                body = str(magnitude)
            else:
                monomial = var if degree == 1 else f"{var}^{degree}"
                body = (
                    monomial if magnitude == 1 else f"{magnitude}*{monomial}"
                )
            if not text:
                text = f"-{body}" if c < 0 else body
            else:
                text += f" - {body}" if c < 0 else f" + {body}"
        return text

    def __str__(self) -> str:
        return self.to_string()

    def __repr__(self) -> str:
        return f"RationalPoly({self.to_string()!r})"


def _coerce(value: Any) -> RationalPoly:
    if isinstance(value, RationalPoly):
        return value
    if isinstance(value, (int, Fraction)):
        return RationalPoly.constant(value)
    raise TypeError(f"Cannot use {value!r} as a polynomial.")


def _at(poly: RationalPoly, index: int) -> Fraction:
    return poly.coeffs[index] if index < len(poly.coeffs) else Fraction(0)


class _PolyParser:
    """Recursive descent parser for the polynomial grammar."""

    def __init__(self, text: str) -> None:
        self.text = text
        compact = "".join(text.split())
        self.tokens: List[str] = _TOKENS.findall(compact)
        if "".join(self.tokens) != compact or not self.tokens:
            raise ParseError(f"Invalid polynomial {text!r}.")
        self.pos = 0

    def parse(self) -> RationalPoly:
        value = self._expr()
        if self.pos != len(self.tokens):
            self._fail()
        return value

    def _fail(self) -> NoReturn:
        raise ParseError(
            f"Invalid polynomial {self.text!r} near token {self.pos + 1}."
        )

    def _peek(self) -> Optional[str]:
        if self.pos < len(self.tokens):
            return self.tokens[self.pos]
        return None

    def _next(self) -> Optional[str]:
        token = self._peek()
        self.pos += 1
        return token

    def _expr(self) -> RationalPoly:
        value = self._term()
        while self._peek() in ("+", "-"):
            op = self._next()
            rhs = self._term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def _term(self) -> RationalPoly:
        value = self._unary()
        while self._peek() == "*":
            self._next()
            value = value * self._unary()
        return value

    def _unary(self) -> RationalPoly:
        if self._peek() in ("+", "-"):
            op = self._next()
            operand = self._unary()
            return -operand if op == "-" else operand
        return self._power()

    def _power(self) -> RationalPoly:
        base = self._atom()
        if self._peek() == "^":
            self._next()
            exponent = self._next()
            if exponent is None or not exponent.isdigit():
                self._fail()
            return base ** int(str(exponent))
        return base

    def _atom(self) -> RationalPoly:
        token = self._next()
        if token is None:
            self._fail()
        elif token.isdigit():
            numerator = int(token)
            if self._peek() != "/":
                return RationalPoly.constant(numerator)
            self._next()
            denominator = self._next()
            if (
                denominator is None
                or not denominator.isdigit()
                or int(denominator) == 0
            ):
                self._fail()
            return RationalPoly.constant(
                Fraction(numerator, int(str(denominator)))
            )
        elif token in ("x", "m"):
            return RationalPoly.monomial(1)
        elif token == "(":
            value = self._expr()
            if self._next() != ")":
                self._fail()
            return value
        self._fail()


class EventualOrder(Enum):
    """Order of two polynomials for all sufficiently large arguments."""

    PRECEDES = "precedes"
    EQUAL = "equal"
    SUCCEEDS = "succeeds"


@dataclass(frozen=True)
class Factorization:
    """A polynomial written as ``constant * prod(factor**multiplicity)``."""

    constant: Fraction
    factors: Tuple[Tuple[RationalPoly, int], ...]

    def expand(self) -> RationalPoly:
        """Multiply the pieces back together."""
        result = RationalPoly.constant(self.constant)
        for factor, multiplicity in self.factors:
            result = result * factor**multiplicity
        return result


def poly_gcd(p: RationalPoly, q: RationalPoly) -> RationalPoly:
    """Monic greatest common divisor; ``poly_gcd(0, 0)`` is zero."""
    a, b = p, q
    while not b.is_zero:
        a, b = b, (a % b).monic()
    return a.monic()


def exact_quotient(
    f: RationalPoly, g: RationalPoly
) -> Optional[RationalPoly]:
    """Return ``f / g`` if ``g`` divides ``f`` exactly, else `None`."""
    quotient, remainder = divmod(f, g)
    if remainder.is_zero:
        return quotient
    return None


def squarefree_decompose(f: RationalPoly) -> Factorization:
    """Squarefree decomposition by Yun's algorithm.

    The returned factors are monic, squarefree and pairwise coprime, with
    strictly increasing multiplicities.

    Raises
    ------
    ZeroPolynomial
        If ``f`` is zero.
    """
    if f.is_zero:
        raise ZeroPolynomial("Cannot decompose the zero polynomial.")
    constant = f.leading
    monic = f.monic()
    if monic.degree == 0:
        return Factorization(constant, ())
    derivative = monic.derivative()
    common = poly_gcd(monic, derivative)
    b = monic // common
    d = derivative // common - b.derivative()
    factors = []
    multiplicity = 1
    while b.degree > 0:
        a = poly_gcd(b, d)
        b = b // a
        d = d // a - b.derivative()
        if a.degree > 0:
            factors.append((a, multiplicity))
        multiplicity += 1
    return Factorization(constant, tuple(factors))


def _integer_coefficients(f: RationalPoly) -> List[int]:
    """Primitive integer multiple of ``f`` with positive leading term."""
    scale = 1
    for c in f.coeffs:
        scale = scale * c.denominator // math.gcd(scale, c.denominator)
    ints = [int(c * scale) for c in f.coeffs]
    content = 0
    for value in ints:
        content = math.gcd(content, value)
    ints = [value // content for value in ints]
    if ints[-1] < 0:
        ints = [-value for value in ints]
    return ints


def _divisors(n: int) -> List[int]:
    n = abs(n)
    small, large = [], []
    k = 1
    while k * k <= n:
        if n % k == 0:
            small.append(k)
            if k * k != n:
                large.append(n // k)
        k += 1
    return small + large[::-1]


def rational_roots(f: RationalPoly) -> List[Fraction]:
    """Distinct rational roots of ``f`` in increasing order.

    Raises
    ------
    ZeroPolynomial
        If ``f`` is zero.
    """
    if f.is_zero:
        raise ZeroPolynomial("The zero polynomial has every root.")
    ints = _integer_coefficients(f)
    roots = set()
    if ints[0] == 0:
        roots.add(Fraction(0))
        while ints[0] == 0:
            ints.pop(0)
    if len(ints) > 1:
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                for candidate in (Fraction(p, q), Fraction(-p, q)):
                    if f(candidate) == 0:
                        roots.add(candidate)
    return sorted(roots)


def _split_squarefree(f: RationalPoly) -> List[RationalPoly]:
    pieces = []
    remaining = f
    for root in rational_roots(f):
        linear = RationalPoly((-root, Fraction(1)))
        pieces.append(linear)
        remaining = remaining // linear
    if remaining.degree > 3:
        for factor in zassenhaus(_integer_coefficients(remaining)):
            poly = RationalPoly(tuple(Fraction(c) for c in factor))
            logger.debug("Factor %s of %s", poly, f)
            pieces.append(poly.monic())
    elif remaining.degree > 0:
        # no rational roots left, so degrees 2 and 3 are irreducible
        pieces.append(remaining.monic())
    return pieces


def factor_rational(f: RationalPoly) -> Factorization:
    """Complete factorization of ``f`` into monic irreducibles over Q.

    Squarefree parts are split by extracting rational roots and then by
    factoring modulo a prime, Hensel lifting and recombining the lifted
    factors.

    Raises
    ------
    ZeroPolynomial
        If ``f`` is zero.
    """
    squarefree = squarefree_decompose(f)
    factors = [
        (irreducible, multiplicity)
        for part, multiplicity in squarefree.factors
        for irreducible in _split_squarefree(part)
    ]
    factors.sort(key=lambda item: (item[0].sort_key(), item[1]))
    return Factorization(squarefree.constant, tuple(factors))


def monic_divisors(f: RationalPoly) -> List[RationalPoly]:
    """All monic divisors of a nonzero polynomial, in canonical order."""
    divisors = [RationalPoly.constant(1)]
    for factor, multiplicity in factor_rational(f).factors:
        divisors = [
            d * factor**e for d in divisors for e in range(multiplicity + 1)
        ]
    return sorted(divisors, key=RationalPoly.sort_key)


def eventual_compare(p1: RationalPoly, p2: RationalPoly) -> EventualOrder:
    """Compare ``p1(m)`` and ``p2(m)`` for ``m`` large enough."""
    difference = p2 - p1
    if difference.is_zero:
        return EventualOrder.EQUAL
    if difference.leading > 0:
        return EventualOrder.PRECEDES
    return EventualOrder.SUCCEEDS


def root_bound(f: RationalPoly) -> int:
    """Integer beyond which ``f`` has the sign of its leading coefficient.

    Cauchy's bound ``1 + max |a_i / a_n|``, rounded up.
    """
    if f.degree <= 0:
        return 1
    lead = f.leading
    largest = max(abs(c / lead) for c in f.coeffs[:-1])
    return 1 + math.ceil(largest)
