"""Tests for the rational polynomial module."""

import math
from fractions import Fraction

import pytest

from tensorhn.algebra.poly import (
    EventualOrder,
    RationalPoly,
    eventual_compare,
    exact_quotient,
    factor_rational,
    format_rational,
    monic_divisors,
    parse_rational,
    poly_gcd,
    rational_roots,
    root_bound,
    squarefree_decompose,
)
from tensorhn.errors import ParseError, ZeroPolynomial


def P(text: str) -> RationalPoly:
    return RationalPoly.parse(text)


def test_parse_and_format() -> None:
    """Test the polynomial grammar and the canonical text form."""
    p = P("3/2*x^2 - x + 7")
    assert p == RationalPoly((Fraction(7), Fraction(-1), Fraction(3, 2)))
    assert str(p) == "3/2*x^2 - x + 7"
    assert P(str(p)) == p
    assert P("(x+1)^2") == P("x^2 + 2*x + 1")
    assert P("-x") == RationalPoly((0, -1))
    assert P(" m + 1/2 ").to_string("m") == "m + 1/2"


@pytest.mark.parametrize(
    "text", ["", "x^", "2/0", "x**2", "y", "(x+1", "x^-1"]
)
def test_parse_errors(text: str) -> None:
    """Malformed polynomial strings raise ParseError."""
    with pytest.raises(ParseError):
        P(text)


def test_parse_rational() -> None:
    """Rational literals parse to reduced fractions."""
    assert parse_rational("6/4") == Fraction(3, 2)
    assert parse_rational(" -7 ") == Fraction(-7)
    assert format_rational(Fraction(4, 2)) == "2"
    assert format_rational(Fraction(-1, 3)) == "-1/3"
    with pytest.raises(ParseError):
        parse_rational("1/0")
    with pytest.raises(ParseError):
        parse_rational("one")


def test_zero_polynomial() -> None:
    """The zero polynomial has degree minus infinity."""
    zero = RationalPoly((0, 0))
    assert zero.is_zero
    assert zero.coeffs == ()
    assert zero.degree == -math.inf
    assert str(zero) == "0"
    assert not zero
    assert P("5").degree == 0


def test_arithmetic() -> None:
    """Ring operations and division with remainder."""
    p = P("x^2 - 1")
    q = P("x - 1")
    assert p // q == P("x + 1")
    assert p % q == RationalPoly()
    assert divmod(P("x^2 + 1"), q) == (P("x + 1"), P("2"))
    assert 2 * q + 1 == P("2*x - 1")
    assert 1 - q == P("-x + 2")
    assert q**3 == P("x^3 - 3*x^2 + 3*x - 1")
    assert p(Fraction(1, 2)) == Fraction(-3, 4)
    assert P("x^3").derivative() == P("3*x^2")
    assert exact_quotient(p, q) == P("x + 1")
    assert exact_quotient(p, P("x")) is None
    with pytest.raises(ZeroDivisionError):
        divmod(p, RationalPoly())


def test_gcd() -> None:
    """The gcd is monic and gcd(0, 0) is zero."""
    assert poly_gcd(P("x^2 - 1"), P("x - 1")) == P("x - 1")
    assert poly_gcd(P("2*x + 4"), RationalPoly()) == P("x + 2")
    assert poly_gcd(RationalPoly(), RationalPoly()).is_zero
    w = P("x^2 + x + 1")
    u = P("x - 3")
    v = P("2*x + 5")
    assert poly_gcd(u * w, v * w) == w


def test_squarefree_decompose() -> None:
    """Yun's algorithm returns increasing multiplicities."""
    square = squarefree_decompose(P("x^2"))
    assert square.constant == 1
    assert square.factors == ((P("x"), 2),)

    f = P("(x - 1)*(x - 2)^2")
    result = squarefree_decompose(f)
    assert result.factors == ((P("x - 1"), 1), (P("x - 2"), 2))
    assert result.expand() == f

    constant = squarefree_decompose(P("5"))
    assert constant.constant == 5
    assert constant.factors == ()

    with pytest.raises(ZeroPolynomial):
        squarefree_decompose(RationalPoly())


def test_factor_rational() -> None:
    """Complete factorization over the rationals."""
    assert factor_rational(P("x^2 - 1")).factors == (
        (P("x - 1"), 1),
        (P("x + 1"), 1),
    )
    assert factor_rational(P("x^2 + 1")).factors == ((P("x^2 + 1"), 1),)

    f = P("(x^2 + 1)*(2*x - 3)")
    result = factor_rational(f)
    assert result.constant == 2
    assert result.factors == ((P("x - 3/2"), 1), (P("x^2 + 1"), 1))
    assert result.expand() == f


def test_factor_without_rational_roots() -> None:
    """Quartics without rational roots still split into quadratics."""
    f = P("(x^2 + 1)^2*(x^2 - 2)")
    result = factor_rational(f)
    assert set(result.factors) == {(P("x^2 + 1"), 2), (P("x^2 - 2"), 1)}
    assert result.expand() == f
    g = P("(x^2 + 1)*(x^2 + 3)")
    assert len(factor_rational(g).factors) == 2


def test_factor_degree_ten() -> None:
    """Products of two quintics factor quickly."""
    f = P("(x^5 + x + 3)*(x^5 - 2*x^2 + 7)")
    result = factor_rational(f)
    assert result.expand() == f
    assert sum(g.degree * m for g, m in result.factors) == 10
    assert all(g.degree <= 5 for g, _ in result.factors)

    eisenstein = P("(x^5 - x - 1)*(x^5 + 2*x + 2)")
    assert factor_rational(eisenstein).factors == (
        (P("x^5 - x - 1"), 1),
        (P("x^5 + 2*x + 2"), 1),
    )


def test_factor_many_modular_factors() -> None:
    """Five quadratics, each splitting modulo many primes."""
    quadratics = ["x^2 + 1", "x^2 + 2", "x^2 + 3", "x^2 + 5", "x^2 + 7"]
    f = P("*".join(f"({q})" for q in quadratics))
    result = factor_rational(f)
    assert result.factors == tuple((P(q), 1) for q in quadratics)
    assert factor_rational(P("x^10 + 2")).factors == ((P("x^10 + 2"), 1),)


def test_rational_roots() -> None:
    """Distinct rational roots come out sorted."""
    assert rational_roots(P("2*x^2 - 3*x + 1")) == [Fraction(1, 2), 1]
    assert rational_roots(P("x^3 - x")) == [-1, 0, 1]
    assert rational_roots(P("x^2 + 1")) == []


def test_monic_divisors() -> None:
    """Every monic divisor appears once, in canonical order."""
    assert monic_divisors(P("x^2 - 1")) == [
        P("1"),
        P("x - 1"),
        P("x + 1"),
        P("x^2 - 1"),
    ]
    assert monic_divisors(P("3")) == [P("1")]
    assert len(monic_divisors(P("x^3"))) == 4


def test_eventual_compare() -> None:
    """Comparison for large arguments follows the leading coefficient."""
    assert eventual_compare(P("m + 1"), P("m + 2")) is EventualOrder.PRECEDES
    assert (
        eventual_compare(P("2*m^2"), P("m + 100")) is EventualOrder.SUCCEEDS
    )
    p = P("m^2 - 3*m")
    assert eventual_compare(p, p) is EventualOrder.EQUAL


def test_root_bound() -> None:
    """Beyond the bound the polynomial has the sign of its leading term."""
    f = P("x^2 - 10*x - 11")
    bound = root_bound(f)
    assert bound == 12
    assert all(f(x) > 0 for x in range(bound, bound + 20))
    assert root_bound(P("7")) == 1
