"""Polynomials over Z/pZ and factorization of integer polynomials.

Polynomials are lists of `int` from the constant term upwards without
trailing zeros; ``[]`` is the zero polynomial. Factors over Z are found by
factoring modulo a small prime, Hensel lifting the modular factors and
recombining them by trial division.
"""

__all__ = ["gf_factor", "hensel_lift", "zassenhaus"]

import itertools
import logging
import math
import random
from typing import Iterator, List, Optional, Sequence, Tuple

logger = logging.getLogger("tensorhn")

Poly = List[int]

PRIMES_TRIED = 5
"""Admissible primes compared when choosing the factorization modulus."""


def _strip(f: Sequence[int]) -> Poly:
    out = list(f)
    while out and out[-1] == 0:
        out.pop()
    return out


def gf_reduce(f: Sequence[int], p: int) -> Poly:
    return _strip([c % p for c in f])


def _gf_add(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    size = max(len(f), len(g))
    padded_f = list(f) + [0] * (size - len(f))
    padded_g = list(g) + [0] * (size - len(g))
    return gf_reduce([a + b for a, b in zip(padded_f, padded_g)], p)


def _gf_sub(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    return _gf_add(f, [-c for c in g], p)


def _gf_mul(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return gf_reduce(out, p)


def _gf_divmod(
    f: Sequence[int], g: Sequence[int], p: int
) -> Tuple[Poly, Poly]:
    """Quotient and remainder modulo a prime ``p``; ``g`` is nonzero."""
    inverse = pow(g[-1], -1, p)
    remainder = gf_reduce(f, p)
    quotient = [0] * max(len(remainder) - len(g) + 1, 0)
    while len(remainder) >= len(g):
        shift = len(remainder) - len(g)
        c = remainder[-1] * inverse % p
        quotient[shift] = c
        for i, b in enumerate(g):
            remainder[shift + i] = (remainder[shift + i] - c * b) % p
        remainder = _strip(remainder)
    return _strip(quotient), remainder


def _gf_rem(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    return _gf_divmod(f, g, p)[1]


def _gf_monic(f: Sequence[int], p: int) -> Poly:
    inverse = pow(f[-1], -1, p)
    return [c * inverse % p for c in f]


def _gf_gcd(f: Sequence[int], g: Sequence[int], p: int) -> Poly:
    a, b = gf_reduce(f, p), gf_reduce(g, p)
    while b:
        a, b = b, _gf_rem(a, b, p)
    return _gf_monic(a, p) if a else []


def _gf_gcdex(f: Sequence[int], g: Sequence[int], p: int) -> Tuple[Poly, Poly]:
    """``s, t`` with ``s f + t g = 1`` for coprime ``f`` and ``g``."""
    r0, r1 = gf_reduce(f, p), gf_reduce(g, p)
    s0: Poly = [1]
    s1: Poly = []
    t0: Poly = []
    t1: Poly = [1]
    while r1:
        q, r = _gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, _gf_sub(s0, _gf_mul(q, s1, p), p)
        t0, t1 = t1, _gf_sub(t0, _gf_mul(q, t1, p), p)
    inverse = pow(r0[-1], -1, p)
    return (
        gf_reduce([c * inverse for c in s0], p),
        gf_reduce([c * inverse for c in t0], p),
    )


def _gf_pow_mod(
    f: Sequence[int], exponent: int, g: Sequence[int], p: int
) -> Poly:
    result: Poly = [1]
    base = _gf_rem(f, g, p)
    while exponent:
        if exponent & 1:
            result = _gf_rem(_gf_mul(result, base, p), g, p)
        base = _gf_rem(_gf_mul(base, base, p), g, p)
        exponent >>= 1
    return result


def _gf_derivative(f: Sequence[int], p: int) -> Poly:
    return gf_reduce([i * c for i, c in enumerate(f)][1:], p)


def _distinct_degree(f: Poly, p: int) -> List[Tuple[Poly, int]]:
    """Split a monic squarefree ``f`` into products of irreducibles of
    equal degree.
    """
    parts = []
    x = [0, 1]
    w = x
    d = 0
    while len(f) - 1 >= 2 * (d + 1):
        d += 1
        w = _gf_pow_mod(w, p, f, p)
        g = _gf_gcd(f, _gf_sub(w, x, p), p)
        if len(g) > 1:
            parts.append((g, d))
            f = _gf_divmod(f, g, p)[0]
            w = _gf_rem(w, f, p)
    if len(f) > 1:
        parts.append((f, len(f) - 1))
    return parts


def _equal_degree(
    f: Poly, d: int, p: int, rng: random.Random
) -> List[Poly]:
    """Irreducible factors of degree ``d`` of a monic squarefree ``f``
    whose factors all have degree ``d``; ``p`` is odd.
    """
    n = len(f) - 1
    if n == d:
        return [f]
    exponent = (p**d - 1) // 2
    while True:
        a = _strip([rng.randrange(p) for _ in range(n)])
        if len(a) < 2:
            continue
        b = _gf_sub(_gf_pow_mod(a, exponent, f, p), [1], p)
        g = _gf_gcd(f, b, p)
        if 1 < len(g) < len(f):
            return _equal_degree(g, d, p, rng) + _equal_degree(
                _gf_divmod(f, g, p)[0], d, p, rng
            )


def gf_factor(f: Sequence[int], p: int) -> List[Poly]:
    """Monic irreducible factors of a squarefree polynomial modulo an odd
    prime ``p``.

    The random splitting is seeded with ``p``, so the result is
    reproducible.
    """
    monic = _gf_monic(gf_reduce(f, p), p)
    rng = random.Random(p)
    factors = []
    for part, d in _distinct_degree(monic, p):
        factors.extend(_equal_degree(part, d, p, rng))
    return sorted(factors, key=lambda g: (len(g), g))


def _lift_pair(
    H: Poly, g: Poly, q: Poly, p: int, k: int
) -> Tuple[Poly, Poly]:
    """Lift monic ``g q = H (mod p)`` to ``G Q = H (mod p**k)``."""
    _, t = _gf_gcdex(g, q, p)
    modulus = p
    for _ in range(1, k):
        next_modulus = modulus * p
        error = _gf_sub(H, _gf_mul(g, q, next_modulus), next_modulus)
        e = gf_reduce([c // modulus for c in error], p)
        dg = _gf_rem(_gf_mul(e, t, p), g, p)
        dq = _gf_divmod(_gf_sub(e, _gf_mul(dg, q, p), p), g, p)[0]
        g = _gf_add(g, [c * modulus for c in dg], next_modulus)
        q = _gf_add(q, [c * modulus for c in dq], next_modulus)
        modulus = next_modulus
    return g, q


def hensel_lift(
    H: Poly, factors: Sequence[Poly], p: int, k: int
) -> List[Poly]:
    """Lift monic factors of ``H`` modulo ``p`` to factors modulo ``p**k``.

    ``H`` is monic modulo ``p**k`` and the ``factors`` are pairwise coprime
    with product ``H`` modulo ``p``.
    """
    if len(factors) == 1:
        return [gf_reduce(H, p**k)]
    first, rest = factors[0], factors[1:]
    product: Poly = [1]
    for g in rest:
        product = _gf_mul(product, g, p)
    g, q = _lift_pair(H, first, product, p, k)
    return [g] + hensel_lift(q, rest, p, k)


def _primes() -> Iterator[int]:
    candidate = 3
    while True:
        if all(candidate % d for d in range(3, math.isqrt(candidate) + 1, 2)):
            yield candidate
        candidate += 2


def _symmetric(f: Sequence[int], modulus: int) -> Poly:
    half = modulus // 2
    return _strip([c - modulus if c > half else c for c in f])


def _primitive(f: Sequence[int]) -> Poly:
    content = 0
    for c in f:
        content = math.gcd(content, c)
    out = [c // content for c in f]
    return [-c for c in out] if out[-1] < 0 else out


def _exact_quotient(f: Sequence[int], g: Sequence[int]) -> Optional[Poly]:
    """``f / g`` if ``g`` divides ``f`` in Z[x], otherwise None."""
    remainder = list(f)
    quotient = [0] * max(len(f) - len(g) + 1, 0)
    while len(remainder) >= len(g):
        shift = len(remainder) - len(g)
        c, rest = divmod(remainder[-1], g[-1])
        if rest:
            return None
        quotient[shift] = c
        for i, b in enumerate(g):
            remainder[shift + i] -= c * b
        remainder = _strip(remainder)
    return None if remainder else _strip(quotient)


def _choose_prime(f: Poly) -> Tuple[int, List[Poly]]:
    """Prime keeping ``f`` squarefree of the same degree, with the fewest
    modular factors among the first few admissible ones.
    """
    best: Optional[Tuple[int, List[Poly]]] = None
    tried = 0
    for p in _primes():
        if f[-1] % p == 0:
            continue
        fp = gf_reduce(f, p)
        if len(_gf_gcd(fp, _gf_derivative(fp, p), p)) != 1:
            continue
        factors = gf_factor(fp, p)
        if best is None or len(factors) < len(best[1]):
            best = (p, factors)
        tried += 1
        if len(factors) == 1 or tried == PRIMES_TRIED:
            return best
    raise AssertionError("unreachable")


def zassenhaus(f: Sequence[int]) -> List[Poly]:
    """Irreducible factors over Z of a primitive squarefree polynomial.

    ``f`` has degree at least 2 and a positive leading coefficient; the
    factors are primitive with positive leading coefficients.
    """
    f = list(f)
    p, modular = _choose_prime(f)
    if len(modular) == 1:
        return [f]
    lc = f[-1]
    norm = math.isqrt(sum(c * c for c in f)) + 1
    bound = 2 * lc * 2 ** (len(f) - 1) * norm
    k = 1
    while p**k <= bound:
        k += 1
    modulus = p**k
    H = gf_reduce([c * pow(lc, -1, modulus) for c in f], modulus)
    lifted = hensel_lift(H, modular, p, k)
    logger.debug(
        "%d modular factors of degree %d lifted modulo %d**%d",
        len(lifted),
        len(f) - 1,
        p,
        k,
    )
    factors = []
    remaining = f
    size = 1
    while 2 * size <= len(lifted):
        for subset in itertools.combinations(range(len(lifted)), size):
            candidate: Poly = [remaining[-1]]
            for index in subset:
                candidate = _gf_mul(candidate, lifted[index], modulus)
            candidate = _primitive(_symmetric(candidate, modulus))
            quotient = _exact_quotient(remaining, candidate)
            if quotient is not None:
                factors.append(candidate)
                remaining = quotient
                lifted = [
                    g for index, g in enumerate(lifted) if index not in subset
                ]
                break
        else:
            size += 1
    factors.append(remaining)
    return factors
