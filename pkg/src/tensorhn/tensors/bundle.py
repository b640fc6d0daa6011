"""Rank two tensors on the projective line.

A tensor is a split bundle ``E = O(a) + O(b)`` with ``a >= b``, a degree
``s`` and a nonzero symmetric map ``E^{(x)s} -> O(M)``. It is stored as the
binary form ``sum(a_i X0^i X1^(s-i))`` whose coefficient ``a_i`` is a
section of ``O(M - i*a - (s-i)*b)``.
"""

__all__ = [
    "SplitBundle",
    "LineSubbundle",
    "Rank2Tensor",
    "hilbert_polynomial",
    "make_tensor",
    "validate_tensor",
]

from dataclasses import dataclass
from typing import (
    Any,
    Dict,
    List,
    Mapping,
    Optional,
    Sequence,
    Tuple,
    Union,
)

from tensorhn.algebra.forms import BinaryFormOverP1, section_key
from tensorhn.algebra.poly import RationalPoly, poly_gcd
from tensorhn.errors import DegreeMismatch, InputError, ZeroTensor


def hilbert_polynomial(rank: int, degree: int, genus: int = 0) -> RationalPoly:
    """Riemann-Roch on a curve: ``rank*m + degree + rank*(1 - genus)``."""
    return RationalPoly((degree + rank * (1 - genus), rank))


@dataclass(frozen=True)
class SplitBundle:
    """``O(a) + O(b)`` on the projective line, with ``a >= b``."""

    a: int
    b: int

    rank = 2

    def __post_init__(self) -> None:
        if self.a < self.b:
            raise InputError(
                f"Split bundle degrees must satisfy a >= b, got "
                f"a={self.a}, b={self.b}."
            )

    @property
    def deg(self) -> int:
        return self.a + self.b

    def twist(self, k: int) -> "SplitBundle":
        return SplitBundle(self.a + k, self.b + k)

    def hilbert_polynomial(self) -> RationalPoly:
        return hilbert_polynomial(2, self.deg)


@dataclass(frozen=True)
class LineSubbundle:
    """Saturated line subbundle ``O(c)`` spanned by the section ``(p, q)``.

    ``gcd(p, q) = 1``, ``q`` is monic when nonzero and ``p = 1`` when
    ``q = 0``.
    """

    p: RationalPoly
    q: RationalPoly
    c: int

    @classmethod
    def from_section(
        cls, p: RationalPoly, q: RationalPoly, bundle: SplitBundle
    ) -> "LineSubbundle":
        """Saturate the subsheaf spanned by ``(p, q)`` inside ``bundle``.

        The saturation has degree ``min(a - deg p, b - deg q)``; the zero
        polynomial has degree minus infinity, so a vanishing component
        drops out of the minimum.

        Raises
        ------
        InputError
            If ``p`` and ``q`` are both zero.
        """
        if p.is_zero and q.is_zero:
            raise InputError("A line subbundle needs a nonzero section.")
        common = poly_gcd(p, q)
        p, q = p // common, q // common
        scale = q.leading if not q.is_zero else p.leading
        p, q = p * (1 / scale), q * (1 / scale)
        degree = min(bundle.a - p.degree, bundle.b - q.degree)
        return cls(p, q, int(degree))

    @property
    def direction(self) -> Tuple[RationalPoly, RationalPoly]:
        return (self.p, self.q)

    def twist(self, k: int) -> "LineSubbundle":
        return LineSubbundle(self.p, self.q, self.c + k)

    def sort_key(self) -> Tuple:
        return section_key(self.p, self.q)

    def to_dict(self) -> Dict[str, Any]:
        return {"p": str(self.p), "q": str(self.q), "degree": self.c}

    def __str__(self) -> str:
        return f"({self.p}, {self.q}) of degree {self.c}"


@dataclass(frozen=True)
class Rank2Tensor:
    """A validated rank two tensor.

    Raises
    ------
    ZeroTensor
        If the form is identically zero.
    DegreeMismatch
        If some coefficient exceeds its degree bound.
    """

    bundle: SplitBundle
    s: int
    M_degree: int
    form: BinaryFormOverP1

    def __post_init__(self) -> None:
        if self.s < 1:
            raise InputError(f"Tensor degree must be positive, got {self.s}.")
        if self.form.s != self.s:
            raise InputError(
                f"Form degree {self.form.s} differs from s={self.s}."
            )
        if self.form.is_zero:
            raise ZeroTensor("The tensor form is identically zero.")
        for i, coefficient in enumerate(self.form.coeffs):
            bound = self.bound(i)
            if coefficient.degree > bound:
                raise DegreeMismatch(
                    f"Coefficient a_{i} = {coefficient} has degree "
                    f"{coefficient.degree} but M - i*a - (s-i)*b = {bound}."
                )

    def bound(self, i: int) -> int:
        """Degree bound ``M - i*a - (s-i)*b`` of the coefficient ``a_i``."""
        return self.M_degree - i * self.bundle.a - (self.s - i) * self.bundle.b

    @property
    def coeffs(self) -> Tuple[RationalPoly, ...]:
        return self.form.coeffs

    def twist(self, k: int) -> "Rank2Tensor":
        """Tensor by ``O(k)``: degrees shift, coefficients are unchanged."""
        return Rank2Tensor(
            self.bundle.twist(k), self.s, self.M_degree + self.s * k, self.form
        )

    def to_dict(self) -> Dict[str, Any]:
        return {
            "bundle": {"a": self.bundle.a, "b": self.bundle.b},
            "s": self.s,
            "M_degree": self.M_degree,
            "coeffs": [
                {"i": i, "poly": str(self.form.coeffs[i])}
                for i in range(self.s, -1, -1)
            ],
        }


def _minimal_degree(
    a: int, b: int, s: int, coeffs: Sequence[RationalPoly]
) -> int:
    degrees = [
        int(c.degree) + i * a + (s - i) * b
        for i, c in enumerate(coeffs)
        if not c.is_zero
    ]
    if not degrees:
        raise ZeroTensor("The tensor form is identically zero.")
    return max(degrees)


def make_tensor(
    a: int,
    b: int,
    s: int,
    coeffs: Sequence[Union[str, RationalPoly]],
    M_degree: Optional[int] = None,
) -> Rank2Tensor:
    """Build a tensor from ``[a_0, ..., a_s]``.

    The bundle is reordered so that ``a >= b``, reversing the coefficients.
    When ``M_degree`` is omitted the smallest admissible degree is used.
    """
    polys = [
        c if isinstance(c, RationalPoly) else RationalPoly.parse(c)
        for c in coeffs
    ]
    if len(polys) != s + 1:
        raise InputError(f"Expected {s + 1} coefficients, got {len(polys)}.")
    if M_degree is None:
        M_degree = _minimal_degree(a, b, s, polys)
    if a < b:
        a, b = b, a
        polys = polys[::-1]
    return Rank2Tensor(
        SplitBundle(a, b), s, M_degree, BinaryFormOverP1(s, tuple(polys))
    )


def _require_int(raw: Mapping[str, Any], key: str) -> int:
    value = raw.get(key)
    if isinstance(value, bool) or not isinstance(value, int):
        raise InputError(f"Field {key!r} must be an integer, got {value!r}.")
    return value


def _coefficient_strings(raw_coeffs: Any, s: int) -> List[str]:
    """Return ``[a_0, ..., a_s]`` from either JSON coefficient layout."""
    if not isinstance(raw_coeffs, list) or len(raw_coeffs) != s + 1:
        raise InputError(f"Field 'coeffs' must be a list of {s + 1} entries.")
    if all(isinstance(entry, dict) for entry in raw_coeffs):
        keyed: Dict[int, str] = {}
        for entry in raw_coeffs:
            i = entry.get("i")
            valid = isinstance(i, int) and not isinstance(i, bool)
            if not valid or not 0 <= i <= s:
                raise InputError(f"Invalid coefficient index {i!r}.")
            if i in keyed:
                raise InputError(f"Coefficient a_{i} is given twice.")
            keyed[i] = str(entry.get("poly", ""))
        return [keyed[i] for i in range(s + 1)]
    # plain lists run from a_s down to a_0
    return [str(entry) for entry in reversed(raw_coeffs)]


def validate_tensor(raw: Mapping[str, Any]) -> Rank2Tensor:
    """Check a JSON tensor document and build the tensor.

    ``{"bundle": {"a": 0, "b": 0}, "s": 2, "M_degree": 0,
    "coeffs": ["1", "0", "0"]}``; a plain ``coeffs`` list starts at
    ``a_s``, the keyed form ``[{"i": 2, "poly": "1"}, ...]`` may come in
    any order. ``M_degree`` defaults to the smallest admissible degree.

    Raises
    ------
    InputError
        On malformed documents, including `DegreeMismatch` and
        `ZeroTensor`.
    """
    if not isinstance(raw, Mapping):
        raise InputError("A tensor document must be a JSON object.")
    bundle = raw.get("bundle")
    if not isinstance(bundle, Mapping):
        raise InputError("Field 'bundle' must be an object with 'a' and 'b'.")
    a = _require_int(bundle, "a")
    b = _require_int(bundle, "b")
    s = _require_int(raw, "s")
    if s < 1:
        raise InputError(f"Tensor degree must be positive, got {s}.")
    M_degree = _require_int(raw, "M_degree") if "M_degree" in raw else None
    return make_tensor(
        a, b, s, _coefficient_strings(raw.get("coeffs"), s), M_degree
    )
