"""Weighted filtration graphs, their concave envelope, and the Kempf
function.

A weighted vector ``(b, v)`` is drawn as the polygon through the cumulative
points ``(b_1 + ... + b_i, w_1 + ... + w_i)`` with ``w_i = -b_i * v_i``.
The slopes of its least concave majorant (the envelope lies above the
graph) give the maximizer of ``(Gamma, v) / |Gamma|`` over nondecreasing
``Gamma``. Square roots never appear: values of that quotient are carried
as `SignedSquare`.
"""

__all__ = [
    "SignedSquare",
    "WeightedVector",
    "FiltrationGraph",
    "EnvelopeResult",
    "KempfParameters",
    "FiltrationData",
    "envelope_maximize",
    "isotonic_regression",
    "mu_v",
    "build_graph",
    "kempf_function",
]

import functools
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

from tensorhn.algebra.poly import RationalPoly, format_rational
from tensorhn.errors import InputError, InvalidParameters, InvalidWeights

Point = Tuple[Fraction, Fraction]


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


@functools.total_ordering
@dataclass(frozen=True)
class SignedSquare:
    """The number ``sign * sqrt(value)`` stored exactly.

    Ordering follows the real number it stands for.
    """

    sign: int
    value: Fraction

    @classmethod
    def zero(cls) -> "SignedSquare":
        return cls(0, Fraction(0))

    @classmethod
    def of(
        cls, numerator: Fraction, denominator_squared: Fraction
    ) -> "SignedSquare":
        """Return ``numerator / sqrt(denominator_squared)``."""
        if denominator_squared == 0 or numerator == 0:
            return cls.zero()
        return cls(_sign(numerator), numerator**2 / denominator_squared)

    @property
    def key(self) -> Fraction:
        return self.sign * self.value

    def scaled(self, factor: Fraction) -> "SignedSquare":
        """Multiply the underlying square by a positive ``factor``."""
        return SignedSquare(self.sign, self.value * factor)

    def __lt__(self, other: Any) -> bool:
        if not isinstance(other, SignedSquare):
            return NotImplemented
        return self.key < other.key

    def to_dict(self) -> Dict[str, Any]:
        return {"sign": self.sign, "square": format_rational(self.value)}


@dataclass(frozen=True)
class WeightedVector:
    """Weights ``b_i > 0`` and values ``v_i`` with ``sum(b_i v_i) = 0``.

    Raises
    ------
    InputError
        If the lengths differ, a weight is not positive, the vector is not
        balanced, or ``v`` is zero.
    """

    b: Tuple[Fraction, ...]
    v: Tuple[Fraction, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))
        object.__setattr__(self, "v", tuple(Fraction(x) for x in self.v))
        if not self.b or len(self.b) != len(self.v):
            raise InputError(
                "Weights and values must be nonempty and of equal length."
            )
        for index, weight in enumerate(self.b, start=1):
            if weight <= 0:
                raise InputError(f"Weight b^{index} = {weight} is not > 0.")
        if sum(bi * vi for bi, vi in zip(self.b, self.v)) != 0:
            raise InputError("The vector is not balanced: sum(b*v) != 0.")
        if not any(self.v):
            raise InputError("The value vector must be nonzero.")

    @property
    def heights(self) -> Tuple[Fraction, ...]:
        """Step heights ``w_i = -b_i * v_i``."""
        return tuple(-bi * vi for bi, vi in zip(self.b, self.v))

    def cumulative(self) -> List[Point]:
        """Points of the graph, starting at the origin."""
        points = [(Fraction(0), Fraction(0))]
        for weight, height in zip(self.b, self.heights):
            last_b, last_w = points[-1]
            points.append((last_b + weight, last_w + height))
        return points

    def refine(
        self, index: int, fraction: Fraction, height: Fraction
    ) -> "WeightedVector":
        """Insert a graph vertex inside step ``index`` (0-based).

        The new vertex sits at the fraction ``0 < fraction < 1`` of the
        step's width, at absolute height ``height``.
        """
        if not 0 < fraction < 1:
            raise InputError("Refinement fraction must lie in (0, 1).")
        points = self.cumulative()
        left_w = points[index][1]
        width = self.b[index]
        first = width * fraction
        second = width - first
        first_height = height - left_w
        second_height = points[index + 1][1] - height
        b = list(self.b)
        heights = list(self.heights)
        b[index : index + 1] = [first, second]
        heights[index : index + 1] = [first_height, second_height]
        return WeightedVector(
            tuple(b), tuple(-h / bi for h, bi in zip(heights, b))
        )


@dataclass(frozen=True)
class FiltrationGraph:
    """Step widths ``b^i`` and heights ``w^i`` of a filtration graph."""

    b: Tuple[Fraction, ...]
    w: Tuple[Fraction, ...]

    @property
    def v(self) -> Tuple[Fraction, ...]:
        """Values ``v_i = -w^i / b^i`` (negated slopes)."""
        return tuple(-wi / bi for bi, wi in zip(self.b, self.w))

    @property
    def is_flat(self) -> bool:
        return not any(self.w)

    def points(self) -> List[Point]:
        points = [(Fraction(0), Fraction(0))]
        for bi, wi in zip(self.b, self.w):
            points.append((points[-1][0] + bi, points[-1][1] + wi))
        return points

    def weighted_vector(self) -> WeightedVector:
        return WeightedVector(self.b, self.v)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "b": [format_rational(x) for x in self.b],
            "w": [format_rational(x) for x in self.w],
            "points": [
                [format_rational(x), format_rational(y)]
                for x, y in self.points()
            ],
        }


@dataclass(frozen=True)
class EnvelopeResult:
    """Least concave majorant of a weighted graph and its slopes."""

    points: Tuple[Point, ...]
    """Envelope evaluated at every graph abscissa."""

    gamma: Tuple[Fraction, ...]
    """Maximizer ``Gamma_i = -(w~_i - w~_{i-1}) / b_i``, nondecreasing."""

    mu_squared: SignedSquare

    blocks: Tuple[Tuple[int, int], ...]
    """Half-open 0-based step ranges pooled under one envelope segment."""

    def to_dict(self) -> Dict[str, Any]:
        return {
            "gamma": [format_rational(g) for g in self.gamma],
            "mu_squared": format_rational(self.mu_squared.value),
            "sign": self.mu_squared.sign,
            "envelope": [
                [format_rational(x), format_rational(y)]
                for x, y in self.points
            ],
            "blocks": [list(block) for block in self.blocks],
        }


def _cross(o: Point, a: Point, b: Point) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def mu_v(wv: WeightedVector, gamma: Sequence[Fraction]) -> SignedSquare:
    """``(Gamma, v) / |Gamma|`` for the inner product weighted by ``b``.

    A zero ``gamma`` gives the zero value.
    """
    numerator = sum(
        (bi * gi * vi for bi, gi, vi in zip(wv.b, gamma, wv.v)), Fraction(0)
    )
    norm_squared = sum(
        (bi * gi * gi for bi, gi in zip(wv.b, gamma)), Fraction(0)
    )
    return SignedSquare.of(numerator, norm_squared)


def envelope_maximize(wv: WeightedVector) -> EnvelopeResult:
    """Maximize ``mu_v`` over the closed cone of nondecreasing vectors.

    Builds the upper hull of the cumulative graph by a monotone chain;
    collinear vertices are dropped, so equal adjacent slopes share one
    block. A zero ``gamma`` (sign 0) means no destabilizing direction.
    """
    points = wv.cumulative()
    hull: List[int] = []
    for index, point in enumerate(points):
        while (
            len(hull) >= 2
            and _cross(points[hull[-2]], points[hull[-1]], point) >= 0
        ):
            hull.pop()
        hull.append(index)

    envelope = list(points)
    blocks = []
    for start, stop in zip(hull, hull[1:]):
        (b0, w0), (b1, w1) = points[start], points[stop]
        slope = (w1 - w0) / (b1 - b0)
        for i in range(start + 1, stop):
            envelope[i] = (points[i][0], w0 + slope * (points[i][0] - b0))
        blocks.append((start, stop))

    gamma = tuple(
        -(envelope[i + 1][1] - envelope[i][1]) / wv.b[i]
        for i in range(len(wv.b))
    )
    return EnvelopeResult(
        points=tuple(envelope),
        gamma=gamma,
        mu_squared=mu_v(wv, gamma),
        blocks=tuple(blocks),
    )


def isotonic_regression(
    b: Sequence[Fraction], v: Sequence[Fraction]
) -> Tuple[Fraction, ...]:
    """Weighted nondecreasing least-squares fit by pool adjacent violators.

    Adjacent blocks with equal means are merged.
    """
    blocks: List[List[Fraction]] = []
    for weight, value in zip(b, v):
        blocks.append([weight * value, Fraction(weight), Fraction(1)])
        while (
            len(blocks) > 1
            and blocks[-2][0] / blocks[-2][1] >= blocks[-1][0] / blocks[-1][1]
        ):
            total, mass, count = blocks.pop()
            blocks[-1][0] += total
            blocks[-1][1] += mass
            blocks[-1][2] += count
    fitted: List[Fraction] = []
    for total, mass, count in blocks:
        fitted.extend([total / mass] * int(count))
    return tuple(fitted)


@dataclass(frozen=True)
class KempfParameters:
    """Data fixing the GIT linearization of a tensor problem.

    Parameters
    ----------
    r : `int`
        Rank of the sheaf.
    s : `int`
        Tensor degree.
    delta : `RationalPoly`
        Stability polynomial, positive leading coefficient.
    P : `RationalPoly`
        Hilbert polynomial of the sheaf.
    dimension : `int`
        Dimension ``n`` of the base variety.
    """

    r: int
    s: int
    delta: RationalPoly
    P: RationalPoly
    dimension: int = 1

    def __post_init__(self) -> None:
        if self.r < 1:
            raise InvalidParameters(f"Rank must be positive, got {self.r}.")
        if self.delta.leading <= 0:
            raise InvalidParameters(
                f"delta = {self.delta} needs a positive leading coefficient."
            )

    def ratio(self, m: int) -> Fraction:
        """The ratio ``r*delta(m) / (P(m) - s*delta(m))``.

        Raises
        ------
        InvalidParameters
            If ``P(m) - s*delta(m) <= 0``.
        """
        denominator = self.P(m) - self.s * self.delta(m)
        if denominator <= 0:
            raise InvalidParameters(
                f"P(m) - s*delta(m) = {denominator} is not positive at m={m}."
            )
        return self.r * self.delta(m) / denominator


@dataclass(frozen=True)
class FiltrationData:
    """Per-step data ``dim V^i``, ``r^i`` and ``epsilon^i`` (i = 1..t+1)."""

    dims: Tuple[Fraction, ...]
    ranks: Tuple[int, ...]
    eps_step: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "dims", tuple(Fraction(d) for d in self.dims))
        object.__setattr__(self, "ranks", tuple(self.ranks))
        object.__setattr__(self, "eps_step", tuple(self.eps_step))
        if not (len(self.dims) == len(self.ranks) == len(self.eps_step) > 0):
            raise InputError("Filtration steps must have equal, nonzero size.")
        for index, dim in enumerate(self.dims, start=1):
            if dim <= 0:
                raise InputError(f"dim V^{index} = {dim} is not positive.")

    @property
    def total_dim(self) -> Fraction:
        return sum(self.dims, Fraction(0))

    def check(self, params: KempfParameters) -> None:
        if sum(self.ranks) != params.r:
            raise InvalidParameters(
                f"Step ranks {self.ranks} do not add up to r={params.r}."
            )
        if sum(self.eps_step) != params.s:
            raise InvalidParameters(
                f"Steps {self.eps_step} do not add up to s={params.s}."
            )

    def brackets(self, ratio: Fraction) -> List[Fraction]:
        """Per-step brackets
        ``r dim V^i - r^i dim V + ratio (s dim V^i - e^i dim V)``.
        """
        total = self.total_dim
        r = sum(self.ranks)
        s = sum(self.eps_step)
        return [
            r * dim - rank * total + ratio * (s * dim - eps * total)
            for dim, rank, eps in zip(self.dims, self.ranks, self.eps_step)
        ]

    def partial_sums(self, ratio: Fraction) -> List[Fraction]:
        """Cumulative brackets for ``i = 1..t+1``; the last one is zero."""
        sums = []
        running = Fraction(0)
        for bracket in self.brackets(ratio):
            running += bracket
            sums.append(running)
        return sums


def build_graph(
    data: FiltrationData, params: KempfParameters, m: int
) -> FiltrationGraph:
    """Graph of a filtration of the space of sections at level ``m``.

    ``b^i = dim V^i / m**n`` and
    ``w^i = (m / dim V) * bracket_i`` with the brackets of
    `FiltrationData.brackets`.

    Raises
    ------
    InvalidParameters
        If the ratio is undefined at ``m`` or the steps do not add up.
    """
    data.check(params)
    ratio = params.ratio(m)
    total = data.total_dim
    scale = Fraction(m) / total
    b = tuple(dim / Fraction(m) ** params.dimension for dim in data.dims)
    w = tuple(scale * bracket for bracket in data.brackets(ratio))
    return FiltrationGraph(b, w)


def kempf_function(
    data: FiltrationData,
    weights: Sequence[Fraction],
    params: KempfParameters,
    m: int,
) -> SignedSquare:
    """Kempf function of a weighted filtration as a signed square.

    The one-parameter subgroup has ``Gamma_{i+1} - Gamma_i = n_i dim V``
    and ``sum(dim V^i Gamma_i) = 0``; the value is
    ``sum(n_i X_i) / sqrt(sum(dim V^i Gamma_i**2))`` with ``X_i`` the
    partial sums of `FiltrationData.partial_sums`.

    Raises
    ------
    InvalidWeights
        If the number of weights is not ``t`` or a weight is not positive.
    """
    t = len(data.dims) - 1
    if len(weights) != t:
        raise InvalidWeights(f"Expected {t} weights, got {len(weights)}.")
    for index, weight in enumerate(weights, start=1):
        if weight <= 0:
            raise InvalidWeights(f"Weight n_{index} = {weight} is not > 0.")
    data.check(params)
    if t == 0:
        return SignedSquare.zero()
    total = data.total_dim
    gamma = [Fraction(0)]
    for weight in weights:
        gamma.append(gamma[-1] + Fraction(weight) * total)
    shift = sum((d * g for d, g in zip(data.dims, gamma)), Fraction(0)) / total
    gamma = [g - shift for g in gamma]
    partial = data.partial_sums(params.ratio(m))
    numerator = sum(
        (Fraction(n) * x for n, x in zip(weights, partial)), Fraction(0)
    )
    norm_squared = sum(
        (d * g * g for d, g in zip(data.dims, gamma)), Fraction(0)
    )
    return SignedSquare.of(numerator, norm_squared)
