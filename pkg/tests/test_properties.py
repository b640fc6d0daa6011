"""Property tests comparing independent computations on random inputs."""

import random
from fractions import Fraction

from hypothesis import HealthCheck, assume, given, settings
from hypothesis import strategies as st

from tensorhn.algebra.forms import rational_function_roots
from tensorhn.algebra.poly import (
    EventualOrder,
    RationalPoly,
    eventual_compare,
    factor_rational,
    poly_gcd,
    root_bound,
)
from tensorhn.coverings.surface import (
    covering_stability,
    fiber_point_stability,
)
from tensorhn.envelope.graph import (
    envelope_maximize,
    isotonic_regression,
    mu_v,
)
from tensorhn.envelope.multiindex import (
    epsilon_from_oracle,
    mu_closed_form,
    mu_minimum,
)
from tensorhn.selftest import (
    random_filtration,
    random_fraction,
    random_oracle,
    random_tensor,
    random_weighted_vector,
)
from tensorhn.tensors.bundle import LineSubbundle, SplitBundle
from tensorhn.tensors.stability import (
    Verdict,
    candidate_sections,
    epsilon_of,
    hn_subsheaf,
    polar_epsilon,
    stability,
    weighted_filtration_value,
)

seeds = st.integers(min_value=0, max_value=2**32 - 1)
fractions = st.fractions(min_value=-20, max_value=20, max_denominator=12)
polys = st.lists(fractions, max_size=5).map(
    lambda coeffs: RationalPoly(tuple(coeffs))
)
taus = st.fractions(min_value=Fraction(1, 10), max_value=5, max_denominator=10)
small_integers = st.integers(min_value=-5, max_value=5)


@settings(max_examples=1000)
@given(seeds)
def test_envelope_is_isotonic_fit(seed: int) -> None:
    """Envelope slopes equal the weighted isotonic regression."""
    wv = random_weighted_vector(random.Random(seed))
    assert envelope_maximize(wv).gamma == isotonic_regression(wv.b, wv.v)


@settings(max_examples=1000)
@given(seeds)
def test_envelope_slopes_increase_across_blocks(seed: int) -> None:
    """Slopes are constant on a block and strictly larger on the next."""
    result = envelope_maximize(random_weighted_vector(random.Random(seed)))
    levels = []
    for start, stop in result.blocks:
        block = result.gamma[start:stop]
        assert len(set(block)) == 1
        levels.append(block[0])
    assert all(x < y for x, y in zip(levels, levels[1:]))
    assert result.blocks[0][0] == 0
    assert result.blocks[-1][1] == len(result.gamma)


@settings(max_examples=1000)
@given(seeds)
def test_envelope_is_balanced(seed: int) -> None:
    """The maximizer is orthogonal to the constants."""
    wv = random_weighted_vector(random.Random(seed))
    gamma = envelope_maximize(wv).gamma
    assert sum(bi * gi for bi, gi in zip(wv.b, gamma)) == 0


@settings(max_examples=1000)
@given(seeds)
def test_refinement_never_lowers_mu(seed: int) -> None:
    """Adding a vertex to the graph can only raise the maximum."""
    rng = random.Random(seed)
    wv = random_weighted_vector(rng)
    index = rng.randrange(len(wv.b))
    fraction = Fraction(rng.randint(1, 9), 10)
    refined = wv.refine(index, fraction, random_fraction(rng))
    assert (
        envelope_maximize(refined).mu_squared
        >= envelope_maximize(wv).mu_squared
    )


@settings(max_examples=100)
@given(seeds)
def test_envelope_is_optimal(seed: int) -> None:
    """No nondecreasing vector beats the envelope maximizer, and only its
    positive multiples attain it.
    """
    rng = random.Random(seed)
    wv = random_weighted_vector(rng)
    result = envelope_maximize(wv)
    best = result.mu_squared
    assert best.sign > 0
    for _ in range(100):
        gamma = sorted(random_fraction(rng, 20) for _ in wv.b)
        value = mu_v(wv, gamma)
        assert value <= best
        if value == best:
            ratio = gamma[0] / result.gamma[0]
            assert ratio > 0
            assert all(
                g == ratio * h for g, h in zip(gamma, result.gamma)
            )
    factor = random_fraction(rng, 9, positive=True)
    assert mu_v(wv, [factor * g for g in result.gamma]) == best
    shift = random_fraction(rng, 9, positive=True)
    assert mu_v(wv, [g + shift for g in result.gamma]) < best


@settings(deadline=None, max_examples=200)
@given(seeds)
def test_multiindex_closed_form(seed: int) -> None:
    """Counts of the unweighted minimizer give the brute force minimum
    for every choice of positive weights.
    """
    rng = random.Random(seed)
    ranks = random_filtration(rng)
    t = len(ranks) - 1
    r = ranks[-1]
    s = rng.randint(1, 3)
    nonzero = random_oracle(rng, t, s)
    counts = epsilon_from_oracle(t, ranks, s, nonzero)
    for _ in range(100):
        weights = [random_fraction(rng, 9, positive=True) for _ in range(t)]
        assert mu_closed_form(
            weights, ranks[:t], counts.eps[:t], s, r
        ) == mu_minimum(weights, ranks, s, nonzero)


@settings(deadline=None, max_examples=50)
@given(seeds)
def test_polar_epsilon_matches_multiplicity(seed: int) -> None:
    """Polar iteration and factor multiplicity give the same eps."""
    T = random_tensor(random.Random(seed))
    for section, epsilon in candidate_sections(T).sections:
        assert polar_epsilon(section, T) == epsilon
        assert epsilon_of(section, T) == epsilon


@settings(deadline=None, max_examples=40)
@given(seeds, taus, st.integers(min_value=-4, max_value=4))
def test_stability_is_twist_invariant(
    seed: int, tau: Fraction, k: int
) -> None:
    """Twisting by a line bundle keeps the verdict and the value."""
    T = random_tensor(random.Random(seed))
    report = stability(T, tau)
    twisted = stability(T.twist(k), tau)
    assert twisted.verdict is report.verdict
    assert twisted.value == report.value
    assert report.value == max(c.value for c in report.candidates)


@settings(deadline=None, max_examples=40)
@given(seeds, taus)
def test_covering_matches_bundle(seed: int, tau: Fraction) -> None:
    """Section scores on the ruled surface reproduce the bundle side."""
    T = random_tensor(random.Random(seed))
    covering = covering_stability(T, tau)
    report = stability(T, tau)
    assert covering.verdict is report.verdict
    assert covering.value == report.value
    if report.verdict is Verdict.UNSTABLE:
        assert covering.hn_section is not None
        assert report.witness is not None
        witness = report.witness
        assert covering.hn_section.section.direction == witness.direction
        assert covering.hn_section.section.c == witness.c + covering.twist
    else:
        assert covering.hn_section is None


@given(polys, polys)
def test_eventual_order_holds_past_root_bound(
    p1: RationalPoly, p2: RationalPoly
) -> None:
    """The eventual comparison is the comparison at the root bound."""
    order = eventual_compare(p1, p2)
    difference = p2 - p1
    m = root_bound(difference) if not difference.is_zero else 0
    left, right = p1(m), p2(m)
    if order is EventualOrder.EQUAL:
        assert left == right
    elif order is EventualOrder.PRECEDES:
        assert left < right
    else:
        assert left > right


@given(polys, polys)
def test_gcd_divides(p: RationalPoly, q: RationalPoly) -> None:
    """The gcd divides both arguments."""
    g = poly_gcd(p, q)
    if g.is_zero:
        assert p.is_zero and q.is_zero
    else:
        assert (p % g).is_zero
        assert (q % g).is_zero


@settings(deadline=None)
@given(st.lists(small_integers, min_size=2, max_size=5))
def test_factorization_reconstructs(coeffs: list) -> None:
    """The factors multiply back to the polynomial."""
    f = RationalPoly(tuple(Fraction(c) for c in coeffs))
    if f.is_zero:
        return
    factorization = factor_rational(f)
    assert factorization.expand() == f
    assert all(m >= 1 for _, m in factorization.factors)


@settings(
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.filter_too_much],
)
@given(seeds, st.integers(min_value=1, max_value=5000), fractions)
def test_unstable_fibers_have_a_heavy_point(
    seed: int, numerator: int, x0: Fraction
) -> None:
    """Off the walls the HN section meets each fiber with multiplicity
    above s/2 whenever s - 2 eps > 0.
    """
    T = random_tensor(random.Random(seed))
    tau = Fraction(numerator, 1009)
    report = stability(T, tau)
    assume(report.verdict is Verdict.UNSTABLE)
    hn = hn_subsheaf(T, tau)
    assume(T.s - 2 * hn.epsilon > 0)
    assume(any(T.form.specialize(x0)))
    fiber = fiber_point_stability(T, x0, hn.section.direction)
    assert fiber.direction_multiplicity is not None
    assert 2 * fiber.direction_multiplicity > T.s
    assert fiber.verdict is Verdict.UNSTABLE


@given(
    st.lists(small_integers, max_size=4),
    st.lists(small_integers, max_size=4),
    small_integers,
    st.integers(min_value=0, max_value=6),
)
def test_saturation_degree_is_sharp(
    p_coeffs: list, q_coeffs: list, b: int, gap: int
) -> None:
    """The section fits into ``O(c)`` but not into ``O(c + 1)``."""
    p = RationalPoly(tuple(Fraction(c) for c in p_coeffs))
    q = RationalPoly(tuple(Fraction(c) for c in q_coeffs))
    assume(not (p.is_zero and q.is_zero))
    bundle = SplitBundle(b + gap, b)
    L = LineSubbundle.from_section(p, q, bundle)

    def fits(c: int) -> bool:
        return L.p.degree <= bundle.a - c and L.q.degree <= bundle.b - c

    assert poly_gcd(L.p, L.q).degree == 0
    assert fits(L.c)
    assert not fits(L.c + 1)


@settings(deadline=None, max_examples=500)
@given(seeds)
def test_branch_count(seed: int) -> None:
    """Root multiplicities add up to at most s, with equality exactly when
    the search is complete.
    """
    T = random_tensor(random.Random(seed))
    search = rational_function_roots(T.form)
    assert search.linear_degree + search.residual.s == T.s
    assert search.complete is (search.linear_degree == T.s)
    candidates = candidate_sections(T)
    roots = candidates.sections[:-1]
    assert sum(T.s - epsilon for _, epsilon in roots) == search.linear_degree
    assert candidates.complete is search.complete
    assert candidates.residual_degree == search.residual.s


@settings(deadline=None, max_examples=500)
@given(seeds, taus)
def test_one_step_values_bound_chains(seed: int, tau: Fraction) -> None:
    """A weighted chain inside a candidate never beats its one step value,
    so one step filtrations decide semistability.
    """
    rng = random.Random(seed)
    T = random_tensor(rng)
    report = stability(T, tau)
    for candidate in report.candidates:
        t = rng.randint(1, 3)
        top = candidate.section.c
        degrees = sorted(top - rng.randint(0, 3) for _ in range(t))
        weights = [random_fraction(rng, 9, positive=True) for _ in range(t)]
        value = weighted_filtration_value(
            T, candidate.section, degrees, weights, tau
        )
        assert value <= sum(weights) * candidate.value
        if report.verdict is not Verdict.UNSTABLE:
            assert value <= 0


@settings(
    deadline=None,
    max_examples=500,
    suppress_health_check=[HealthCheck.filter_too_much],
)
@given(seeds, st.integers(min_value=1, max_value=5000))
def test_unstable_tensors_have_no_ties(seed: int, numerator: int) -> None:
    """Off the walls the HN subsheaf is unique."""
    assume(numerator % 1009)
    T = random_tensor(random.Random(seed))
    tau = Fraction(numerator, 1009)
    report = stability(T, tau)
    if report.verdict is Verdict.UNSTABLE:
        assert not report.tie
        assert hn_subsheaf(T, tau).section == report.witness
