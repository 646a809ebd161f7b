"""Truncated Puiseux series: normalization, valuations and truncation tracking."""

import random
from fractions import Fraction

import pytest

from plane_singularities.cyclotomic import Cyclotomic
from plane_singularities.series import INDETERMINATE, INFINITY, PuiseuxSeries, difference_valuation


def series(terms, trunc=INFINITY):
    return PuiseuxSeries.build(terms, trunc)


def test_build_merges_drops_zeros_and_cuts_at_trunc():
    s = PuiseuxSeries.build([(1, 2), (1, -2), (Fraction(3, 2), 5), (4, 1)], trunc=3)
    assert s.terms == ((Fraction(3, 2), Cyclotomic.rational(5)),)
    assert s.ram == 2
    assert s.trunc == 3


def test_ramification_must_cover_the_denominators():
    with pytest.raises(ValueError):
        PuiseuxSeries.build({Fraction(1, 3): 1}, ram=2)


@pytest.mark.parametrize(
    "s, expected",
    [
        (series({2: 1, 5: 3}), Fraction(2)),
        (series({}), INFINITY),
        (series({}, trunc=4), INDETERMINATE),
        (series({Fraction(7, 4): -1}, trunc=2), Fraction(7, 4)),
    ],
)
def test_valuation(s, expected):
    assert s.valuation() == expected


def test_exact_zero_is_not_an_indeterminate_zero():
    assert series({}).is_exact_zero()
    assert not series({}, trunc=3).is_exact_zero()


def test_sum_is_known_below_the_smaller_truncation():
    total = series({1: 1}, trunc=3) + series({1: -1, 2: 1}, trunc=5)
    assert total.trunc == 3
    assert total.valuation() == 2


def test_product_truncation_uses_the_other_factors_valuation():
    product = series({1: 1}, trunc=3) * series({2: 1}, trunc=4)
    # min(3 + 2, 4 + 1)
    assert product.trunc == 5
    assert product.terms == ((Fraction(3), Cyclotomic.rational(1)),)


def test_product_of_exact_series_is_exact():
    product = series({0: 1, 1: 1}) * series({0: 1, 1: -1})
    assert product == series({0: 1, 2: -1})


def test_power_and_shift():
    s = series({1: 1, 2: 1}, trunc=4)
    assert s**2 == series({2: 1, 3: 2, 4: 1}, trunc=5)
    assert s.shift(Fraction(1, 2)).trunc == Fraction(9, 2)


def test_negative_power_is_rejected():
    with pytest.raises(ValueError):
        series({1: 1}) ** -1


def test_twist_multiplies_by_roots_of_unity():
    s = series({Fraction(3, 2): 1})
    assert s.twist(1) == series({Fraction(3, 2): -1})
    assert s.twist(2) == s


def test_coefficient_past_truncation_is_an_error():
    s = series({1: 1}, trunc=2)
    assert s.coefficient(0) == 0
    with pytest.raises(ValueError):
        s.coefficient(2)


def test_difference_valuation_distinguishes_exact_and_truncated_agreement():
    assert difference_valuation(series({1: 1}), series({1: 1})) == INFINITY
    assert difference_valuation(series({1: 1}, trunc=3), series({1: 1, 3: 2})) is INDETERMINATE
    assert difference_valuation(series({1: 1, 2: 1}), series({1: 1})) == 2


def test_str_shows_truncation():
    assert str(series({1: 2}, trunc=3)) == "2*e^(1) + O(e^(3))"
    assert str(series({})) == "0"


def random_series(rng: random.Random, truncated: bool = False) -> PuiseuxSeries:
    exponents = {Fraction(rng.randint(0, 12), rng.choice([1, 2, 3])) for _ in range(rng.randint(1, 4))}
    terms = {e: Fraction(rng.choice([-2, -1, 1, 3]), rng.randint(1, 2)) for e in exponents}
    trunc = max(exponents) + rng.randint(1, 3) if truncated else INFINITY
    return PuiseuxSeries.build(terms, trunc)


def test_ring_laws_on_exact_series():
    rng = random.Random(8)
    for _ in range(40):
        a, b, c = (random_series(rng) for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a
        assert a * series({0: 1}) == a
        assert a + PuiseuxSeries.zero() == a
        assert (a - a).is_exact_zero()


def test_valuation_is_additive_on_products():
    rng = random.Random(9)
    for _ in range(60):
        a, b = random_series(rng, truncated=True), random_series(rng, truncated=rng.random() < 0.5)
        assert (a * b).valuation() == a.valuation() + b.valuation()
        assert (a * b) * a == a * (b * a)
