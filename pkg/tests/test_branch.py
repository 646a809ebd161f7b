"""Branch invariants: characteristic data, inversion, conjugates, semigroups, delta
and Halphen-Zeuthen intersection numbers."""

import random
from fractions import Fraction
from math import gcd

import pytest
import sympy

from plane_singularities.branch import (
    Branch,
    CharExponents,
    CharPairs,
    branch_delta,
    branch_multiplicity,
    branch_pairs,
    characteristic_exponents,
    characteristic_pairs,
    conjugate_difference_valuation,
    conjugate_valuations,
    delta_from_pairs,
    exponents_from_pairs,
    intersection_number,
    invert_parametrization,
    pairs_from_root_valuations,
    parametrization_pairs,
    semigroup_generators,
    standard_branch,
    valuation_semigroup,
)
from plane_singularities.errors import (
    DegenerateInput,
    InsufficientPrecision,
    InvalidCharacteristic,
    NotDistinct,
    NotRealizable,
    OrderBelowRamification,
    PreconditionError,
)
from plane_singularities.series import INFINITY, difference_valuation


def pairs(*items):
    return CharPairs(tuple(items))


FOUR_SIX_SEVEN = Branch.build(4, {6: 1, 7: 1})


def test_four_six_seven_characteristic_data():
    exponents = characteristic_exponents(FOUR_SIX_SEVEN)
    assert exponents == CharExponents((4, 6, 7))
    assert str(exponents) == "(4; 6, 7)"
    assert characteristic_pairs(exponents) == pairs((3, 2), (7, 2))
    assert str(characteristic_pairs(exponents)) == "((3, 2), (7, 2))"


def test_four_six_seven_conjugate_valuations():
    assert conjugate_valuations(FOUR_SIX_SEVEN) == [Fraction(3, 2), Fraction(7, 4), Fraction(3, 2)]


def test_pairs_recovered_from_root_valuations():
    assert pairs_from_root_valuations([Fraction(3, 2), Fraction(7, 4)]) == pairs((3, 2), (7, 2))


def test_four_six_seven_delta_and_conductor():
    certificate = branch_delta(FOUR_SIX_SEVEN)
    assert certificate.value == 8
    assert 2 * certificate.value == 16
    assert certificate.method.value == "semigroup-gaps"
    assert certificate.rechecked_at == certificate.stabilized_at + 4


def test_four_six_seven_semigroup_generators():
    elements = valuation_semigroup(FOUR_SIX_SEVEN, 20)
    assert semigroup_generators(elements, 20) == [4, 6, 13]


@pytest.mark.parametrize(
    "branch, delta",
    [
        (Branch.build(1, {1: 1}), 0),
        (Branch.build(2, {3: 1}), 1),
        (Branch.build(2, {5: 1}), 2),
        (Branch.build(3, {4: 1}), 3),
        (Branch.build(3, {5: 2, 7: 1}), 4),
    ],
)
def test_branch_delta_of_simple_branches(branch, delta):
    assert branch_delta(branch).value == delta


def test_delta_from_pairs_matches_the_standard_branch():
    assert delta_from_pairs(pairs((3, 2), (7, 2))).value == 8
    assert delta_from_pairs(pairs()).value == 0


def test_branch_delta_needs_enough_terms():
    assert branch_delta(Branch.build(2, {3: 1}, trunc=INFINITY)).value == 1
    with pytest.raises(InsufficientPrecision):
        branch_delta(Branch.build(2, {3: 1}, trunc=5))


def test_exponents_and_pairs_are_inverse():
    p = pairs((3, 2), (7, 2))
    assert exponents_from_pairs(p) == CharExponents((4, 6, 7))
    assert standard_branch(p) == FOUR_SIX_SEVEN


@pytest.mark.parametrize(
    "beta",
    [(4, 8), (4, 6), (2, 3, 3), (0,), (4, 6, 5)],
)
def test_invalid_characteristic_exponents(beta):
    with pytest.raises(InvalidCharacteristic):
        CharExponents(beta)


@pytest.mark.parametrize("items", [((2, 4),), ((1, 1),), ((3, 2), (5, 2))])
def test_invalid_characteristic_pairs(items):
    with pytest.raises(InvalidCharacteristic):
        CharPairs(items)


@pytest.mark.parametrize("valuations", [[Fraction(1)], [Fraction(3, 2), Fraction(2)]])
def test_unrealizable_root_valuations(valuations):
    with pytest.raises(NotRealizable):
        pairs_from_root_valuations(valuations)


def test_order_below_ramification_needs_inversion():
    branch = Branch.build(3, {2: 1})
    with pytest.raises(OrderBelowRamification):
        characteristic_exponents(branch)
    assert parametrization_pairs(branch) == pairs((2, 3))
    assert branch_pairs(branch) == pairs((3, 2))
    assert branch_multiplicity(branch) == 2


def test_inversion_of_the_cusp():
    assert invert_parametrization(pairs((2, 3))) == pairs((3, 2))


def test_inversion_drops_a_non_characteristic_first_pair():
    assert invert_parametrization(pairs((1, 2))) == pairs()
    with pytest.raises(DegenerateInput):
        invert_parametrization(pairs())


def _all_pairs():
    """Every valid CharPairs with g <= 2, n_v <= 4 and m_g <= 30."""
    singles = [((m, n),) for n in range(2, 5) for m in range(1, 31) if gcd(m, n) == 1]
    candidates = singles + [
        first + ((m, n),)
        for first in singles
        for n in range(2, 5)
        for m in range(1, 31)
        if gcd(m, n) == 1
    ]
    for items in candidates:
        try:
            yield CharPairs(items)
        except InvalidCharacteristic:
            continue


def test_double_inversion_is_the_identity():
    checked = 0
    for original in _all_pairs():
        if original.pairs[0][0] == 1:
            continue
        try:
            inverted = invert_parametrization(original)
        except InvalidCharacteristic:
            continue
        assert invert_parametrization(inverted) == original
        checked += 1
    assert checked > 100


def test_multiplicity_and_centre():
    branch = Branch.build(2, {0: 5, 3: 1})
    assert branch.centre() == 5
    assert branch_pairs(branch) == pairs((3, 2))
    assert branch_multiplicity(branch) == 2
    assert branch_multiplicity(Branch.build(1, {})) == 1


@pytest.mark.parametrize(
    "first, second, expected",
    [
        (Branch.build(1, {}), Branch.build(1, {1: 1}), 1),
        (Branch.build(1, {2: 1}), Branch.build(1, {2: -1}), 2),
        (Branch.build(2, {3: 1}), Branch.build(1, {}), 3),
        (Branch.build(2, {3: 1}), Branch.build(2, {3: 2}), 6),
        (Branch.build(1, {}), Branch.build(1, {0: 1, 1: 1}), 0),
    ],
)
def test_intersection_numbers(first, second, expected):
    assert intersection_number(first, second) == expected
    assert intersection_number(second, first) == expected


def test_intersection_with_itself_is_not_distinct():
    with pytest.raises(NotDistinct):
        intersection_number(Branch.build(2, {3: 1}), Branch.build(2, {3: 1}))


def test_non_primitive_parametrization_is_rejected():
    with pytest.raises(PreconditionError):
        conjugate_valuations(Branch.build(2, {4: 1}))


# --- Halphen-Zeuthen against the implicit equation ---------------------------

t, X, Y = sympy.symbols("t X Y")


def _random_branch(rng: random.Random) -> Branch:
    while True:
        d = rng.randint(1, 3)
        exponents = sorted(rng.sample(range(1, 9), rng.randint(1, 3)))
        if gcd(d, *exponents) == 1:
            return Branch.build(d, {k: rng.choice([-3, -2, -1, 1, 2, 3]) for k in exponents})


def _y_expression(branch: Branch, variable):
    return sum(int(c.as_rational()) * variable ** int(e) for e, c in branch.y.terms)


def _substitution_order(first: Branch, second: Branch) -> int | None:
    """ord_t F(x(t), y(t)) for F the implicit equation of `first`, `second` = (x(t), y(t))."""
    equation = sympy.resultant(t**first.d - X, Y - _y_expression(first, t), t)
    restricted = sympy.expand(equation.subs({X: t**second.d, Y: _y_expression(second, t)}))
    if restricted == 0:
        return None
    return min(monomial[0] for monomial in sympy.Poly(restricted, t).monoms())


def test_halphen_zeuthen_matches_substitution_into_the_equation():
    rng = random.Random(2024)
    compared = 0
    while compared < 50:
        first, second = _random_branch(rng), _random_branch(rng)
        expected = _substitution_order(first, second)
        if expected is None:
            continue
        assert intersection_number(first, second) == expected
        compared += 1


def _all_exponents(max_beta0: int = 12, max_beta: int = 60):
    """Every valid (beta_0; beta_1, ...) with beta_0 < beta_1, beta_0 <= 12 and beta_g <= 60."""

    def extend(beta, e):
        if e == 1:
            yield CharExponents(tuple(beta))
            return
        for b in range(beta[-1] + 1, max_beta + 1):
            if b % e:
                yield from extend([*beta, b], gcd(e, b))

    for beta0 in range(1, max_beta0 + 1):
        yield from extend([beta0], beta0)


def test_exponents_and_pairs_round_trip_exhaustively():
    checked = 0
    for exponents in _all_exponents():
        found = characteristic_pairs(exponents)
        assert exponents_from_pairs(found) == exponents
        assert found.degree == exponents.beta[0]
        assert characteristic_pairs(exponents_from_pairs(found)) == found
        checked += 1
    assert checked > 1000


def _random_branch_of_degree(rng: random.Random, d: int) -> Branch:
    while True:
        exponents = rng.sample(range(1, 13), rng.randint(1, 4))
        if gcd(d, *exponents) == 1:
            return Branch.build(d, {k: rng.choice([-2, -1, 1, 2, 3]) for k in exponents})


@pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
def test_conjugate_difference_valuation_matches_cyclotomic_subtraction(d):
    rng = random.Random(d)
    for _ in range(20):
        branch = _random_branch_of_degree(rng, d)
        base = branch.conjugate(0)
        for power in range(1, d):
            explicit = difference_valuation(branch.conjugate(power), base)
            assert conjugate_difference_valuation(branch, power) == explicit
        assert set(conjugate_valuations(branch)) == set(parametrization_pairs(branch).ratios())
