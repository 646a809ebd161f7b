"""Newton-Puiseux: polygons, edge polynomials, truncated roots and Galois orbits."""

from fractions import Fraction

import pytest

from plane_singularities.branch import Branch
from plane_singularities.errors import NotRegularSemisimple, UnsupportedCoefficientField
from plane_singularities.newton_puiseux import (
    group_conjugates,
    newton_polygon,
    newton_puiseux,
    newton_puiseux_roots,
)
from plane_singularities.series import INDETERMINATE, INFINITY, PuiseuxSeries


def s(terms, trunc=INFINITY):
    return PuiseuxSeries.build(terms, trunc)


def evaluate(coefficients, root):
    total = PuiseuxSeries.zero()
    for i, c in enumerate(coefficients):
        total = total + c * root**i
    return total


def test_polygon_of_a_cusp_is_one_edge():
    edges = newton_polygon([s({3: -1}), s({}), s({0: 1})], 2)
    assert [(e.start, e.end, e.slope) for e in edges] == [(0, 2, Fraction(3, 2))]


def test_polygon_with_two_slopes():
    # T^2 + 2e T - e^3
    edges = newton_polygon([s({3: -1}), s({1: 2}), s({0: 1})], 2)
    assert [e.slope for e in edges] == [Fraction(2), Fraction(1)]


def test_cusp_roots_are_exact_and_form_one_orbit():
    coefficients = [s({3: -1}), s({}), s({0: 1})]
    roots = newton_puiseux_roots(coefficients)
    assert len(roots) == 2
    for root in roots:
        assert root.trunc == INFINITY
        assert root.valuation() == Fraction(3, 2)
        assert evaluate(coefficients, root).is_exact_zero()
    branches = newton_puiseux(coefficients)
    assert branches == [Branch.build(2, {3: roots[0].coefficient(Fraction(3, 2))})]


def test_square_root_of_one_plus_e_is_developed_to_precision():
    # T^2 - e^2 (1 + e): roots +-e (1 + e/2 - e^2/8 + ...)
    coefficients = [s({2: -1, 3: -1}), s({}), s({0: 1})]
    roots = newton_puiseux_roots(coefficients, precision=12)
    assert len(roots) == 2
    positive = next(root for root in roots if root.coefficient(1) == 1)
    assert positive.coefficient(2) == Fraction(1, 2)
    assert positive.coefficient(3) == Fraction(-1, 8)
    assert positive.coefficient(4) == Fraction(1, 16)
    assert positive.trunc == 12
    for root in roots:
        assert evaluate(coefficients, root).valuation() is INDETERMINATE


def test_distinct_rational_roots_give_two_branches():
    # (T - e)(T - 2e)
    branches = newton_puiseux([s({2: 2}), s({1: -3}), s({0: 1})])
    assert sorted(str(branch.y) for branch in branches) == ["1*e^(1)", "2*e^(1)"]
    assert all(branch.d == 1 for branch in branches)


def test_exact_zero_root_is_emitted_exactly():
    # T (T - e)
    roots = newton_puiseux_roots([s({}), s({1: -1}), s({0: 1})])
    assert sorted(root.valuation() for root in roots) == [Fraction(1), INFINITY]
    assert all(root.trunc == INFINITY for root in roots)


def test_truncated_constant_term_bounds_the_root():
    # (T - e)(T - 2e) known mod e^6: the constant 2e^2 is exact, the rest too
    coefficients = [s({2: 2}, 6), s({1: -3}, 6), s({0: 1}, 6)]
    roots = newton_puiseux_roots(coefficients, precision=6)
    assert sorted(root.coefficient(1).as_rational() for root in roots) == [1, 2]
    assert all(root.trunc == 5 for root in roots)


def test_through_origin_skips_unit_roots():
    # (T - e)(T - 1)
    roots = newton_puiseux_roots([s({1: 1}), s({0: -1, 1: -1}), s({0: 1})], through_origin=True)
    assert len(roots) == 1
    assert roots[0].valuation() == 1


def test_repeated_root_is_not_regular_semisimple():
    with pytest.raises(NotRegularSemisimple):
        newton_puiseux_roots([s({2: 1}), s({1: -2}), s({0: 1})])


def test_irreducible_cubic_edge_is_unsupported():
    # T^3 - e^2 T - e^3: edge polynomial T^3 - T - 1
    with pytest.raises(UnsupportedCoefficientField) as excinfo:
        newton_puiseux_roots([s({3: -1}), s({2: -1}), s({}), s({0: 1})])
    assert "T^3" in excinfo.value.edge_polynomial


def test_group_conjugates_needs_whole_orbits():
    root = s({Fraction(3, 2): 1})
    branches = group_conjugates([root, root.twist(1)])
    assert branches == [Branch.build(2, {3: 1})]


def test_cube_root_orbit():
    # T^3 - e^2
    coefficients = [s({2: -1}), s({}), s({}), s({0: 1})]
    branches = newton_puiseux(coefficients)
    assert len(branches) == 1
    assert branches[0].d == 3
    assert branches[0].support() == [2]
