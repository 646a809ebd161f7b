"""Sparse polynomials and the Sylvester resultant."""

import random
from fractions import Fraction

import pytest
import sympy

from plane_singularities.errors import DegenerateInput
from plane_singularities.polynomial import lowest_degree, resultant, sparse_poly, sylvester_matrix, terms

x, y, a = sympy.symbols("x y a")


def test_terms_are_fractions_keyed_by_exponents():
    f = sparse_poly(y**2 - sympy.Rational(1, 2) * x**3, x, y)
    assert terms(f) == {(0, 2): Fraction(1), (3, 0): Fraction(-1, 2)}


def test_lowest_degree_is_the_multiplicity():
    assert lowest_degree(sparse_poly(y**2 - x**3, x, y)) == 2
    assert lowest_degree(sparse_poly(x * y * (x + y), x, y)) == 3
    assert lowest_degree(sparse_poly(0, x, y)) is None


def test_sylvester_matrix_puts_the_first_polynomial_on_top():
    matrix = sylvester_matrix(sparse_poly(x**2 - 2, x), sparse_poly(x - 1, x), x)
    assert matrix.tolist() == [[1, 0, -2], [1, -1, 0], [0, 1, -1]]


def test_resultant_of_constants_only():
    value = resultant(sparse_poly(x**2 - 2, x), sparse_poly(x - 1, x), x)
    assert value.as_expr() == -1


def test_resultant_keeps_remaining_generators():
    value = resultant(sparse_poly(x**2 + a, x, a), sparse_poly(2 * x, x), x)
    assert sympy.expand(value.as_expr() - 4 * a) == 0


def test_resultant_matches_sympy_on_random_polynomials():
    rng = random.Random(7)
    for _ in range(20):
        p = sum(rng.randint(-3, 3) * x**i * y**j for i in range(4) for j in range(2)) + x**4
        q = sum(rng.randint(-3, 3) * x**i * y**j for i in range(3) for j in range(3)) + x**3
        ours = resultant(sparse_poly(p, x, y), sparse_poly(q, x, y), x).as_expr()
        assert sympy.expand(ours - sympy.resultant(p, q, x)) == 0


def test_resultant_of_zero_is_degenerate():
    with pytest.raises(DegenerateInput):
        resultant(sparse_poly(0, x), sparse_poly(x, x), x)


def test_resultant_vanishes_exactly_on_a_shared_root():
    rng = random.Random(23)
    for _ in range(40):
        p_roots = rng.sample(range(-5, 6), rng.randint(1, 3))
        q_roots = rng.sample(range(-5, 6), rng.randint(1, 3))
        p = sympy.prod([x - r for r in p_roots]) * rng.choice([1, -2, 3])
        q = sympy.prod([x - r for r in q_roots])
        value = resultant(sparse_poly(p, x), sparse_poly(q, x), x).as_expr()
        assert (value == 0) == bool(set(p_roots) & set(q_roots))
