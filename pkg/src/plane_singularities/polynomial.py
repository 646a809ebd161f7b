"""Sparse exact polynomials and resultants (pure, no I/O).

SparsePoly is `sympy.Poly` over QQ: an ordered generator list plus a map from
exponent vectors to rationals with no zero coefficients stored. This module adds
the few conversions the rest of the package needs and the resultant with a fixed
sign convention: the determinant of the Sylvester matrix with the rows of the
first polynomial on top.
"""

from fractions import Fraction

import sympy

from plane_singularities.errors import DegenerateInput

SparsePoly = sympy.Poly


def sparse_poly(expr, *gens) -> SparsePoly:
    return sympy.Poly(expr, *gens, domain=sympy.QQ)


def to_fraction(value) -> Fraction:
    value = sympy.Rational(value)
    return Fraction(int(value.p), int(value.q))


def to_rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def terms(poly: SparsePoly) -> dict[tuple[int, ...], Fraction]:
    """Exponent vector -> coefficient, zero coefficients omitted."""
    return {monomial: to_fraction(c) for monomial, c in poly.terms() if c != 0}


def lowest_degree(poly: SparsePoly) -> int | None:
    """Total degree of the lowest-order terms (the multiplicity at the origin)."""
    if poly.is_zero:
        return None
    return min(sum(monomial) for monomial in poly.monoms())


def sylvester_matrix(p: SparsePoly, q: SparsePoly, var: sympy.Symbol) -> sympy.Matrix:
    """(m+n) x (m+n) Sylvester matrix in `var`: n rows of p, then m rows of q."""
    p_coeffs = sympy.Poly(p.as_expr(), var).all_coeffs()
    q_coeffs = sympy.Poly(q.as_expr(), var).all_coeffs()
    m, n = len(p_coeffs) - 1, len(q_coeffs) - 1
    size = m + n
    rows = []
    for i in range(n):
        rows.append([0] * i + p_coeffs + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + q_coeffs + [0] * (size - n - 1 - i))
    return sympy.Matrix(size, size, lambda r, c: rows[r][c])


def resultant(p: SparsePoly, q: SparsePoly, var: sympy.Symbol) -> SparsePoly:
    """res_var(p, q) as the Sylvester determinant, p-rows first.

    The result is a polynomial in the remaining generators of p and q; when no
    generator remains it is returned as a constant polynomial in `var`.
    """
    if p.is_zero or q.is_zero:
        raise DegenerateInput("resultant of a zero polynomial")
    if var not in p.free_symbols | q.free_symbols:
        raise DegenerateInput(f"{var} occurs in neither polynomial")
    matrix = sylvester_matrix(p, q, var)
    determinant = sympy.expand(matrix.det(method="bareiss")) if matrix.rows else sympy.Integer(1)
    remaining = [g for g in dict.fromkeys(p.gens + q.gens) if g != var]
    return sparse_poly(determinant, *(remaining or [var]))
