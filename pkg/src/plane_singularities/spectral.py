"""Matrices over truncated power series and their eigenvalue expansions (pure, no I/O).

A regular semisimple matrix over Q[[e]] is known modulo e^trunc. Its
characteristic polynomial is then known modulo e^trunc as well; its roots,
grouped into Galois orbits, are the branches of the spectral curve.
"""

import logging
from dataclasses import dataclass

import sympy
from sympy.polys.matrices import DomainMatrix

from plane_singularities.branch import Branch
from plane_singularities.errors import (
    InsufficientPrecision,
    InvariantViolation,
    NotRegularSemisimple,
    PreconditionError,
)
from plane_singularities.newton_puiseux import DEFAULT_PRECISION, newton_puiseux
from plane_singularities.polynomial import resultant, sparse_poly, to_fraction, to_rational
from plane_singularities.series import INFINITY, PuiseuxSeries

logger = logging.getLogger(__name__)

E = sympy.Symbol("e")
_T = sympy.Symbol("T")
_t = sympy.Symbol("t")


@dataclass(frozen=True, eq=False)
class MatrixSeries:
    """A d x d matrix whose entries are power series in e known below e^trunc."""

    d: int
    entries: tuple[tuple[PuiseuxSeries, ...], ...]
    trunc: int | float = INFINITY

    def __post_init__(self):
        if self.d < 1:
            raise PreconditionError(f"matrix size must be positive, got {self.d}")
        if len(self.entries) != self.d or any(len(row) != self.d for row in self.entries):
            raise PreconditionError(f"entries do not form a {self.d} x {self.d} matrix")
        for row in self.entries:
            for entry in row:
                if entry.ram != 1 or any(e < 0 for e in entry.support()):
                    raise PreconditionError("matrix entries must be power series in e")

    @classmethod
    def build(cls, d: int, entries, trunc=INFINITY) -> "MatrixSeries":
        """`entries` is row-major: d*d dicts {exponent: coefficient} or series."""
        entries = list(entries)
        if len(entries) != d * d:
            raise PreconditionError(f"expected {d * d} entries, got {len(entries)}")
        series = [
            entry.truncate(trunc) if isinstance(entry, PuiseuxSeries) else PuiseuxSeries.build(entry, trunc)
            for entry in entries
        ]
        return cls(d, tuple(tuple(series[i * d:(i + 1) * d]) for i in range(d)), trunc)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MatrixSeries):
            return NotImplemented
        return self.d == other.d and self.trunc == other.trunc and all(
            a == b for row_a, row_b in zip(self.entries, other.entries) for a, b in zip(row_a, row_b)
        )

    __hash__ = None

    def as_sympy(self) -> sympy.Matrix:
        return sympy.Matrix(
            self.d, self.d,
            lambda i, j: sum(
                (to_rational(c.as_rational()) * E ** int(e) for e, c in self.entries[i][j].terms),
                sympy.Integer(0),
            ),
        )


def _series_in_e(expression, trunc) -> PuiseuxSeries:
    poly = sympy.Poly(sympy.expand(expression), E)
    return PuiseuxSeries.build(
        {monomial[0]: to_fraction(c) for monomial, c in poly.terms()}, trunc
    )


def characteristic_polynomial(matrix: MatrixSeries) -> list[PuiseuxSeries]:
    """Coefficients of det(T*I - matrix), lowest degree first, known below e^trunc.

    Computed over the polynomial ring QQ[e] rather than on sympy expressions.
    """
    dm = DomainMatrix.from_Matrix(matrix.as_sympy())
    coefficients = [dm.domain.to_sympy(c) for c in reversed(dm.charpoly())]
    return [_series_in_e(c, matrix.trunc) for c in coefficients]


def check_regular_semisimple(matrix: MatrixSeries, coefficients: list[PuiseuxSeries]) -> None:
    """The discriminant of the characteristic polynomial must be nonzero mod e^trunc."""
    if matrix.d == 1:
        return
    expression = sum(
        (
            to_rational(c.as_rational()) * E ** int(e) * _T**i
            for i, series in enumerate(coefficients)
            for e, c in series.terms
        ),
        sympy.Integer(0),
    )
    if matrix.trunc == INFINITY:
        # monic in T, so a square factor has positive T-degree
        if not sympy.Poly(expression, _T, E, domain=sympy.QQ).is_sqf:
            raise NotRegularSemisimple("the characteristic polynomial has a repeated root")
        return
    discriminant = _series_in_e(sympy.discriminant(expression, _T), matrix.trunc)
    if discriminant.terms:
        return
    raise InsufficientPrecision(
        f"the discriminant vanishes modulo e^{matrix.trunc}; regular semisimplicity is undecided"
    )


def eigen_expansions(matrix: MatrixSeries, precision=None) -> list[Branch]:
    """One Branch per Galois orbit of eigenvalues, with sum of d_i equal to d.

    Exact matrices are expanded to `precision`; truncated ones as far as their
    truncation allows.
    """
    coefficients = characteristic_polynomial(matrix)
    check_regular_semisimple(matrix, coefficients)
    if precision is None:
        precision = DEFAULT_PRECISION if matrix.trunc == INFINITY else matrix.trunc
    branches = newton_puiseux(coefficients, precision)
    total = sum(branch.d for branch in branches)
    if total != matrix.d:
        raise InvariantViolation(f"eigenvalue orbits have total degree {total}, not {matrix.d}")
    logger.debug("matrix of size %d splits into orbits %s", matrix.d, [b.d for b in branches])
    return branches


def minimal_polynomial(branch: Branch) -> list[PuiseuxSeries]:
    """prod_j (T - y(zeta_d^j e^(1/d))) as coefficients in e, lowest degree first.

    Needs an exact branch with rational coefficients.
    """
    if branch.trunc != INFINITY:
        raise PreconditionError("a minimal polynomial needs an exact branch")
    y = sympy.Integer(0)
    for exponent, c in branch.y.terms:
        value = c.as_rational()
        if value is None:
            raise PreconditionError("a minimal polynomial needs rational branch coefficients")
        y += to_rational(value) * _t ** int(exponent)
    product = resultant(
        sparse_poly(_t**branch.d - E, _t, E),
        sparse_poly(_T - y, _t, _T),
        _t,
    )
    coefficients = sympy.Poly(product.as_expr(), _T).all_coeffs()
    return [_series_in_e(c, INFINITY) for c in reversed(coefficients)]


def companion_matrix(branches: list[Branch], trunc=INFINITY) -> MatrixSeries:
    """Block-diagonal companion matrix whose eigenvalue orbits are `branches`."""
    size = sum(branch.d for branch in branches)
    entries: list[list[PuiseuxSeries]] = [[PuiseuxSeries.zero() for _ in range(size)] for _ in range(size)]
    offset = 0
    for branch in branches:
        coefficients = minimal_polynomial(branch)
        d = branch.d
        for i in range(1, d):
            entries[offset + i][offset + i - 1] = PuiseuxSeries.build({0: 1})
        for i in range(d):
            entries[offset + i][offset + d - 1] = -coefficients[i]
        offset += d
    return MatrixSeries.build(size, [entry for row in entries for entry in row], trunc)
