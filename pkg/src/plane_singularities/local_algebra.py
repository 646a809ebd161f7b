"""Milnor, Tjurina and delta invariants of a germ f(x, y) at the origin (pure, no I/O).

Every value comes from exact row reduction in a truncated algebra, never from a
standard basis:

  - mu and tau are dimensions of Q[x, y] / (I + m^D) for I = (f_x, f_y) and
    I = (f, f_x, f_y). D grows until every monomial of degree D - 1 lies in
    I + m^D, so m^(D-1) is inside I and the quotient no longer changes; the
    value is then reproduced at D + 1.
  - delta is the codimension of the image of Q[x, y] in the truncated
    normalization, the direct sum of Q(zeta)[[t_i]] / t_i^N over the branches.
    N grows until the value agrees at N and N + max d_i.

Germ branches are found by Newton-Puiseux after a shear x -> x + c*y that puts
f in generic position, with the working precision doubled on demand.
"""

import logging
from collections.abc import Callable
from fractions import Fraction
from typing import TypeVar

import sympy

from plane_singularities.branch import Branch
from plane_singularities.certificate import LocalQuotientCertificate, QuotientMethod
from plane_singularities.echelon import EchelonBasis
from plane_singularities.errors import (
    IncompleteFactorization,
    InsufficientPrecision,
    InvariantViolation,
    NotIsolated,
    PreconditionError,
)
from plane_singularities.newton_puiseux import DEFAULT_PRECISION, newton_puiseux
from plane_singularities.polynomial import SparsePoly, lowest_degree, sparse_poly, terms
from plane_singularities.series import INDETERMINATE, INFINITY, PuiseuxSeries

logger = logging.getLogger(__name__)

MAX_QUOTIENT_DEGREE = 40
MAX_PRECISION = 96

X, Y = sympy.symbols("x y")

Result = TypeVar("Result")


def _germ(f: SparsePoly) -> SparsePoly:
    f = sparse_poly(f.as_expr(), X, Y)
    if f.is_zero:
        raise PreconditionError("the zero polynomial does not define a curve germ")
    if f.as_expr().subs({X: 0, Y: 0}) != 0:
        raise PreconditionError("f(0, 0) != 0: the curve does not pass through the origin")
    return f


# --- truncated local quotients ------------------------------------------------


def _monomials_below(degree: int) -> list[tuple[int, int]]:
    return [(i, total - i) for total in range(degree) for i in range(total, -1, -1)]


def _ideal_span(generators: list[SparsePoly], degree: int) -> EchelonBasis:
    """The span of (g * monomial) mod m^degree over the generators g."""
    basis = EchelonBasis()
    for g in generators:
        if g.is_zero:
            continue
        g_terms = terms(g)
        low = min(sum(monomial) for monomial in g_terms)
        for a, b in _monomials_below(degree - low):
            vector = {}
            for (i, j), c in g_terms.items():
                if i + j + a + b < degree:
                    vector[(i + j + a + b, (i + a, j + b))] = c
            basis.insert(vector)
    return basis


def _quotient_dimension(generators: list[SparsePoly], degree: int) -> tuple[int, bool]:
    """(dim Q[x, y] / (I + m^degree), whether m^(degree-1) is inside I + m^degree)."""
    basis = _ideal_span(generators, degree)
    dimension = degree * (degree + 1) // 2 - basis.rank
    top = degree - 1
    certified = all(
        basis.contains({(top, (i, top - i)): Fraction(1)}) for i in range(top + 1)
    )
    return dimension, certified


def _certified_quotient(generators: list[SparsePoly], method: QuotientMethod, ceiling: int) -> LocalQuotientCertificate:
    for degree in range(1, ceiling + 1):
        dimension, certified = _quotient_dimension(generators, degree)
        logger.debug("%s: degree bound %d gives %d (certified %s)", method.value, degree, dimension, certified)
        if not certified:
            continue
        again, _ = _quotient_dimension(generators, degree + 1)
        if again != dimension:
            raise InvariantViolation(
                f"{method.value} changed from {dimension} to {again} after certification at {degree}"
            )
        return LocalQuotientCertificate(
            value=dimension, stabilized_at=degree, method=method, rechecked_at=degree + 1
        )
    raise NotIsolated(f"{method.value} did not stabilize below degree {ceiling}: the singularity is not isolated")


def milnor_number(f: SparsePoly, ceiling: int = MAX_QUOTIENT_DEGREE) -> LocalQuotientCertificate:
    """mu = dim Q[[x, y]] / (f_x, f_y); 0 for a smooth germ."""
    f = _germ(f)
    return _certified_quotient([f.diff(X), f.diff(Y)], QuotientMethod.JACOBIAN_QUOTIENT, ceiling)


def tjurina_number(f: SparsePoly, ceiling: int = MAX_QUOTIENT_DEGREE) -> LocalQuotientCertificate:
    """tau = dim Q[[x, y]] / (f, f_x, f_y), checked against mu."""
    f = _germ(f)
    tau = _certified_quotient([f, f.diff(X), f.diff(Y)], QuotientMethod.TJURINA_QUOTIENT, ceiling)
    mu = milnor_number(f, ceiling)
    if tau.value > mu.value:
        raise InvariantViolation(f"tau = {tau.value} exceeds mu = {mu.value}")
    return tau


# --- generic coordinates and branches -----------------------------------------


def y_axis_order(f: SparsePoly) -> int | float:
    """ord_y f(0, y); INFINITY when x divides f."""
    restricted = sparse_poly(f.as_expr().subs(X, 0), Y)
    return INFINITY if restricted.is_zero else lowest_degree(restricted)


def shear_to_generic(f: SparsePoly) -> tuple[int, SparsePoly]:
    """The least c >= 0 with ord_y g(0, y) = mult(f) for g(x, y) = f(x + c*y, y)."""
    f = _germ(f)
    multiplicity = lowest_degree(f)
    for c in range(multiplicity + 1):
        g = f if c == 0 else sparse_poly(f.as_expr().subs(X, X + c * Y), X, Y)
        if y_axis_order(g) == multiplicity:
            logger.debug("shear x -> x + %d*y puts the germ in generic position", c)
            return c, g
    raise InvariantViolation(f"no shear in 0..{multiplicity} is generic")


def with_adaptive_precision(compute: Callable[[int], Result], start: int = DEFAULT_PRECISION) -> Result:
    """Run compute(precision), doubling precision on InsufficientPrecision."""
    precision = start
    while True:
        try:
            return compute(precision)
        except InsufficientPrecision:
            if precision >= MAX_PRECISION:
                raise
            precision = min(2 * precision, MAX_PRECISION)
            logger.debug("raising working precision to %d", precision)


def y_coefficients(f: SparsePoly) -> list[PuiseuxSeries]:
    """f as sum c_i(x) y^i, each c_i an exact series in x."""
    coefficients: dict[int, dict[int, Fraction]] = {}
    for (i, j), c in terms(f).items():
        coefficients.setdefault(j, {})[i] = c
    degree = max(coefficients, default=0)
    return [PuiseuxSeries.build(coefficients.get(j, {})) for j in range(degree + 1)]


def germ_branches(f: SparsePoly, precision: int = DEFAULT_PRECISION) -> list[Branch]:
    """Branches through the origin of f, which must already be in generic position."""
    f = _germ(f)
    if y_axis_order(f) == INFINITY:
        raise PreconditionError("x divides f; shear the germ into generic position first")
    return newton_puiseux(y_coefficients(f), precision, through_origin=True)


# --- delta from the normalization ---------------------------------------------


def _substitute(f: SparsePoly, branch: Branch) -> PuiseuxSeries:
    """f(t^d, y(t)) as a series in t."""
    y = branch.y
    powers = [PuiseuxSeries.build({0: 1})]
    total = PuiseuxSeries.zero()
    for (i, j), c in sorted(terms(f).items()):
        while len(powers) <= j:
            powers.append(powers[-1] * y)
        total = total + powers[j].shift(i * branch.d) * PuiseuxSeries.build({0: c})
    return total


def check_factorization(f: SparsePoly, branches: list[Branch]) -> None:
    """Every branch lies on f at the origin and their x-degrees add up to ord_y f(0, y)."""
    order = y_axis_order(f)
    if order == INFINITY:
        raise PreconditionError("x divides f; shear the germ into generic position first")
    for index, branch in enumerate(branches):
        if not branch.centre().is_zero():
            raise PreconditionError(f"branch {index + 1} is not centred at the origin")
        if _substitute(f, branch).valuation() not in (INDETERMINATE, INFINITY):
            raise IncompleteFactorization(f"branch {index + 1} does not lie on f")
    total = sum(branch.d for branch in branches)
    if total != order:
        raise IncompleteFactorization(
            f"branch degrees add up to {total} but f(0, y) has order {order}"
        )


def _normalization_codimension(branches: list[Branch], bound: int) -> int:
    orders = [branch.order() for branch in branches]
    powers = [
        [PuiseuxSeries.build({0: 1}, bound)] for _ in branches
    ]
    basis = EchelonBasis()
    for b in range(bound):
        if b and all(order == INFINITY or b * order >= bound for order in orders):
            break
        for a in range(bound):
            if all(
                a * branch.d + (b * order if b else 0) >= bound
                for branch, order in zip(branches, orders)
            ):
                break
            vector = {}
            for index, branch in enumerate(branches):
                while len(powers[index]) <= b:
                    powers[index].append((powers[index][-1] * branch.y).truncate(bound))
                image = powers[index][b].shift(a * branch.d).truncate(bound)
                for exponent, c in image.terms:
                    vector[(index, int(exponent))] = c
            basis.insert(vector)
    return len(branches) * bound - basis.rank


def delta_from_poly(f: SparsePoly, branches: list[Branch]) -> LocalQuotientCertificate:
    """delta = dim (normalization / local ring) for a complete branch set of f."""
    f = _germ(f)
    check_factorization(f, branches)
    if not branches:
        raise IncompleteFactorization("no branches given")
    step = max(branch.d for branch in branches)
    trunc = min(branch.trunc for branch in branches)
    bound = 1
    while True:
        if bound + step > trunc:
            raise InsufficientPrecision(
                f"delta needs branches known below t^{bound + step}, have t^{trunc}"
            )
        value = _normalization_codimension(branches, bound)
        again = _normalization_codimension(branches, bound + step)
        logger.debug("normalization codimension %d at N=%d, %d at N=%d", value, bound, again, bound + step)
        if value == again:
            return LocalQuotientCertificate(
                value=value,
                stabilized_at=bound,
                method=QuotientMethod.NORMALIZATION_CODIM,
                rechecked_at=bound + step,
            )
        bound += 1
