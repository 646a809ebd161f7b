"""Newton-Puiseux expansion of the roots of a polynomial over truncated series
(pure, no I/O).

The polynomial is given by its coefficient series c_0, ..., c_n in e, lowest
degree first. Each root is developed one Newton-polygon edge at a time: an edge
of slope s contributes a term c*e^s with c a root of the edge polynomial, and
the substitution T = c*e^s + T' moves on to the roots that agree with it
further. A cluster of several roots keeps going until it splits; a simple root
is developed until its next exponent reaches the requested precision.

Edge polynomials are solved exactly in cyclotomic fields: directly in degrees
one and two, by radicals for binomials, and by factoring over Q otherwise. Any
other edge polynomial raises UnsupportedCoefficientField naming it.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, comb, lcm

import sympy

from plane_singularities.branch import Branch
from plane_singularities.cyclotomic import (
    Cyclotomic,
    nth_roots,
    rational_sqrt,
    rational_times_root_of_unity,
)
from plane_singularities.errors import (
    InsufficientPrecision,
    InvariantViolation,
    NotRegularSemisimple,
    UnsupportedCoefficientField,
)
from plane_singularities.polynomial import to_fraction, to_rational
from plane_singularities.series import INDETERMINATE, INFINITY, PuiseuxSeries

logger = logging.getLogger(__name__)

DEFAULT_PRECISION = 12

_T = sympy.Symbol("T")
_E = sympy.Symbol("E")


@dataclass(frozen=True)
class _Edge:
    start: int
    end: int
    slope: Fraction  # the valuation of the roots the edge accounts for


def _lower_hull(points: list[tuple[int, Fraction]]) -> list[tuple[int, Fraction]]:
    hull: list[tuple[int, Fraction]] = []
    for point in points:
        while len(hull) >= 2:
            (i0, v0), (i1, v1) = hull[-2], hull[-1]
            # drop the middle vertex unless it lies strictly below the chord
            if (v1 - v0) * (point[0] - i0) >= (point[1] - v0) * (i1 - i0):
                hull.pop()
            else:
                break
        hull.append(point)
    return hull


def _hull_value(hull: list[tuple[int, Fraction]], index: int) -> Fraction:
    for (i0, v0), (i1, v1) in zip(hull, hull[1:]):
        if i0 <= index <= i1:
            return v0 + (v1 - v0) * Fraction(index - i0, i1 - i0)
    raise InvariantViolation(f"index {index} outside the Newton polygon")


def newton_polygon(coefficients: list[PuiseuxSeries], top: int) -> list[_Edge]:
    """Edges of the lower hull of (i, val c_i) for 0 <= i <= top.

    Coefficients known only up to their truncation must lie strictly above the
    hull, or the polygon is not determined.
    """
    points = []
    unknown = []
    for i, c in enumerate(coefficients[: top + 1]):
        value = c.valuation()
        if value is INDETERMINATE:
            unknown.append((i, c.trunc))
        elif value != INFINITY:
            points.append((i, value))
    if len(points) < 2:
        if unknown:
            raise InsufficientPrecision("the Newton polygon has too few known vertices")
        return []
    hull = _lower_hull(points)
    for index, trunc in unknown:
        if index < hull[0][0] or index > hull[-1][0] or trunc <= _hull_value(hull, index):
            raise InsufficientPrecision(
                f"coefficient of T^{index} is unknown below e^{trunc}, "
                "which does not clear the Newton polygon"
            )
    return [
        _Edge(i0, i1, (v0 - v1) / (i1 - i0))
        for (i0, v0), (i1, v1) in zip(hull, hull[1:])
    ]


def _edge_polynomial(coefficients: list[PuiseuxSeries], edge: _Edge) -> tuple[list[Cyclotomic], int]:
    """(psi coefficients lowest first, q) with phi(T) = psi(T^q) along the edge."""
    line = coefficients[edge.start].valuation() + edge.start * edge.slope
    on_edge = {}
    for i in range(edge.start, edge.end + 1):
        value = coefficients[i].valuation()
        if value not in (INDETERMINATE, INFINITY) and value + i * edge.slope == line:
            on_edge[i - edge.start] = coefficients[i].leading_coefficient()
    step = 0
    for offset in on_edge:
        step = sympy.igcd(step, offset)
    step = int(step)
    psi = [Cyclotomic.zero()] * ((edge.end - edge.start) // step + 1)
    for offset, c in on_edge.items():
        psi[offset // step] = c
    return psi, step


def _describe(psi: list[Cyclotomic], step: int) -> str:
    parts = [f"{c}*T^{k * step}" for k, c in enumerate(psi) if c]
    return " + ".join(reversed(parts))


def _quadratic_roots(psi: list[Cyclotomic], edge_text: str) -> list[tuple[Cyclotomic, int]]:
    c, b, a = psi
    discriminant = b * b - 4 * a * c
    if discriminant.is_zero():
        return [(-b / (2 * a), 2)]
    decomposed = rational_times_root_of_unity(discriminant)
    if decomposed is None:
        raise UnsupportedCoefficientField("discriminant is not rational times a root of unity", edge_text)
    r, order, k = decomposed
    root = rational_sqrt(r) * Cyclotomic.zeta(2 * order, k)
    return [((-b + root) / (2 * a), 1), ((-b - root) / (2 * a), 1)]


def _binomial_roots(psi: list[Cyclotomic], edge_text: str) -> list[tuple[Cyclotomic, int]] | None:
    if any(psi[1:-1]):
        return None
    roots = nth_roots(-psi[0] / psi[-1], len(psi) - 1)
    if roots is None:
        raise UnsupportedCoefficientField("binomial root leaves the cyclotomic fields", edge_text)
    return [(root, 1) for root in roots]


def _rational_factor_roots(psi: list[Cyclotomic], edge_text: str) -> list[tuple[Cyclotomic, int]]:
    z = sympy.Symbol("z")
    poly = sympy.Poly(
        [to_rational(c.as_rational()) for c in reversed(psi)], z, domain=sympy.QQ
    )
    _, factors = sympy.factor_list(poly)
    roots = []
    for factor, multiplicity in factors:
        coeffs = [Cyclotomic.rational(to_fraction(c)) for c in reversed(factor.all_coeffs())]
        for root, inner in _solve_edge(coeffs, edge_text, factored=True):
            roots.append((root, inner * multiplicity))
    return roots


def _solve_edge(psi: list[Cyclotomic], edge_text: str, factored: bool = False) -> list[tuple[Cyclotomic, int]]:
    """Nonzero roots of psi with multiplicities."""
    degree = len(psi) - 1
    if degree == 1:
        return [(-psi[0] / psi[1], 1)]
    binomial = _binomial_roots(psi, edge_text)
    if binomial is not None:
        return binomial
    if degree == 2:
        return _quadratic_roots(psi, edge_text)
    if not factored and all(c.as_rational() is not None for c in psi):
        return _rational_factor_roots(psi, edge_text)
    raise UnsupportedCoefficientField("edge polynomial not solvable by radicals here", edge_text)


def _taylor_shift(coefficients: list[PuiseuxSeries], c: Cyclotomic, slope: Fraction) -> list[PuiseuxSeries]:
    """Coefficients of P(c*e^slope + T).

    The k-th one is sum_i comb(i, k) c^(i-k) e^((i-k)*slope) c_i; the terms of
    each are collected first and normalized once.
    """
    n = len(coefficients) - 1
    scales = [Cyclotomic.one()]
    for _ in range(n):
        scales.append(scales[-1] * c)
    shifted = []
    for k in range(n + 1):
        collected = []
        trunc = INFINITY
        ram = 1
        for i in range(k, n + 1):
            source = coefficients[i]
            if source.is_exact_zero():
                continue
            factor = scales[i - k] * comb(i, k)
            offset = (i - k) * slope
            collected.extend((e + offset, a * factor) for e, a in source.terms)
            trunc = min(trunc, source.trunc + offset)
            ram = lcm(ram, source.ram, offset.denominator)
        shifted.append(PuiseuxSeries.build(collected, trunc, ram))
    return shifted


@dataclass
class _Expansion:
    precision: Fraction
    separation_bound: Fraction | None
    roots: list[PuiseuxSeries]

    def emit(self, prefix: dict, trunc) -> None:
        self.roots.append(PuiseuxSeries.build(prefix, trunc))

    def expand(self, coefficients: list[PuiseuxSeries], prefix: dict, floor, strict: bool, count: int) -> None:
        """Roots T of the polynomial with val T > floor (>= when not strict), `count` of them."""
        zeros = 0
        while zeros <= count and coefficients[zeros].is_exact_zero():
            zeros += 1
        if zeros >= 2:
            raise NotRegularSemisimple(f"repeated root {PuiseuxSeries.build(prefix)}")
        if zeros == 1:
            self.emit(prefix, INFINITY)
            coefficients, count = coefficients[1:], count - 1
        if count == 0:
            return

        if coefficients[0].valuation() is INDETERMINATE:
            self._near_zero_root(coefficients, prefix, floor, count)
            count -= 1
            if count == 0:
                return
            edges = newton_polygon(coefficients[1:], count)
            edges = [_Edge(e.start + 1, e.end + 1, e.slope) for e in edges]
        else:
            edges = newton_polygon(coefficients, count)

        found = 0
        for edge in edges:
            if edge.slope < floor or (strict and edge.slope == floor):
                continue
            psi, step = _edge_polynomial(coefficients, edge)
            edge_text = _describe(psi, step)
            solutions = _solve_edge(psi, edge_text)
            if sum(m for _, m in solutions) * step != edge.end - edge.start:
                raise InvariantViolation(f"edge polynomial {edge_text} lost roots")
            for z, multiplicity in solutions:
                roots = [z] if step == 1 else nth_roots(z, step)
                if roots is None:
                    raise UnsupportedCoefficientField("root of the edge polynomial", edge_text)
                for c in roots:
                    found += multiplicity
                    self._follow(coefficients, prefix, edge.slope, c, multiplicity)
        if found != count:
            raise InsufficientPrecision(
                f"only {found} of {count} roots beyond e^{floor} are determined"
            )

    def _near_zero_root(self, coefficients, prefix, floor, count) -> None:
        """c_0 vanishes to its truncation: a root of valuation >= trunc_0 - val c_1."""
        linear = coefficients[1].valuation() if count >= 1 else INDETERMINATE
        if linear in (INDETERMINATE, INFINITY):
            raise InsufficientPrecision("constant and linear coefficients are both unknown")
        bound = coefficients[0].trunc - linear
        others = newton_polygon(coefficients[1:], count - 1) if count > 1 else []
        if bound <= floor or any(edge.slope >= bound for edge in others):
            raise InsufficientPrecision(f"a root of valuation >= {bound} is not separated")
        logger.debug("root known to e^%s from a truncated constant term", bound)
        self.emit(prefix, bound)

    def _follow(self, coefficients, prefix, slope: Fraction, c: Cyclotomic, multiplicity: int) -> None:
        extended = dict(prefix)
        extended[slope] = c
        if multiplicity == 1 and slope >= self.precision:
            # the next term of a simple root has valuation slope
            self.emit(prefix, slope)
            return
        if multiplicity > 1 and self.separation_bound is not None and slope >= self.separation_bound:
            raise NotRegularSemisimple(
                f"{multiplicity} roots agree beyond e^{slope}, past the discriminant bound"
            )
        shifted = _taylor_shift(coefficients, c, slope)
        self.expand(shifted, extended, slope, True, multiplicity)


def separation_bound(coefficients: list[PuiseuxSeries]) -> Fraction | None:
    """An upper bound for val(r_i - r_j) over distinct roots, from the discriminant.

    Only available when every coefficient is exact and rational; raises
    NotRegularSemisimple when the discriminant vanishes identically.
    """
    if any(c.trunc != INFINITY for c in coefficients):
        return None
    ram = lcm(*(c.ram for c in coefficients))
    expression = sympy.Integer(0)
    for i, c in enumerate(coefficients):
        for exponent, value in c.terms:
            rational = value.as_rational()
            if rational is None:
                return None
            expression += to_rational(rational) * _E ** int(exponent * ram) * _T**i
    n = len(coefficients) - 1
    if n < 2:
        return None
    discriminant = sympy.Poly(sympy.discriminant(expression, _T), _E)
    if discriminant.is_zero:
        raise NotRegularSemisimple("the discriminant vanishes identically")
    lowest = min(m[0] for m in discriminant.monoms())
    total = (Fraction(lowest, ram) - (2 * n - 2) * coefficients[-1].valuation()) / 2
    edges = newton_polygon(coefficients, n)
    lowest_root = min((edge.slope for edge in edges), default=Fraction(0))
    return total - (comb(n, 2) - 1) * min(Fraction(0), lowest_root)


def newton_puiseux_roots(
    coefficients: list[PuiseuxSeries],
    precision=DEFAULT_PRECISION,
    through_origin: bool = False,
) -> list[PuiseuxSeries]:
    """Roots of sum c_i T^i with valuation >= 0 (> 0 when `through_origin`).

    Simple roots are developed until their next term has exponent >= precision;
    the returned series is truncated there.
    """
    coefficients = [c if isinstance(c, PuiseuxSeries) else PuiseuxSeries.build({0: c}) for c in coefficients]
    while len(coefficients) > 1 and coefficients[-1].is_exact_zero():
        coefficients.pop()
    expansion = _Expansion(Fraction(precision), separation_bound(coefficients), [])
    n = len(coefficients) - 1
    if n < 1:
        return []
    top = n
    if through_origin:
        # only the roots that vanish at e = 0: stop at the first unit coefficient
        top = next(
            (i for i, c in enumerate(coefficients) if c.valuation() == 0),
            n,
        )
    count = _count_roots(coefficients, top, through_origin)
    expansion.expand(coefficients, {}, Fraction(0), through_origin, count)
    logger.debug("newton-puiseux found %d roots to precision %s", len(expansion.roots), precision)
    return expansion.roots


def _count_roots(coefficients: list[PuiseuxSeries], top: int, strict: bool) -> int:
    """How many roots have valuation >= 0 (> 0 when strict), read off the polygon."""
    start = 0
    while start < top and coefficients[start].is_exact_zero():
        start += 1
    if start < top and coefficients[start].valuation() is INDETERMINATE:
        start += 1
    edges = newton_polygon(coefficients[start:], top - start)
    return start + sum(
        edge.end - edge.start for edge in edges if edge.slope > 0 or (not strict and edge.slope == 0)
    )


def group_conjugates(roots: list[PuiseuxSeries]) -> list[Branch]:
    """Partition roots into Galois orbits and return one Branch per orbit."""
    remaining = list(range(len(roots)))
    branches = []
    while remaining:
        first = roots[remaining[0]]
        d = lcm(1, *(e.denominator for e in first.support()))
        u = first.with_ram(d)
        orbit = []
        for j in range(d):
            twisted = u.twist(j)
            matches = [
                index for index in remaining
                if index not in orbit and _agrees(twisted, roots[index])
            ]
            if len(matches) != 1:
                raise InsufficientPrecision(
                    f"conjugate {j} of {first} matches {len(matches)} roots; more terms are needed"
                )
            orbit.append(matches[0])
        remaining = [index for index in remaining if index not in orbit]
        trunc = min(roots[index].trunc for index in orbit)
        t_trunc = INFINITY if trunc == INFINITY else ceil(trunc * d)
        branches.append(
            Branch.build(d, {int(e * d): c for e, c in u.terms}, t_trunc)
        )
    return branches


def _agrees(first: PuiseuxSeries, second: PuiseuxSeries) -> bool:
    return (first - second).valuation() in (INDETERMINATE, INFINITY)


def newton_puiseux(
    coefficients: list[PuiseuxSeries],
    precision=DEFAULT_PRECISION,
    through_origin: bool = False,
) -> list[Branch]:
    """Branches (Galois orbits of roots) of sum c_i T^i, see newton_puiseux_roots."""
    return group_conjugates(newton_puiseux_roots(coefficients, precision, through_origin))
