"""Truncated Puiseux series over cyclotomic fields (pure, no I/O).

A series models an element of Q(zeta)((e^(1/n))) known only below its
truncation order: terms with exponent >= trunc are unknown, not zero. Every
operation carries that uncertainty forward, and any question whose answer could
change with more terms (the valuation of a series with no known terms, say)
answers INDETERMINATE instead of guessing. trunc = INFINITY means the series is
exact.

e is normalized by val(e) = 1.
"""

import math
from collections.abc import Iterable
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm

from plane_singularities.cyclotomic import Cyclotomic

INFINITY = math.inf

Exponent = Fraction
Truncation = Fraction | float  # a Fraction, or INFINITY


class Precision(Enum):
    INDETERMINATE = "indeterminate"


INDETERMINATE = Precision.INDETERMINATE


def _as_cyclotomic(value) -> Cyclotomic:
    return value if isinstance(value, Cyclotomic) else Cyclotomic.rational(value)


def _as_truncation(value) -> Truncation:
    return INFINITY if value == INFINITY else Fraction(value)


@dataclass(frozen=True, eq=False)
class PuiseuxSeries:
    """Sorted nonzero terms below `trunc`, exponents in (1/ram)Z."""

    ram: int
    terms: tuple[tuple[Exponent, Cyclotomic], ...]
    trunc: Truncation = INFINITY

    @classmethod
    def build(
        cls,
        terms: dict | Iterable[tuple],
        trunc=INFINITY,
        ram: int | None = None,
    ) -> "PuiseuxSeries":
        """Normalize: merge equal exponents, drop zeros and anything at or past trunc."""
        trunc = _as_truncation(trunc)
        items = terms.items() if isinstance(terms, dict) else terms
        merged: dict[Fraction, Cyclotomic] = {}
        for exponent, coefficient in items:
            exponent = Fraction(exponent)
            if exponent >= trunc:
                continue
            coefficient = _as_cyclotomic(coefficient)
            if exponent in merged:
                merged[exponent] = merged[exponent] + coefficient
            else:
                merged[exponent] = coefficient
        kept = tuple(sorted((e, c) for e, c in merged.items() if not c.is_zero()))
        needed = lcm(1, *(e.denominator for e, _ in kept))
        if ram is None:
            ram = needed
        elif ram % needed:
            raise ValueError(f"exponent denominators {needed} do not divide ramification {ram}")
        return cls(ram, kept, trunc)

    @classmethod
    def zero(cls, trunc=INFINITY, ram: int = 1) -> "PuiseuxSeries":
        return cls(ram, (), _as_truncation(trunc))

    @classmethod
    def monomial(cls, coefficient, exponent, trunc=INFINITY) -> "PuiseuxSeries":
        return cls.build({Fraction(exponent): coefficient}, trunc)

    # --- inspection ---------------------------------------------------------

    def valuation(self) -> Fraction | float | Precision:
        """Smallest known exponent; INFINITY for the exact zero series;
        INDETERMINATE when nothing is known below a finite truncation."""
        if self.terms:
            return self.terms[0][0]
        if self.trunc == INFINITY:
            return INFINITY
        return INDETERMINATE

    def valuation_bound(self) -> Truncation:
        """A lower bound for the true valuation (the valuation when determinate)."""
        value = self.valuation()
        return self.trunc if value is INDETERMINATE else value

    def leading_coefficient(self) -> Cyclotomic | None:
        return self.terms[0][1] if self.terms else None

    def coefficient(self, exponent) -> Cyclotomic:
        exponent = Fraction(exponent)
        if exponent >= self.trunc:
            raise ValueError(f"coefficient of e^{exponent} is beyond truncation {self.trunc}")
        for e, c in self.terms:
            if e == exponent:
                return c
        return Cyclotomic.zero()

    def is_exact_zero(self) -> bool:
        return not self.terms and self.trunc == INFINITY

    def support(self) -> list[Fraction]:
        return [e for e, _ in self.terms]

    # --- arithmetic ---------------------------------------------------------

    def truncate(self, trunc) -> "PuiseuxSeries":
        return PuiseuxSeries.build(self.terms, min(self.trunc, _as_truncation(trunc)), self.ram)

    def with_ram(self, ram: int) -> "PuiseuxSeries":
        return PuiseuxSeries.build(self.terms, self.trunc, ram)

    def __add__(self, other):
        other = _coerce(other)
        trunc = min(self.trunc, other.trunc)
        return PuiseuxSeries.build(
            list(self.terms) + list(other.terms), trunc, lcm(self.ram, other.ram)
        )

    __radd__ = __add__

    def __neg__(self):
        return PuiseuxSeries(self.ram, tuple((e, -c) for e, c in self.terms), self.trunc)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        trunc = min(
            self.trunc + other.valuation_bound(), other.trunc + self.valuation_bound()
        )
        products = [
            (e1 + e2, c1 * c2)
            for e1, c1 in self.terms
            for e2, c2 in other.terms
            if e1 + e2 < trunc
        ]
        return PuiseuxSeries.build(products, trunc, lcm(self.ram, other.ram))

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        if exponent < 0:
            raise ValueError("negative powers of a series are not supported")
        result = PuiseuxSeries.build({0: 1})
        for _ in range(exponent):
            result = result * self
        return result

    def shift(self, exponent) -> "PuiseuxSeries":
        """Multiply by e^exponent."""
        exponent = Fraction(exponent)
        return PuiseuxSeries.build(
            [(e + exponent, c) for e, c in self.terms],
            self.trunc + exponent,
            lcm(self.ram, exponent.denominator),
        )

    def twist(self, power: int) -> "PuiseuxSeries":
        """Apply the Galois generator `power` times: e^(1/ram) -> zeta_ram * e^(1/ram)."""
        return PuiseuxSeries(
            self.ram,
            tuple(
                (e, c * Cyclotomic.zeta(self.ram, power * int(e * self.ram)))
                for e, c in self.terms
            ),
            self.trunc,
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PuiseuxSeries):
            return NotImplemented
        return (
            self.trunc == other.trunc
            and len(self.terms) == len(other.terms)
            and all(
                e1 == e2 and c1 == c2
                for (e1, c1), (e2, c2) in zip(self.terms, other.terms)
            )
        )

    __hash__ = None

    def __str__(self) -> str:
        parts = [f"{c}*e^({e})" for e, c in self.terms]
        if self.trunc != INFINITY:
            parts.append(f"O(e^({self.trunc}))")
        return " + ".join(parts) if parts else "0"


def _coerce(value) -> PuiseuxSeries:
    if isinstance(value, PuiseuxSeries):
        return value
    return PuiseuxSeries.build({0: value})


def valuation(series: PuiseuxSeries) -> Fraction | float | Precision:
    return series.valuation()


def difference_valuation(first: PuiseuxSeries, second: PuiseuxSeries) -> Fraction | float | Precision:
    """val(first - second) in the common frame: INDETERMINATE when the two agree
    up to their joint truncation, INFINITY when both are exact and equal."""
    return (first - second).valuation()
