"""Exact arithmetic in cyclotomic fields Q(zeta_m) (pure, no I/O).

An element is stored by its coordinates in the power basis 1, z, ..., z^(phi(m)-1)
of Q[z]/Phi_m(z), with Phi_m the m-th cyclotomic polynomial. Every product is
reduced modulo Phi_m, so the representation is canonical for a fixed order and
equality across orders is decided in the field of the least common multiple.

zeta_m is embedded as zeta_M^(M/m) whenever m divides M; all the conjugate
twists of a Puiseux expansion live in one such compatible family.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm

import sympy

_Z = sympy.Symbol("z")


@lru_cache(maxsize=None)
def cyclotomic_modulus(order: int) -> tuple[int, ...]:
    """Coefficients of Phi_order, lowest degree first (monic, integral)."""
    poly = sympy.cyclotomic_poly(order, _Z, polys=True)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@lru_cache(maxsize=None)
def field_degree(order: int) -> int:
    return int(sympy.totient(order))


def _reduce(coeffs: list[Fraction], order: int) -> tuple[Fraction, ...]:
    modulus = cyclotomic_modulus(order)
    degree = len(modulus) - 1
    work = list(coeffs) + [Fraction(0)] * max(0, degree - len(coeffs))
    for i in range(len(work) - 1, degree - 1, -1):
        top = work[i]
        if not top:
            continue
        shift = i - degree
        for j in range(degree):
            if modulus[j]:
                work[shift + j] -= top * modulus[j]
        work[i] = Fraction(0)
    return tuple(work[:degree])


@dataclass(frozen=True, eq=False)
class Cyclotomic:
    """An element of Q(zeta_order) in power-basis coordinates."""

    order: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.order < 1:
            raise ValueError(f"cyclotomic order must be positive, got {self.order}")
        if len(self.coeffs) != field_degree(self.order):
            raise ValueError(
                f"Q(zeta_{self.order}) has degree {field_degree(self.order)}, "
                f"got {len(self.coeffs)} coordinates"
            )

    # --- constructors -------------------------------------------------------

    @classmethod
    def from_power_basis(cls, coeffs, order: int) -> "Cyclotomic":
        """Reduce an arbitrary polynomial in z (lowest degree first) modulo Phi_order."""
        return cls(order, _reduce([Fraction(c) for c in coeffs], order))

    @classmethod
    def rational(cls, value, order: int = 1) -> "Cyclotomic":
        degree = field_degree(order)
        return cls(order, (Fraction(value),) + (Fraction(0),) * (degree - 1))

    @classmethod
    def zero(cls, order: int = 1) -> "Cyclotomic":
        return cls.rational(0, order)

    @classmethod
    def one(cls, order: int = 1) -> "Cyclotomic":
        return cls.rational(1, order)

    @classmethod
    def zeta(cls, order: int, power: int = 1) -> "Cyclotomic":
        """zeta_order ** power, for any integer power."""
        power %= order
        coeffs = [Fraction(0)] * (power + 1)
        coeffs[power] = Fraction(1)
        return cls.from_power_basis(coeffs, order)

    # --- structure ----------------------------------------------------------

    def embed(self, order: int) -> "Cyclotomic":
        """The same number inside Q(zeta_order); `self.order` must divide it."""
        if order == self.order:
            return self
        if order % self.order:
            raise ValueError(f"Q(zeta_{self.order}) does not embed in Q(zeta_{order})")
        step = order // self.order
        lifted = [Fraction(0)] * ((len(self.coeffs) - 1) * step + 1)
        for i, c in enumerate(self.coeffs):
            lifted[i * step] = c
        return Cyclotomic.from_power_basis(lifted, order)

    def as_rational(self) -> Fraction | None:
        """The value as a Fraction when it lies in Q, else None."""
        if any(self.coeffs[1:]):
            return None
        return self.coeffs[0]

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    # --- arithmetic ---------------------------------------------------------

    def _common(self, other) -> tuple["Cyclotomic", "Cyclotomic"]:
        other = _coerce(other)
        order = lcm(self.order, other.order)
        return self.embed(order), other.embed(order)

    def __add__(self, other):
        a, b = self._common(other)
        return Cyclotomic(a.order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        a, b = self._common(other)
        if a.order == 1:
            return Cyclotomic(1, (a.coeffs[0] * b.coeffs[0],))
        scalar = b.as_rational()
        if scalar is not None:
            return Cyclotomic(a.order, tuple(x * scalar for x in a.coeffs))
        scalar = a.as_rational()
        if scalar is not None:
            return Cyclotomic(a.order, tuple(scalar * y for y in b.coeffs))
        product = [Fraction(0)] * (len(a.coeffs) + len(b.coeffs) - 1)
        for i, x in enumerate(a.coeffs):
            if not x:
                continue
            for j, y in enumerate(b.coeffs):
                if y:
                    product[i + j] += x * y
        return Cyclotomic.from_power_basis(product, a.order)

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        rational = self.as_rational()
        if rational is not None:
            return Cyclotomic.rational(1 / rational, self.order)
        element = sympy.Poly(
            [sympy.Rational(c.numerator, c.denominator) for c in reversed(self.coeffs)],
            _Z,
            domain=sympy.QQ,
        )
        modulus = sympy.cyclotomic_poly(self.order, _Z, polys=True).set_domain(sympy.QQ)
        inverse = element.invert(modulus)
        coeffs = [Fraction(int(c.p), int(c.q)) for c in reversed(inverse.all_coeffs())]
        return Cyclotomic.from_power_basis(coeffs, self.order)

    def __truediv__(self, other):
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other):
        return _coerce(other) * self.inverse()

    def __pow__(self, exponent: int):
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Cyclotomic.one(self.order)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other) -> bool:
        if not isinstance(other, (Cyclotomic, int, Fraction)):
            return NotImplemented
        a, b = self._common(other)
        return a.coeffs == b.coeffs

    __hash__ = None

    def __repr__(self) -> str:
        return f"Cyclotomic({self})"

    def __str__(self) -> str:
        rational = self.as_rational()
        if rational is not None:
            return str(rational)
        parts = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif c == 1:
                parts.append(f"z{self.order}^{i}")
            else:
                parts.append(f"{c}*z{self.order}^{i}")
        return "(" + " + ".join(parts) + ")"


def _coerce(value) -> Cyclotomic:
    if isinstance(value, Cyclotomic):
        return value
    if isinstance(value, (int, Fraction)):
        return Cyclotomic.rational(value)
    raise TypeError(f"cannot use {type(value).__name__} as a cyclotomic number")


def rational_times_root_of_unity(value: Cyclotomic) -> tuple[Fraction, int, int] | None:
    """Write `value` as r * zeta_M^k with r > 0 rational, or None if impossible.

    M is the order of `value` made even, so the sign is absorbed in the root of unity.
    """
    if value.is_zero():
        return None
    order = lcm(value.order, 2)
    value = value.embed(order)
    for k in range(order):
        r = (value * Cyclotomic.zeta(order, -k)).as_rational()
        if r is not None and r > 0:
            return r, order, k
    return None


@lru_cache(maxsize=None)
def prime_sqrt(p: int) -> Cyclotomic:
    """A square root of the prime p inside Q(zeta_8) or Q(zeta_4p), via Gauss sums."""
    if p == 2:
        return Cyclotomic.zeta(8, 1) + Cyclotomic.zeta(8, 7)
    gauss = Cyclotomic.zero(p)
    for a in range(1, p):
        gauss = gauss + Cyclotomic.zeta(p, a) * int(sympy.legendre_symbol(a, p))
    # gauss^2 = p when p = 1 mod 4 and -p otherwise
    return gauss if p % 4 == 1 else gauss * Cyclotomic.zeta(4)


def rational_sqrt(value: Fraction) -> Cyclotomic:
    """A square root of a rational number as a cyclotomic number."""
    value = Fraction(value)
    if value == 0:
        return Cyclotomic.zero()
    root = Cyclotomic.zeta(4) if value < 0 else Cyclotomic.one()
    value = abs(value)
    # sqrt(a/b) = sqrt(a*b) / b
    radicand = value.numerator * value.denominator
    outside = Fraction(1, value.denominator)
    for p, exponent in sorted(sympy.factorint(radicand).items()):
        outside *= p ** (exponent // 2)
        if exponent % 2:
            root = root * prime_sqrt(p)
    return root * outside


def rational_root(value: Fraction, degree: int) -> Cyclotomic | None:
    """Some x with x**degree == value > 0, when one lies in a cyclotomic field.

    That happens exactly when value^(2/degree) is rational; None otherwise. For odd
    degree the root returned is the positive rational one.
    """
    value = Fraction(value)
    if value <= 0 or degree < 1:
        raise ValueError(f"need value > 0 and degree >= 1, got {value}, {degree}")
    squared = Fraction(1)
    for part, sign in ((value.numerator, 1), (value.denominator, -1)):
        for p, exponent in sympy.factorint(part).items():
            if (2 * exponent) % degree:
                return None
            squared *= Fraction(p) ** (sign * (2 * exponent // degree))
    return rational_sqrt(squared)


def nth_roots(value: Cyclotomic, degree: int) -> list[Cyclotomic] | None:
    """All degree-th roots of r * zeta_M^k, or None when r has no cyclotomic root."""
    decomposed = rational_times_root_of_unity(value)
    if decomposed is None:
        return None
    r, order, k = decomposed
    modulus = rational_root(r, degree)
    if modulus is None:
        return None
    return [modulus * Cyclotomic.zeta(order * degree, k + order * l) for l in range(degree)]
