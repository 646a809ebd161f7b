"""Per-branch invariants of a plane-curve germ (pure, no I/O).

A branch is a parametrization x = t^d, y = sum a_k t^k, or equivalently one
Galois orbit of eigenvalue expansions y(zeta_d^j e^(1/d)). From it we read:

  - the characteristic exponents (beta_0; beta_1, ..., beta_g) by the usual
    induction on the gcd chain e_v = gcd(beta_0, ..., beta_v);
  - the characteristic pairs (m_v, n_v) = (beta_v / e_v, e_(v-1) / e_v) and back;
  - the valuations between Galois conjugates, which are the ratios
    m_v / (n_1 ... n_v), and the pairs recovered from them;
  - Abhyankar's inversion of the pairs when x and y swap roles;
  - delta from the valuation semigroup, certified by the conductor 2*delta;
  - Halphen-Zeuthen intersection numbers between two branches.

A constant term a_0 is the branch centre. Per-branch invariants are computed
after translating it away; cross-branch quantities use the expansion as given.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, prod

from plane_singularities.certificate import LocalQuotientCertificate, QuotientMethod
from plane_singularities.cyclotomic import Cyclotomic
from plane_singularities.echelon import EchelonBasis
from plane_singularities.errors import (
    DegenerateInput,
    InsufficientPrecision,
    InvalidCharacteristic,
    InvariantViolation,
    NotDistinct,
    NotRealizable,
    OrderBelowRamification,
    PreconditionError,
)
from plane_singularities.series import INDETERMINATE, INFINITY, PuiseuxSeries, difference_valuation

logger = logging.getLogger(__name__)

MAX_SEMIGROUP_ORDER = 2000


@dataclass(frozen=True, eq=False)
class Branch:
    """x = t^d, y = y(t) with integer exponents; y.trunc is the t-truncation."""

    d: int
    y: PuiseuxSeries

    def __post_init__(self):
        if self.d < 1:
            raise PreconditionError(f"ramification index must be positive, got {self.d}")
        if self.y.ram != 1 or any(e < 0 for e in self.y.support()):
            raise PreconditionError("branch y(t) needs non-negative integer exponents")

    @classmethod
    def build(cls, d: int, coefficients: dict, trunc=INFINITY) -> "Branch":
        return cls(d, PuiseuxSeries.build({int(k): c for k, c in coefficients.items()}, trunc))

    @property
    def trunc(self):
        return self.y.trunc

    def centre(self) -> Cyclotomic:
        return self.y.coefficient(0) if self.y.trunc > 0 else Cyclotomic.zero()

    def translated(self) -> PuiseuxSeries:
        """y minus its constant term: the branch moved to the origin."""
        return PuiseuxSeries(1, tuple((e, c) for e, c in self.y.terms if e > 0), self.y.trunc)

    def order(self) -> int | float:
        """n_0, the t-order of the translated y; INFINITY when it vanishes exactly."""
        value = self.translated().valuation()
        if value is INDETERMINATE:
            raise InsufficientPrecision(f"no term of y known below t^{self.trunc}")
        return value if value == INFINITY else int(value)

    def support(self) -> list[int]:
        return [int(e) for e in self.translated().support()]

    def eigen_expansion(self) -> PuiseuxSeries:
        """The expansion sum a_k e^(k/d), with ramification index d."""
        return PuiseuxSeries.build(
            [(Fraction(int(e), self.d), c) for e, c in self.y.terms],
            self.trunc / self.d if self.trunc != INFINITY else INFINITY,
            self.d,
        )

    def conjugate(self, power: int) -> PuiseuxSeries:
        """The power-th Galois twist of the eigen expansion."""
        return self.eigen_expansion().twist(power)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Branch):
            return NotImplemented
        return self.d == other.d and self.y == other.y

    __hash__ = None


@dataclass(frozen=True)
class CharExponents:
    beta: tuple[int, ...]

    def __post_init__(self):
        beta = self.beta
        if not beta or beta[0] < 1:
            raise InvalidCharacteristic(f"beta_0 must be a positive integer: {beta}")
        if any(b < 1 for b in beta):
            raise InvalidCharacteristic(f"exponents must be positive: {beta}")
        if any(later <= earlier for earlier, later in zip(beta[1:], beta[2:])):
            raise InvalidCharacteristic(f"beta_1 < ... < beta_g fails: {beta}")
        chain = self.gcd_chain()
        for previous, b in zip(chain, beta[1:]):
            if b % previous == 0:
                raise InvalidCharacteristic(f"{b} is divisible by e = {previous}: {beta}")
        if chain[-1] != 1:
            raise InvalidCharacteristic(f"gcd chain ends at {chain[-1]}, not 1: {beta}")

    def gcd_chain(self) -> tuple[int, ...]:
        """(e_0, e_1, ..., e_g) with e_v = gcd(beta_0, ..., beta_v)."""
        chain = [self.beta[0]]
        for b in self.beta[1:]:
            chain.append(gcd(chain[-1], b))
        return tuple(chain)

    def __str__(self) -> str:
        head, *rest = self.beta
        return f"({head}; {', '.join(map(str, rest))})" if rest else f"({head})"


@dataclass(frozen=True)
class CharPairs:
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for m, n in self.pairs:
            if m < 1 or n < 2:
                raise InvalidCharacteristic(f"pair ({m}, {n}) needs m >= 1 and n >= 2")
            if gcd(m, n) != 1:
                raise InvalidCharacteristic(f"pair ({m}, {n}) is not coprime")
        ratios = self.ratios()
        if any(later <= earlier for earlier, later in zip(ratios, ratios[1:])):
            raise InvalidCharacteristic(f"m_v / (n_1 ... n_v) not increasing: {self.pairs}")

    def ratios(self) -> list[Fraction]:
        """m_v / (n_1 ... n_v): the root valuations the pairs produce."""
        ratios, denominator = [], 1
        for m, n in self.pairs:
            denominator *= n
            ratios.append(Fraction(m, denominator))
        return ratios

    @property
    def degree(self) -> int:
        return prod(n for _, n in self.pairs)

    def __str__(self) -> str:
        return "(" + ", ".join(f"({m}, {n})" for m, n in self.pairs) + ")"


# --- characteristic data ------------------------------------------------------


def parametrization_exponents(branch: Branch) -> CharExponents:
    """The inductive gcd-breaking exponents of x = t^d, y(t), for any y-order."""
    if branch.d == 1:
        return CharExponents((1,))
    support = branch.support()
    beta = [branch.d]
    e = branch.d
    for k in support:
        if k % e:
            beta.append(k)
            e = gcd(e, k)
            if e == 1:
                return CharExponents(tuple(beta))
    if branch.trunc != INFINITY:
        raise InsufficientPrecision(
            f"gcd chain stops at {e} before t^{branch.trunc}; more terms are needed"
        )
    raise PreconditionError(f"parametrization is not primitive: every exponent is divisible by {e}")


def characteristic_exponents(branch: Branch) -> CharExponents:
    """(beta_0; beta_1, ..., beta_g) of a Puiseux parametrization (n_0 >= d)."""
    if branch.d > 1 and branch.order() < branch.d:
        raise OrderBelowRamification(
            f"y has order {branch.order()} < d = {branch.d}; invert the parametrization"
        )
    return parametrization_exponents(branch)


def characteristic_pairs(exponents: CharExponents) -> CharPairs:
    chain = exponents.gcd_chain()
    return CharPairs(
        tuple(
            (b // chain[v], chain[v - 1] // chain[v])
            for v, b in enumerate(exponents.beta[1:], start=1)
        )
    )


def exponents_from_pairs(pairs: CharPairs) -> CharExponents:
    """beta_g = m_g, e_(v-1) = n_v ... n_g, beta_(v-1) = m_(v-1) * n_v ... n_g."""
    ns = [n for _, n in pairs.pairs]
    beta = [prod(ns)]
    for v, (m, _) in enumerate(pairs.pairs):
        beta.append(m * prod(ns[v + 1:]))
    return CharExponents(tuple(beta))


def pairs_from_root_valuations(valuations: list[Fraction]) -> CharPairs:
    """Peel m_v / (n_1 ... n_v) left to right, using gcd(m_v, n_v) = 1."""
    valuations = [Fraction(v) for v in valuations]
    if not valuations:
        raise PreconditionError("no root valuations given")
    if any(v <= 0 for v in valuations) or any(
        b <= a for a, b in zip(valuations, valuations[1:])
    ):
        raise PreconditionError(f"root valuations must be positive and increasing: {valuations}")
    pairs, denominator = [], 1
    for v in valuations:
        scaled = v * denominator
        if scaled.denominator == 1:
            raise NotRealizable(
                f"{denominator} * {v} = {scaled} is an integer; no pair with n >= 2 gives it"
            )
        pairs.append((scaled.numerator, scaled.denominator))
        denominator *= scaled.denominator
    return CharPairs(tuple(pairs))


def invert_parametrization(pairs: CharPairs) -> CharPairs:
    """Abhyankar inversion: the pairs after swapping the roles of x and y.

    m'_1 = n_1, n'_1 = m_1, and m'_i = m_i - (m_1 - n_1) n_2 ... n_i, n'_i = n_i.
    A first pair with m_1 = 1 inverts to (n_1, 1), which is not characteristic
    and is dropped.
    """
    if not pairs.pairs:
        raise DegenerateInput("a smooth branch has no characteristic pairs to invert")
    (m1, n1), *rest = pairs.pairs
    inverted = [] if m1 == 1 else [(n1, m1)]
    tail = 1
    for m, n in rest:
        tail *= n
        inverted.append((m - (m1 - n1) * tail, n))
    return CharPairs(tuple(inverted))


def parametrization_pairs(branch: Branch) -> CharPairs:
    return characteristic_pairs(parametrization_exponents(branch))


def branch_pairs(branch: Branch) -> CharPairs:
    """Puiseux characteristic pairs, inverting when the y-order is below d."""
    if branch.d == 1:
        return CharPairs(())
    if branch.order() >= branch.d:
        return characteristic_pairs(characteristic_exponents(branch))
    return invert_parametrization(parametrization_pairs(branch))


def branch_multiplicity(branch: Branch) -> int:
    """min(d, n_0): the order of the branch at its centre."""
    order = branch.order()
    return branch.d if order == INFINITY else min(branch.d, order)


def standard_branch(pairs: CharPairs) -> Branch:
    """x = t^beta_0, y = sum t^beta_v: unit coefficients, exact."""
    beta = exponents_from_pairs(pairs).beta
    return Branch.build(beta[0], {b: 1 for b in beta[1:]})


# --- Galois conjugates --------------------------------------------------------


def conjugate_difference_valuation(branch: Branch, power: int) -> Fraction:
    """val(y(zeta_d^power e^(1/d)) - y(e^(1/d))) read off the support.

    The coefficient a_k changes by a_k (zeta_d^(power*k) - 1), which is nonzero
    exactly when d does not divide power*k.
    """
    if not 1 <= power <= branch.d - 1:
        raise PreconditionError(f"conjugate index {power} outside 1..{branch.d - 1}")
    for k in branch.support():
        if (power * k) % branch.d:
            return Fraction(k, branch.d)
    if branch.trunc != INFINITY:
        raise InsufficientPrecision(
            f"conjugates {power} apart agree below t^{branch.trunc}"
        )
    raise PreconditionError("parametrization is not primitive: two conjugates coincide")


def conjugate_valuations(branch: Branch) -> list[Fraction]:
    """[val between conjugates j apart for j = 1..d-1]."""
    return [conjugate_difference_valuation(branch, j) for j in range(1, branch.d)]


# --- valuation semigroup and delta -------------------------------------------


def valuation_semigroup(branch: Branch, bound: int) -> set[int]:
    """Orders below `bound` of elements of Q[[x, y]] restricted to the branch."""
    if bound > branch.trunc:
        raise InsufficientPrecision(f"orders below {bound} need y beyond t^{branch.trunc}")
    y = branch.translated().truncate(bound)
    n0 = branch.order()
    basis = EchelonBasis()
    power = PuiseuxSeries.build({0: 1}, bound)
    b = 0
    while b == 0 or (n0 != INFINITY and b * n0 < bound):
        a = 0
        while a * branch.d + (b * n0 if b else 0) < bound:
            image = power.shift(a * branch.d).truncate(bound)
            basis.insert({int(e): c for e, c in image.terms})
            a += 1
        power = (power * y).truncate(bound)
        b += 1
    return basis.pivots


def semigroup_generators(elements: set[int], bound: int) -> list[int]:
    """Minimal generators among the semigroup elements below `bound`."""
    positive = sorted(k for k in elements if 0 < k < bound)
    return [
        k for k in positive
        if not any(k - a in elements for a in positive if a <= k - a)
    ]


def _gaps(elements: set[int], bound: int) -> int:
    return sum(1 for k in range(bound) if k not in elements)


def _certified(elements: set[int], bound: int, d: int) -> int | None:
    delta = _gaps(elements, bound)
    if bound >= 2 * delta + d and all(k in elements for k in range(2 * delta, bound)):
        return delta
    return None


def branch_delta(branch: Branch) -> LocalQuotientCertificate:
    """delta as the gap count of the valuation semigroup, conductor-certified.

    The bound N grows until every order in [2*delta, N) is achieved with
    N >= 2*delta + d; the value is then re-derived at N + d.
    """
    if branch.d > 1:
        parametrization_exponents(branch)
    n0 = branch.order()
    bound = branch.d + (branch.d if n0 == INFINITY else n0)
    while bound <= MAX_SEMIGROUP_ORDER:
        elements = valuation_semigroup(branch, bound)
        delta = _certified(elements, bound, branch.d)
        if delta is not None:
            recheck = bound + branch.d
            if _certified(valuation_semigroup(branch, recheck), recheck, branch.d) != delta:
                raise InvariantViolation(f"semigroup delta changed between {bound} and {recheck}")
            for k in range(2 * delta):
                if (k in elements) == (2 * delta - 1 - k in elements):
                    raise InvariantViolation(f"semigroup is not symmetric at {k}")
            logger.debug("branch delta %d certified at N=%d", delta, bound)
            return LocalQuotientCertificate(
                value=delta,
                stabilized_at=bound,
                method=QuotientMethod.SEMIGROUP_GAPS,
                rechecked_at=recheck,
            )
        bound = max(bound + branch.d, 2 * _gaps(elements, bound) + branch.d)
    raise InsufficientPrecision(f"semigroup did not stabilize below t^{MAX_SEMIGROUP_ORDER}")


def delta_from_pairs(pairs: CharPairs) -> LocalQuotientCertificate:
    """delta of any branch with these Puiseux pairs (delta is topological)."""
    return branch_delta(standard_branch(pairs))


# --- intersection numbers -----------------------------------------------------


def intersection_number(first: Branch, second: Branch) -> int:
    """Halphen-Zeuthen: the sum of val(u_k - v_l) over all d1 * d2 conjugate pairs."""
    total = Fraction(0)
    for k in range(first.d):
        u = first.conjugate(k)
        for l in range(second.d):
            value = difference_valuation(u, second.conjugate(l))
            if value is INDETERMINATE:
                raise InsufficientPrecision(
                    f"conjugates {k} and {l} agree up to their truncation"
                )
            if value == INFINITY:
                raise NotDistinct(f"conjugates {k} and {l} coincide exactly")
            total += value
    if total.denominator != 1:
        raise InvariantViolation(f"Halphen-Zeuthen sum {total} is not an integer")
    return int(total)
