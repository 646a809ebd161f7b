"""The miniversal deformation of y^2 - x^n and its discriminant (pure, no I/O).

F = y^2 - (x^n + a_2 x^(n-2) + ... + a_(n-1) x + a_n). A fibre is singular
when P = x^n + ... + a_n has a double root x; solving P'(x) = 0 for a_(n-1) and
then P(x) = 0 for a_n parametrizes the discriminant by (x, a_2, ..., a_(n-2)):

    phi_(n-1) = -(n x^(n-1) + (n-2) a_2 x^(n-3) + ... + 2 a_(n-2) x)
    phi_n     = (n-1) x^n + (n-3) a_2 x^(n-2) + ... + a_(n-2) x^2

psi: (x, y, a_2, ..., a_(n-1)) -> (a_2, ..., a_(n-1), y^2 - x^n - ... - a_(n-1) x)
is the total space of the family. On its critical locus (y = 0, P'(x) = 0) the
image of D(psi) is the hyperplane with normal (x^(n-2), ..., x, 1), which only
depends on x: distinct x give distinct tangent hyperplanes.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction

import sympy

from plane_singularities.errors import CapExceeded, InvariantViolation, PreconditionError
from plane_singularities.local_algebra import X, Y, tjurina_number
from plane_singularities.polynomial import SparsePoly, resultant, sparse_poly, to_fraction, to_rational

logger = logging.getLogger(__name__)

MAX_MINIVERSAL_N = 9


def parameters(n: int) -> list[sympy.Symbol]:
    """a_2, ..., a_n."""
    return [sympy.Symbol(f"a{k}") for k in range(2, n + 1)]


@dataclass(frozen=True)
class MiniversalAn:
    """F in x, y, a_2..a_n and phi = (a_2, ..., a_(n-2), phi_(n-1), phi_n)."""

    n: int
    F: SparsePoly
    phi: tuple[sympy.Expr, ...]

    @property
    def a(self) -> list[sympy.Symbol]:
        return parameters(self.n)

    @property
    def P(self) -> sympy.Expr:
        return sympy.expand(Y**2 - self.F.as_expr())


def _coefficient(a: list[sympy.Symbol], k: int):
    """The coefficient of x^(n-k) in P: 1 for k = 0, a_k otherwise."""
    return sympy.Integer(1) if k == 0 else a[k - 2]


def build_miniversal(n: int) -> MiniversalAn:
    if not 2 <= n <= MAX_MINIVERSAL_N:
        raise CapExceeded(f"miniversal deformation supports 2 <= n <= {MAX_MINIVERSAL_N}, got {n}")
    a = parameters(n)
    P = X**n + sum((a[k - 2] * X ** (n - k) for k in range(2, n + 1)), sympy.Integer(0))
    F = sparse_poly(Y**2 - P, X, Y, *a)
    if n == 2:
        # the only singular fibre is a_2 = 0, at x = 0
        return MiniversalAn(n, F, (sympy.Integer(0),))

    kept = [0, *range(2, n - 1)]
    phi_prev = -sum(((n - k) * _coefficient(a, k) * X ** (n - k - 1) for k in kept), sympy.Integer(0))
    phi_last = sympy.expand(
        -(sum((_coefficient(a, k) * X ** (n - k) for k in kept), sympy.Integer(0)) + phi_prev * X)
    )
    closed_form = sum(((n - k - 1) * _coefficient(a, k) * X ** (n - k) for k in kept), sympy.Integer(0))
    if sympy.expand(phi_last - closed_form) != 0:
        raise InvariantViolation(f"phi_{n} disagrees with its closed form")

    phi = (*a[: n - 3], sympy.expand(phi_prev), phi_last)
    substitution = dict(zip(a, phi))
    derivative = sympy.diff(P, X)
    if sympy.expand(P.subs(substitution)) != 0 or sympy.expand(derivative.subs(substitution)) != 0:
        raise InvariantViolation("phi does not land on fibres with a double root")
    return MiniversalAn(n, F, phi)


def discriminant_polynomial(m: MiniversalAn) -> SparsePoly:
    """res_x(P, P') made content-free, with positive leading coefficient in lex order."""
    P = sparse_poly(m.P, X, *m.a)
    result = resultant(P, P.diff(X), X)
    _, primitive = sympy.Poly(result.as_expr(), *m.a, domain=sympy.ZZ).primitive()
    if primitive.LC() < 0:
        primitive = -primitive
    return sparse_poly(primitive.as_expr(), *m.a)


def discriminant_vanishes_on_phi(m: MiniversalAn, discriminant: SparsePoly | None = None) -> bool:
    """Delta(phi(x, a_2, ..., a_(n-2))) == 0 identically."""
    if discriminant is None:
        discriminant = discriminant_polynomial(m)
    return compose_with_phi(m, discriminant).is_zero


def compose_with_phi(m: MiniversalAn, g: SparsePoly) -> SparsePoly:
    """g(phi) in QQ[x, a_2, ..., a_(n-2)], summed term by term with cached powers of phi."""
    gens = (X, *m.a[: max(m.n - 3, 0)])
    images = [sparse_poly(p, *gens) for p in m.phi]
    powers = [[sparse_poly(sympy.Integer(1), *gens)] for _ in images]
    total = sparse_poly(sympy.Integer(0), *gens)
    for monomial, c in g.terms():
        term = sparse_poly(c, *gens)
        for i, k in enumerate(monomial):
            while len(powers[i]) <= k:
                powers[i].append(powers[i][-1] * images[i])
            term = term * powers[i][k]
        total = total + term
    return total


# --- rank and tangent hyperplanes ---------------------------------------------


@dataclass(frozen=True)
class SampleCheck:
    x: Fraction
    rank_on_critical: int
    rank_off_critical: int
    normal: tuple[Fraction, ...]


@dataclass(frozen=True)
class StratumCheck:
    x: Fraction
    rank_on_stratum: int
    rank_off_stratum: int


@dataclass(frozen=True)
class NashReport:
    n: int
    tjurina: int
    samples: tuple[SampleCheck, ...]
    thom_boardman: tuple[StratumCheck, ...]

    @property
    def checks(self) -> dict[str, str]:
        return {
            "rank_at_least_n_minus_2": "PASS",
            "hyperplane_depends_only_on_x": "PASS",
            "hyperplane_map_injective": "PASS",
            "rank_at_least_tau_minus_1": "PASS",
            "thom_boardman_sigma_11": "PASS" if self.thom_boardman else "SKIPPED",
        }


def _parameter_points(free: list[sympy.Symbol]) -> list[dict]:
    return [
        {symbol: sympy.Rational((j + 1) * (-1) ** k, k + 2) for k, symbol in enumerate(free)}
        for j in range(3)
    ]


def psi_jacobian(m: MiniversalAn) -> sympy.Matrix:
    """D(psi): rows a_2..a_(n-1), a_n; columns x, y, a_2..a_(n-1)."""
    n = m.n
    inputs = [X, Y, *m.a[: n - 2]]
    last = sympy.expand(Y**2 - m.P + m.a[-1])
    outputs = [*m.a[: n - 2], last]
    return sympy.Matrix([[sympy.diff(out, v) for v in inputs] for out in outputs])


def _normal(jacobian: sympy.Matrix, x: Fraction) -> tuple[Fraction, ...]:
    nullspace = jacobian.T.nullspace()
    if len(nullspace) != 1:
        raise InvariantViolation(f"tangent space at x = {x} is not a hyperplane")
    vector = nullspace[0]
    if vector[-1] == 0:
        raise InvariantViolation(f"tangent hyperplane at x = {x} contains the a_n direction")
    return tuple(to_fraction(entry / vector[-1]) for entry in vector)


def _check_sample(m: MiniversalAn, jacobian: sympy.Matrix, s: Fraction) -> SampleCheck:
    n = m.n
    x = to_rational(s)
    free = m.a[: n - 3]
    normals = set()
    rank_on = rank_off = None
    for point in _parameter_points(free):
        on_critical = {X: x, Y: 0, **point, m.a[n - 3]: m.phi[n - 3].subs({X: x, **point})}
        at = jacobian.subs(on_critical)
        rank_on = at.rank()
        if rank_on != n - 2:
            raise InvariantViolation(f"rank of D(psi) on the critical locus is {rank_on}, not {n - 2}, at x = {s}")
        rank_off = jacobian.subs({**on_critical, Y: 1}).rank()
        if rank_off != n - 1:
            raise InvariantViolation(f"rank of D(psi) off the critical locus is {rank_off}, not {n - 1}, at x = {s}")
        normals.add(_normal(at, s))
    if len(normals) != 1:
        raise InvariantViolation(f"tangent hyperplane at x = {s} depends on the a-parameters")
    normal = normals.pop()
    expected = tuple(s ** (n - 2 - k) for k in range(n - 1))
    if normal != expected:
        raise InvariantViolation(f"tangent hyperplane normal at x = {s} is {normal}, expected {expected}")
    return SampleCheck(s, rank_on, rank_off, normal)


def _row_space(vectors: sympy.Matrix) -> sympy.Matrix:
    reduced, pivots = vectors.rref()
    return reduced[: len(pivots), :]


def _check_stratum(m: MiniversalAn, s: Fraction) -> StratumCheck:
    """D(phi) on the first Thom-Boardman stratum, where d phi_(n-1) / dx = 0."""
    n = m.n
    x = to_rational(s)
    inputs = [X, *m.a[: n - 3]]
    free = m.a[: n - 4]
    pivot = m.a[n - 4]
    second = sympy.diff(m.phi[-2], X)
    stratum = sympy.solve(second, pivot)[0]
    if sympy.expand(second.subs(pivot, stratum)) != 0:
        raise InvariantViolation("the stratum parametrization does not kill d phi_(n-1) / dx")
    jacobian = sympy.Matrix([[sympy.diff(out, v) for v in inputs] for out in m.phi])
    images = set()
    rank_on = rank_off = None
    for point in _parameter_points(free):
        on_stratum = {X: x, **point, pivot: stratum.subs({X: x, **point})}
        at = jacobian.subs(on_stratum)
        rank_on = at.rank()
        if rank_on != n - 3:
            raise InvariantViolation(f"rank of D(phi) on the stratum is {rank_on}, not {n - 3}, at x = {s}")
        rank_off = jacobian.subs({**on_stratum, pivot: on_stratum[pivot] + 1}).rank()
        if rank_off != n - 2:
            raise InvariantViolation(f"rank of D(phi) off the stratum is {rank_off}, not {n - 2}, at x = {s}")
        images.add(tuple(_row_space(at.T)))
    if len(images) != 1:
        raise InvariantViolation(f"image of D(phi) at x = {s} depends on the a-parameters")
    return StratumCheck(s, rank_on, rank_off)


def verify_rank_and_nash(m: MiniversalAn, samples: list[Fraction]) -> NashReport:
    """Rank, hyperplane and injectivity checks at every sample x; raises on failure."""
    samples = [Fraction(s) for s in samples]
    if m.n < 3:
        raise PreconditionError("the tangent hyperplane checks need n >= 3")
    if not samples:
        raise PreconditionError("no samples given")
    if any(s == 0 for s in samples):
        raise PreconditionError("samples must be nonzero")
    if len(set(samples)) != len(samples):
        raise PreconditionError(f"samples must be pairwise distinct: {samples}")

    jacobian = psi_jacobian(m)
    checks = tuple(_check_sample(m, jacobian, s) for s in samples)
    if len({check.normal for check in checks}) != len(checks):
        raise InvariantViolation("two samples share a tangent hyperplane")

    tau = tjurina_number(sparse_poly(Y**2 - X**m.n, X, Y)).value
    rank = min(check.rank_on_critical for check in checks)
    if rank < tau - 1:
        raise InvariantViolation(f"rank {rank} is below tau - 1 = {tau - 1}")

    strata = tuple(_check_stratum(m, s) for s in samples) if m.n >= 4 else ()
    logger.debug("disc-demo n=%d passed at %d samples", m.n, len(samples))
    return NashReport(m.n, tau, checks, strata)
