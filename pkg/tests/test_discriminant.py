"""The A_(n-1) miniversal deformation: discriminant, its parametrization and the
tangent hyperplane checks."""

from fractions import Fraction

import pytest
import sympy

from plane_singularities import discriminant
from plane_singularities.certificate import LocalQuotientCertificate, QuotientMethod
from plane_singularities.discriminant import (
    build_miniversal,
    compose_with_phi,
    discriminant_polynomial,
    discriminant_vanishes_on_phi,
    parameters,
    psi_jacobian,
    verify_rank_and_nash,
)
from plane_singularities.errors import CapExceeded, InvariantViolation, PreconditionError
from plane_singularities.local_algebra import X
from plane_singularities.polynomial import sparse_poly


def test_cubic_discriminant():
    m = build_miniversal(3)
    a2, a3 = parameters(3)
    assert sympy.expand(discriminant_polynomial(m).as_expr() - (4 * a2**3 + 27 * a3**2)) == 0


def test_quadratic_discriminant_is_the_parameter():
    m = build_miniversal(2)
    (a2,) = parameters(2)
    assert discriminant_polynomial(m).as_expr() == a2
    assert m.phi == (0,)


def test_cubic_parametrization():
    m = build_miniversal(3)
    assert sympy.expand(m.phi[0] + 3 * X**2) == 0
    assert sympy.expand(m.phi[1] - 2 * X**3) == 0


def test_quartic_parametrization():
    m = build_miniversal(4)
    (a2, _, _) = parameters(4)
    assert m.phi[0] == a2
    assert sympy.expand(m.phi[1] + 4 * X**3 + 2 * a2 * X) == 0
    assert sympy.expand(m.phi[2] - 3 * X**4 - a2 * X**2) == 0


@pytest.mark.parametrize("n", [3, 4, 5, 6])
def test_discriminant_vanishes_along_phi(n):
    assert discriminant_vanishes_on_phi(build_miniversal(n))


@pytest.mark.parametrize("n", [1, 10])
def test_miniversal_size_is_capped(n):
    with pytest.raises(CapExceeded):
        build_miniversal(n)


def test_jacobian_shape():
    jacobian = psi_jacobian(build_miniversal(4))
    assert jacobian.shape == (3, 4)


@pytest.mark.parametrize(
    "n, samples",
    [
        (3, [1, 2, -1, Fraction(1, 2)]),
        (4, [1, 2, -1, Fraction(1, 2)]),
        (5, [1, -1]),
    ],
)
def test_rank_and_hyperplane_checks_pass(n, samples):
    report = verify_rank_and_nash(build_miniversal(n), samples)
    assert report.tjurina == n - 1
    assert all(value in ("PASS", "SKIPPED") for value in report.checks.values())
    assert [check.rank_on_critical for check in report.samples] == [n - 2] * len(samples)
    assert [check.rank_off_critical for check in report.samples] == [n - 1] * len(samples)


def test_normals_are_powers_of_the_sample():
    report = verify_rank_and_nash(build_miniversal(4), [2])
    assert report.samples[0].normal == (Fraction(4), Fraction(2), Fraction(1))


def test_stratum_checks_run_from_n_four():
    assert verify_rank_and_nash(build_miniversal(3), [1]).checks["thom_boardman_sigma_11"] == "SKIPPED"
    report = verify_rank_and_nash(build_miniversal(4), [1])
    assert report.checks["thom_boardman_sigma_11"] == "PASS"
    assert report.thom_boardman[0].rank_on_stratum == 1


@pytest.mark.parametrize("samples", [[], [0, 1], [1, 1]])
def test_bad_samples_are_rejected(samples):
    with pytest.raises(PreconditionError):
        verify_rank_and_nash(build_miniversal(3), samples)


def test_checks_need_n_at_least_three():
    with pytest.raises(PreconditionError):
        verify_rank_and_nash(build_miniversal(2), [1])


def test_composition_with_phi_stays_in_the_polynomial_ring():
    m = build_miniversal(4)
    a2, a3, _ = parameters(4)
    composed = compose_with_phi(m, sparse_poly(a3 + a2**2, *m.a))
    assert sympy.expand(composed.as_expr() - (-(4 * X**3 + 2 * a2 * X) + a2**2)) == 0


def test_a_non_discriminant_does_not_vanish_along_phi():
    m = build_miniversal(3)
    a2, a3 = parameters(3)
    assert not discriminant_vanishes_on_phi(m, sparse_poly(4 * a2**3 - 27 * a3**2, *m.a))


def test_rank_is_compared_with_the_measured_tjurina_number(monkeypatch):
    fake = LocalQuotientCertificate(value=5, stabilized_at=5, method=QuotientMethod.TJURINA_QUOTIENT, rechecked_at=6)
    monkeypatch.setattr(discriminant, "tjurina_number", lambda f: fake)
    with pytest.raises(InvariantViolation):
        verify_rank_and_nash(build_miniversal(4), [1])
