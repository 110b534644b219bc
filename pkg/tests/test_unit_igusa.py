import unittest
from fractions import Fraction

import pytest

from src.exceptions import PrecisionError, SeriesError
from src.services.classical import eisenstein_q, eta_power, jacobi_index1
from src.services.exact import rational_content
from src.services.igusa import build_tower, igusa_generators, jacobian_determinant, maass_lift
from src.services.series import disc, divide_exact, multiply, restrict_diagonal, swap

PREC = 6


class TestMaassLift(unittest.TestCase):

    def setUp(self):
        self.phi = jacobi_index1(10, "cusp", 4)
        self.lift = maass_lift(self.phi, 4)

    def test_coprime_index(self):
        self.assertEqual(self.lift.coefficient(2, 2, 1), self.phi.c(2, 2))

    def test_divisor_sum(self):
        expected = self.phi.c(4, 0) + 2 ** 9 * self.phi.c(1, 0)
        self.assertEqual(self.lift.coefficient(2, 0, 2), expected)

    def test_cusp_form_has_no_constant_term(self):
        self.assertEqual(self.lift[(0, 0, 0)], 0)

    def test_jacobi_precision_is_checked(self):
        with self.assertRaises(PrecisionError):
            maass_lift(jacobi_index1(10, "cusp", 3), 4)


def test_generator_coefficients(tower):
    e4, chi10, chi12 = tower.forms["e4"], tower.forms["chi10"], tower.forms["chi12"]
    assert e4.coefficient(0, 0, 0) == 1
    assert e4.coefficient(1, 0, 0) == 240
    assert e4.coefficient(1, 1, 1) == 13440
    assert e4.coefficient(1, 0, 1) == 30240
    assert e4.coefficient(1, 2, 1) == 240
    assert chi10.coefficient(1, 1, 1) == 1
    assert chi10.coefficient(1, 0, 1) == -2
    assert chi12.coefficient(1, 1, 1) == 1
    assert chi12.coefficient(1, 0, 1) == 10
    assert tower.forms["e6"].coefficient(1, 0, 0) == -504


def test_generators_are_integral(tower):
    for key in ("e4", "e6", "chi10", "chi12"):
        assert tower.forms[key].series.is_integral


def test_support_is_positive_semidefinite(tower):
    for key, form in tower.forms.items():
        for (N, R, M) in form.series.coeffs:
            assert N >= 0 and M >= 0
            if key in ("e4", "e6"):
                assert disc((N, R, M)) >= 0
            else:
                assert disc((N, R, M)) > 0, (key, (N, R, M))


def test_e4_restricts_to_a_product(tower):
    e4 = eisenstein_q(4, PREC)
    diagonal = restrict_diagonal(tower.forms["e4"].series)
    for n in range(PREC + 1):
        for m in range(PREC + 1 - n):
            assert diagonal.get((2 * n, 2 * m), 0) == e4[n] * e4[m]


def test_chi12_restricts_to_delta_times_delta(tower):
    delta = eta_power(24, PREC)
    diagonal = restrict_diagonal(tower.forms["chi12"].series)
    assert diagonal[(2, 2)] == 12
    for n in range(1, PREC):
        for m in range(1, PREC + 1 - n):
            assert diagonal.get((2 * n, 2 * m), 0) == 12 * delta.coefficient(n) * delta.coefficient(m)


def test_cusp_forms_vanish_on_the_diagonal(tower):
    assert restrict_diagonal(tower.forms["chi10"].series) == {}
    assert restrict_diagonal(tower.forms["phi35"].series) == {}


def test_psi5(tower):
    psi5 = tower.forms["psi5"]
    assert psi5.parity == "half-integral"
    assert psi5.weight == 5
    assert psi5.series[(1, 1, 1)] == 1
    assert psi5.series[(1, -1, 1)] == -1
    assert all(N % 2 and R % 2 and M % 2 for N, R, M in psi5.series.coeffs)
    assert multiply(psi5.series, psi5.series).agrees_with(tower.forms["chi10"].series)


def test_phi35(tower):
    phi35 = tower.forms["phi35"].series
    assert phi35.min_order == 10
    assert min(N for N, _, M in phi35.coeffs if N + M == 10) == 4
    assert abs(phi35.coefficient(2, 1, 3)) == 1
    assert phi35.coefficient(2, -1, 3) == -phi35.coefficient(2, 1, 3)
    assert swap(phi35) == -phi35
    assert all(c == 0 for (N, _, M), c in phi35.coeffs.items() if N == M)
    assert phi35.is_integral
    assert rational_content(phi35.coeffs.values()) == 1


def test_phi30(tower):
    phi30, psi5 = tower.forms["phi30"], tower.forms["psi5"]
    assert phi30.weight == 30
    assert phi30.parity == "half-integral"
    assert phi30.series.is_integral
    assert multiply(phi30.series, psi5.series).agrees_with(tower.forms["phi35"].series)
    assert divide_exact(tower.forms["phi35"].series, psi5.series).agrees_with(phi30.series)


def test_content_divisor(tower):
    assert tower.content_divisor != 0
    assert isinstance(tower.content_divisor, Fraction)


def test_prefix_stability(tower):
    smaller = build_tower(4)
    for key, form in smaller.forms.items():
        assert form.prec == 4
        assert form.series.agrees_with(tower.forms[key].series), key


def test_tower_needs_precision_four():
    with pytest.raises(PrecisionError):
        build_tower(3)
    with pytest.raises(PrecisionError):
        igusa_generators(2)


def test_jacobian_needs_four_forms():
    with pytest.raises(SeriesError):
        jacobian_determinant(igusa_generators(4)[:3])
