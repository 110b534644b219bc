import random
import unittest
from fractions import Fraction

import pytest

from src.exceptions import SeriesError
from src.services.laplace import bracket, bracket_coefficients, compare_printings, laplace, nary_bracket
from src.services.selftest import random_series
from src.services.series import OrthoSeries, disc, multiply


class TestLaplace(unittest.TestCase):

    def test_eigenvalues(self):
        F = OrthoSeries({(1, 1, 1): 1, (1, 3, 3): 2}, 3)
        self.assertEqual(dict(laplace(F).coeffs), {(1, 1, 1): -3, (1, 3, 3): -6})
        G = OrthoSeries({(2, 2, 2): 1}, 3)
        self.assertEqual(laplace(G)[(2, 2, 2)], -12)

    def test_norm_zero_index_is_killed(self):
        F = OrthoSeries({(2, 4, 2): 7, (0, 0, 0): 1, (0, 0, 4): 3}, 3)
        self.assertTrue(laplace(F).is_zero)

    def test_cross_term_on_monomials(self):
        for lam, mu in [((2, 2, 2), (0, 0, 2)), ((2, 2, 2), (2, -2, 2)), ((1, 1, 1), (3, -1, 1))]:
            e_lam, e_mu = OrthoSeries({lam: 1}, 4), OrthoSeries({mu: 1}, 4)
            nu = tuple(a + b for a, b in zip(lam, mu))
            cross = laplace(multiply(e_lam, e_mu)) - multiply(laplace(e_lam), e_mu) - multiply(e_lam, laplace(e_mu))
            self.assertEqual(cross[nu], -(disc(nu) - disc(lam) - disc(mu)))


class TestBracketCoefficients(unittest.TestCase):

    def test_psi5_phi30(self):
        co = bracket_coefficients(3, 5, 30)
        self.assertEqual((co.A, co.B, co.C), (Fraction(-9, 2), Fraction(-59, 2), Fraction(-69, 2)))

    def test_d11_prefactors(self):
        co = bracket_coefficients(13, 142, 1)
        self.assertEqual((co.A, co.B, co.C), (Fraction(-273, 2), Fraction(9, 2), Fraction(-275, 2)))
        self.assertEqual(co.A * co.B, Fraction(-273 * 9, 4))
        self.assertEqual(-co.B * co.C, Fraction(275 * 9, 4))
        self.assertEqual(co.A * co.C, Fraction(275 * 273, 4))

    def test_e6_pair(self):
        co = bracket_coefficients(8, 120, 4)
        self.assertEqual((co.A, co.B, co.C), (-117, -1, -121))

    def test_linear_relations(self):
        for n, k, l in [(3, 5, 30), (4, 9, 45), (26, 12, 1), (7, 0, 0)]:
            co = bracket_coefficients(n, k, l)
            self.assertEqual(co.A + co.B - co.C, Fraction(n, 2) - 1)
            self.assertEqual(co.A - co.C, l)
            self.assertEqual(co.B - co.C, k)

    def test_rank_below_three(self):
        with self.assertRaises(SeriesError):
            bracket_coefficients(2, 4, 6)


def test_bracket_with_zero_and_constants():
    F = OrthoSeries({(2, 2, 2): 1, (2, 0, 2): -2}, 4)
    assert bracket(F, 10, OrthoSeries.zero(4), 12, 3).is_zero
    assert bracket(OrthoSeries.one(4), 0, OrthoSeries.one(4), 0, 5).is_zero


def test_bracket_is_bilinear():
    rng = random.Random(7)
    for _ in range(40):
        F1, F2, G = (random_series(rng, 3, terms=4) for _ in range(3))
        left = bracket(F1 + F2, 4, G, 6, 3)
        right = bracket(F1, 4, G, 6, 3) + bracket(F2, 4, G, 6, 3)
        assert left.agrees_with(right)
        assert bracket(F1 * 3, 4, G, 6, 3).agrees_with(bracket(F1, 4, G, 6, 3) * 3)


def test_three_form_bracket_on_monomials():
    e1 = OrthoSeries({(2, 2, 2): 1}, 6)
    e2 = OrthoSeries({(2, -2, 2): 1}, 6)
    e3 = OrthoSeries({(0, 0, 2): 1}, 6)
    result = nary_bracket([(e1, 1), (e2, 2), (e3, 3)], 3)
    assert dict(result.coeffs) == {(4, 0, 6): -854}


def test_many_form_bracket_needs_two_forms():
    with pytest.raises(SeriesError):
        nary_bracket([(OrthoSeries.one(2), 4)], 3)


def test_bracket_of_psi5_and_phi30_vanishes(tower):
    psi5, phi30 = tower.forms["psi5"].series, tower.forms["phi30"].series
    result = bracket(psi5, 5, phi30, 30, 3)
    assert result.prec >= 6
    assert result.is_zero


def test_printings_on_psi5_and_phi30(tower):
    psi5, phi30 = tower.forms["psi5"].series, tower.forms["phi30"].series
    comparison = compare_printings(psi5, 5, phi30, 30, 3)
    assert comparison.difference_identity_holds
    assert comparison.two_form_vanishes
    assert not comparison.many_form_vanishes
