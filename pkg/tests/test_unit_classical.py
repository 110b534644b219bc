import random
import unittest
from fractions import Fraction

import pytest

from src.exceptions import JacobiFormError, SeriesError
from src.services.exact import bernoulli, divisor_power_sum
from src.services.classical import (
    eisenstein_q,
    eta_power,
    jacobi_index1,
    theta_constant,
    theta_odd,
    weak_jacobi_generators,
)

RAMANUJAN_TAU = [1, -24, 252, -1472, 4830, -6048]


class TestQSeries(unittest.TestCase):

    def test_delta_is_eta_24(self):
        delta = eta_power(24, 6)
        self.assertEqual(delta.scale, 24)
        for n, tau in enumerate(RAMANUJAN_TAU, start=1):
            self.assertEqual(delta.coefficient(n), tau)

    def test_eta_leading_exponent(self):
        eta = eta_power(1, 3)
        self.assertEqual(eta.order, 1)
        self.assertEqual(eta.coefficient(Fraction(1, 24)), 1)
        self.assertEqual(eta.coefficient(Fraction(25, 24)), -1)
        self.assertEqual(eta.coefficient(1), 0)

    def test_eisenstein(self):
        e4 = eisenstein_q(4, 3)
        self.assertEqual([e4[n] for n in range(4)], [1, 240, 2160, 6720])
        e6 = eisenstein_q(6, 2)
        self.assertEqual([e6[n] for n in range(3)], [1, -504, -16632])
        with self.assertRaises(SeriesError):
            eisenstein_q(5, 3)

    def test_theta_constant(self):
        theta3 = theta_constant(3, 4)
        # sum over n of q^(n^2/2)
        self.assertEqual(theta3.coefficient(0), 1)
        self.assertEqual(theta3.coefficient(Fraction(1, 2)), 2)
        self.assertEqual(theta3.coefficient(2), 2)

    def test_theta_odd(self):
        theta = theta_odd(2)
        self.assertEqual(theta.coefficient(Fraction(1, 8), Fraction(1, 2)), 1)
        self.assertEqual(theta[(1, 1)], 1)
        self.assertEqual(theta[(1, -1)], -1)
        self.assertEqual(theta[(9, 3)], -1)


def test_weak_generators():
    phi_m2, phi_0 = weak_jacobi_generators(2)
    assert [phi_m2[(0, r)] for r in (-1, 0, 1)] == [1, -2, 1]
    assert [phi_m2[(1, r)] for r in (-2, -1, 0, 1, 2)] == [-2, 8, -12, 8, -2]
    assert [phi_0[(0, r)] for r in (-1, 0, 1)] == [1, 10, 1]
    assert [phi_0[(1, r)] for r in (-2, -1, 0, 1, 2)] == [10, -64, 108, -64, 10]
    assert phi_m2.qscale == phi_m2.zscale == 1
    assert all(c.denominator == 1 for c in phi_0.coeffs.values())


@pytest.mark.parametrize(
    "weight, kind, expected",
    [
        (4, "eisenstein", {(0, 0): 1, (1, 0): 126, (1, 1): 56, (1, 2): 1}),
        (6, "eisenstein", {(0, 0): 1, (1, 0): -330, (1, 1): -88, (1, 2): 1}),
        (10, "cusp", {(1, 1): 1, (1, 0): -2, (2, 0): 36, (2, 1): -16, (2, 2): -2}),
        (12, "cusp", {(1, 1): 1, (1, 0): 10, (2, 0): -132, (2, 1): -88, (2, 2): 10}),
    ],
)
def test_index_one_forms(weight, kind, expected):
    form = jacobi_index1(weight, kind, 3)
    for (n, r), c in expected.items():
        assert form.c(n, r) == c
        assert form.c(n, -r) == c
    form.check()


def test_index_one_cusp_forms_vanish_at_infinity():
    form = jacobi_index1(10, "cusp", 3)
    assert all(n >= 1 for n, _ in form.series.coeffs)


def test_unsupported_jacobi_form():
    with pytest.raises(JacobiFormError):
        jacobi_index1(8, "cusp", 3)


@pytest.mark.parametrize("k", [4, 6])
def test_eisenstein_constant_is_minus_2k_over_bernoulli(k):
    constant = Fraction(-2 * k) / bernoulli(k)
    assert constant == {4: 240, 6: -504}[k]
    e = eisenstein_q(k, 12)
    rng = random.Random(k)
    for m in rng.sample(range(1, 13), 6):
        assert e[m] == constant * divisor_power_sum(k - 1, m)


JACOBI_PREC = 9


@pytest.mark.parametrize("weight, kind", [(4, "eisenstein"), (6, "eisenstein"), (10, "cusp"), (12, "cusp")])
def test_index_one_coefficients_depend_on_discriminant(weight, kind):
    form = jacobi_index1(weight, kind, JACOBI_PREC)
    by_class = {}
    rng = random.Random(weight)
    for _ in range(400):
        n = rng.randrange(0, JACOBI_PREC + 1)
        r = rng.randrange(-2 * n - 1, 2 * n + 2)
        key = (4 * n - r * r, r % 2)
        by_class.setdefault(key, set()).add(form.c(n, r))
    assert all(len(values) == 1 for values in by_class.values())
    assert all(values == {0} for (d, _), values in by_class.items() if d < 0)


@pytest.mark.parametrize("weight", [4, 6])
def test_eisenstein_index_one_is_one_on_null_vectors(weight):
    form = jacobi_index1(weight, "eisenstein", JACOBI_PREC)
    for t in range(4):
        assert form.c(t * t, 2 * t) == 1
        assert form.c(t * t, -2 * t) == 1
