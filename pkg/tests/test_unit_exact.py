import random
import unittest
from fractions import Fraction

import pytest
import sympy

from src.exceptions import ArithmeticDomainError
from src.services.exact import (
    as_fraction,
    bernoulli,
    divisor_power_sum,
    divisors,
    factor,
    mod_p,
    prime_divisors,
    rational_content,
    require_prime,
    to_sympy,
    valuation,
)


class TestValuation(unittest.TestCase):

    def test_numerator_and_denominator(self):
        self.assertEqual(valuation(Fraction(-9, 2), 3), 2)
        self.assertEqual(valuation(Fraction(-9, 2), 2), -1)
        self.assertEqual(valuation(Fraction(-69, 2), 23), 1)
        self.assertEqual(valuation(7, 5), 0)

    def test_zero_is_rejected(self):
        with self.assertRaises(ArithmeticDomainError):
            valuation(0, 3)

    def test_modulus_must_be_prime(self):
        with self.assertRaises(ArithmeticDomainError):
            valuation(12, 4)
        with self.assertRaises(ArithmeticDomainError):
            require_prime(1)


class TestFactor(unittest.TestCase):

    def test_factor(self):
        self.assertEqual(factor(360), {2: 3, 3: 2, 5: 1})
        self.assertEqual(factor(-1950), {2: 1, 3: 1, 5: 2, 13: 1})
        self.assertEqual(factor(1), {})
        self.assertEqual(factor(-1), {})

    def test_factor_zero(self):
        with self.assertRaises(ArithmeticDomainError):
            factor(0)

    def test_prime_divisors(self):
        self.assertEqual(prime_divisors(-60), (2, 3, 5))
        self.assertEqual(prime_divisors(1), ())
        self.assertEqual(prime_divisors(0), ())


class TestBernoulli(unittest.TestCase):

    def test_values(self):
        self.assertEqual(bernoulli(0), 1)
        self.assertEqual(bernoulli(1), Fraction(-1, 2))
        self.assertEqual(bernoulli(4), Fraction(-1, 30))
        self.assertEqual(bernoulli(6), Fraction(1, 42))
        self.assertEqual(bernoulli(12), Fraction(-691, 2730))

    def test_odd_index(self):
        with self.assertRaises(ArithmeticDomainError):
            bernoulli(3)
        with self.assertRaises(ArithmeticDomainError):
            bernoulli(-2)


def test_divisor_sums():
    assert divisor_power_sum(3, 6) == 1 + 8 + 27 + 216
    assert divisor_power_sum(0, 12) == 6
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    with pytest.raises(ArithmeticDomainError):
        divisor_power_sum(3, 0)


def test_rational_content():
    c = rational_content([Fraction(6, 5), Fraction(-4, 15), 0])
    assert c == Fraction(2, 15)
    assert [x / c for x in (Fraction(6, 5), Fraction(-4, 15))] == [9, -2]
    with pytest.raises(ArithmeticDomainError):
        rational_content([0, Fraction(0)])


def test_mod_p():
    assert mod_p(Fraction(1, 2), 3) == 2
    assert mod_p(-1, 5) == 4
    with pytest.raises(ArithmeticDomainError):
        mod_p(Fraction(1, 3), 3)


def test_conversions():
    assert as_fraction(sympy.Rational(3, 4)) == Fraction(3, 4)
    assert as_fraction("-69/2") == Fraction(-69, 2)
    assert to_sympy(Fraction(-9, 2)) == sympy.Rational(-9, 2)
    with pytest.raises(ArithmeticDomainError):
        as_fraction(0.5)
    with pytest.raises(ArithmeticDomainError):
        as_fraction("1/0")


SEED = 2357
PRIMES = [2, 3, 5, 7, 11, 13, 23, 59]


@pytest.fixture(scope="module")
def rng():
    return random.Random(SEED)


def _random_rational(rng):
    p = rng.choice(PRIMES)
    numerator = rng.choice([-1, 1]) * rng.randrange(1, 10**6) * p ** rng.randrange(0, 4)
    return Fraction(numerator, rng.randrange(1, 10**4) * p ** rng.randrange(0, 3))


def test_valuation_is_additive(rng):
    for _ in range(2000):
        x, y = _random_rational(rng), _random_rational(rng)
        p = rng.choice(PRIMES)
        assert valuation(x * y, p) == valuation(x, p) + valuation(y, p)
        assert valuation(x / y, p) == valuation(x, p) - valuation(y, p)


def test_factor_reconstructs(rng):
    for _ in range(10**4):
        n = rng.choice([-1, 1]) * rng.randrange(1, 10**7)
        parts = factor(n)
        assert all(sympy.isprime(p) and e >= 1 for p, e in parts.items())
        assert sympy.prod([p**e for p, e in parts.items()]) == abs(n)
