"""
Exact scalar arithmetic shared by every other service.

Scalars are :class:`fractions.Fraction`; number-theoretic work (factorisation,
Bernoulli numbers, divisor sums, primality) is delegated to sympy and
converted back at the boundary.
"""
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable

import sympy

from src.exceptions import ArithmeticDomainError

Scalar = int | Fraction


def as_fraction(value) -> Fraction:
    """
    Converts an int, Fraction, string or sympy rational into a Fraction.

    :param value: Any exact rational value.
    :return: The same value as a Fraction.
    :raises ArithmeticDomainError: If the value is not an exact rational.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value)
        except (ValueError, ZeroDivisionError) as err:
            raise ArithmeticDomainError(f"not a rational number: {value!r}") from err
    if isinstance(value, sympy.Rational):
        return Fraction(int(value.p), int(value.q))
    raise ArithmeticDomainError(f"not an exact rational: {value!r}")


def to_sympy(value: Scalar) -> sympy.Rational:
    value = as_fraction(value)
    return sympy.Rational(value.numerator, value.denominator)


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not sympy.isprime(p):
        raise ArithmeticDomainError(f"{p!r} is not a prime")
    return p


def valuation(x: Scalar, p: int) -> int:
    """
    The p-adic valuation v_p(x) of a nonzero rational.

    Parameters:
        x: Nonzero rational.
        p: A prime.

    Returns:
        v_p(numerator) - v_p(denominator).

    Raises:
        ArithmeticDomainError: x is zero or p is not prime.
    """
    require_prime(p)
    x = as_fraction(x)
    if x == 0:
        raise ArithmeticDomainError("valuation of zero is undefined")
    return sympy.multiplicity(p, abs(x.numerator)) - sympy.multiplicity(p, x.denominator)


@lru_cache(maxsize=65536)
def _factor_abs(n: int) -> tuple[tuple[int, int], ...]:
    return tuple(sorted(sympy.factorint(n).items()))


def factor(n: int) -> dict[int, int]:
    """
    Exact factorisation of |n|.

    Parameters:
        n: Nonzero integer.

    Returns:
        Mapping prime -> exponent; empty for n = +-1.

    Raises:
        ArithmeticDomainError: n is zero.
    """
    if n == 0:
        raise ArithmeticDomainError("cannot factor zero")
    if abs(n) == 1:
        return {}
    return dict(_factor_abs(abs(n)))


def prime_divisors(n: int) -> tuple[int, ...]:
    if n == 0:
        return ()
    return tuple(p for p, _ in _factor_abs(abs(n)))


def bernoulli(k: int) -> Fraction:
    """
    The k-th Bernoulli number with B_1 = -1/2.

    Parameters:
        k: 0, 1 or an even positive integer.

    Returns:
        B_k as an exact rational.

    Raises:
        ArithmeticDomainError: k is negative or odd and greater than one.
    """
    if k < 0 or (k > 1 and k % 2):
        raise ArithmeticDomainError(f"Bernoulli number index must be 0, 1 or even, got {k}")
    if k == 1:
        return Fraction(-1, 2)
    return as_fraction(sympy.bernoulli(k))


def divisor_power_sum(k: int, n: int) -> int:
    """sigma_k(n), the sum of d**k over the positive divisors d of n."""
    if n < 1:
        raise ArithmeticDomainError(f"divisor sums need n >= 1, got {n}")
    return int(sympy.divisor_sigma(n, k))


def divisors(n: int) -> list[int]:
    return [int(d) for d in sympy.divisors(n)]


def rational_content(values: Iterable[Scalar]) -> Fraction:
    """
    The positive rational content of a finite family of rationals.

    The gcd of the numerators over the lcm of the denominators, so dividing every
    value by it leaves coprime integers.
    """
    num, den = 0, 1
    for value in values:
        value = as_fraction(value)
        if value:
            num = gcd(num, value.numerator)
            den = lcm(den, value.denominator)
    if num == 0:
        raise ArithmeticDomainError("content of an all-zero family is undefined")
    return Fraction(num, den)


def mod_p(x: Scalar, p: int) -> int:
    """Reduces a p-integral rational modulo p."""
    x = as_fraction(x)
    if x.denominator % p == 0:
        raise ArithmeticDomainError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p
