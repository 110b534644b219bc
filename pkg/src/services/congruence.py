"""
Fourier-level certificates of singularity modulo a prime.

A form F with integral coefficients is singular modulo p (p not dividing D_F) when
a(lambda) = 0 mod p for every lambda with Q(lambda) != 0 mod p. In doubled indices
Q(lambda) = (4NM - R^2) / 16.
"""
import logging
from fractions import Fraction
from math import lcm
from typing import List

import sympy

from src.exceptions import LevelDivisibilityError, NonIntegralError, PrecisionError, SeriesError
from src.schemas import Certificate, Violation
from src.services.exact import mod_p, require_prime
from src.services.series import OrthoSeries, disc, storage_sort_key

logger = logging.getLogger(__name__)


def compute_DF(F: OrthoSeries) -> int:
    """
    The smallest positive D_F with D_F * Q(lambda) integral on the support of F.

    Raises:
        SeriesError: F is zero.
    """
    if F.is_zero:
        raise SeriesError("D_F of the zero series is undefined")
    return lcm(*(Fraction(disc(key), 16).denominator for key in F.coeffs))


def _tested(F: OrthoSeries, prec: int) -> list[tuple[tuple[int, int, int], Fraction, Fraction]]:
    bound = 2 * prec
    keys = sorted((key for key in F.coeffs if key[0] + key[2] <= bound), key=storage_sort_key)
    return [(key, F[key], Fraction(disc(key), 16)) for key in keys]


def _validate(F: OrthoSeries, prec: int | None) -> tuple[int, int]:
    if not F.is_integral:
        raise NonIntegralError("singularity is only defined for integral coefficients")
    d_f = compute_DF(F)
    prec = F.prec if prec is None else prec
    if prec > F.prec:
        raise PrecisionError(f"requested precision {prec} exceeds the series precision {F.prec}")
    return d_f, prec


def _certify(form: str, p: int, prec: int, d_f: int, tested) -> Certificate:
    violations = []
    witnesses = 0
    for key, c, q in tested:
        q_mod = mod_p(q, p)
        if not q_mod:
            continue
        witnesses += 1
        c_mod = c.numerator % p
        if c_mod:
            violations.append(Violation(index=key, coeff_mod_p=c_mod, disc_mod_p=q_mod))
    if violations:
        status = "fail"
    elif witnesses:
        status = "pass"
    else:
        status = "vacuous"
    logger.debug("%s mod %d at precision %d: %s (%d witnesses)", form, p, prec, status, witnesses)
    return Certificate(
        form=form,
        prime=p,
        prec=prec,
        d_f=d_f,
        status=status,
        checked_count=len(tested),
        witnesses_nonvacuous=witnesses,
        violations=violations,
    )


def check_singular(F: OrthoSeries, p: int, prec: int | None = None, form: str = "F") -> Certificate:
    """
    Certifies singularity of F modulo p up to a precision.

    Every support index with n + m <= prec is tested; an index violates when its
    coefficient and its Q are both nonzero modulo p. Indices with Q = 0 mod p are not
    witnesses, so a support lying entirely on them gives a vacuous certificate.

    Parameters:
        F: Series with integral coefficients.
        p: A prime not dividing D_F.
        prec: Precision to test up to; defaults to the precision of F.
        form: Name recorded on the certificate.

    Returns:
        Certificate with status pass, fail or vacuous.

    Raises:
        NonIntegralError: Some coefficient is not an integer.
        LevelDivisibilityError: p divides D_F.
        PrecisionError: prec exceeds the precision of F.
    """
    require_prime(p)
    d_f, prec = _validate(F, prec)
    if d_f % p == 0:
        raise LevelDivisibilityError(f"{p} divides D_F = {d_f} of {form}")
    return _certify(form, p, prec, d_f, _tested(F, prec))


def scan_primes(F: OrthoSeries, prec: int | None = None, max_prime: int = 100, form: str = "F") -> List[Certificate]:
    """Certificates for every prime up to ``max_prime`` that does not divide D_F."""
    d_f, prec = _validate(F, prec)
    tested = _tested(F, prec)
    out = []
    for p in sympy.primerange(2, max_prime + 1):
        p = int(p)
        if d_f % p == 0:
            logger.debug("skipping %d: divides D_F = %d", p, d_f)
            continue
        out.append(_certify(form, p, prec, d_f, tested))
    return out
