"""
One-variable modular forms and index-one Jacobi forms feeding the Igusa tower.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache, reduce
from typing import Literal

import sympy

from src.exceptions import JacobiFormError, PrecisionError, SeriesDivisionError, SeriesError
from src.services.exact import as_fraction, bernoulli, divisor_power_sum, to_sympy
from src.services.series import JacobiSeries, QSeries

logger = logging.getLogger(__name__)

JacobiKind = Literal["eisenstein", "cusp"]

SUPPORTED_JACOBI = {(4, "eisenstein"), (6, "eisenstein"), (10, "cusp"), (12, "cusp")}


def _euler_product(prec: int) -> QSeries:
    # prod (1 - q^m) by the pentagonal number theorem
    coeffs = {}
    j = 0
    while j * (3 * j - 1) // 2 <= prec:
        for s in {j, -j}:
            e = s * (3 * s - 1) // 2
            if e <= prec:
                coeffs[e] = -1 if s % 2 else 1
        j += 1
    return QSeries(coeffs, prec)


def eta_power(k: int, prec: int) -> QSeries:
    """
    eta^k = q^(k/24) prod (1 - q^m)^k.

    Parameters:
        k: Positive exponent.
        prec: Number of full q-powers beyond the leading q^(k/24).

    Returns:
        QSeries with scale 24 exact up to ``q^(k/24 + prec)``.
    """
    if k < 1 or prec < 1:
        raise SeriesError(f"eta_power needs k >= 1 and prec >= 1, got k={k}, prec={prec}")
    product = _euler_product(prec) ** k
    return QSeries({24 * e + k: c for e, c in product.coeffs.items()}, 24 * prec + k, 24)


def theta_odd(prec: int) -> JacobiSeries:
    """Sum over j of (-1)^j q^((2j+1)^2/8) zeta^((2j+1)/2), exact up to q^prec."""
    bound = 8 * prec
    coeffs = {}
    j = 0
    while (2 * j + 1) ** 2 <= bound:
        for s in (j, -j - 1):
            a = 2 * s + 1
            coeffs[(a * a, a)] = -1 if s % 2 else 1
        j += 1
    return JacobiSeries(coeffs, bound, 8, 2)


def theta_even(which: int, prec: int) -> JacobiSeries:
    """
    The even Jacobi theta series theta_2, theta_3 or theta_4, exact up to q^prec.

    theta_2 = sum q^((2n+1)^2/8) zeta^((2n+1)/2), theta_3 = sum q^(n^2/2) zeta^n and
    theta_4 = sum (-1)^n q^(n^2/2) zeta^n.
    """
    coeffs = {}
    if which == 2:
        bound = 8 * prec
        n = 0
        while (2 * n + 1) ** 2 <= bound:
            for a in (2 * n + 1, -2 * n - 1):
                coeffs[(a * a, a)] = 1
            n += 1
        return JacobiSeries(coeffs, bound, 8, 2)
    if which in (3, 4):
        bound = 2 * prec
        n = 0
        while n * n <= bound:
            for a in {n, -n}:
                coeffs[(a * a, a)] = -1 if which == 4 and a % 2 else 1
            n += 1
        return JacobiSeries(coeffs, bound, 2, 1)
    raise SeriesError(f"no even theta series with index {which}")


def theta_constant(which: int, prec: int) -> QSeries:
    return theta_even(which, prec).at_zeta_one()


def eisenstein_q(k: int, prec: int) -> QSeries:
    """
    Normalised Eisenstein series E_k = 1 - (2k/B_k) sum sigma_(k-1)(m) q^m.

    Raises:
        SeriesError: k is not an even weight >= 4.
    """
    if k < 4 or k % 2:
        raise SeriesError(f"Eisenstein series need an even weight >= 4, got {k}")
    factor = -2 * k / bernoulli(k)
    coeffs = {0: 1}
    coeffs.update({m: factor * divisor_power_sum(k - 1, m) for m in range(1, prec + 1)})
    return QSeries(coeffs, prec)


def _integral(series: JacobiSeries, prec: int, name: str) -> JacobiSeries:
    series = series.reduce_scales()
    if series.qscale != 1 or series.zscale != 1:
        raise SeriesDivisionError(f"{name} has fractional exponents")
    if series.prec < prec:
        raise PrecisionError(f"{name} reached precision {series.prec}, needed {prec}")
    series = series.truncate(prec)
    if any(c.denominator != 1 for c in series.coeffs.values()):
        raise SeriesDivisionError(f"{name} has non-integral coefficients")
    return series


@lru_cache(maxsize=8)
def weak_jacobi_generators(prec: int) -> tuple[JacobiSeries, JacobiSeries]:
    """
    The weak Jacobi forms phi_(-2,1) and phi_(0,1) as theta quotients.

    phi_(-2,1) = theta_odd^2 / eta^6 and
    phi_(0,1) = 4 * sum over i in (2, 3, 4) of (theta_i(z) / theta_i(0))^2.

    Parameters:
        prec: q-precision of the result, at least 2.

    Returns:
        The pair (phi_(-2,1), phi_(0,1)), integral and exact up to q^prec.
    """
    if prec < 2:
        raise SeriesError(f"weak Jacobi generators need prec >= 2, got {prec}")
    work = prec + 1
    th = theta_odd(work)
    phi_m2 = _integral((th * th) / eta_power(6, work), prec, "phi_-2,1")
    quotients = []
    for which in (2, 3, 4):
        t = theta_even(which, work)
        quotients.append((t * t) / (theta_constant(which, work) ** 2))
    phi_0 = _integral(reduce(lambda a, b: a + b, quotients) * 4, prec, "phi_0,1")
    logger.debug("weak Jacobi generators built to q^%d", prec)
    return phi_m2, phi_0


@dataclass(frozen=True)
class JacobiForm:
    """Index-one Jacobi form with integral q and zeta exponents."""

    weight: int
    series: JacobiSeries
    index: int = 1

    @property
    def prec(self) -> int:
        return self.series.prec

    def c(self, n: int, r: int) -> Fraction:
        if n > self.series.prec:
            raise PrecisionError(f"c({n}, {r}) lies beyond q-precision {self.series.prec}")
        return self.series[(n, r)]

    def check(self) -> None:
        """
        Validates holomorphy and the r -> -r symmetry.

        Raises:
            JacobiFormError: A stored coefficient violates either property.
        """
        sign = -1 if self.weight % 2 else 1
        for (n, r), c in self.series.coeffs.items():
            if 4 * self.index * n - r * r < 0:
                raise JacobiFormError(f"weight {self.weight}: c({n}, {r}) = {c} on a negative discriminant")
            if self.series[(n, -r)] != sign * c:
                raise JacobiFormError(f"weight {self.weight}: c({n}, {r}) breaks the r -> -r symmetry")


def _modular_monomials(weight: int, e4: QSeries, e6: QSeries) -> list[QSeries]:
    # E4^a E6^b with 4a + 6b = weight, ordered by b
    monomials = []
    for b in range(weight // 6 + 1):
        a, rest = divmod(weight - 6 * b, 4)
        if not rest:
            monomials.append(e4 ** a * e6 ** b)
    return monomials


@lru_cache(maxsize=16)
def jacobi_index1(weight: int, kind: JacobiKind, prec: int) -> JacobiForm:
    """
    Index-one Jacobi Eisenstein series or cusp form by exact linear algebra.

    Solves for the unique combination in phi_(0,1) M_w + phi_(-2,1) M_(w+2) with
    c(0, 1) = 0 and either c(0, 0) = 1 (Eisenstein) or c(0, 0) = 0, c(1, 1) = 1 (cusp).

    Parameters:
        weight: 4, 6, 10 or 12.
        kind: ``"eisenstein"`` for weights 4 and 6, ``"cusp"`` for 10 and 12.
        prec: q-precision.

    Raises:
        JacobiFormError: Unsupported input, or the constraint system is singular.
    """
    if (weight, kind) not in SUPPORTED_JACOBI:
        raise JacobiFormError(f"no index-one {kind} form of weight {weight} is supported")
    phi_m2, phi_0 = weak_jacobi_generators(max(prec, 2))
    e4, e6 = eisenstein_q(4, phi_0.prec), eisenstein_q(6, phi_0.prec)
    basis = [phi_0 * m for m in _modular_monomials(weight, e4, e6)]
    basis += [phi_m2 * m for m in _modular_monomials(weight + 2, e4, e6)]
    if kind == "eisenstein":
        constraints = [((0, 1), 0), ((0, 0), 1)]
    else:
        constraints = [((0, 1), 0), ((0, 0), 0), ((1, 1), 1)]
    matrix = sympy.Matrix([[to_sympy(b[key]) for b in basis] for key, _ in constraints])
    if matrix.shape != (len(basis), len(basis)) or matrix.det() == 0:
        raise JacobiFormError(f"constraint system for weight {weight} is singular")
    solution = matrix.LUsolve(sympy.Matrix([value for _, value in constraints]))
    series = reduce(lambda a, b: a + b, (b * as_fraction(x) for b, x in zip(basis, solution)))
    form = JacobiForm(weight, series.truncate(prec))
    form.check()
    logger.info("Jacobi %s form of weight %d solved to q^%d", kind, weight, form.prec)
    return form
