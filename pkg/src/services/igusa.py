"""
Siegel modular forms of degree two as orthogonal series.

The generators E4, E6, chi10 and chi12 are Maass lifts of index-one Jacobi forms.
Psi5 is the square root of chi10, Phi35 the content-normalised Jacobian determinant
of the generators, and Phi30 the exact quotient Phi35 / Psi5.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd, isqrt
from typing import Literal, Sequence

from src.exceptions import PrecisionError, SeriesDivisionError, SeriesError
from src.services.classical import JacobiForm, jacobi_index1
from src.services.exact import Scalar, bernoulli, divisors
from src.services.series import OrthoSeries, content_normalize, derivative, divide_exact, sqrt

logger = logging.getLogger(__name__)

GENERATORS = (
    ("E4", 4, "eisenstein"),
    ("E6", 6, "eisenstein"),
    ("chi10", 10, "cusp"),
    ("chi12", 12, "cusp"),
)


@dataclass(frozen=True)
class SiegelForm:
    name: str
    weight: int
    series: OrthoSeries

    @property
    def prec(self) -> int:
        return self.series.prec

    @property
    def parity(self) -> Literal["integral", "half-integral"]:
        return "half-integral" if self.series.parity == (1, 1, 1) else "integral"

    def coefficient(self, n: Scalar, r: Scalar, m: Scalar) -> Fraction:
        return self.series.coefficient(n, r, m)

    def check_symmetry(self) -> None:
        """
        Checks a(N, -R, M) = (-1)^weight a(N, R, M) on every stored index.

        Raises:
            SeriesError: Some coefficient breaks the symmetry.
        """
        sign = -1 if self.weight % 2 else 1
        for key, c in self.series.coeffs.items():
            N, R, M = key
            if self.series[(N, -R, M)] != sign * c:
                raise SeriesError(f"{self.name}: coefficient at {key} breaks the r -> -r symmetry")


@dataclass(frozen=True)
class IgusaTower:
    prec: int
    forms: dict[str, SiegelForm]
    content_divisor: Fraction


def maass_lift(phi: JacobiForm, prec: int) -> OrthoSeries:
    """
    Maass lift of an index-one Jacobi form.

    a(n, r, m) = sum over d | gcd(n, r, m) of d^(k-1) c(nm/d^2, r/d) for (n, r, m) != 0
    and a(0, 0, 0) = -B_k / (2k) c(0, 0).

    Parameters:
        phi: Holomorphic Jacobi form of index one and weight k.
        prec: Siegel precision; phi must be known up to q^(prec^2 // 4).

    Returns:
        The lifted series, exact for n + m <= prec.
    """
    need = prec * prec // 4
    if phi.prec < need:
        raise PrecisionError(f"Maass lift to precision {prec} needs Jacobi q-precision {need}, got {phi.prec}")
    k = phi.weight
    coeffs: dict[tuple[int, int, int], Fraction] = {}
    if phi.c(0, 0):
        coeffs[(0, 0, 0)] = -bernoulli(k) / (2 * k) * phi.c(0, 0)
    for n in range(prec + 1):
        for m in range(prec + 1 - n):
            if n == m == 0:
                continue
            rmax = isqrt(4 * n * m)
            for r in range(-rmax, rmax + 1):
                g = gcd(gcd(n, r), m)
                total = sum(d ** (k - 1) * phi.c(n * m // (d * d), r // d) for d in divisors(g))
                if total:
                    coeffs[(2 * n, 2 * r, 2 * m)] = total
    return OrthoSeries(coeffs, prec)


@lru_cache(maxsize=4)
def igusa_generators(prec: int) -> tuple[SiegelForm, SiegelForm, SiegelForm, SiegelForm]:
    """
    The generators E4, E6, chi10 and chi12 to the given precision.

    E4 and E6 are lifts of the Jacobi Eisenstein series rescaled by -2k/B_k so that their
    constant term is 1; chi10 and chi12 are lifts of the cusp forms with c(1, 1) = 1.
    """
    if prec < 4:
        raise PrecisionError(f"Igusa generators need prec >= 4, got {prec}")
    q_prec = prec * prec // 4
    forms = []
    for name, weight, kind in GENERATORS:
        series = maass_lift(jacobi_index1(weight, kind, q_prec), prec)
        if kind == "eisenstein":
            series = series * (-2 * weight / bernoulli(weight))
        forms.append(SiegelForm(name, weight, series))
        logger.info("%s lifted to precision %d: %d terms", name, prec, len(series))
    return tuple(forms)


def jacobian_determinant(forms: Sequence[SiegelForm]) -> OrthoSeries:
    """
    The 4x4 determinant with rows k_i F_i, D_tau F_i, D_z F_i, D_omega F_i.

    Expanded along the first two rows as a sum of products of complementary 2x2 minors.
    """
    if len(forms) != 4:
        raise SeriesError(f"the Jacobian determinant needs four forms, got {len(forms)}")
    rows = [
        [f.series * f.weight for f in forms],
        [derivative(f.series, "tau") for f in forms],
        [derivative(f.series, "z") for f in forms],
        [derivative(f.series, "omega") for f in forms],
    ]
    total = None
    for i, j in combinations(range(4), 2):
        k, l = (c for c in range(4) if c not in (i, j))
        top = rows[0][i] * rows[1][j] - rows[0][j] * rows[1][i]
        bottom = rows[2][k] * rows[3][l] - rows[2][l] * rows[3][k]
        term = top * bottom
        if (1 + i + j) % 2:
            term = -term
        total = term if total is None else total + term
    return total


@lru_cache(maxsize=4)
def _normalized_jacobian(prec: int) -> tuple[OrthoSeries, Fraction]:
    det = jacobian_determinant(igusa_generators(prec))
    if det.is_zero:
        raise SeriesError(f"Jacobian determinant vanishes to precision {det.prec}")
    series, content = content_normalize(det)
    logger.info("Jacobian determinant at precision %d: %d terms, content %s", det.prec, len(series), content)
    return series, content


def _require(prec: int, minimum: int, name: str) -> None:
    if prec < minimum:
        raise PrecisionError(f"{name} needs prec >= {minimum}, got {prec}")


def _jacobian_prec(prec: int) -> int:
    # the content of the determinant is only settled from precision 6 on
    return max(prec + 1, 6)


@lru_cache(maxsize=4)
def psi5(prec: int) -> SiegelForm:
    """Square root of chi10, with leading term q^(1/2) zeta^(1/2) xi^(1/2)."""
    _require(prec, 4, "Psi5")
    chi10 = igusa_generators(prec + 1)[2]
    series = sqrt(chi10.series)
    if series.prec < prec:
        raise PrecisionError(f"Psi5 reached precision {series.prec}, needed {prec}")
    return SiegelForm("Psi5", 5, series.truncate(prec))


def phi35(prec: int) -> SiegelForm:
    _require(prec, 4, "Phi35")
    series, _ = _normalized_jacobian(_jacobian_prec(prec))
    return SiegelForm("Phi35", 35, series.truncate(prec))


@lru_cache(maxsize=4)
def phi30(prec: int) -> SiegelForm:
    """
    Phi35 / Psi5.

    Raises:
        SeriesDivisionError: The quotient is inexact or non-integral.
    """
    _require(prec, 4, "Phi30")
    dividend, _ = _normalized_jacobian(_jacobian_prec(prec))
    quotient = divide_exact(dividend, psi5(prec).series)
    if quotient.prec < prec:
        raise PrecisionError(f"Phi30 reached precision {quotient.prec}, needed {prec}")
    quotient = quotient.truncate(prec)
    if not quotient.is_integral:
        raise SeriesDivisionError("Phi35 / Psi5 has non-integral coefficients")
    return SiegelForm("Phi30", 30, quotient)


def build_tower(prec: int) -> IgusaTower:
    """
    Builds every form of the tower at one precision.

    Parameters:
        prec: Precision P >= 4 (indices with n + m <= P).

    Returns:
        IgusaTower keyed by ``e4, e6, chi10, chi12, psi5, phi35, phi30``.
    """
    _require(prec, 4, "the Igusa tower")
    e4, e6, chi10, chi12 = igusa_generators(prec)
    forms = {
        "e4": e4,
        "e6": e6,
        "chi10": chi10,
        "chi12": chi12,
        "psi5": psi5(prec),
        "phi35": phi35(prec),
        "phi30": phi30(prec),
    }
    for form in forms.values():
        form.check_symmetry()
    _, content = _normalized_jacobian(_jacobian_prec(prec))
    logger.info("Igusa tower built at precision %d", prec)
    return IgusaTower(prec, forms, content)
