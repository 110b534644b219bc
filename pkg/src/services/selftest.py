"""
The acceptance scoreboard run by ``siegel selftest``.

Fourier-level criteria read the tower through the form cache, so a corrupted cache
shows up as failed criteria rather than a silent rebuild.
"""
import logging
import random
from fractions import Fraction
from typing import Callable

from src.exceptions import LevelDivisibilityError, SiegelError
from src.repository.catalog import builtin_catalog
from src.repository.forms import FormCache
from src.schemas import CriterionResult, SelftestReport
from src.services.classical import eisenstein_q
from src.services.congruence import check_singular, scan_primes
from src.services.exact import rational_content
from src.services.laplace import bracket, bracket_coefficients
from src.services.prediction import (
    eisenstein_constant,
    predict_identity,
    run_catalog,
    strict_valuation_counterexamples,
)
from src.services.series import OrthoSeries, divide_exact, multiply, restrict_diagonal, sqrt, swap

logger = logging.getLogger(__name__)

SEED = 20240229
PROPERTY_CASES = 1000


def random_series(
    rng: random.Random,
    prec: int,
    parity: tuple[int, int, int] = (0, 0, 0),
    terms: int = 6,
    min_order: int = 0,
) -> OrthoSeries:
    """A sparse series of one parity class with small integer or half-integer coefficients."""
    a, b, c = parity
    coeffs = {}
    bound = 2 * prec
    while len(coeffs) < terms:
        N = a + 2 * rng.randrange(0, prec + 1)
        M = c + 2 * rng.randrange(0, prec + 1)
        if N + M > bound or N + M < min_order:
            continue
        R = b + 2 * rng.randrange(-2, 3)
        value = Fraction(rng.choice([-3, -2, -1, 1, 2, 3]), rng.choice([1, 1, 1, 2]))
        coeffs[(N, R, M)] = value
    return OrthoSeries(coeffs, prec)


def _kkn(forms: Callable[[str], OrthoSeries], prec: int) -> tuple[bool, str]:
    cert = check_singular(forms("phi35"), 23, prec, "Phi35")
    enough = cert.witnesses_nonvacuous >= 100 or prec < 8
    return cert.passed and enough, f"status {cert.status}, {cert.witnesses_nonvacuous} witnesses"


def _first_family(forms: Callable[[str], OrthoSeries], prec: int) -> tuple[bool, str]:
    psi = check_singular(forms("psi5"), 3, prec, "Psi5")
    phi = check_singular(forms("phi30"), 59, prec, "Phi30")
    return psi.passed and phi.passed, f"Psi5 mod 3: {psi.status}, Phi30 mod 59: {phi.status}"


def _bracket_vanishes(forms: Callable[[str], OrthoSeries], prec: int) -> tuple[bool, str]:
    result = bracket(forms("psi5"), 5, forms("phi30"), 30, 3)
    return result.is_zero, f"{len(result)} nonzero terms up to precision {result.prec}"


def _construction(forms: Callable[[str], OrthoSeries], prec: int) -> tuple[bool, str]:
    psi, phi30, phi35 = forms("psi5"), forms("phi30"), forms("phi35")
    e4 = eisenstein_q(4, prec)
    diagonal = restrict_diagonal(forms("e4"))
    e4_factors = all(
        diagonal.get((2 * n, 2 * m), 0) == e4[n] * e4[m] for n in range(prec + 1) for m in range(prec + 1 - n)
    )
    checks = {
        "Psi5^2 = chi10": multiply(psi, psi).agrees_with(forms("chi10")),
        "Phi30 Psi5 = Phi35": multiply(phi30, psi).agrees_with(phi35),
        "swap(Phi35) = -Phi35": swap(phi35) == -phi35,
        "chi10 vanishes on the diagonal": not restrict_diagonal(forms("chi10")),
        "Phi35 vanishes on the diagonal": not restrict_diagonal(phi35),
        "E4 restricts to E4 x E4": e4_factors,
        "Phi30, Phi35 primitive": all(
            F.is_integral and rational_content(F.coeffs.values()) == 1 for F in (phi30, phi35)
        ),
    }
    failed = [name for name, ok in checks.items() if not ok]
    return not failed, "failed: " + ", ".join(failed) if failed else f"{len(checks)} checks"


def _coefficients(*_) -> tuple[bool, str]:
    first = bracket_coefficients(3, 5, 30)
    d11 = bracket_coefficients(13, 142, 1)
    ok = (
        (first.A, first.B, first.C) == (Fraction(-9, 2), Fraction(-59, 2), Fraction(-69, 2))
        and (d11.A * d11.B, d11.B * d11.C, d11.A * d11.C)
        == (Fraction(-273 * 9, 4), Fraction(-275 * 9, 4), Fraction(275 * 273, 4))
        and eisenstein_constant("E6", 120, 4) == -468
    )
    return ok, f"(A, B, C)(3, 5, 30) = ({first.A}, {first.B}, {first.C})"


def _catalog(*_) -> tuple[bool, str]:
    report = run_catalog(builtin_catalog(), "valuation")
    ok = report.ok and report.claims_total >= 50
    return ok, f"{report.missed_total} missed / {report.verified_total} of {report.claims_total} claims verified"


def _identity(*_) -> tuple[bool, str]:
    report = predict_identity(13, 142, 1, 1950, ("Phi142",), ("Psi1",))
    s13 = report.exponent(("Phi142",), 13)
    s5 = report.exponent(("Phi142", "Psi1"), 5)
    return s13 == 1 and s5 >= 1, f"Phi142 mod 13^{s13}, Psi1Phi142 mod 5^{s5}"


def _properties(*_) -> tuple[bool, str]:
    rng = random.Random(SEED)
    failures = 0
    cases = PROPERTY_CASES
    for _ in range(cases):
        prec = rng.randrange(2, 5)
        a, b, c = (random_series(rng, prec, terms=rng.randrange(1, 5)) for _ in range(3))
        ok = (
            multiply(multiply(a, b), c).agrees_with(multiply(a, multiply(b, c)))
            and multiply(a, b + c).agrees_with(multiply(a, b) + multiply(a, c))
            and divide_exact(multiply(a, b), b).agrees_with(a)
        )
        lead = a.leading_term()[1]
        root = sqrt(multiply(a, a))
        ok = ok and root.agrees_with(a if lead > 0 else -a)
        failures += not ok
    bad = strict_valuation_counterexamples()
    return not failures and not bad, f"{failures}/{cases} series cases failed, {len(bad)} strict counterexamples"


def _negative_controls(forms: Callable[[str], OrthoSeries], prec: int) -> tuple[bool, str]:
    failing = [c for c in scan_primes(forms("phi35"), prec, 100, "Phi35") if c.status == "fail" and c.violations]
    try:
        check_singular(forms("psi5"), 2, prec, "Psi5")
        refused = False
    except LevelDivisibilityError:
        refused = True
    detail = f"Phi35 fails mod {failing[0].prime}" if failing else "no failing prime for Phi35"
    return bool(failing) and refused, f"{detail}; Psi5 mod 2 refused: {refused}"


CRITERIA = (
    (1, "Phi35 singular mod 23", _kkn),
    (2, "Psi5 mod 3 and Phi30 mod 59", _first_family),
    (3, "bracket [Psi5, Phi30] vanishes", _bracket_vanishes),
    (4, "construction self-checks", _construction),
    (5, "bracket and Eisenstein constants", _coefficients),
    (6, "catalog regression", _catalog),
    (7, "D11 identity", _identity),
    (8, "property suites", _properties),
    (9, "negative controls", _negative_controls),
)


def run_selftest(prec: int, cache: FormCache) -> SelftestReport:
    """
    Evaluates every acceptance criterion.

    Parameters:
        prec: Precision for the Fourier-level criteria.
        cache: Form cache the tower is read from (and built into when missing).

    Returns:
        SelftestReport with one line per criterion.
    """

    def forms(key: str) -> OrthoSeries:
        return cache.get(key, prec).series

    results = []
    for number, name, criterion in CRITERIA:
        try:
            passed, detail = criterion(forms, prec)
        except SiegelError as err:
            logger.error("criterion %d raised %s", number, err)
            passed, detail = False, f"{type(err).__name__}: {err}"
        results.append(CriterionResult(number=number, name=name, passed=passed, detail=detail))
        logger.info("criterion %d (%s): %s", number, name, "pass" if passed else "FAIL")
    return SelftestReport(prec=prec, criteria=results)
