"""
The holomorphic Laplace operator and Rankin-Cohen brackets on orthogonal series.

The Laplace operator multiplies the coefficient at (N, R, M) by R^2 - 4NM, that is
-16 Q(lambda). The factor 16 and the sign rescale every bracket term alike.
"""
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from operator import mul
from typing import Sequence

from src.exceptions import SeriesError
from src.schemas import BracketCoefficients
from src.services.series import OrthoSeries, multiply

logger = logging.getLogger(__name__)


def laplace(F: OrthoSeries) -> OrthoSeries:
    return OrthoSeries(
        {(N, R, M): c * (R * R - 4 * N * M) for (N, R, M), c in F.coeffs.items()}, F.prec, F.min_order
    )


def bracket_coefficients(n: int, k: int, l: int) -> BracketCoefficients:
    """
    Parameters:
        n: Rank of the positive part of the lattice, at least 3.
        k: Weight of F.
        l: Weight of G.

    Returns:
        The exact bracket scalars (A, B, C).
    """
    if n < 3:
        raise SeriesError(f"brackets on O(n, 2) need n >= 3, got {n}")
    h = Fraction(n, 2) - 1
    return BracketCoefficients(n=n, k=k, l=l, A=h - k, B=h - l, C=h - k - l)


def bracket(F: OrthoSeries, k: int, G: OrthoSeries, l: int, n: int) -> OrthoSeries:
    """
    [F, G] = AB Delta(FG) - BC Delta(F) G - AC F Delta(G).

    The precision is the minimum over the three terms.
    """
    co = bracket_coefficients(n, k, l)
    return (
        laplace(multiply(F, G)) * (co.A * co.B)
        - multiply(laplace(F), G) * (co.B * co.C)
        - multiply(F, laplace(G)) * (co.A * co.C)
    )


def nary_bracket(forms: Sequence[tuple[OrthoSeries, int]], n: int) -> OrthoSeries:
    """
    The many-form bracket

    prod(a_i) Delta(prod F_i) - (n/2 - 1 - sum k_i) sum_j F_j prod_{i != j}(a_i) Delta(prod_{i != j} F_i)

    with a_i = n/2 - 1 - k_i.
    """
    if len(forms) < 2:
        raise SeriesError("the many-form bracket needs at least two forms")
    h = Fraction(n, 2) - 1
    scalars = [h - k for _, k in forms]
    series = [F for F, _ in forms]
    total = laplace(reduce(multiply, series)) * reduce(mul, scalars, Fraction(1))
    c = h - sum(k for _, k in forms)
    for j, Fj in enumerate(series):
        others = series[:j] + series[j + 1:]
        weight = reduce(mul, scalars[:j] + scalars[j + 1:], Fraction(1))
        total = total - multiply(Fj, laplace(reduce(multiply, others))) * (c * weight)
    return total


@dataclass(frozen=True)
class PrintingComparison:
    """Both printed bracket formulas evaluated on one pair of forms."""

    two_form: OrthoSeries
    many_form: OrthoSeries
    difference_identity_holds: bool

    @property
    def two_form_vanishes(self) -> bool:
        return self.two_form.is_zero

    @property
    def many_form_vanishes(self) -> bool:
        return self.many_form.is_zero


def compare_printings(F: OrthoSeries, k: int, G: OrthoSeries, l: int, n: int) -> PrintingComparison:
    """
    Evaluates the two-form bracket and the many-form bracket at two forms.

    Also checks the exact identity
    many-form - two-form = C (B - A) (Delta(F) G - F Delta(G)).
    """
    two = bracket(F, k, G, l, n)
    many = nary_bracket([(F, k), (G, l)], n)
    co = bracket_coefficients(n, k, l)
    expected = (multiply(laplace(F), G) - multiply(F, laplace(G))) * (co.C * (co.B - co.A))
    holds = (many - two).agrees_with(expected)
    logger.info(
        "bracket printings on weights (%d, %d), n=%d: two-form %s, many-form %s",
        k,
        l,
        n,
        "vanishes" if two.is_zero else "does not vanish",
        "vanishes" if many.is_zero else "does not vanish",
    )
    return PrintingComparison(two, many, holds)
