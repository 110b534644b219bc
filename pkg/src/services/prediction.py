"""
Prime predictions from the bracket calculus.

For weights k, l on a lattice of signature (n, 2) the bracket scalars
A = n/2 - 1 - k, B = n/2 - 1 - l and C = n/2 - 1 - k - l decide which of F, G and FG
are forced to be singular modulo a prime:

* strict mode emits F when p | num(A), p does not divide l or num(B); G symmetrically;
  FG when p | num(C) and p divides neither k nor l;
* valuation mode emits a target with exponent s = v_p(own scalar) - max(v_p(others)) >= 1;
* identity mode handles brackets equal to a nonzero multiple c of a product form.
"""
import logging
import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, List, Sequence

from src.exceptions import PredictionError
from src.repository.catalog import BRACKET_ASSUMPTIONS, IDENTITY_ASSUMPTIONS, root_system_data
from src.schemas import (
    BracketCoefficients,
    CatalogEntry,
    CatalogRunReport,
    EntryRunReport,
    Pairing,
    PredictedClaim,
    PredictionReport,
    PredictionResult,
    RootSystemData,
)
from src.services.exact import Scalar, as_fraction, prime_divisors, valuation
from src.services.laplace import bracket_coefficients

logger = logging.getLogger(__name__)

SLOTS = ("F", "G", "FG")


def _require_nondegenerate(co: BracketCoefficients) -> None:
    if 0 in (co.A, co.B, co.C):
        raise PredictionError(
            f"degenerate bracket for n={co.n}, k={co.k}, l={co.l}: A={co.A}, B={co.B}, C={co.C}"
        )


def _v(x: Fraction, p: int) -> float:
    return math.inf if x == 0 else valuation(x, p)


@lru_cache(maxsize=65536)
def _valuation(x: Fraction, p: int) -> int:
    return valuation(x, p)


def _candidates(*values: Fraction) -> list[int]:
    primes = set()
    for x in values:
        primes.update(prime_divisors(x.numerator))
        primes.update(prime_divisors(x.denominator))
    return sorted(primes)


def _pair_exponents(co: BracketCoefficients, mode: str) -> list[tuple[str, int, int]]:
    """(slot, prime, exponent) triples for one pairing."""
    A, B, C = co.A, co.B, co.C
    out = []
    for p in _candidates(A, B, C):
        if mode == "strict":
            if A.numerator % p == 0 and co.l % p and B.numerator % p:
                out.append(("F", p, 1))
            if B.numerator % p == 0 and co.k % p and A.numerator % p:
                out.append(("G", p, 1))
            if C.numerator % p == 0 and co.k % p and co.l % p:
                out.append(("FG", p, 1))
        elif mode == "valuation":
            vA, vB, vC = _valuation(A, p), _valuation(B, p), _valuation(C, p)
            for slot, s in (("F", vA - max(vB, vC)), ("G", vB - max(vA, vC)), ("FG", vC - max(vA, vB))):
                if s >= 1:
                    out.append((slot, p, s))
        else:
            raise PredictionError(f"unknown prediction mode {mode!r}")
    return out


def _target(slot: str, f: Sequence[str], g: Sequence[str]) -> list[str]:
    return {"F": list(f), "G": list(g), "FG": [*f, *g]}[slot]


def predict_pair(
    n: int,
    k: int,
    l: int,
    mode: str = "strict",
    f: Sequence[str] = ("F",),
    g: Sequence[str] = ("G",),
) -> PredictionReport:
    """
    Predictions for one pair of forms.

    Parameters:
        n: Rank of the positive part, at least 3.
        k: Weight of F.
        l: Weight of G.
        mode: ``"strict"`` or ``"valuation"``.
        f: Names whose product is F.
        g: Names whose product is G.

    Returns:
        PredictionReport with one result per (target, prime).

    Raises:
        PredictionError: One of A, B, C vanishes or the mode is unknown.
    """
    co = bracket_coefficients(n, k, l)
    _require_nondegenerate(co)
    pairing = Pairing(f=list(f), g=list(g), k=k, l=l)
    results = [
        PredictionResult(target=_target(slot, f, g), prime=p, exponent=s, pairing=pairing)
        for slot, p, s in _pair_exponents(co, mode)
    ]
    return PredictionReport(
        n=n, weights=[k, l], names=[*f, *g], mode=mode, results=results, assumptions=BRACKET_ASSUMPTIONS
    )


def _subsets(indices: Sequence[int]) -> Iterable[tuple[int, ...]]:
    for size in range(1, len(indices) + 1):
        yield from combinations(indices, size)


def predict_family(
    n: int, weights: Sequence[int], mode: str = "valuation", names: Sequence[str] | None = None
) -> PredictionReport:
    """
    Predictions for every product of a family of forms against every disjoint partner.

    For all disjoint nonempty index sets S and T the product over S is paired with the
    product over T. Per (target, prime) the largest exponent is kept together with the
    first pairing that reached it. Degenerate pairings are skipped.
    """
    if len(weights) < 2:
        raise PredictionError("a family needs at least two forms")
    names = list(names) if names else [f"F{i + 1}" for i in range(len(weights))]
    if len(names) != len(weights):
        raise PredictionError(f"{len(names)} names for {len(weights)} weights")
    everything = tuple(range(len(weights)))
    best: dict[tuple[tuple[int, ...], int], PredictionResult] = {}
    for S in _subsets(everything):
        rest = tuple(i for i in everything if i not in S)
        for T in _subsets(rest):
            k = sum(weights[i] for i in S)
            l = sum(weights[i] for i in T)
            co = bracket_coefficients(n, k, l)
            if 0 in (co.A, co.B, co.C):
                logger.debug("skipping degenerate pairing %s / %s", S, T)
                continue
            pairing = Pairing(f=[names[i] for i in S], g=[names[i] for i in T], k=k, l=l)
            for slot, p, s in _pair_exponents(co, mode):
                indices = {"F": S, "G": T, "FG": tuple(sorted(S + T))}[slot]
                key = (indices, p)
                if key not in best or best[key].exponent < s:
                    best[key] = PredictionResult(
                        target=[names[i] for i in indices], prime=p, exponent=s, pairing=pairing
                    )
    results = [best[key] for key in sorted(best, key=lambda key: (key[1], len(key[0]), key[0]))]
    return PredictionReport(
        n=n, weights=list(weights), names=names, mode=mode, results=results, assumptions=BRACKET_ASSUMPTIONS
    )


def identity_exponents(co: BracketCoefficients, p: int, rhs: Scalar | None) -> dict[str, float]:
    """
    Exponents forced by AB Delta(FG) - BC Delta(F) G - AC F Delta(G) = c (product form).

    ``rhs=None`` stands for a vanishing right-hand side (v_p(c) = infinity).
    """
    vc = math.inf if rhs is None else _v(as_fraction(rhs), p)
    vAB, vBC, vAC = _v(co.A * co.B, p), _v(co.B * co.C, p), _v(co.A * co.C, p)
    return {
        "F": min(vAB, vAC, vc) - vBC,
        "G": min(vAB, vBC, vc) - vAC,
        "FG": min(vBC, vAC, vc) - vAB,
    }


def predict_identity(
    n: int,
    k: int,
    l: int,
    rhs: Scalar,
    f: Sequence[str] = ("F",),
    g: Sequence[str] = ("G",),
) -> PredictionReport:
    """
    Predictions from a bracket identity with a nonzero right-hand side.

    Parameters:
        n: Rank of the positive part.
        k: Weight of F.
        l: Weight of G.
        rhs: The nonzero constant c.

    Raises:
        PredictionError: c = 0, or one of A, B, C vanishes.
    """
    rhs = as_fraction(rhs)
    if rhs == 0:
        raise PredictionError("a zero right-hand side is the plain bracket; use predict_pair")
    co = bracket_coefficients(n, k, l)
    _require_nondegenerate(co)
    pairing = Pairing(f=list(f), g=list(g), k=k, l=l)
    results = []
    for p in _candidates(co.A, co.B, co.C, rhs):
        for slot, s in identity_exponents(co, p, rhs).items():
            if s >= 1:
                results.append(PredictionResult(target=_target(slot, f, g), prime=p, exponent=int(s), pairing=pairing))
    return PredictionReport(
        n=n, weights=[k, l], names=[*f, *g], mode="identity", results=results, assumptions=IDENTITY_ASSUMPTIONS
    )


def eisenstein_constant(root: RootSystemData | str, k: int, l: int) -> Fraction:
    """
    c = l (d/2 - l) [h(h+1) - Q(rho)] for the pairing of a reflective form with an
    Eisenstein series of weight l on 2U + root lattice.
    """
    if isinstance(root, str):
        root = root_system_data(root)
    return l * (Fraction(root.d, 2) - l) * (root.h * (root.h + 1) - root.weyl_norm)


def run_entry(entry: CatalogEntry, mode: str = "valuation") -> EntryRunReport:
    if entry.is_identity:
        (f, k), (g, l) = ((spec.name, spec.weight) for spec in entry.forms)
        rhs = entry.rhs_constant
        if rhs is None:
            rhs = eisenstein_constant(entry.root_system, k, l)
        report = predict_identity(entry.n, k, l, rhs, (f,), (g,))
    else:
        report = predict_family(entry.n, entry.weights, mode, entry.names)
    predicted = {r.key: r for r in report.results}
    claimed = {c.key for c in entry.claims}
    verified, missed, out_of_mode = [], [], []
    for claim in entry.claims:
        if claim.key in predicted:
            verified.append(claim)
        elif report.mode == "strict" and claim.source == "valuation":
            out_of_mode.append(claim)
        else:
            missed.append(claim)
    extras = [
        PredictedClaim(product=r.target, prime=r.prime, exponent=r.exponent)
        for key, r in predicted.items()
        if key not in claimed
    ]
    mode_exact_ok = None
    if entry.mode_exact and report.mode == "valuation":
        mode_exact_ok = not missed and not extras
    for claim in missed:
        logger.warning("%s: claim %s mod %d not predicted", entry.lattice, claim.product, claim.prime)
    return EntryRunReport(
        label=entry.lattice,
        n=entry.n,
        mode=report.mode,
        claims=len(entry.claims),
        verified=verified,
        missed=missed,
        out_of_mode=out_of_mode,
        extras=extras,
        mode_exact=entry.mode_exact,
        mode_exact_ok=mode_exact_ok,
    )


def run_catalog(catalog: List[CatalogEntry], mode: str = "valuation") -> CatalogRunReport:
    """
    Runs every catalog entry and checks that each claimed congruence is predicted.

    Entries with an RHS constant or a root system go through the identity calculus,
    all others through :func:`predict_family` in the requested mode.
    """
    entries = [run_entry(entry, mode) for entry in catalog]
    report = CatalogRunReport(
        mode=mode,
        entries=entries,
        claims_total=sum(e.claims for e in entries),
        verified_total=sum(len(e.verified) for e in entries),
        missed_total=sum(len(e.missed) for e in entries),
        out_of_mode_total=sum(len(e.out_of_mode) for e in entries),
    )
    logger.info(
        "catalog run (%s): %d/%d claims verified, %d missed",
        mode,
        report.verified_total,
        report.claims_total,
        report.missed_total,
    )
    return report


def strict_valuation_counterexamples(max_n: int = 20, max_weight: int = 300) -> list[tuple[int, int, int, str, int]]:
    """
    Scans n <= max_n and k, l <= max_weight for strict predictions that valuation
    mode does not make, running both modes of the engine on every nondegenerate triple.

    Returns:
        The offending (n, k, l, slot, prime) tuples; empty when strict mode is sound.
    """
    bad = []
    for n in range(3, max_n + 1):
        for k in range(max_weight + 1):
            for l in range(max_weight + 1):
                co = bracket_coefficients(n, k, l)
                if 0 in (co.A, co.B, co.C):
                    continue
                strict = _pair_exponents(co, "strict")
                if not strict:
                    continue
                valuation_hits = {(slot, p) for slot, p, _ in _pair_exponents(co, "valuation")}
                bad.extend((n, k, l, slot, p) for slot, p, _ in strict if (slot, p) not in valuation_hits)
    if bad:
        logger.warning("%d strict predictions without valuation support", len(bad))
    return bad
