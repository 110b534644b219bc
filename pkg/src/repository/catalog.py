"""
Lattice labels, root-system constants and the catalog of congruence claims.

Lattices are symbolic: a label such as ``2U+A1(2)`` and the rank n of its positive
part. The catalog records, per reflective family, the forms with their weights and
every claimed (product, prime) congruence tagged by the weakest mode proving it.
"""
import json
import logging
import re
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import List

from pydantic import TypeAdapter, ValidationError

from src.conf.config import settings
from src.exceptions import CatalogError, LabelError
from src.schemas import CatalogEntry, RootSystemData

logger = logging.getLogger(__name__)

_TERM = re.compile(r"^(\d*)(U|A|D|E)_?(\d*)('?)(?:\((\d+)\))?$")

_COXETER = {"E6": (6, 12), "E7": (7, 18), "E8": (8, 30)}

_GREEK = (("Psi", "Ψ"), ("Phi", "Φ"), ("chi", "χ"))

_entries = TypeAdapter(List[CatalogEntry])


def signature_n(label: str) -> int:
    """
    The rank n of the positive part of a lattice of signature (n, 2).

    Supported summands are U, U(m), A_k, A_k(m), D_k, D_k'(m), E_k and E_k'(m), each
    with an optional multiplicity prefix, joined by ``+``.

    Parameters:
        label: Lattice label such as ``"2U(2)+A2"``.

    Returns:
        Total rank minus two.

    Raises:
        LabelError: The label is not in the grammar or n < 3.
    """
    total = 0
    for term in label.replace(" ", "").replace("⊕", "+").split("+"):
        match = _TERM.match(term)
        if not match:
            raise LabelError(f"cannot parse lattice summand {term!r} in {label!r}")
        count, kind, rank, prime, scale = match.groups()
        count = int(count) if count else 1
        if count < 1 or (scale is not None and int(scale) < 1):
            raise LabelError(f"bad multiplicity or scaling in {term!r}")
        if kind == "U":
            if rank or prime:
                raise LabelError(f"U takes no rank or prime in {term!r}")
            size = 2
        else:
            if not rank:
                raise LabelError(f"root lattice {kind} needs a rank in {term!r}")
            size = int(rank)
            if prime and kind == "A":
                raise LabelError(f"A_k has no dual-scaled variant in {term!r}")
            if (kind == "A" and size < 1) or (kind == "D" and size < 4) or (kind == "E" and size not in (6, 7, 8)):
                raise LabelError(f"no root lattice {kind}{size}")
        total += count * size
    n = total - 2
    if n < 3:
        raise LabelError(f"{label!r} has signature ({n}, 2); n >= 3 is required")
    return n


def root_system_data(name: str) -> RootSystemData:
    """
    Rank, Coxeter number and Weyl vector norm Q(rho) = h(h+1)d/24 of E6, E7 or E8.

    Raises:
        LabelError: Any other name.
    """
    try:
        d, h = _COXETER[name]
    except KeyError:
        raise LabelError(f"no root system data for {name!r}; expected E6, E7 or E8") from None
    return RootSystemData(name=name, d=d, h=h, weyl_norm=Fraction(h * (h + 1) * d, 24))


def display_name(name: str) -> str:
    for ascii_name, greek in _GREEK:
        if name.startswith(ascii_name):
            return greek + name[len(ascii_name):]
    return name


def product_label(product) -> str:
    return "".join(display_name(name) for name in product)


_REFLECTIVE = "reflective Borcherds products with simple pairwise disjoint zeros"
_NO_WEIGHT_TWO = "no nonzero modular forms of weight two"
_PARTNER = "partner form not congruent to 0 mod p"
_LEVEL = "p does not divide D_F"
BRACKET_ASSUMPTIONS = [_REFLECTIVE, _NO_WEIGHT_TWO, _PARTNER, _LEVEL]
IDENTITY_ASSUMPTIONS = [_REFLECTIVE, "bracket equals a nonzero multiple c of a product form", _LEVEL]


def _c(product: str, prime: int, source: str = "strict") -> dict:
    return {"product": re.findall(r"[A-Z][a-z]*\d+", product), "prime": prime, "source": source}


def _forms(*pairs) -> list[dict]:
    return [{"name": name, "weight": weight} for name, weight in pairs]


_BUILTIN = [
    {
        "lattice": "2U+A1",
        "n": 3,
        "notes": "Siegel modular forms of degree two; the only family with Fourier-level certificates",
        "forms": _forms(("Psi5", 5), ("Phi30", 30)),
        "claims": [_c("Psi5", 3, "valuation"), _c("Phi30", 59), _c("Psi5Phi30", 23)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+A1(2)",
        "n": 3,
        "notes": "paramodular forms of level two",
        "forms": _forms(("Psi2", 2), ("Psi9", 9), ("Phi12", 12)),
        "claims": [
            _c("Psi9", 17),
            _c("Phi12", 23),
            _c("Psi2Psi9", 7),
            _c("Psi2Phi12", 3, "valuation"),
            _c("Psi9Phi12", 41),
            _c("Psi2Psi9Phi12", 5),
        ],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+A1(3)",
        "n": 3,
        "notes": "paramodular forms of level three",
        "forms": _forms(("Psi1", 1), ("Psi6", 6), ("Phi12", 12)),
        "claims": [
            _c("Psi6", 11),
            _c("Phi12", 23),
            _c("Psi1Psi6", 13),
            _c("Psi1Phi12", 5),
            _c("Psi6Phi12", 5),
            _c("Psi6Phi12", 7),
            _c("Psi1Psi6Phi12", 37),
        ],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+A2",
        "n": 4,
        "notes": "Hermitian modular forms over the Eisenstein integers",
        "forms": _forms(("Psi9", 9), ("Phi45", 45)),
        "claims": [_c("Psi9", 2, "valuation"), _c("Phi45", 11), _c("Psi9Phi45", 53)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U(2)+A2",
        "n": 4,
        "forms": _forms(("Psi3", 3), ("Psi12", 12), ("Phi15", 15)),
        "claims": [
            _c("Psi12", 11),
            _c("Phi15", 7),
            _c("Psi3Psi12", 7),
            _c("Psi3Phi15", 17),
            _c("Psi12Phi15", 13),
            _c("Psi3Psi12Phi15", 29),
        ],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+2A1",
        "n": 4,
        "notes": "Hermitian modular forms over the Gaussian integers",
        "forms": _forms(("Psi4", 4), ("Psi10", 10), ("Phi30", 30)),
        "claims": [
            _c("Psi10", 3, "valuation"),
            _c("Phi30", 29),
            _c("Psi4Psi10", 13),
            _c("Psi4Phi30", 11),
            _c("Psi10Phi30", 13),
            _c("Psi4Psi10Phi30", 43),
        ],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+A3",
        "n": 5,
        "forms": _forms(("Psi9", 9), ("Phi54", 54)),
        "claims": [_c("Phi54", 7), _c("Psi9Phi54", 41)],
        "assumptions": BRACKET_ASSUMPTIONS,
        "mode_exact": True,
    },
    {
        "lattice": "2U+D4",
        "n": 6,
        "notes": "modular forms on the quaternionic half-space",
        "forms": _forms(("Psi24", 24), ("Phi72", 72)),
        "claims": [_c("Phi72", 5), _c("Phi72", 7), _c("Psi24Phi72", 47)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+D4",
        "n": 6,
        "notes": "Psi8 is reflective for the subgroup generated by reflections only",
        "forms": _forms(("Psi8", 8), ("Phi72", 72)),
        "claims": [_c("Psi8Phi72", 13)],
        "assumptions": ["subgroup Γ generated by reflections", *BRACKET_ASSUMPTIONS],
    },
    {
        "lattice": "2U+2A2",
        "n": 6,
        "notes": "described elsewhere as the signature (8,2) lattice; rank arithmetic and the claimed primes give n = 6",
        "forms": _forms(("Psi6", 6), ("Phi42", 42)),
        "claims": [_c("Phi42", 2, "valuation"), _c("Phi42", 5), _c("Psi6Phi42", 23)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+D5",
        "n": 7,
        "forms": _forms(("Psi7", 7), ("Phi88", 88)),
        "claims": [_c("Phi88", 19), _c("Psi7Phi88", 5), _c("Psi7Phi88", 37)],
        "assumptions": BRACKET_ASSUMPTIONS,
        "mode_exact": True,
    },
    {
        "lattice": "2U+D6",
        "n": 8,
        "forms": _forms(("Psi6", 6), ("Phi102", 102)),
        "claims": [_c("Phi102", 3, "valuation"), _c("Phi102", 11), _c("Psi6Phi102", 5), _c("Psi6Phi102", 7)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+E6'(3)",
        "n": 8,
        "forms": _forms(("Psi12", 12), ("Phi12", 12)),
        "claims": [_c("Psi12Phi12", 7)],
        "assumptions": BRACKET_ASSUMPTIONS,
        "mode_exact": True,
    },
    {
        "lattice": "2U+2A3",
        "n": 8,
        "forms": _forms(("Psi6", 6), ("Phi48", 48)),
        "claims": [_c("Phi48", 3, "valuation"), _c("Phi48", 5), _c("Psi6Phi48", 17)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+D7",
        "n": 9,
        "forms": _forms(("Psi5", 5), ("Phi114", 114)),
        "claims": [_c("Phi114", 13), _c("Phi114", 17), _c("Psi5Phi114", 7), _c("Psi5Phi114", 11)],
        "assumptions": BRACKET_ASSUMPTIONS,
        "mode_exact": True,
    },
    {
        "lattice": "2U+E8(2)",
        "n": 10,
        "forms": _forms(("Psi60", 60), ("Phi12", 12)),
        "claims": [_c("Psi60", 7), _c("Psi60Phi12", 17)],
        "assumptions": BRACKET_ASSUMPTIONS,
        "mode_exact": True,
    },
    {
        "lattice": "2U+D8'(2)",
        "n": 10,
        "forms": _forms(("Psi28", 28), ("Phi28", 28)),
        "claims": [_c("Psi28Phi28", 13)],
        "assumptions": BRACKET_ASSUMPTIONS,
        "mode_exact": True,
    },
    {
        "lattice": "2U+E6",
        "n": 8,
        "notes": "Eisenstein pair: [Phi120, G4] is a multiple of Phi120 G6",
        "forms": _forms(("Phi120", 120), ("G4", 4)),
        "claims": [_c("Phi120", 13, "identity")],
        "assumptions": [_REFLECTIVE, "bracket with G4 equals c Phi120 G6", _LEVEL],
        "root_system": "E6",
    },
    {
        "lattice": "2U+E6",
        "n": 8,
        "notes": "pairing with the weight-7 reflective form M7",
        "forms": _forms(("Phi120", 120), ("M7", 7)),
        "claims": [_c("Phi120", 13), _c("Phi120M7", 31)],
        "assumptions": BRACKET_ASSUMPTIONS,
    },
    {
        "lattice": "2U+E7",
        "n": 9,
        "notes": "Eisenstein pair: [Phi165, G4] is a multiple of Phi165 G6",
        "forms": _forms(("Phi165", 165), ("G4", 4)),
        "claims": [_c("Phi165", 17, "identity"), _c("Phi165", 19, "identity")],
        "assumptions": [_REFLECTIVE, "bracket with G4 equals c Phi165 G6", _LEVEL],
        "root_system": "E7",
    },
    {
        "lattice": "2U+E8",
        "n": 10,
        "notes": "Eisenstein pair: [Phi252, G8] is a multiple of Phi252 G10",
        "forms": _forms(("Phi252", 252), ("G8", 8)),
        "claims": [_c("Phi252", 31, "identity")],
        "assumptions": [_REFLECTIVE, "bracket with G8 equals c Phi252 G10", _LEVEL],
        "root_system": "E8",
    },
    {
        "lattice": "2U+D11",
        "n": 13,
        "forms": _forms(("Phi142", 142), ("Psi1", 1)),
        "claims": [_c("Phi142", 13, "identity"), _c("Psi1Phi142", 5, "identity")],
        "assumptions": [_REFLECTIVE, "identity RHS constant 1950: [Phi142, Psi1] = 1950 Phi142 Psi1^3", _LEVEL],
        "rhs_constant": "1950",
    },
]


def _check_signatures(entries: List[CatalogEntry]) -> List[CatalogEntry]:
    for entry in entries:
        try:
            n = signature_n(entry.lattice)
        except LabelError as err:
            raise CatalogError(str(err)) from err
        if n != entry.n:
            raise CatalogError(f"{entry.lattice}: stored n = {entry.n} but the label gives n = {n}")
    return entries


@lru_cache(maxsize=1)
def _builtin() -> tuple[CatalogEntry, ...]:
    return tuple(_check_signatures(_entries.validate_python(_BUILTIN)))


def builtin_catalog() -> List[CatalogEntry]:
    """Every reflective family with its claimed congruences."""
    return [entry.model_copy(deep=True) for entry in _builtin()]


def loads_catalog(text: str) -> List[CatalogEntry]:
    """
    Parses a catalog JSON document.

    Raises:
        CatalogError: The document is malformed or some entry is inconsistent.
    """
    try:
        entries = _entries.validate_json(text)
    except ValidationError as err:
        raise CatalogError(f"invalid catalog document: {err}") from err
    return _check_signatures(entries)


def dumps_catalog(entries: List[CatalogEntry]) -> str:
    return json.dumps(_entries.dump_python(entries, mode="json", exclude_none=True), indent=2, ensure_ascii=False)


def load_catalog(path: Path) -> List[CatalogEntry]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as err:
        raise CatalogError(f"cannot read catalog {path}: {err}") from err
    return loads_catalog(text)


def get_catalog(path: Path | None = None) -> List[CatalogEntry]:
    """The catalog at ``path``, else at the configured override, else the built-in one."""
    path = path or settings.catalog_path
    if path is not None:
        logger.info("using catalog %s", path)
        return load_catalog(path)
    return builtin_catalog()


def catalog_entries() -> List[CatalogEntry]:
    return get_catalog()
