from fractions import Fraction
from pathlib import Path
from typing import Annotated, List, Literal, Optional, Tuple

import sympy
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    PlainSerializer,
    PlainValidator,
    WithJsonSchema,
    model_validator,
)


def _parse_rational(value) -> Fraction:
    if isinstance(value, bool):
        raise ValueError("booleans are not rational numbers")
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as err:
            raise ValueError(f"not a rational number: {value!r}") from err
    raise ValueError(f"not a rational number: {value!r}")


Rational = Annotated[
    Fraction,
    PlainValidator(_parse_rational),
    PlainSerializer(str, return_type=str),
    WithJsonSchema({"type": "string", "examples": ["-69/2"]}),
]

ClaimSource = Literal["strict", "valuation", "identity"]
PredictionMode = Literal["strict", "valuation", "identity"]
RootName = Literal["E6", "E7", "E8"]


class LatticeSpec(BaseModel):
    label: str = Field(min_length=1, max_length=64)
    n: int = Field(ge=3)
    notes: Optional[str] = None


class RootSystemData(BaseModel):
    model_config = ConfigDict(frozen=True)

    name: RootName
    d: int
    h: int
    weyl_norm: Rational


class FormSpec(BaseModel):
    name: str = Field(min_length=1, max_length=32)
    weight: int = Field(ge=1)


class Claim(BaseModel):
    product: List[str] = Field(min_length=1)
    prime: int
    source: ClaimSource

    @property
    def key(self) -> tuple[frozenset, int]:
        return frozenset(self.product), self.prime


class CatalogEntry(BaseModel):
    lattice: str = Field(min_length=1, max_length=64)
    n: int = Field(ge=3)
    notes: Optional[str] = None
    forms: List[FormSpec] = Field(min_length=2)
    claims: List[Claim] = Field(min_length=1)
    assumptions: List[str] = []
    mode_exact: bool = False
    rhs_constant: Optional[Rational] = None
    root_system: Optional[RootName] = None

    @model_validator(mode="after")
    def _consistent(self) -> "CatalogEntry":
        names = [f.name for f in self.forms]
        if len(set(names)) != len(names):
            raise ValueError(f"{self.lattice}: duplicate form names")
        for claim in self.claims:
            if len(set(claim.product)) != len(claim.product) or not set(claim.product) <= set(names):
                raise ValueError(f"{self.lattice}: claim product {claim.product} is not a subset of the forms")
            if not sympy.isprime(claim.prime):
                raise ValueError(f"{self.lattice}: {claim.prime} is not a prime")
        if self.is_identity:
            if self.rhs_constant is not None and self.root_system is not None:
                raise ValueError(f"{self.lattice}: give either an RHS constant or a root system, not both")
            if len(self.forms) != 2:
                raise ValueError(f"{self.lattice}: identity entries pair exactly two forms")
            if self.rhs_constant == 0:
                raise ValueError(f"{self.lattice}: RHS constant must be nonzero")
        return self

    @property
    def is_identity(self) -> bool:
        return self.rhs_constant is not None or self.root_system is not None

    @property
    def spec(self) -> LatticeSpec:
        return LatticeSpec(label=self.lattice, n=self.n, notes=self.notes)

    @property
    def weights(self) -> List[int]:
        return [f.weight for f in self.forms]

    @property
    def names(self) -> List[str]:
        return [f.name for f in self.forms]


class BracketCoefficients(BaseModel):
    """The scalars A = n/2 - 1 - k, B = n/2 - 1 - l and C = n/2 - 1 - k - l."""

    model_config = ConfigDict(frozen=True)

    n: int
    k: int
    l: int
    A: Rational
    B: Rational
    C: Rational


class Violation(BaseModel):
    index: Tuple[int, int, int]
    coeff_mod_p: int
    disc_mod_p: int


class Certificate(BaseModel):
    form: str
    prime: int
    prec: int
    d_f: int
    status: Literal["pass", "fail", "vacuous"]
    checked_count: int
    witnesses_nonvacuous: int
    violations: List[Violation] = []
    cusp: str = "siegel"

    @property
    def passed(self) -> bool:
        return self.status == "pass"


class Pairing(BaseModel):
    f: List[str]
    g: List[str]
    k: int
    l: int


class PredictionResult(BaseModel):
    target: List[str]
    prime: int
    exponent: int = Field(ge=1)
    pairing: Pairing

    @property
    def key(self) -> tuple[frozenset, int]:
        return frozenset(self.target), self.prime


class PredictionReport(BaseModel):
    n: int
    weights: List[int]
    names: List[str]
    mode: PredictionMode
    results: List[PredictionResult] = []
    assumptions: List[str] = []

    def primes_for(self, *target: str) -> set[int]:
        return {r.prime for r in self.results if frozenset(r.target) == frozenset(target)}

    def exponent(self, target: tuple[str, ...], prime: int) -> int:
        return max((r.exponent for r in self.results if r.key == (frozenset(target), prime)), default=0)


class PredictedClaim(BaseModel):
    product: List[str]
    prime: int
    exponent: int


class EntryRunReport(BaseModel):
    label: str
    n: int
    mode: PredictionMode
    claims: int
    verified: List[Claim] = []
    missed: List[Claim] = []
    out_of_mode: List[Claim] = []
    extras: List[PredictedClaim] = []
    mode_exact: bool = False
    mode_exact_ok: Optional[bool] = None


class CatalogRunReport(BaseModel):
    mode: PredictionMode
    entries: List[EntryRunReport]
    claims_total: int
    verified_total: int
    missed_total: int
    out_of_mode_total: int

    @property
    def ok(self) -> bool:
        return self.missed_total == 0 and all(e.mode_exact_ok is not False for e in self.entries)


class ManifestForm(BaseModel):
    key: str
    name: str
    weight: int
    parity: Literal["integral", "half-integral"]
    prec: int
    terms: int
    sha256: str


class CacheManifest(BaseModel):
    prec: int
    content_divisor: Rational
    forms: List[ManifestForm]


FOURIER_COMMANDS = {"build", "check", "scan", "bracket-check", "selftest"}


class RunConfig(BaseModel):
    command: str
    prec: int
    cache_dir: Path
    primes: List[int] = []
    forms: List[str] = []
    catalog_path: Optional[Path] = None
    mode: PredictionMode = "valuation"
    output_format: Literal["text", "json"] = "text"

    @model_validator(mode="after")
    def _fourier_precision(self) -> "RunConfig":
        if self.command in FOURIER_COMMANDS and self.prec < 4:
            raise ValueError(f"{self.command} needs --prec >= 4, got {self.prec}")
        return self


class PairRequest(BaseModel):
    n: int = Field(ge=3)
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    mode: Literal["strict", "valuation"] = "valuation"
    names: Optional[List[str]] = None


class FamilyRequest(BaseModel):
    n: int = Field(ge=3)
    weights: List[int] = Field(min_length=2)
    mode: Literal["strict", "valuation"] = "valuation"
    names: Optional[List[str]] = None


class IdentityRequest(BaseModel):
    n: int = Field(ge=3)
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    rhs: Rational
    names: Optional[List[str]] = None


class EisensteinConstantResponse(BaseModel):
    root: RootName
    k: int
    l: int
    value: Rational


class CriterionResult(BaseModel):
    number: int
    name: str
    passed: bool
    detail: str = ""


class SelftestReport(BaseModel):
    prec: int
    criteria: List[CriterionResult]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.criteria)
