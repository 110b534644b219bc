"""
Sparse exact Fourier series.

Three shapes are supported:

* :class:`QSeries` - one-variable Laurent series in q with exponents in units ``1/scale``;
* :class:`JacobiSeries` - two-variable series in (q, zeta) with independent scales;
* :class:`OrthoSeries` - Fourier series on the Siegel tube domain, indexed by doubled
  triples ``(N, R, M) = (2n, 2r, 2m)`` standing for ``q^n zeta^r xi^m``.

Every series carries a precision and is a truth claim about all coefficients within it.
Zero coefficients are never stored.
"""
import logging
from collections import defaultdict
from fractions import Fraction
from math import gcd, isqrt, lcm
from types import MappingProxyType
from typing import Iterator, Literal, Mapping, NamedTuple

import sympy

from src.exceptions import (
    NotASquareError,
    ParityError,
    PrecisionError,
    SeriesDivisionError,
    SeriesError,
)
from src.services.exact import Scalar, as_fraction, rational_content, to_sympy

logger = logging.getLogger(__name__)

Axis = Literal["tau", "z", "omega"]

_X, _Z = sympy.symbols("x z")


class IndexKey(NamedTuple):
    N: int
    R: int
    M: int

    @property
    def disc(self) -> int:
        """4NM - R^2, which equals 16 det T."""
        return 4 * self.N * self.M - self.R * self.R

    @property
    def order(self) -> int:
        return self.N + self.M

    @property
    def q_value(self) -> Fraction:
        return Fraction(self.disc, 16)


def disc(key: tuple[int, int, int]) -> int:
    N, R, M = key
    return 4 * N * M - R * R


def leading_sort_key(key: tuple[int, int, int]) -> tuple[int, int, int]:
    # lowest total order, then lowest N, then highest R
    N, R, M = key
    return N + M, N, -R


def storage_sort_key(key: tuple[int, int, int]) -> tuple[int, int, int]:
    N, R, M = key
    return N + M, N, R


def _integer_form(coeffs: Mapping) -> tuple[dict, int]:
    den = 1
    for c in coeffs.values():
        den = lcm(den, c.denominator)
    if den == 1:
        return {k: c.numerator for k, c in coeffs.items()}, 1
    return {k: c.numerator * (den // c.denominator) for k, c in coeffs.items()}, den


class QSeries:
    """
    Laurent series in q; the stored exponent ``e`` stands for ``q^(e/scale)``.

    Coefficients are exact for every scaled exponent ``<= prec``.
    """

    __slots__ = ("scale", "prec", "_coeffs")

    def __init__(self, coeffs: Mapping[int, Scalar], prec: int, scale: int = 1):
        if scale < 1:
            raise SeriesError(f"q-scale must be positive, got {scale}")
        self.scale = scale
        self.prec = prec
        self._coeffs = {e: as_fraction(c) for e, c in coeffs.items() if c and e <= prec}

    @property
    def coeffs(self) -> Mapping[int, Fraction]:
        return MappingProxyType(self._coeffs)

    @property
    def order(self) -> int:
        return min(self._coeffs, default=self.prec + 1)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, exponent: int) -> Fraction:
        return self._coeffs.get(exponent, Fraction(0))

    def coefficient(self, exponent: Scalar) -> Fraction:
        """The coefficient of q^exponent, with the exponent given in actual (unscaled) units."""
        scaled = as_fraction(exponent) * self.scale
        if scaled.denominator != 1:
            return Fraction(0)
        if scaled > self.prec:
            raise PrecisionError(f"q^{exponent} lies beyond the precision of the series")
        return self[scaled.numerator]

    def rescale(self, scale: int) -> "QSeries":
        if scale % self.scale:
            raise SeriesError(f"cannot rescale from 1/{self.scale} to 1/{scale}")
        f = scale // self.scale
        return QSeries({e * f: c for e, c in self._coeffs.items()}, self.prec * f, scale)

    def reduce_scale(self) -> "QSeries":
        g = self.scale
        for e in self._coeffs:
            g = gcd(g, e)
        if g == 1:
            return self
        return QSeries({e // g: c for e, c in self._coeffs.items()}, self.prec // g, self.scale // g)

    def truncate(self, prec: int) -> "QSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        return QSeries(self._coeffs, prec, self.scale)

    def agrees_with(self, other: "QSeries") -> bool:
        a, b = _align_q(self, other)
        prec = min(a.prec, b.prec)
        return a.truncate(prec)._coeffs == b.truncate(prec)._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, QSeries):
            return NotImplemented
        return (self.scale, self.prec, self._coeffs) == (other.scale, other.prec, other._coeffs)

    __hash__ = None

    def __neg__(self) -> "QSeries":
        return QSeries({e: -c for e, c in self._coeffs.items()}, self.prec, self.scale)

    def __add__(self, other: "QSeries") -> "QSeries":
        a, b = _align_q(self, other)
        out = dict(a._coeffs)
        for e, c in b._coeffs.items():
            out[e] = out.get(e, 0) + c
        return QSeries(out, min(a.prec, b.prec), a.scale)

    def __sub__(self, other: "QSeries") -> "QSeries":
        return self + (-other)

    def __mul__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return QSeries({e: c * other for e, c in self._coeffs.items()}, self.prec, self.scale)
        if not isinstance(other, QSeries):
            return NotImplemented
        a, b = _align_q(self, other)
        prec = min(a.prec + b.order, b.prec + a.order)
        ai, da = _integer_form(a._coeffs)
        bi, db = _integer_form(b._coeffs)
        b_sorted = sorted(bi.items())
        out = defaultdict(int)
        for e1, c1 in ai.items():
            room = prec - e1
            for e2, c2 in b_sorted:
                if e2 > room:
                    break
                out[e1 + e2] += c1 * c2
        den = da * db
        return QSeries({e: Fraction(c, den) for e, c in out.items() if c}, prec, a.scale)

    __rmul__ = __mul__

    def inverse(self) -> "QSeries":
        """
        Multiplicative inverse.

        Returns:
            1/f, exact up to scaled exponent ``prec - 2 * order``.

        Raises:
            SeriesDivisionError: The series vanishes within its precision.
        """
        if self.is_zero:
            raise SeriesDivisionError("cannot invert a series that vanishes within its precision")
        v = self.order
        a0 = self._coeffs[v]
        tail = sorted((e - v, c) for e, c in self._coeffs.items() if e != v)
        length = self.prec - v
        b = [Fraction(0)] * (length + 1)
        b[0] = 1 / a0
        for j in range(1, length + 1):
            acc = Fraction(0)
            for i, c in tail:
                if i > j:
                    break
                acc += c * b[j - i]
            b[j] = -acc / a0
        return QSeries({j - v: c for j, c in enumerate(b) if c}, self.prec - 2 * v, self.scale)

    def __pow__(self, k: int) -> "QSeries":
        if k < 0:
            return self.inverse() ** (-k)
        result = QSeries({0: 1}, self.prec, self.scale)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __truediv__(self, other) -> "QSeries":
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        return self * other.inverse()

    def __repr__(self) -> str:
        return f"QSeries(scale={self.scale}, prec={self.prec}, terms={len(self._coeffs)})"


def _align_q(a: QSeries, b: QSeries) -> tuple[QSeries, QSeries]:
    if a.scale == b.scale:
        return a, b
    s = lcm(a.scale, b.scale)
    return a.rescale(s), b.rescale(s)


class JacobiSeries:
    """
    Series in (q, zeta); key ``(e, t)`` stands for ``q^(e/qscale) zeta^(t/zscale)``.

    Coefficients are exact for every scaled q-exponent ``<= prec``.
    """

    __slots__ = ("qscale", "zscale", "prec", "_coeffs")

    def __init__(self, coeffs: Mapping[tuple[int, int], Scalar], prec: int, qscale: int = 1, zscale: int = 1):
        if qscale < 1 or zscale not in (1, 2):
            raise SeriesError(f"unsupported Jacobi scales q=1/{qscale}, zeta=1/{zscale}")
        self.qscale = qscale
        self.zscale = zscale
        self.prec = prec
        self._coeffs = {(e, t): as_fraction(c) for (e, t), c in coeffs.items() if c and e <= prec}

    @classmethod
    def from_q(cls, f: QSeries, zscale: int = 1) -> "JacobiSeries":
        return cls({(e, 0): c for e, c in f.coeffs.items()}, f.prec, f.scale, zscale)

    @property
    def coeffs(self) -> Mapping[tuple[int, int], Fraction]:
        return MappingProxyType(self._coeffs)

    @property
    def order(self) -> int:
        return min((e for e, _ in self._coeffs), default=self.prec + 1)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    def __getitem__(self, key: tuple[int, int]) -> Fraction:
        return self._coeffs.get(key, Fraction(0))

    def coefficient(self, n: Scalar, r: Scalar) -> Fraction:
        """The coefficient of q^n zeta^r in actual units."""
        e = as_fraction(n) * self.qscale
        t = as_fraction(r) * self.zscale
        if e.denominator != 1 or t.denominator != 1:
            return Fraction(0)
        if e > self.prec:
            raise PrecisionError(f"q^{n} lies beyond the precision of the series")
        return self[(e.numerator, t.numerator)]

    def layers(self) -> dict[int, dict[int, Fraction]]:
        out: dict[int, dict[int, Fraction]] = defaultdict(dict)
        for (e, t), c in sorted(self._coeffs.items()):
            out[e][t] = c
        return dict(out)

    def at_zeta_one(self) -> QSeries:
        """Specialises zeta to 1."""
        out = defaultdict(Fraction)
        for (e, _), c in self._coeffs.items():
            out[e] += c
        return QSeries(out, self.prec, self.qscale)

    def rescale(self, qscale: int, zscale: int) -> "JacobiSeries":
        if qscale % self.qscale or zscale % self.zscale:
            raise SeriesError(f"cannot rescale 1/{self.qscale}, 1/{self.zscale} to 1/{qscale}, 1/{zscale}")
        fq, fz = qscale // self.qscale, zscale // self.zscale
        return JacobiSeries(
            {(e * fq, t * fz): c for (e, t), c in self._coeffs.items()}, self.prec * fq, qscale, zscale
        )

    def reduce_scales(self) -> "JacobiSeries":
        gq, gz = self.qscale, self.zscale
        for e, t in self._coeffs:
            gq, gz = gcd(gq, e), gcd(gz, t)
        if gq == gz == 1:
            return self
        return JacobiSeries(
            {(e // gq, t // gz): c for (e, t), c in self._coeffs.items()},
            self.prec // gq,
            self.qscale // gq,
            self.zscale // gz,
        )

    def truncate(self, prec: int) -> "JacobiSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        return JacobiSeries(self._coeffs, prec, self.qscale, self.zscale)

    def agrees_with(self, other: "JacobiSeries") -> bool:
        a, b = _align_j(self, other)
        prec = min(a.prec, b.prec)
        return a.truncate(prec)._coeffs == b.truncate(prec)._coeffs

    def __eq__(self, other) -> bool:
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        return (self.qscale, self.zscale, self.prec, self._coeffs) == (
            other.qscale,
            other.zscale,
            other.prec,
            other._coeffs,
        )

    __hash__ = None

    def __neg__(self) -> "JacobiSeries":
        return JacobiSeries({k: -c for k, c in self._coeffs.items()}, self.prec, self.qscale, self.zscale)

    def __add__(self, other: "JacobiSeries") -> "JacobiSeries":
        a, b = _align_j(self, other)
        out = dict(a._coeffs)
        for k, c in b._coeffs.items():
            out[k] = out.get(k, 0) + c
        return JacobiSeries(out, min(a.prec, b.prec), a.qscale, a.zscale)

    def __sub__(self, other: "JacobiSeries") -> "JacobiSeries":
        return self + (-other)

    def __mul__(self, other) -> "JacobiSeries":
        if isinstance(other, (int, Fraction)):
            return JacobiSeries(
                {k: c * other for k, c in self._coeffs.items()}, self.prec, self.qscale, self.zscale
            )
        if isinstance(other, QSeries):
            other = JacobiSeries.from_q(other, self.zscale)
        if not isinstance(other, JacobiSeries):
            return NotImplemented
        a, b = _align_j(self, other)
        prec = min(a.prec + b.order, b.prec + a.order)
        ai, da = _integer_form(a._coeffs)
        bi, db = _integer_form(b._coeffs)
        b_sorted = sorted(bi.items())
        out = defaultdict(int)
        for (e1, t1), c1 in ai.items():
            room = prec - e1
            for (e2, t2), c2 in b_sorted:
                if e2 > room:
                    break
                out[(e1 + e2, t1 + t2)] += c1 * c2
        den = da * db
        return JacobiSeries({k: Fraction(c, den) for k, c in out.items() if c}, prec, a.qscale, a.zscale)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "JacobiSeries":
        """Division by a scalar or by a q-series unit."""
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        if isinstance(other, QSeries):
            return self * other.inverse()
        return NotImplemented

    def __repr__(self) -> str:
        return (
            f"JacobiSeries(qscale={self.qscale}, zscale={self.zscale}, prec={self.prec}, "
            f"terms={len(self._coeffs)})"
        )


def _align_j(a: JacobiSeries, b: JacobiSeries) -> tuple[JacobiSeries, JacobiSeries]:
    if a.qscale == b.qscale and a.zscale == b.zscale:
        return a, b
    qs, zs = lcm(a.qscale, b.qscale), lcm(a.zscale, b.zscale)
    return a.rescale(qs, zs), b.rescale(qs, zs)


class OrthoSeries:
    """
    Fourier series on the Siegel tube domain.

    Keys are doubled triples ``(N, R, M)``; the series is exact for every index with
    ``N + M <= 2 * prec``. ``min_order`` is the smallest ``N + M`` of the true series:
    the smallest stored order when there are terms, otherwise a lower bound beyond the
    precision.
    """

    __slots__ = ("prec", "min_order", "parity", "_coeffs")

    def __init__(self, coeffs: Mapping[tuple[int, int, int], Scalar], prec: int, min_order: int | None = None):
        bound = 2 * prec
        clean = {}
        parity = None
        for key, c in coeffs.items():
            N, R, M = key
            if not c or N + M > bound:
                continue
            cls = (N & 1, R & 1, M & 1)
            if parity is None:
                parity = cls
            elif cls != parity:
                raise ParityError(f"index {(N, R, M)} breaks the parity class {parity}")
            clean[(N, R, M)] = as_fraction(c)
        self.prec = prec
        self.parity = parity
        self._coeffs = clean
        if clean:
            actual = min(N + M for N, _, M in clean)
            if min_order is not None and actual < min_order:
                raise PrecisionError(f"stored order {actual} is below the declared bound {min_order}")
            self.min_order = actual
        else:
            self.min_order = max(bound + 1, min_order or 0)

    @classmethod
    def one(cls, prec: int) -> "OrthoSeries":
        return cls({(0, 0, 0): 1}, prec)

    @classmethod
    def zero(cls, prec: int) -> "OrthoSeries":
        return cls({}, prec)

    @property
    def coeffs(self) -> Mapping[tuple[int, int, int], Fraction]:
        return MappingProxyType(self._coeffs)

    @property
    def is_zero(self) -> bool:
        return not self._coeffs

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self._coeffs.values())

    def __len__(self) -> int:
        return len(self._coeffs)

    def __getitem__(self, key: tuple[int, int, int]) -> Fraction:
        return self._coeffs.get(tuple(key), Fraction(0))

    def coefficient(self, n: Scalar, r: Scalar, m: Scalar) -> Fraction:
        """
        The coefficient of q^n zeta^r xi^m in undoubled (Siegel) coordinates.

        Raises:
            PrecisionError: n + m lies beyond the precision.
        """
        doubled = [as_fraction(x) * 2 for x in (n, r, m)]
        if any(x.denominator != 1 for x in doubled):
            return Fraction(0)
        N, R, M = (x.numerator for x in doubled)
        if N + M > 2 * self.prec:
            raise PrecisionError(f"index {(n, r, m)} lies beyond precision {self.prec}")
        return self[(N, R, M)]

    def terms(self) -> Iterator[tuple[IndexKey, Fraction]]:
        for key in sorted(self._coeffs, key=storage_sort_key):
            yield IndexKey(*key), self._coeffs[key]

    def layers(self) -> dict[int, dict[tuple[int, int], Fraction]]:
        """Groups the terms by total order N + M; each layer maps (N, R) to the coefficient."""
        out: dict[int, dict[tuple[int, int], Fraction]] = defaultdict(dict)
        for (N, R, M), c in self._coeffs.items():
            out[N + M][(N, R)] = c
        return dict(out)

    def leading_term(self) -> tuple[IndexKey, Fraction]:
        if self.is_zero:
            raise SeriesError("the zero series has no leading term")
        key = min(self._coeffs, key=leading_sort_key)
        return IndexKey(*key), self._coeffs[key]

    def truncate(self, prec: int) -> "OrthoSeries":
        if prec > self.prec:
            raise PrecisionError(f"cannot raise precision from {self.prec} to {prec}")
        return OrthoSeries(self._coeffs, prec, self.min_order)

    def agrees_with(self, other: "OrthoSeries") -> bool:
        """Coefficient equality on the common valid range."""
        prec = min(self.prec, other.prec)
        bound = 2 * prec
        mine = {k: c for k, c in self._coeffs.items() if k[0] + k[2] <= bound}
        theirs = {k: c for k, c in other._coeffs.items() if k[0] + k[2] <= bound}
        return mine == theirs

    def __eq__(self, other) -> bool:
        if not isinstance(other, OrthoSeries):
            return NotImplemented
        return self.prec == other.prec and self._coeffs == other._coeffs

    __hash__ = None

    def __neg__(self) -> "OrthoSeries":
        return OrthoSeries({k: -c for k, c in self._coeffs.items()}, self.prec, self.min_order)

    def __add__(self, other: "OrthoSeries") -> "OrthoSeries":
        if not isinstance(other, OrthoSeries):
            return NotImplemented
        out = dict(self._coeffs)
        for k, c in other._coeffs.items():
            out[k] = out.get(k, 0) + c
        return OrthoSeries(out, min(self.prec, other.prec), min(self.min_order, other.min_order))

    def __sub__(self, other: "OrthoSeries") -> "OrthoSeries":
        return self + (-other)

    def __mul__(self, other) -> "OrthoSeries":
        if isinstance(other, (int, Fraction)):
            return OrthoSeries({k: c * other for k, c in self._coeffs.items()}, self.prec, self.min_order)
        if isinstance(other, OrthoSeries):
            return multiply(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"OrthoSeries(prec={self.prec}, min_order={self.min_order}, terms={len(self._coeffs)})"


def multiply(F: OrthoSeries, G: OrthoSeries) -> OrthoSeries:
    """
    Exact product of two orthogonal series.

    The result is exact up to ``min(prec_F + min_order_G // 2, prec_G + min_order_F // 2)``
    and only terms within that bound are computed.
    """
    prec = min(F.prec + G.min_order // 2, G.prec + F.min_order // 2)
    bound = 2 * prec
    fi, fd = _integer_form(F.coeffs)
    gi, gd = _integer_form(G.coeffs)
    g_sorted = sorted(((N + M, N, R, M), c) for (N, R, M), c in gi.items())
    out = defaultdict(int)
    for (N1, R1, M1), c1 in fi.items():
        room = bound - N1 - M1
        for (o, N2, R2, M2), c2 in g_sorted:
            if o > room:
                break
            out[(N1 + N2, R1 + R2, M1 + M2)] += c1 * c2
    den = fd * gd
    return OrthoSeries(
        {k: Fraction(c, den) for k, c in out.items() if c}, prec, F.min_order + G.min_order
    )


def _layer_poly(layer: Mapping[tuple[int, int], Fraction]) -> tuple[sympy.Poly, int, int]:
    a = min(N for N, _ in layer)
    b = min(R for _, R in layer)
    poly = sympy.Poly.from_dict(
        {(N - a, R - b): to_sympy(c) for (N, R), c in layer.items()}, _X, _Z, domain=sympy.QQ
    )
    return poly, a, b


def _poly_layer(poly: sympy.Poly, a: int, b: int) -> dict[tuple[int, int], Fraction]:
    return {(i + a, j + b): as_fraction(c) for (i, j), c in poly.as_dict().items() if c}


def _layer_product(f: Mapping, g: Mapping) -> dict[tuple[int, int], Fraction]:
    out = defaultdict(Fraction)
    for (N1, R1), c1 in f.items():
        for (N2, R2), c2 in g.items():
            out[(N1 + N2, R1 + R2)] += c1 * c2
    return out


def _subtract_into(acc: dict, f: Mapping, g: Mapping) -> None:
    if f and g:
        for k, c in _layer_product(f, g).items():
            acc[k] = acc.get(k, 0) - c


def _divide_layer(numerator: Mapping, denominator: tuple[sympy.Poly, int, int], order: int) -> dict:
    numerator = {k: c for k, c in numerator.items() if c}
    if not numerator:
        return {}
    num_poly, a, b = _layer_poly(numerator)
    den_poly, c, d = denominator
    quotient, remainder = num_poly.div(den_poly)
    if not remainder.is_zero:
        raise SeriesDivisionError(f"layer {order} is not divisible by the leading layer")
    return _poly_layer(quotient, a - c, b - d)


def _layer_sqrt(layer: Mapping[tuple[int, int], Fraction], order: int) -> dict[tuple[int, int], Fraction]:
    poly, a, b = _layer_poly(layer)
    if a % 2 or b % 2:
        raise NotASquareError(f"leading layer {order} has an odd monomial shift")
    const, factors = poly.factor_list()
    if any(e % 2 for _, e in factors):
        raise NotASquareError(f"leading layer {order} has a factor of odd multiplicity")
    const = as_fraction(const)
    num, den = const.numerator, const.denominator
    if num < 0 or isqrt(num) ** 2 != num or isqrt(den) ** 2 != den:
        raise NotASquareError(f"leading coefficient {const} of layer {order} is not a rational square")
    root = sympy.Poly(to_sympy(Fraction(isqrt(num), isqrt(den))), _X, _Z, domain=sympy.QQ)
    for factor, e in factors:
        root = root * factor ** (e // 2)
    return _poly_layer(root, a // 2, b // 2)


def _from_layers(layers: Mapping[int, Mapping[tuple[int, int], Fraction]]) -> dict:
    return {(N, R, t - N): c for t, layer in layers.items() for (N, R), c in layer.items()}


def sqrt(F: OrthoSeries) -> OrthoSeries:
    """
    Graded square root.

    The leading layer is factored exactly and must be a perfect square; higher layers
    follow by Hensel lifting over the total order. The sign is chosen so that the
    leading term of the root is positive.

    Parameters:
        F: Series whose lowest layer is a perfect square Laurent polynomial.

    Returns:
        S with S * S = F, exact up to order ``2 * prec_F - min_order_S``.

    Raises:
        NotASquareError: The leading layer is not a square.
        SeriesDivisionError: A lifting step leaves a remainder.
    """
    if F.is_zero:
        raise NotASquareError("the zero series has no graded square root")
    t0 = F.min_order
    if t0 % 2:
        raise NotASquareError(f"lowest order {t0} is odd")
    s0 = t0 // 2
    top = 2 * F.prec - s0
    layers = F.layers()
    base = _layer_sqrt(layers[t0], t0)
    lead = min(base, key=lambda k: (k[0], -k[1]))
    if base[lead] < 0:
        base = {k: -c for k, c in base.items()}
    roots = {s0: base}
    denominator = _layer_poly({k: 2 * c for k, c in base.items()})
    for j in range(1, top - s0 + 1):
        acc = dict(layers.get(t0 + j, {}))
        for i in range(1, j):
            _subtract_into(acc, roots.get(s0 + i), roots.get(s0 + j - i))
        roots[s0 + j] = _divide_layer(acc, denominator, t0 + j)
    logger.debug("square root computed on orders %d..%d", s0, top)
    return OrthoSeries(_from_layers(roots), top // 2, s0)


def divide_exact(F: OrthoSeries, G: OrthoSeries) -> OrthoSeries:
    """
    Exact graded quotient F / G.

    Parameters:
        F: Dividend.
        G: Nonzero divisor.

    Returns:
        Q with Q * G = F, exact up to
        ``min(2 prec_F - g0, 2 prec_G + q0 - g0) // 2`` where g0, q0 are the lowest
        orders of G and Q.

    Raises:
        SeriesDivisionError: G vanishes, or some layer does not divide exactly.
    """
    if G.is_zero:
        raise SeriesDivisionError("division by a series that vanishes within its precision")
    g0 = G.min_order
    f0 = F.min_order
    if not F.is_zero and f0 < g0:
        raise SeriesDivisionError(f"dividend order {f0} is below divisor order {g0}")
    q0 = f0 - g0
    top = min(2 * F.prec - g0, 2 * G.prec + q0 - g0)
    f_layers = F.layers()
    g_layers = G.layers()
    denominator = _layer_poly(g_layers[g0])
    quotients: dict[int, dict] = {}
    for j in range(0, top - q0 + 1):
        acc = dict(f_layers.get(f0 + j, {}))
        for i in range(1, j + 1):
            _subtract_into(acc, quotients.get(q0 + j - i), g_layers.get(g0 + i))
        quotients[q0 + j] = _divide_layer(acc, denominator, f0 + j)
    return OrthoSeries(_from_layers(quotients), top // 2, q0)


_AXES = {"tau": 0, "z": 1, "omega": 2}


def derivative(F: OrthoSeries, axis: Axis) -> OrthoSeries:
    """Formal derivative (2 pi i)^-1 d/d(axis): multiplies by n, r or m."""
    try:
        slot = _AXES[axis]
    except KeyError:
        raise SeriesError(f"unknown axis {axis!r}") from None
    return OrthoSeries(
        {k: c * Fraction(k[slot], 2) for k, c in F.coeffs.items()}, F.prec, F.min_order
    )


def restrict_diagonal(F: OrthoSeries) -> dict[tuple[int, int], Fraction]:
    """Sets zeta = 1; returns the nonzero sums over R keyed by (N, M)."""
    out = defaultdict(Fraction)
    for (N, _, M), c in F.coeffs.items():
        out[(N, M)] += c
    return {k: c for k, c in sorted(out.items()) if c}


def swap(F: OrthoSeries) -> OrthoSeries:
    return OrthoSeries({(M, R, N): c for (N, R, M), c in F.coeffs.items()}, F.prec, F.min_order)


def content_normalize(F: OrthoSeries) -> tuple[OrthoSeries, Fraction]:
    """
    Divides out the rational content.

    Returns:
        ``(F / c, c)`` where the result has coprime integer coefficients and a positive
        leading term.

    Raises:
        SeriesError: F vanishes within its precision.
    """
    if F.is_zero:
        raise SeriesError("the zero series has no content")
    c = rational_content(F.coeffs.values())
    if F.leading_term()[1] < 0:
        c = -c
    return F * (1 / c), c
