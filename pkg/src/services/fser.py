"""
Line-oriented text format for series.

::

    FSER 1
    kind ortho
    scales 2 2 2
    prec 8
    minorder 10
    parity 0 0 0
    4 2 6 1
    4 -2 6 -1

Orthogonal series also record their parity class (``none`` when empty). Orthogonal
terms are ``N R M coeff`` sorted by ``(N+M, N, R)``; Jacobi terms are ``e t coeff``
sorted by ``(e, t)``; q terms are ``e coeff``. Coefficients are written as ``num`` or
``num/den``.
"""
from fractions import Fraction
from pathlib import Path

from src.exceptions import CacheIntegrityError, SiegelError
from src.services.series import JacobiSeries, OrthoSeries, QSeries, storage_sort_key

MAGIC = "FSER 1"

Series = OrthoSeries | JacobiSeries | QSeries


def _rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def dumps(series: Series) -> str:
    """
    Serialises a series.

    :param series: An orthogonal, Jacobi or q-series.
    :return: The FSER text, newline terminated.
    """
    if isinstance(series, OrthoSeries):
        header = [
            "kind ortho",
            "scales 2 2 2",
            f"prec {series.prec}",
            f"minorder {series.min_order}",
            f"parity {_parity(series.parity)}",
        ]
        body = [
            f"{N} {R} {M} {_rational(series.coeffs[(N, R, M)])}"
            for N, R, M in sorted(series.coeffs, key=storage_sort_key)
        ]
    elif isinstance(series, JacobiSeries):
        header = [
            "kind jacobi",
            f"scales {series.qscale} {series.zscale}",
            f"prec {series.prec}",
            f"minorder {series.order}",
        ]
        body = [f"{e} {t} {_rational(c)}" for (e, t), c in sorted(series.coeffs.items())]
    elif isinstance(series, QSeries):
        header = ["kind q", f"scales {series.scale}", f"prec {series.prec}", f"minorder {series.order}"]
        body = [f"{e} {_rational(c)}" for e, c in sorted(series.coeffs.items())]
    else:
        raise TypeError(f"cannot serialise {type(series).__name__}")
    return "\n".join([MAGIC, *header, *body]) + "\n"


def _parity(parity: tuple[int, int, int] | None) -> str:
    return "none" if parity is None else " ".join(map(str, parity))


def _field(line: str, name: str) -> list[str]:
    parts = line.split()
    if not parts or parts[0] != name:
        raise CacheIntegrityError(f"expected a {name!r} header, got {line!r}")
    return parts[1:]


def loads(text: str) -> Series:
    """
    Parses FSER text.

    Raises:
        CacheIntegrityError: The text is not a well-formed FSER document.
    """
    lines = text.splitlines()
    if len(lines) < 5 or lines[0] != MAGIC:
        raise CacheIntegrityError("missing FSER header")
    try:
        (kind,) = _field(lines[1], "kind")
        scales = [int(x) for x in _field(lines[2], "scales")]
        (prec,) = (int(x) for x in _field(lines[3], "prec"))
        (minorder,) = (int(x) for x in _field(lines[4], "minorder"))
        body = 6 if kind == "ortho" else 5
        rows = [line.split() for line in lines[body:] if line]
        if kind == "ortho":
            if len(lines) < 6:
                raise CacheIntegrityError("missing parity header")
            declared = " ".join(_field(lines[5], "parity"))
            if scales != [2, 2, 2] or any(len(r) != 4 for r in rows):
                raise CacheIntegrityError("malformed orthogonal series")
            series = OrthoSeries({(int(N), int(R), int(M)): Fraction(c) for N, R, M, c in rows}, prec, minorder)
            if series.min_order != minorder:
                raise CacheIntegrityError(f"declared minorder {minorder} does not match the terms")
            if _parity(series.parity) != declared:
                raise CacheIntegrityError(f"declared parity {declared!r} does not match the terms")
        elif kind == "jacobi":
            if len(scales) != 2 or any(len(r) != 3 for r in rows):
                raise CacheIntegrityError("malformed Jacobi series")
            series = JacobiSeries({(int(e), int(t)): Fraction(c) for e, t, c in rows}, prec, *scales)
        elif kind == "q":
            if len(scales) != 1 or any(len(r) != 2 for r in rows):
                raise CacheIntegrityError("malformed q-series")
            series = QSeries({int(e): Fraction(c) for e, c in rows}, prec, scales[0])
        else:
            raise CacheIntegrityError(f"unknown series kind {kind!r}")
    except CacheIntegrityError:
        raise
    except (ValueError, ZeroDivisionError, SiegelError) as err:
        raise CacheIntegrityError(f"malformed FSER document: {err}") from err
    if len(series.coeffs) != len(rows):
        raise CacheIntegrityError("FSER document contains zero, duplicate or out-of-precision terms")
    return series


def dump(series: Series, path: Path) -> None:
    Path(path).write_text(dumps(series), encoding="utf-8")


def load(path: Path) -> Series:
    return loads(Path(path).read_text(encoding="utf-8"))
