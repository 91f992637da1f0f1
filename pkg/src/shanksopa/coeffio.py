"""Coefficient files.

One coefficient per line: ``index value`` for one variable, ``i j value``
for two.  Values are decimals or exact ``p/q`` and are read as exact
rationals.  Blank lines and ``#`` comments are skipped; missing indices
are zero.
"""

from __future__ import annotations

import math
from fractions import Fraction
from pathlib import Path

from .bidisk import Series2D
from .univar import Series1D


class CoefficientFileError(ValueError):
    pass


def _parse_value(tok: str, where: str) -> Fraction:
    try:
        v = Fraction(tok)
    except (ValueError, ZeroDivisionError) as exc:
        raise CoefficientFileError(f"{where}: cannot parse value {tok!r}") from exc
    if not math.isfinite(float(v)):
        raise CoefficientFileError(f"{where}: value {tok!r} is not finite")
    return v


def _parse_index(tok: str, where: str) -> int:
    try:
        k = int(tok)
    except ValueError as exc:
        raise CoefficientFileError(f"{where}: bad index {tok!r}") from exc
    if k < 0:
        raise CoefficientFileError(f"{where}: negative index {k}")
    return k


def _records(text: str) -> list[tuple[str, list[str]]]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if line:
            out.append((f"line {lineno}", line.split()))
    return out


def file_dimension(path) -> int:
    """1 or 2, from the number of fields on the first data line."""
    recs = _records(Path(path).read_text())
    if not recs:
        raise CoefficientFileError(f"{path}: no coefficients")
    n = len(recs[0][1])
    if n not in (2, 3):
        raise CoefficientFileError(f"{path}: expected 2 or 3 fields per line, got {n}")
    return n - 1


def parse_series_1d(text: str) -> Series1D:
    entries: dict[int, Fraction] = {}
    for where, toks in _records(text):
        if len(toks) != 2:
            raise CoefficientFileError(f"{where}: expected 'index value'")
        k = _parse_index(toks[0], where)
        if k in entries:
            raise CoefficientFileError(f"{where}: duplicate index {k}")
        entries[k] = _parse_value(toks[1], where)
    if not entries:
        raise CoefficientFileError("no coefficients")
    N = max(entries)
    return Series1D(tuple(entries.get(k, Fraction(0)) for k in range(N + 1)))


def parse_series_2d(text: str) -> Series2D:
    entries: dict[tuple[int, int], Fraction] = {}
    for where, toks in _records(text):
        if len(toks) != 3:
            raise CoefficientFileError(f"{where}: expected 'i j value'")
        ij = (_parse_index(toks[0], where), _parse_index(toks[1], where))
        if ij in entries:
            raise CoefficientFileError(f"{where}: duplicate index {ij}")
        entries[ij] = _parse_value(toks[2], where)
    if not entries:
        raise CoefficientFileError("no coefficients")
    N = max(i + j for i, j in entries)
    return Series2D.from_dict(N, entries)


def read_series(path):
    text = Path(path).read_text()
    return parse_series_1d(text) if file_dimension(path) == 1 else parse_series_2d(text)


def format_series_1d(f: Series1D) -> str:
    return "".join(f"{k} {v}\n" for k, v in enumerate(f.coeffs))


def format_series_2d(f: Series2D) -> str:
    N = f.degree
    return "".join(f"{i} {j} {f.coeffs[i, j]}\n" for i in range(N + 1) for j in range(N + 1 - i))
