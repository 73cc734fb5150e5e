"""Exact rational scalars, strict parsing, and tiny linear algebra helpers.

Every number in this package is a ``fractions.Fraction``: arbitrary
precision, kept in lowest terms with a positive denominator. Floats are
rejected everywhere; the accepted text forms are ``"p"`` and ``"p/q"``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionMismatch, ParseError

_RATIONAL_RE = re.compile(r"^[+-]?\d+(?:/[1-9]\d*)?$")


def frac(value) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction.

    Floats (and float-looking strings such as "1.5" or "1e3") raise
    ParseError: silently rounding them would defeat the point of the
    package.
    """
    if isinstance(value, bool):
        raise ParseError(f"not a rational scalar: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not _RATIONAL_RE.match(text):
            raise ParseError(f"not an exact rational literal: {value!r}")
        return Fraction(text)
    raise ParseError(f"unsupported scalar type {type(value).__name__!r}; "
                     "use int, Fraction, or a 'p/q' string")


def frac_str(value: Fraction) -> str:
    """Render a Fraction as "p" or "p/q" (never a float)."""
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def vector(values: Iterable, dim: int | None = None) -> tuple[Fraction, ...]:
    out = tuple(frac(v) for v in values)
    if dim is not None and len(out) != dim:
        raise DimensionMismatch(f"expected a vector of length {dim}, got {len(out)}")
    return out


def matrix(rows: Iterable[Sequence], width: int | None = None) -> tuple[tuple[Fraction, ...], ...]:
    out = tuple(vector(r) for r in rows)
    if out:
        w = width if width is not None else len(out[0])
        for r in out:
            if len(r) != w:
                raise DimensionMismatch("ragged matrix rows")
    elif width is not None:
        return ()
    return out


def vector_str(v: Sequence[Fraction]) -> str:
    return "(" + ", ".join(frac_str(c) for c in v) + ")"


def parse_vector(text: str, dim: int | None = None) -> tuple[Fraction, ...]:
    """Parse a comma-separated rational vector such as "1/2,-3,0"."""
    parts = [p for p in text.split(",") if p.strip() != ""]
    if not parts:
        raise ParseError(f"empty vector literal: {text!r}")
    return vector(parts, dim)


def dot(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != len(b):
        raise DimensionMismatch("dot product of vectors with different lengths")
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


def mat_vec(m: Sequence[Sequence[Fraction]], x: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(dot(row, x) for row in m)


def vec_add(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(a) != len(b):
        raise DimensionMismatch("adding vectors with different lengths")
    return tuple(x + y for x, y in zip(a, b))


def vec_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> tuple[Fraction, ...]:
    if len(a) != len(b):
        raise DimensionMismatch("subtracting vectors with different lengths")
    return tuple(x - y for x, y in zip(a, b))


def vec_scale(t: Fraction, a: Sequence[Fraction]) -> tuple[Fraction, ...]:
    return tuple(t * x for x in a)


def is_zero(v: Sequence[Fraction]) -> bool:
    return all(x == 0 for x in v)


def solve_linear(m: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]) -> tuple[Fraction, ...] | None:
    """Solve a square exact linear system; None when the matrix is singular."""
    n = len(m)
    if n != len(rhs) or any(len(row) != n for row in m):
        raise DimensionMismatch("solve_linear needs a square system")
    a = [list(row) + [r] for row, r in zip(m, rhs)]
    for col in range(n):
        piv = next((r for r in range(col, n) if a[r][col] != 0), None)
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        inv = a[col][col]
        a[col] = [x / inv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return tuple(a[r][n] for r in range(n))
