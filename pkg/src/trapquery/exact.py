"""Exact rational scalars.

All coordinates in this package are exact: plain Python ints for input
data and `gmpy2.mpq` rationals for derived values (intersection points,
slab midpoints, parsed decimal queries).  The two types mix freely in
arithmetic, comparisons and hashing, so most code does not care which
one it holds.  Nothing here ever rounds.
"""

from __future__ import annotations

from typing import Union

from gmpy2 import mpq

Scalar = Union[int, "mpq"]

#: Symbolic x-extent of the bounding region.  Only ever compared against,
#: never used in arithmetic.
NEG_INF = float("-inf")
POS_INF = float("inf")


def rat(num, den=1) -> Scalar:
    """Exact rational num/den, normalised; returns an int when possible."""
    q = mpq(num, den)
    if q.denominator == 1:
        return int(q)
    return q


def parse_scalar(text: str) -> Scalar:
    """Parse an integer or decimal-fraction literal exactly.

    Accepts forms like ``7``, ``-3``, ``2.5``, ``-0.125``.  Decimal digits
    become an exact fraction over a power of ten; no float ever appears.
    """
    text = text.strip()
    if not text:
        raise ValueError("empty coordinate")
    sign = 1
    body = text
    if body[0] in "+-":
        if body[0] == "-":
            sign = -1
        body = body[1:]
    if "." in body:
        int_part, frac_part = body.split(".", 1)
        if not (int_part or frac_part) or not (int_part + frac_part).isdigit():
            raise ValueError(f"bad coordinate {text!r}")
        num = int(int_part or "0") * 10 ** len(frac_part) + int(frac_part or "0")
        return rat(sign * num, 10 ** len(frac_part))
    if not body.isdigit():
        raise ValueError(f"bad coordinate {text!r}")
    return sign * int(body)


def format_scalar(value: Scalar) -> str:
    """Render a scalar losslessly (``num/den`` form for non-integers)."""
    return str(value)


def midpoint(a: Scalar, b: Scalar) -> Scalar:
    return rat(a + b, 2) if isinstance(a, int) and isinstance(b, int) else (a + b) / 2
