"""Parsing, formatting and integer scaling of exact rationals."""

from __future__ import annotations

import math
from fractions import Fraction
from numbers import Rational

import numpy as np

from .errors import InvalidInputError

Rat = Fraction

# int64 headroom: sums of three scaled entries must not overflow
_INT64_SAFE = 2**60


def to_rat(value) -> Fraction:
    """Convert an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are rejected: every value entering the library must be exact.
    """
    if isinstance(value, bool):
        raise InvalidInputError(f"boolean is not a rational: {value!r}")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidInputError(f"not a rational literal: {value!r}") from exc
    raise InvalidInputError(f"expected int, Fraction or string, got {type(value).__name__}")


def rat_str(value: Fraction) -> str:
    """Canonical string form: ``"3"`` or ``"-3/2"``."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def decimal_str(value: Fraction, digits: int) -> str:
    """Render ``value`` rounded half-away-from-zero to ``digits`` decimals."""
    value = Fraction(value)
    scale = 10**digits
    sign = "-" if value < 0 else ""
    q = abs(value) * scale
    n = math.floor(q + Fraction(1, 2))
    whole, frac = divmod(n, scale)
    if digits == 0:
        return f"{sign}{whole}"
    return f"{sign}{whole}.{frac:0{digits}d}"


def common_denominator(values) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, Fraction(v).denominator)
    return den


def scaled_integer_array(rows, den: int | None = None):
    """Scale a rational matrix to integers.

    Returns ``(array, den)`` with ``array == rows * den`` exactly. The array
    is ``int64`` when magnitudes allow vectorised sums without overflow and
    ``object`` (Python ints) otherwise.
    """
    flat = [Fraction(v) for row in rows for v in row]
    if den is None:
        den = common_denominator(flat)
    ints = [v.numerator * (den // v.denominator) for v in flat]
    shape = (len(rows), len(rows[0]) if rows else 0)
    biggest = max((abs(v) for v in ints), default=0)
    dtype = np.int64 if biggest < _INT64_SAFE // 4 else object
    arr = np.array(ints, dtype=dtype).reshape(shape)
    return arr, den


def dyadic_power(value: Fraction, alpha: Fraction, bits: int) -> Fraction:
    """Lower dyadic approximation of ``value ** alpha``.

    The result ``r`` has denominator ``2**bits`` and satisfies
    ``r <= value**alpha < r + 2**-bits``. Exact when ``alpha == 1``.
    """
    value = Fraction(value)
    alpha = Fraction(alpha)
    if value < 0:
        raise InvalidInputError("dyadic_power needs a nonnegative base")
    if alpha == 1:
        return value
    if value == 0:
        return Fraction(0)
    p, q = alpha.numerator, alpha.denominator
    # floor((num/den)^(p/q) * 2^bits) = iroot(floor(num^p 2^(bits q) / den^p), q)
    radicand = (value.numerator**p << (bits * q)) // value.denominator**p
    return Fraction(iroot(radicand, q), 1 << bits)


def iroot(n: int, k: int) -> int:
    """Largest integer ``r`` with ``r**k <= n``."""
    if n < 0:
        raise ValueError("iroot of a negative number")
    if n < 2 or k == 1:
        return n
    r = 1 << -(-n.bit_length() // k)
    while True:
        nxt = ((k - 1) * r + n // r ** (k - 1)) // k
        if nxt >= r:
            break
        r = nxt
    while r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r
