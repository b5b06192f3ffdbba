"""Exact rational arithmetic helpers: valuations, square tests, reduction mod 3^k.

Rationals are plain :class:`fractions.Fraction` values, which are already kept
in lowest terms with a positive denominator, so structural equality and
hashing work out of the box.
"""

from __future__ import annotations

import functools
import math
import re
from fractions import Fraction
from typing import Optional, Union

Rational = Fraction

_RATIONAL_RE = re.compile(r"^\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class _Infinity:
    """The valuation of zero. Compares greater than every integer."""

    _instance: Optional["_Infinity"] = None

    def __new__(cls) -> "_Infinity":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "Infinity"

    __str__ = __repr__

    def __hash__(self) -> int:
        return hash("rdlab.Infinity")

    def __eq__(self, other: object) -> bool:
        return other is self

    def __lt__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return False
        return NotImplemented

    def __le__(self, other: object) -> bool:
        if other is self:
            return True
        if isinstance(other, int):
            return False
        return NotImplemented

    def __gt__(self, other: object) -> bool:
        if other is self:
            return False
        if isinstance(other, int):
            return True
        return NotImplemented

    def __ge__(self, other: object) -> bool:
        if other is self or isinstance(other, int):
            return True
        return NotImplemented

    def __reduce__(self):
        return (_Infinity, ())


INFINITY = _Infinity()

ExtValuation = Union[int, _Infinity]


def as_rational(value: Union[int, str, Fraction]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return parse_rational(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Floats and other notations are refused."""
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ValueError(f"not a rational literal: {text!r}")
    num = int(m.group(1))
    den = int(m.group(2)) if m.group(2) is not None else 1
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q: Fraction) -> str:
    return str(q)


@functools.lru_cache(maxsize=64)
def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    for d in range(3, math.isqrt(p) + 1, 2):
        if p % d == 0:
            return False
    return True


def _int_valuation(n: int, p: int) -> int:
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(q: Union[int, Fraction], p: int) -> ExtValuation:
    """p-adic valuation of a rational; :data:`INFINITY` for zero."""
    if not _is_prime(p):
        raise ValueError(f"valuation base must be prime, got {p}")
    q = as_rational(q)
    if q == 0:
        return INFINITY
    return _int_valuation(abs(q.numerator), p) - _int_valuation(q.denominator, p)


def v3(q: Union[int, Fraction]) -> ExtValuation:
    return vp(q, 3)


def is_perfect_square(n: int) -> Optional[int]:
    """Return the nonnegative integer root of ``n`` if it has one, else None."""
    if n < 0:
        return None
    r = math.isqrt(n)
    return r if r * r == n else None


def is_rational_square(q: Union[int, Fraction]) -> Optional[Fraction]:
    q = as_rational(q)
    if q < 0:
        return None
    rn = is_perfect_square(q.numerator)
    if rn is None:
        return None
    rd = is_perfect_square(q.denominator)
    if rd is None:
        return None
    return Fraction(rn, rd)


def reduce_mod(q: Union[int, Fraction], k: int) -> int:
    """Image of a 3-integral rational in Z/3^k."""
    if k < 1:
        raise ValueError("level must be a positive integer")
    q = as_rational(q)
    if q.denominator % 3 == 0:
        raise ValueError(f"{q} is not 3-integral")
    modulus = 3**k
    return q.numerator * pow(q.denominator, -1, modulus) % modulus
