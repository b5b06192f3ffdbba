"""3-adic exclusion test for rational-distance points, and the valuation facts
about the classical rectangle families (ratios 2t/(1-t^2) and the
two-triple ratios (p1 q2 + p2 q1)/(p1 p2 + q1 q2))."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional

from rdlab.exact import INFINITY, ExtValuation, as_rational, v3


class Clause(enum.Enum):
    BOTH_NONNEGATIVE = "BothNonNegative"
    EQUAL_VALUATIONS = "EqualValuations"


@dataclass(frozen=True)
class FilterVerdict:
    clause: Optional[Clause] = None
    reason: str = ""

    @property
    def excluded(self) -> bool:
        return self.clause is not None

    def __str__(self) -> str:
        if self.clause is not None:
            return f"Excluded({self.clause.value})"
        return f"Undetermined({self.reason})"


NO_HYPOTHESIS = "hypothesis v3(a)=0 fails"


def filter_verdict(a, x, z) -> FilterVerdict:
    """Decide whether (x, z/2) is ruled out as a rational-distance point of R_a.

    With v3(a) = 0 a point survives only if v3(x) < 0 or v3(z) < 0, and
    v3(x) != v3(z). When v3(a) != 0 only the equal-negative case is still
    covered, since that argument uses the (x, z) quartic alone.
    """
    a = as_rational(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    return verdict_from_valuations(v3(a), v3(x), v3(z))


def verdict_from_valuations(va: ExtValuation, vx: ExtValuation, vz: ExtValuation) -> FilterVerdict:
    """The verdict only depends on the three valuations; searches memoise on this."""
    if va == 0:
        if vx >= 0 and vz >= 0:
            return FilterVerdict(Clause.BOTH_NONNEGATIVE)
        if vx == vz:
            return FilterVerdict(Clause.EQUAL_VALUATIONS)
        return FilterVerdict(reason="v3(x) != v3(z) and one of them is negative")
    if vx == vz and vx is not INFINITY and vx < 0:
        return FilterVerdict(Clause.EQUAL_VALUATIONS)
    return FilterVerdict(reason=NO_HYPOTHESIS)


def corollary_two_distance(x, z) -> bool:
    """For a two-distance solution (x, z/2): v3(x) = 0 forces v3(z) < 0."""
    if v3(x) != 0:
        return True
    vz = v3(z)
    return vz is not INFINITY and vz < 0


def bu_ratio(t) -> Fraction:
    t = as_rational(t)
    if t == 0 or t * t == 1:
        raise ValueError(f"2t/(1-t^2) undefined or degenerate at t={t}")
    return 2 * t / (1 - t * t)


@dataclass(frozen=True, order=True)
class PythTriple:
    p: int
    q: int
    r: int

    def __post_init__(self) -> None:
        if min(self.p, self.q, self.r) <= 0 or self.p**2 + self.q**2 != self.r**2:
            raise ValueError(f"({self.p}, {self.q}, {self.r}) is not a Pythagorean triple")

    @property
    def primitive(self) -> bool:
        return math.gcd(self.p, self.q) == 1


def sy_ratio(t1: PythTriple, t2: PythTriple) -> Fraction:
    return Fraction(t1.p * t2.q + t2.p * t1.q, t1.p * t2.p + t1.q * t2.q)


def primitive_triples(max_hypotenuse: int) -> List[PythTriple]:
    """All primitive triples with hypotenuse <= bound, legs ordered p < q, sorted by (r, p)."""
    out = []
    m = 2
    while m * m + 1 <= max_hypotenuse:
        for n in range(1, m):
            r = m * m + n * n
            if r > max_hypotenuse:
                break
            if (m - n) % 2 == 1 and math.gcd(m, n) == 1:
                a, b = m * m - n * n, 2 * m * n
                out.append(PythTriple(min(a, b), max(a, b), r))
        m += 1
    out.sort(key=lambda tr: (tr.r, tr.p))
    return out
