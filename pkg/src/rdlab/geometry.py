"""Distance predicates for the rectangle with vertices (0, ±1/2), (a, ±1/2).

A point (x, y) is carried with its y coordinate; the quartic and the filter are
phrased in z = 2y, which is derived on demand.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Tuple, Union

from rdlab.exact import as_rational, format_rational, is_rational_square, parse_rational

HALF = Fraction(1, 2)

RationalLike = Union[int, str, Fraction]


@dataclass(frozen=True)
class Point:
    x: Fraction
    y: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "x", as_rational(self.x))
        object.__setattr__(self, "y", as_rational(self.y))

    @property
    def z(self) -> Fraction:
        return 2 * self.y

    @classmethod
    def from_xz(cls, x: RationalLike, z: RationalLike) -> "Point":
        return cls(as_rational(x), as_rational(z) / 2)


@dataclass(frozen=True)
class Rectangle:
    a: Fraction

    def __post_init__(self) -> None:
        a = as_rational(self.a)
        if a == 0:
            raise ValueError("rectangle side a must be nonzero")
        object.__setattr__(self, "a", a)

    @property
    def vertices(self) -> Tuple[Tuple[Fraction, Fraction], ...]:
        """In the fixed order (0, 1/2), (0, -1/2), (a, 1/2), (a, -1/2)."""
        a = self.a
        return ((Fraction(0), HALF), (Fraction(0), -HALF), (a, HALF), (a, -HALF))


@dataclass(frozen=True)
class DistanceReport:
    """Squared and (when rational) exact distances from a point to the four vertices."""

    a: Fraction
    x: Fraction
    y: Fraction
    squared: Tuple[Fraction, Fraction, Fraction, Fraction]
    distances: Tuple[Optional[Fraction], ...]

    @property
    def complete(self) -> bool:
        return all(d is not None for d in self.distances)

    @property
    def rational_count(self) -> int:
        return sum(d is not None for d in self.distances)

    def to_json(self) -> dict:
        return {
            "x": format_rational(self.x),
            "y": format_rational(self.y),
            "a": format_rational(self.a),
            "d": [None if d is None else format_rational(d) for d in self.distances],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "DistanceReport":
        """Rebuild from JSON and re-derive everything; stored distances must agree."""
        rect = Rectangle(parse_rational(obj["a"]))
        p = Point(parse_rational(obj["x"]), parse_rational(obj["y"]))
        report = distance_report(rect, p)
        stored = tuple(None if d is None else parse_rational(d) for d in obj["d"])
        if stored != report.distances:
            raise ValueError(f"stored distances {obj['d']} do not re-verify")
        return report


@dataclass(frozen=True)
class QuarticProfile:
    c: Fraction
    disc: Fraction
    rational_roots: frozenset


class TrivialLine(enum.Enum):
    X_ZERO = "x=0"
    X_HALF_A = "x=a/2"
    X_A = "x=a"
    Y_MINUS_HALF = "y=-1/2"
    Y_ZERO = "y=0"
    Y_HALF = "y=1/2"
    GENERIC = "generic"


def squared_distance(p: Tuple[Fraction, Fraction], q: Tuple[Fraction, Fraction]) -> Fraction:
    dx = p[0] - q[0]
    dy = p[1] - q[1]
    return dx * dx + dy * dy


def two_distance_check(x: RationalLike, z: RationalLike) -> Optional[Tuple[Fraction, Fraction]]:
    """Distances from (x, z/2) to (0, 1/2) and (0, -1/2), if both are rational."""
    x = as_rational(x)
    y = as_rational(z) / 2
    r1 = is_rational_square(x * x + (y - HALF) ** 2)
    if r1 is None:
        return None
    r2 = is_rational_square(x * x + (y + HALF) ** 2)
    if r2 is None:
        return None
    return r1, r2


def pxz_eval(x: RationalLike, z: RationalLike, u: RationalLike) -> Fraction:
    x, z, u = as_rational(x), as_rational(z), as_rational(u)
    u2 = u * u
    return u2 * u2 - (z * z + 4 * x * x + 1) * u2 + z * z


def pxz_rational_roots(x: RationalLike, z: RationalLike) -> QuarticProfile:
    """Rational roots of u^4 - (z^2 + 4x^2 + 1)u^2 + z^2.

    Solved as a quadratic in u^2, so only two exact square tests are needed.
    """
    x, z = as_rational(x), as_rational(z)
    c = z * z + 4 * x * x + 1
    disc = c * c - 4 * z * z
    roots = set()
    s = is_rational_square(disc)
    if s is not None:
        for u2 in {(c + s) / 2, (c - s) / 2}:
            r = is_rational_square(u2)
            if r is not None:
                roots.update((r, -r))
    return QuarticProfile(c=c, disc=disc, rational_roots=frozenset(roots))


def distance_report(rect: Rectangle, p: Point) -> DistanceReport:
    here = (p.x, p.y)
    squared = tuple(squared_distance(here, v) for v in rect.vertices)
    distances = tuple(is_rational_square(s) for s in squared)
    return DistanceReport(a=rect.a, x=p.x, y=p.y, squared=squared, distances=distances)


def four_distance_check(rect: Rectangle, p: Point) -> Optional[DistanceReport]:
    report = distance_report(rect, p)
    return report if report.complete else None


def reciprocal_transform(rect: Rectangle, p: Point) -> Tuple[Rectangle, Point]:
    """Similarity carrying the vertices of R_a onto those of R_{1/a}.

    Every distance is scaled by 1/|a|. On the x-axis this is
    (x, 0) -> (1/(2a), x/a - 1/2).
    """
    a = rect.a
    return Rectangle(1 / a), Point(p.y / a + 1 / (2 * a), p.x / a - HALF)


def classify_trivial(rect: Rectangle, p: Point) -> TrivialLine:
    """First of the six discard lines containing p, in the order x=0, x=a/2, x=a, y=-1/2, y=0, y=1/2."""
    a = rect.a
    checks = (
        (TrivialLine.X_ZERO, p.x == 0),
        (TrivialLine.X_HALF_A, p.x == a / 2),
        (TrivialLine.X_A, p.x == a),
        (TrivialLine.Y_MINUS_HALF, p.y == -HALF),
        (TrivialLine.Y_ZERO, p.y == 0),
        (TrivialLine.Y_HALF, p.y == HALF),
    )
    for line, hit in checks:
        if hit:
            return line
    return TrivialLine.GENERIC
