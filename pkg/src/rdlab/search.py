"""Bounded-height searches for rational-distance points of R_a.

Height model: a rational p/q in lowest terms has height max(|p|, q); a point
(x, y) is enumerated when both coordinates have height <= H. The filter is
applied to z = 2y.
"""

from __future__ import annotations

import collections
import json
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, TextIO, Tuple

from rdlab.congruence import FilterVerdict, verdict_from_valuations
from rdlab.exact import INFINITY, ExtValuation, as_rational, format_rational, parse_rational, v3
from rdlab.geometry import (
    HALF,
    DistanceReport,
    Point,
    Rectangle,
    TrivialLine,
    classify_trivial,
    four_distance_check,
    two_distance_check,
)

HEIGHT_MODEL = "height(p/q) = max(|p|, q) in lowest terms; point height = max over x and y"


def height(q: Fraction) -> int:
    return max(abs(q.numerator), q.denominator)


def enumerate_rationals(H: int) -> List[Fraction]:
    """Every rational of height <= H, ascending."""
    if H < 1:
        raise ValueError("height bound must be positive")
    out = [Fraction(0)]
    for q in range(1, H + 1):
        for p in range(1, H + 1):
            if math.gcd(p, q) == 1:
                out.append(Fraction(p, q))
                out.append(Fraction(-p, q))
    out.sort()
    return out


def _val_json(v: ExtValuation):
    return "inf" if v is INFINITY else v


def _val_from_json(v) -> ExtValuation:
    return INFINITY if v == "inf" else int(v)


@dataclass(frozen=True)
class PointRecord:
    a: Fraction
    x: Fraction
    y: Fraction
    distances: Tuple[Fraction, Fraction, Fraction, Fraction]
    trivial_line: Optional[TrivialLine]
    v3x: ExtValuation
    v3z: ExtValuation

    @classmethod
    def from_report(cls, report: DistanceReport) -> "PointRecord":
        line = classify_trivial(Rectangle(report.a), Point(report.x, report.y))
        return cls(
            a=report.a,
            x=report.x,
            y=report.y,
            distances=tuple(report.distances),
            trivial_line=None if line is TrivialLine.GENERIC else line,
            v3x=v3(report.x),
            v3z=v3(2 * report.y),
        )

    def to_json(self) -> dict:
        return {
            "x": format_rational(self.x),
            "y": format_rational(self.y),
            "a": format_rational(self.a),
            "d": [format_rational(d) for d in self.distances],
            "line": None if self.trivial_line is None else self.trivial_line.value,
            "v3x": _val_json(self.v3x),
            "v3z": _val_json(self.v3z),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, obj: dict) -> "PointRecord":
        """Load and re-verify; any disagreement with a fresh check raises."""
        a, x, y = (parse_rational(obj[k]) for k in ("a", "x", "y"))
        report = four_distance_check(Rectangle(a), Point(x, y))
        if report is None:
            raise ValueError(f"({obj['x']}, {obj['y']}) is not rational distance from R_{obj['a']}")
        rec = cls.from_report(report)
        stored = tuple(parse_rational(d) for d in obj["d"])
        line = None if obj.get("line") is None else TrivialLine(obj["line"])
        if stored != rec.distances or line != rec.trivial_line:
            raise ValueError(f"stored record for ({obj['x']}, {obj['y']}) does not re-verify")
        if (_val_from_json(obj["v3x"]), _val_from_json(obj["v3z"])) != (rec.v3x, rec.v3z):
            raise ValueError("stored valuations do not re-verify")
        return rec


@dataclass
class SearchStats:
    total_pairs: int = 0
    pruned_by_filter: int = 0
    checked: int = 0
    found: int = 0

    @property
    def pruned_fraction(self) -> Fraction:
        return Fraction(self.pruned_by_filter, self.total_pairs) if self.total_pairs else Fraction(0)

    def merge(self, other: "SearchStats") -> "SearchStats":
        return SearchStats(
            self.total_pairs + other.total_pairs,
            self.pruned_by_filter + other.pruned_by_filter,
            self.checked + other.checked,
            self.found + other.found,
        )


@dataclass
class SearchConfig:
    a: Fraction
    height: int
    use_filter: bool = True
    exclude_trivial: bool = True
    # half-open slice of the ascending x list; None means all strata
    x_start: Optional[int] = None
    x_stop: Optional[int] = None
    workers: int = 1

    def __post_init__(self) -> None:
        self.a = as_rational(self.a)
        if self.a == 0:
            raise ValueError("a must be nonzero")
        if self.height < 1:
            raise ValueError("height bound must be positive")


def _square_part(q: Fraction) -> Tuple[int, int]:
    return q.numerator * q.numerator, q.denominator * q.denominator


def _is_square(n: int) -> bool:
    r = math.isqrt(n)
    return r * r == n


def _sum_is_square(a: Tuple[int, int], b: Tuple[int, int]) -> bool:
    # n1/d1 + n2/d2 with square denominators is a rational square iff n1 d2 + n2 d1 is a square
    return _is_square(a[0] * b[1] + b[0] * a[1])


@dataclass
class _Stratum:
    """Precomputed per-y data shared by every x of a search."""

    ys: List[Fraction]
    lower: List[Tuple[int, int]] = field(default_factory=list)
    upper: List[Tuple[int, int]] = field(default_factory=list)
    vz: List[ExtValuation] = field(default_factory=list)

    def __post_init__(self) -> None:
        self.lower = [_square_part(y - HALF) for y in self.ys]
        self.upper = [_square_part(y + HALF) for y in self.ys]
        self.vz = [v3(2 * y) for y in self.ys]


def _search_xs(cfg: SearchConfig, xs: Sequence[Fraction], ys: Sequence[Fraction]) -> Tuple[List[PointRecord], SearchStats]:
    a = cfg.a
    va = v3(a)
    st = _Stratum(list(ys))
    verdicts: Dict[Tuple[ExtValuation, ExtValuation], FilterVerdict] = {}
    stats = SearchStats()
    records: List[PointRecord] = []
    rect = Rectangle(a)
    for x in xs:
        vx = v3(x)
        left = _square_part(x)
        right = _square_part(x - a)
        for j, y in enumerate(ys):
            stats.total_pairs += 1
            if cfg.use_filter:
                key = (vx, st.vz[j])
                verdict = verdicts.get(key)
                if verdict is None:
                    verdict = verdicts[key] = verdict_from_valuations(va, vx, st.vz[j])
                if verdict.excluded:
                    stats.pruned_by_filter += 1
                    continue
            stats.checked += 1
            lo, up = st.lower[j], st.upper[j]
            if not (
                _sum_is_square(left, lo)
                and _sum_is_square(left, up)
                and _sum_is_square(right, lo)
                and _sum_is_square(right, up)
            ):
                continue
            report = four_distance_check(rect, Point(x, y))
            if report is None:
                raise AssertionError(f"fast path and exact check disagree at ({x}, {y})")
            rec = PointRecord.from_report(report)
            if cfg.exclude_trivial and rec.trivial_line is not None:
                continue
            records.append(rec)
            stats.found += 1
    return records, stats


def _search_chunk(args) -> Tuple[List[PointRecord], SearchStats]:
    cfg, xs, ys = args
    return _search_xs(cfg, xs, ys)


def search_rectangle(cfg: SearchConfig) -> Tuple[List[PointRecord], SearchStats]:
    """Exhaustive search over the x-strata selected by ``cfg``.

    Output is sorted by (x, y), so it does not depend on ``workers``.
    """
    values = enumerate_rationals(cfg.height)
    xs = values[cfg.x_start : cfg.x_stop]
    if cfg.workers <= 1 or len(xs) < 2:
        records, stats = _search_xs(cfg, xs, values)
    else:
        n = cfg.workers * 4
        chunks = [xs[i::n] for i in range(n) if xs[i::n]]
        records, stats = [], SearchStats()
        with ProcessPoolExecutor(max_workers=cfg.workers) as pool:
            for recs, st in pool.map(_search_chunk, [(cfg, c, values) for c in chunks]):
                records.extend(recs)
                stats = stats.merge(st)
    records.sort(key=lambda r: (r.x, r.y))
    return records, stats


def search_header(cfg: SearchConfig, n_strata: int) -> dict:
    start = 0 if cfg.x_start is None else cfg.x_start
    stop = n_strata if cfg.x_stop is None else min(cfg.x_stop, n_strata)
    return {
        "header": {
            "a": format_rational(cfg.a),
            "height": cfg.height,
            "height_model": HEIGHT_MODEL,
            "filter": cfg.use_filter,
            "exclude_trivial": cfg.exclude_trivial,
            "strata": [start, stop],
            "n_strata": n_strata,
        }
    }


def write_records(fh: TextIO, records: Iterable[PointRecord], header: Optional[dict] = None) -> None:
    if header is not None:
        fh.write(json.dumps(header, separators=(",", ":")) + "\n")
    for rec in records:
        fh.write(rec.dumps() + "\n")


def read_records(fh: TextIO) -> List[PointRecord]:
    out = []
    for line in fh:
        line = line.strip()
        if not line:
            continue
        obj = json.loads(line)
        if "header" in obj:
            continue
        out.append(PointRecord.from_json(obj))
    return out


def valuation_histogram(values: Iterable[Fraction]) -> collections.Counter:
    return collections.Counter(v3(q) for q in values)


def filter_stats(a, H: int) -> SearchStats:
    """How many coordinate pairs of height <= H the 3-adic filter excludes.

    The verdict depends only on (v3(x), v3(z)), so the count is a sum over
    the product of the two valuation histograms.
    """
    a = as_rational(a)
    if a == 0:
        raise ValueError("a must be nonzero")
    va = v3(a)
    values = enumerate_rationals(H)
    hx = valuation_histogram(values)
    hz = valuation_histogram(2 * y for y in values)
    total = len(values) ** 2
    pruned = 0
    for vx, nx in hx.items():
        for vz, nz in hz.items():
            if verdict_from_valuations(va, vx, vz).excluded:
                pruned += nx * nz
    return SearchStats(total_pairs=total, pruned_by_filter=pruned, checked=total - pruned, found=0)


@dataclass(frozen=True)
class TwoDistanceSolution:
    point: Point
    r1: Fraction
    r2: Fraction


def _other_legs(A: int) -> List[int]:
    """All m > 0 with A^2 + m^2 a square: factor A^2 = (c - m)(c + m)."""
    n = A * A
    legs = []
    d = 1
    while d * d < n:
        if n % d == 0:
            e = n // d
            if (e - d) % 2 == 0:
                legs.append((e - d) // 2)
        d += 1
    return sorted(legs)


def gen_two_distance(max_leg: int) -> List[TwoDistanceSolution]:
    """Two-distance points from pairs of right triangles sharing a leg A.

    With A^2 + m^2 and A^2 + n^2 both squares (m < n), the point
    (A/(n-m), (m+n)/(2(n-m))) is at distances c_m/(n-m), c_n/(n-m) from
    (0, 1/2) and (0, -1/2). Scaled triples are included since every leg
    factorisation is enumerated.
    """
    if max_leg < 12:
        raise ValueError("max_leg must be at least 12")
    seen: Dict[Point, TwoDistanceSolution] = {}
    for A in range(1, max_leg + 1):
        legs = _other_legs(A)
        for i, m in enumerate(legs):
            for n in legs[i + 1 :]:
                s = n - m
                p = Point(Fraction(A, s), Fraction(m + n, 2 * s))
                if p in seen:
                    continue
                dist = two_distance_check(p.x, p.z)
                if dist is None:
                    raise AssertionError(f"generated point {p} fails the two-distance check")
                seen[p] = TwoDistanceSolution(p, *dist)
    return [seen[p] for p in sorted(seen, key=lambda q: (q.x, q.y))]
