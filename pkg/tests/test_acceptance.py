"""Acceptance suite: one test per criterion, reported as PASS/FAIL lines by conftest.py.

Run alone with ``pytest tests/test_acceptance.py -v``. Each oracle below is
independent of the code under test (plain integer formulas, brute force, or
hand-checked arithmetic).
"""

import io
import itertools
import json
import resource
import subprocess
import sys
import time
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rdlab.cli import main
from rdlab.congruence import PythTriple, bu_ratio, corollary_two_distance, primitive_triples, sy_ratio
from rdlab.exact import v3
from rdlab.f3 import f3_rank
from rdlab.geometry import Point, Rectangle, distance_report, two_distance_check
from rdlab.lifting import (
    guy_constraint,
    jacobian_mod3,
    level1_solutions,
    lift_solutions,
    rank_census,
    units_constraint,
)
from rdlab.parametrization import builtin_octic, valuation_profile
from rdlab.poly import builtin_system
from rdlab.search import SearchConfig, enumerate_rationals, search_rectangle, write_records

# pinned limits and tolerances
COUNT_TIME_LIMIT_S = 15 * 60
COUNT_MEMORY_LIMIT_KB = 1024 * 1024
DEPTH_TIME_LIMIT_S = 5 * 60
ORACLE_TIME_LIMIT_S = 10
STABILITY_TOLERANCE = F(5, 100)

GOLDEN = json.loads((Path(__file__).parent / "golden" / "filter_stats_a1.json").read_text())


def criterion(n, title):
    return pytest.mark.criterion(n, title)


def cli(capsys, *argv):
    code = main(list(argv))
    out, _ = capsys.readouterr()
    return code, out


def residuals_31(X, Y, Z, T, U):
    return (
        2 * (Y**4 + T**4) + X**4 + Z**4 - 2 * (X**2 + Z**2) * (Y**2 + T**2),
        U**2 + Y**2 - X**2 - Z**2,
    )


@criterion(1, "counting sequence 16, 1296, 34992, 1154736, 31177872 (exact; < 15 min, < 1 GB)")
def test_counting_sequence():
    start = time.monotonic()
    proc = subprocess.run(
        [sys.executable, "-m", "rdlab.cli", "lift", "count", "--system", "three-and-one", "--levels", "5"],
        capture_output=True,
        text=True,
        check=True,
    )
    elapsed = time.monotonic() - start
    peak_kb = resource.getrusage(resource.RUSAGE_CHILDREN).ru_maxrss
    rows = [line.split(",") for line in proc.stdout.splitlines()[1:]]
    assert [int(r[1]) for r in rows] == [16, 1296, 34992, 1154736, 31177872]
    assert [r[2] for r in rows[1:]] == ["81", "27", "33", "27"]
    assert elapsed < COUNT_TIME_LIMIT_S
    assert peak_kb < COUNT_MEMORY_LIMIT_KB
    print(f"lift count: {elapsed:.1f} s, peak child rss {peak_kb / 1024:.0f} MB")


@criterion(2, "depth-100 witness re-verified mod 3^100 (< 5 min)")
@pytest.mark.parametrize("extra", [[], ["--nondegenerate"]], ids=["default", "nondegenerate"])
def test_deep_liftability(capsys, extra):
    start = time.monotonic()
    code, out = cli(capsys, "lift", "exist", "--depth", "100", *extra)
    elapsed = time.monotonic() - start
    assert code == 0
    obj = json.loads(out)
    assert obj["system"] == "three-and-one" and obj["level"] == 100
    X, Y, Z, T, U = (int(e) for e in obj["entries"])
    m = 3**100
    assert all(r % m == 0 for r in residuals_31(X, Y, Z, T, U))
    assert all(c % 3 for c in (X, Y, Z, U)) and T % 3 == 0
    if extra:
        assert T % 9 != 0
    assert elapsed < DEPTH_TIME_LIMIT_S


@criterion(3, "a = 4/11 point: distances, Undetermined verdict, (v3x, v3z) = (0, -1)")
def test_a_4_11_point(capsys):
    code, out = cli(capsys, "check-point", "--a", "4/11", "--x", "-8/13", "--y", "-25/78")
    assert code == 0
    obj = json.loads(out)
    assert obj["d"] == ["40/39", "25/39", "548/429", "427/429"]
    assert obj["verdict"].startswith("Undetermined")
    assert (obj["v3x"], obj["v3z"]) == (0, -1)
    # oracle: squared distances by hand, over the common denominator 429 = 3 * 11 * 13
    x, y, a = F(-8, 13), F(-25, 78), F(4, 11)
    for (cx, cy), d in zip([(0, F(1, 2)), (0, F(-1, 2)), (a, F(1, 2)), (a, F(-1, 2))], obj["d"]):
        assert (x - cx) ** 2 + (y - cy) ** 2 == F(d) ** 2


@criterion(4, "three-distance point (6493/28900, 12463/14450) with v3(x) = v3(z) = 0")
def test_three_distance_point():
    p = Point(F(6493, 28900), F(12463, 14450))
    rep = distance_report(Rectangle(1), p)
    rational = [d is not None for d in rep.distances]
    # corners in order (0, 1/2), (0, -1/2), (1, 1/2), (1, -1/2)
    assert rational == [True, False, True, True]
    assert rep.distances[0] == F(29, 68)
    assert (v3(p.x), v3(p.z)) == (0, 0)
    assert 6493 % 3 and 12463 % 3 and 28900 % 3 and 7225 % 3


@criterion(5, "octic obstruction: Obstructed, T = 1 mod 3, v3(Z) = v3(T) = 8 v3(t)")
def test_octic_obstruction(capsys):
    code, out = cli(capsys, "param", "obstruct", "--builtin", "octic")
    obj = json.loads(out)
    assert code == 0 and obj["verdict"] == "Obstructed"
    assert obj["case_nonneg"]["T_mod3"] == {"0": 1, "1": 1, "2": 1}
    assert obj["case_neg"]["note"] == "v3(Z) = v3(T) = 8*v3(t)"
    octic = builtin_octic()
    for k in range(1, 5):
        for num in (1, 2, 4, 5, 7, -1, -2):
            t = F(num, 3**k)
            _, _, vz, vt = valuation_profile(octic, t)
            assert vz == vt == -8 * k


def _serialise(records):
    buf = io.StringIO()
    write_records(buf, records)
    return buf.getvalue()


@criterion(6, "filter transparency at H = 24 for a in {1, 4/11, 5/7}; a = 1 set is empty")
@pytest.mark.parametrize("a", [F(1), F(4, 11), F(5, 7)], ids=str)
def test_filter_transparency(a):
    filtered, s1 = search_rectangle(SearchConfig(a, 24))
    plain, s2 = search_rectangle(SearchConfig(a, 24, use_filter=False))
    assert _serialise(filtered) == _serialise(plain)
    assert s1.total_pairs == s2.total_pairs == len(enumerate_rationals(24)) ** 2
    if a == 1:
        assert filtered == []


@criterion(6, "filter transparency at H = 24 for a in {1, 4/11, 5/7}; a = 1 set is empty")
@settings(max_examples=25, deadline=None)
@given(st.sampled_from(enumerate_rationals(12)).filter(lambda q: q != 0))
def test_filter_transparency_property(a):
    filtered, _ = search_rectangle(SearchConfig(a, 5, exclude_trivial=False))
    plain, _ = search_rectangle(SearchConfig(a, 5, use_filter=False, exclude_trivial=False))
    assert _serialise(filtered) == _serialise(plain)


@criterion(7, "level-2 lifted set equals brute force over 9^5 vectors, |S| = 1296 (< 10 s)")
def test_oracle_equivalence_mod_9():
    start = time.monotonic()
    sys31 = builtin_system("three-and-one")
    lifted = {child.entries for seed in level1_solutions(sys31, guy_constraint) for child in lift_solutions(sys31, seed)}
    brute = {
        v
        for v in itertools.product(range(9), repeat=5)
        if all(c % 3 for c in (v[0], v[1], v[2], v[4]))
        and v[3] % 3 == 0
        and all(r % 9 == 0 for r in residuals_31(*v))
    }
    elapsed = time.monotonic() - start
    assert lifted == brute
    assert len(brute) == 1296
    assert elapsed < ORACLE_TIME_LIMIT_S


@criterion(8, "rank censuses for two-dist-pair, scaled and three-and-one")
def test_rank_censuses():
    # a = 1 mod 3 in every case below (2/5 = 2 * 2^-1 = 1 mod 3)
    for a in (F(1), F(4), F(10), F(2, 5)):
        s = builtin_system("two-dist-pair", a)
        sols = level1_solutions(s)
        assert sols and all(v[1] == 0 for v in sols)
        assert all(f3_rank(jacobian_mod3(s, v)) <= 1 for v in sols)
    scaled = builtin_system("scaled")
    unit_sols = level1_solutions(scaled, units_constraint((1, 2, 3)))
    assert len(unit_sols) == 24
    assert dict(rank_census(scaled, units_constraint((1, 2, 3)))) == {2: 24}
    sys31 = builtin_system("three-and-one")
    seeds = level1_solutions(sys31, guy_constraint)
    assert len(seeds) == 16
    assert all(jacobian_mod3(sys31, v).row(0) == (0,) * 5 for v in seeds)


@criterion(9, "one leg divisible by 3; bu_ratio and sy_ratio never have v3 = 0")
def test_triple_property():
    triples = primitive_triples(1000)
    assert len(triples) == 158
    for t in triples:
        assert (t.p % 3 == 0) + (t.q % 3 == 0) == 1
    for t in enumerate_rationals(100):
        if t not in (0, 1, -1):
            assert v3(bu_ratio(t)) != 0
    legs = [PythTriple(k * t.p, k * t.q, k * t.r) for t in primitive_triples(100) for k in range(1, 100 // t.r + 1)]
    legs += [PythTriple(t.q, t.p, t.r) for t in legs]
    for t1 in legs:
        for t2 in legs:
            assert v3(sy_ratio(t1, t2)) != 0


@criterion(10, "two-distance generator at max_leg 200 re-verifies and satisfies the corollary")
def test_two_distance_generator(capsys):
    code, out = cli(capsys, "gen", "two-dist", "--max-leg", "200")
    assert code == 0
    rows = [tuple(F(c) for c in line.split(",")) for line in out.splitlines()[1:]]
    assert rows
    points = set()
    for x, y, r1, r2 in rows:
        assert two_distance_check(x, 2 * y) == (r1, r2)
        # independent oracle: the two squared distances are the squares of r1, r2
        assert x * x + (y - F(1, 2)) ** 2 == r1 * r1 and x * x + (y + F(1, 2)) ** 2 == r2 * r2
        assert corollary_two_distance(x, 2 * y)
        points.add((x, y))
    assert (F(3), F(7, 4)) in points
    assert (F(8, 9), F(7, 6)) in points


@criterion(11, "filter-stats for a = 1 at H = 48 and 96: deterministic, within 0.05, golden")
def test_filter_stats_stability(capsys):
    fractions = {}
    for H in (48, 96):
        runs = [cli(capsys, "filter-stats", "--a", "1", "--height", str(H))[1] for _ in range(2)]
        assert runs[0] == runs[1]
        total, pruned, frac = runs[0].splitlines()[1].split(",")
        golden = GOLDEN["stats"][str(H)]
        assert (int(total), int(pruned), frac) == (golden["total"], golden["pruned"], golden["fraction"])
        fractions[H] = F(frac)
    assert abs(fractions[48] - fractions[96]) < STABILITY_TOLERANCE
    print(f"pruned fraction a=1: H=48 {float(fractions[48]):.6f}, H=96 {float(fractions[96]):.6f}")
