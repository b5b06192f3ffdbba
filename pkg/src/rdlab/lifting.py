"""Solutions of polynomial systems modulo 3^k, built up one level at a time.

A solution b mod 3^k lifts to b + v 3^k mod 3^(k+1) exactly when
Df(b) v = -f(b)/3^k over F3, so each lift step is one small affine solve.
The Jacobian mod 3 only depends on b mod 3, and the solve only on that
residue and the right-hand side, so both are memoised per system.
"""

from __future__ import annotations

import collections
import itertools
from dataclasses import dataclass
from typing import Callable, Counter, Dict, Iterator, List, Optional, Sequence, Tuple

from rdlab.f3 import F3Matrix, f3_affine_solutions, f3_rank
from rdlab.poly import PolySystem

Entries = Tuple[int, ...]
Constraint = Callable[["ResidueVec"], bool]


@dataclass(frozen=True)
class ResidueVec:
    level: int
    entries: Entries

    def __post_init__(self) -> None:
        if self.level < 1:
            raise ValueError("level must be at least 1")
        m = 3**self.level
        entries = tuple(int(e) % m for e in self.entries)
        object.__setattr__(self, "entries", entries)

    @property
    def modulus(self) -> int:
        return 3**self.level

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i: int) -> int:
        return self.entries[i]

    def reduce(self, level: int) -> "ResidueVec":
        if not 1 <= level <= self.level:
            raise ValueError(f"cannot reduce level {self.level} to {level}")
        return ResidueVec(level, self.entries)

    def to_json(self, system_name: str) -> dict:
        return {"system": system_name, "level": self.level, "entries": [str(e) for e in self.entries]}

    @classmethod
    def from_json(cls, obj: dict) -> "ResidueVec":
        return cls(int(obj["level"]), tuple(int(e) for e in obj["entries"]))


class SearchBudgetExceeded(RuntimeError):
    def __init__(self, nodes: int):
        super().__init__(f"node budget of {nodes} exhausted before reaching the target depth")
        self.nodes = nodes


def _check_level(sys: PolySystem, level: int) -> None:
    if level < 1:
        raise ValueError("level must be at least 1")
    if sys.max_level is not None and level > sys.max_level:
        raise ValueError(f"system {sys.name!r} is only defined up to level {sys.max_level}")


def eval_mod(sys: PolySystem, v: ResidueVec) -> Tuple[int, ...]:
    if len(v) != sys.nvars:
        raise ValueError(f"system {sys.name!r} has {sys.nvars} variables, got {len(v)} entries")
    _check_level(sys, v.level)
    m = v.modulus
    return tuple(p.eval_mod(v.entries, m) for p in sys.polys)


def jacobian_mod3(sys: PolySystem, v: ResidueVec) -> F3Matrix:
    if len(v) != sys.nvars:
        raise ValueError(f"system {sys.name!r} has {sys.nvars} variables, got {len(v)} entries")
    base = tuple(e % 3 for e in v.entries)
    rows = [[d.eval_mod(base, 3) for d in row] for row in sys.jacobian_polys]
    return F3Matrix.from_rows(rows, sys.nvars)


class Lifter:
    """Memoised lift step for one system; works on raw entry tuples."""

    def __init__(self, sys: PolySystem):
        self.sys = sys
        self.n = sys.nvars
        self._jac: Dict[Entries, F3Matrix] = {}
        self._offsets: Dict[Tuple[Entries, Entries], Tuple[Entries, ...]] = {}
        self._maxdeg = [max((e[i] for p in sys.polys for e in p.terms), default=0) for i in range(self.n)]

    def residuals(self, entries: Entries, modulus: int) -> List[int]:
        pw = []
        for x, d in zip(entries, self._maxdeg):
            row = [1]
            for _ in range(d):
                row.append(row[-1] * x % modulus)
            pw.append(row)
        out = []
        for p in self.sys.polys:
            total = 0
            for c, factors in p.compiled_mod(modulus):
                for i, k in factors:
                    c *= pw[i][k]
                total += c
            out.append(total % modulus)
        return out

    def jacobian(self, base3: Entries) -> F3Matrix:
        m = self._jac.get(base3)
        if m is None:
            m = jacobian_mod3(self.sys, ResidueVec(1, base3))
            self._jac[base3] = m
        return m

    def offsets(self, entries: Entries, level: int) -> Tuple[Entries, ...]:
        """All v in F3^n with entries + v 3^level a solution mod 3^(level+1)."""
        step = 3**level
        res = self.residuals(entries, step * 3)
        rhs = []
        for r in res:
            q, rem = divmod(r, step)
            if rem:
                raise ValueError(f"{entries} is not a solution modulo 3^{level}")
            rhs.append(-q % 3)
        base3 = tuple(e % 3 for e in entries)
        key = (base3, tuple(rhs))
        offs = self._offsets.get(key)
        if offs is None:
            offs = tuple(f3_affine_solutions(self.jacobian(base3), rhs))
            self._offsets[key] = offs
        return offs

    def children(self, entries: Entries, level: int) -> List[Entries]:
        step = 3**level
        return [tuple(e + o * step for e, o in zip(entries, off)) for off in self.offsets(entries, level)]

    def lift_count(self, entries: Entries, level: int) -> int:
        return len(self.offsets(entries, level))


def lift_solutions(sys: PolySystem, base: ResidueVec) -> List[ResidueVec]:
    """Every solution mod 3^(k+1) reducing to ``base`` (a solution mod 3^k)."""
    _check_level(sys, base.level + 1)
    if any(eval_mod(sys, base)):
        raise ValueError("base is not a solution at its own level")
    lifter = Lifter(sys)
    return [ResidueVec(base.level + 1, c) for c in lifter.children(base.entries, base.level)]


def level1_solutions(sys: PolySystem, constraint: Optional[Constraint] = None) -> List[ResidueVec]:
    """Exhaustive enumeration mod 3, lexicographic order."""
    if sys.nvars > 12:
        raise ValueError("too many variables for exhaustive enumeration mod 3")
    out = []
    for entries in itertools.product(range(3), repeat=sys.nvars):
        v = ResidueVec(1, entries)
        if any(eval_mod(sys, v)):
            continue
        if constraint is None or constraint(v):
            out.append(v)
    return out


def count_constrained(
    sys: PolySystem,
    constraint: Optional[Constraint],
    max_level: int,
    progress: Optional[Callable[[int, int], None]] = None,
) -> List[int]:
    """counts[k-1] = number of solutions mod 3^k whose reduction mod 3 passes ``constraint``.

    The tree under each level-1 seed is expanded breadth-first; the last level
    is only counted. Totals are plain sums, so seed order does not matter.
    """
    if max_level < 1:
        raise ValueError("max_level must be at least 1")
    _check_level(sys, max_level)
    seeds = level1_solutions(sys, constraint)
    counts = [0] * max_level
    counts[0] = len(seeds)
    lifter = Lifter(sys)
    for done, seed in enumerate(seeds, 1):
        frontier = [seed.entries]
        for level in range(1, max_level):
            if level == max_level - 1:
                counts[level] += sum(lifter.lift_count(b, level) for b in frontier)
                break
            nxt: List[Entries] = []
            for b in frontier:
                nxt.extend(lifter.children(b, level))
            counts[level] += len(nxt)
            frontier = nxt
        if progress is not None:
            progress(done, len(seeds))
    return counts


def lift_exists_to_depth(
    sys: PolySystem,
    constraint: Optional[Constraint],
    depth: int,
    budget: Optional[int] = None,
    reject: Optional[Constraint] = None,
) -> Optional[ResidueVec]:
    """Depth-first search for one solution mod 3^depth over a constrained seed.

    Children are tried in lift order with backtracking. ``reject`` prunes
    nodes at levels >= 2 (whole subtrees). Returns None once the tree is
    exhausted; raises SearchBudgetExceeded if more than ``budget`` nodes would
    have to be expanded.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    _check_level(sys, depth)
    seeds = level1_solutions(sys, constraint)
    if depth == 1:
        return seeds[0] if seeds else None
    lifter = Lifter(sys)
    nodes = 0
    for seed in seeds:
        stack: List[Iterator[Entries]] = [iter([seed.entries])]
        while stack:
            entries = next(stack[-1], None)
            if entries is None:
                stack.pop()
                continue
            level = len(stack)
            if reject is not None and level >= 2 and reject(ResidueVec(level, entries)):
                continue
            if level == depth:
                witness = ResidueVec(depth, entries)
                if any(eval_mod(sys, witness)):
                    raise AssertionError("lifted witness failed re-verification")
                return witness
            nodes += 1
            if budget is not None and nodes > budget:
                raise SearchBudgetExceeded(budget)
            stack.append(iter(lifter.children(entries, level)))
    return None


def guy_constraint(v: ResidueVec) -> bool:
    """Mod-3 pattern of a primitive four-distance solution: X, Y, Z, U units and T = 0."""
    if len(v) != 5:
        raise ValueError("expected (X, Y, Z, T, U)")
    X, Y, Z, T, U = (e % 3 for e in v.entries)
    return T == 0 and all(w != 0 for w in (X, Y, Z, U))


def nondegenerate_three_and_one(v: ResidueVec) -> bool:
    """Reject predicate for the exact family T = 0, X^2 = Y^2 = Z^2 = U^2.

    (1, 1, 1, 0, 1) solves the three-and-one system over Z (a square of side 0),
    so it lifts to every depth. Requiring v3(T) = 1 keeps the search off it.
    """
    return v.level >= 2 and v.entries[3] % 9 == 0


def units_constraint(indices: Sequence[int]) -> Constraint:
    """Constraint requiring the listed coordinates to be nonzero mod 3."""
    idx = tuple(indices)

    def check(v: ResidueVec) -> bool:
        return all(v.entries[i] % 3 for i in idx)

    return check


def rank_census(sys: PolySystem, constraint: Optional[Constraint] = None) -> Counter[int]:
    """Histogram of Jacobian ranks over all constrained solutions mod 3."""
    if sys.nvars > 8:
        raise ValueError("rank census is only defined for at most 8 variables")
    hist: Counter[int] = collections.Counter()
    for v in level1_solutions(sys, constraint):
        hist[f3_rank(jacobian_mod3(sys, v))] += 1
    return hist
