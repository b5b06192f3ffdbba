"""Matrices over the field with three elements."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

Vec = Tuple[int, ...]


@dataclass(frozen=True)
class F3Matrix:
    entries: Tuple[Vec, ...]
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], ncols: Optional[int] = None) -> "F3Matrix":
        rows = tuple(tuple(int(v) % 3 for v in r) for r in rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged matrix")
        return cls(rows, ncols)

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "F3Matrix":
        return cls(tuple((0,) * ncols for _ in range(nrows)), ncols)

    @property
    def nrows(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> Vec:
        return self.entries[i]

    def tolist(self) -> List[List[int]]:
        return [list(r) for r in self.entries]


def _rref(rows: List[List[int]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    """Reduced row echelon form over F3 on the first ``ncols`` columns (in place)."""
    pivots: List[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        # every nonzero element of F3 is its own inverse
        inv = rows[r][c]
        rows[r] = [(v * inv) % 3 for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                f = rows[i][c]
                rows[i] = [(vi - f * vr) % 3 for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def f3_rank(m: F3Matrix) -> int:
    _, pivots = _rref([list(r) for r in m.entries], m.ncols)
    return len(pivots)


def f3_solve(m: F3Matrix, rhs: Sequence[int]) -> Optional[Tuple[Vec, List[Vec]]]:
    """Solve m v = rhs over F3.

    Returns (particular solution with free variables zero, nullspace basis),
    or None when the system is inconsistent.
    """
    n = m.ncols
    aug = [list(r) + [int(b) % 3] for r, b in zip(m.entries, rhs)]
    if len(aug) != m.nrows:
        raise ValueError("right-hand side length does not match row count")
    aug, pivots = _rref(aug, n)
    for row in aug[len(pivots):]:
        if row[n]:
            return None
    particular = [0] * n
    for i, c in enumerate(pivots):
        particular[c] = aug[i][n]
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            v[c] = (-aug[i][f]) % 3
        basis.append(tuple(v))
    return tuple(particular), basis


def f3_affine_solutions(m: F3Matrix, rhs: Sequence[int]) -> List[Vec]:
    """Every solution of m v = rhs, in lexicographic order of nullspace coordinates."""
    sol = f3_solve(m, rhs)
    if sol is None:
        return []
    particular, basis = sol
    out = []
    for coords in itertools.product(range(3), repeat=len(basis)):
        v = list(particular)
        for c, b in zip(coords, basis):
            if c:
                v = [(vi + c * bi) % 3 for vi, bi in zip(v, b)]
        out.append(tuple(v))
    return out
