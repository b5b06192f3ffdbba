"""One-parameter polynomial families (X(t), Y(t), Z(t), T(t)) for the three-distance
equation, and the 3-adic test that rules a family out as a source of
four-distance points.

A four-distance point needs v3(Z) < v3(T). For t with v3(t) < 0 the valuations
are governed by degrees and leading coefficients; for v3(t) >= 0 they are
governed by the reductions mod 3.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, NamedTuple, Optional, Sequence, Tuple, Union

from rdlab.exact import ExtValuation, as_rational, v3

Coeffs = Tuple[int, ...]

NAMES = ("X", "Y", "Z", "T")


def _trim(coeffs: Sequence[int]) -> Coeffs:
    c = [int(v) for v in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(coeffs: Coeffs) -> Optional[int]:
    """None for the zero polynomial; trailing zero coefficients are ignored."""
    c = _trim(coeffs)
    return len(c) - 1 if c else None


def horner(coeffs: Coeffs, t):
    acc = 0
    for c in reversed(coeffs):
        acc = acc * t + c
    return acc


@dataclass(frozen=True)
class Parametrization:
    """Coefficient tuples, constant term first."""

    X: Coeffs
    Y: Coeffs
    Z: Coeffs
    T: Coeffs

    def __post_init__(self) -> None:
        for name in NAMES:
            object.__setattr__(self, name, _trim(getattr(self, name)))

    def polys(self) -> Tuple[Coeffs, Coeffs, Coeffs, Coeffs]:
        return (self.X, self.Y, self.Z, self.T)

    @property
    def degrees(self) -> Dict[str, Optional[int]]:
        return {n: degree(c) for n, c in zip(NAMES, self.polys())}

    @property
    def max_degree(self) -> int:
        return max((d for d in self.degrees.values() if d is not None), default=0)

    def leading(self, name: str) -> int:
        c = getattr(self, name)
        return c[-1] if c else 0

    def constant(self, name: str) -> int:
        c = getattr(self, name)
        return c[0] if c else 0

    def to_json(self) -> dict:
        return {n: [str(v) for v in c] for n, c in zip(NAMES, self.polys())}

    @classmethod
    def from_json(cls, obj: dict) -> "Parametrization":
        missing = [n for n in NAMES if n not in obj]
        if missing:
            raise ValueError(f"parametrization is missing {', '.join(missing)}")
        return cls(*(tuple(int(v) for v in obj[n]) for n in NAMES))


def load_parametrization(path: Union[str, Path]) -> Parametrization:
    with open(path) as fh:
        return Parametrization.from_json(json.load(fh))


def builtin_octic() -> Parametrization:
    return Parametrization(
        X=(1, 8, 12, -24, -10, 24, 12, -8, 1),
        Y=(0, 8, 16, -8, 0, -8, -16, 8),
        Z=(1, 0, 12, -32, -10, -32, 12, 0, 1),
        T=(1, 0, -4, 0, 22, 0, -4, 0, 1),
    )


class ThreeAndOneTuple(NamedTuple):
    X: Fraction
    Y: Fraction
    Z: Fraction
    T: Fraction
    U: Optional[Fraction] = None


def eval_param(par: Parametrization, t) -> ThreeAndOneTuple:
    t = as_rational(t)
    return ThreeAndOneTuple(*(Fraction(horner(c, t)) for c in par.polys()))


def three_distance_residual(X, Y, Z, T):
    return 2 * (Y**4 + T**4) + X**4 + Z**4 - 2 * (X**2 + Z**2) * (Y**2 + T**2)


@dataclass(frozen=True)
class IdentityReport:
    holds: bool
    residuals: Tuple[Tuple[int, int], ...]

    def nonzero(self) -> List[Tuple[int, int]]:
        return [(t, r) for t, r in self.residuals if r]


def verify_identity(par: Parametrization) -> IdentityReport:
    """Check the three-distance equation along the family.

    The residual has degree at most 4 * max_degree, so vanishing at that many
    plus one integer points proves it vanishes identically.
    """
    samples = []
    for t in range(4 * par.max_degree + 1):
        X, Y, Z, T = (horner(c, t) for c in par.polys())
        samples.append((t, three_distance_residual(X, Y, Z, T)))
    return IdentityReport(holds=all(r == 0 for _, r in samples), residuals=tuple(samples))


class Verdict(enum.Enum):
    OBSTRUCTED = "Obstructed"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class NegativeCase:
    """v3(t) < 0: with unit leading coefficients, v3(P(t)) = deg P * v3(t)."""

    deg_Z: Optional[int]
    deg_T: Optional[int]
    v3_lead_Z: ExtValuation
    v3_lead_T: ExtValuation
    contradiction: bool
    note: str


@dataclass(frozen=True)
class NonNegativeCase:
    """v3(t) >= 0: T(t) mod 3 only depends on t mod 3."""

    T_mod3: Tuple[int, int, int]
    Z_mod3: Tuple[int, int, int]
    contradiction: bool
    note: str


@dataclass(frozen=True)
class ObstructionReport:
    verdict: Verdict
    case_neg: NegativeCase
    case_nonneg: NonNegativeCase

    def to_json(self) -> dict:
        def val(v):
            return v if isinstance(v, int) else str(v)

        return {
            "verdict": self.verdict.value,
            "case_neg": {
                "deg_Z": self.case_neg.deg_Z,
                "deg_T": self.case_neg.deg_T,
                "v3_lead_Z": val(self.case_neg.v3_lead_Z),
                "v3_lead_T": val(self.case_neg.v3_lead_T),
                "contradiction": self.case_neg.contradiction,
                "note": self.case_neg.note,
            },
            "case_nonneg": {
                "T_mod3": {str(r): v for r, v in enumerate(self.case_nonneg.T_mod3)},
                "Z_mod3": {str(r): v for r, v in enumerate(self.case_nonneg.Z_mod3)},
                "contradiction": self.case_nonneg.contradiction,
                "note": self.case_nonneg.note,
            },
        }


def _negative_case(par: Parametrization) -> NegativeCase:
    dz, dt = degree(par.Z), degree(par.T)
    lz, lt = v3(par.leading("Z")), v3(par.leading("T"))
    if dz is None or dt is None:
        return NegativeCase(dz, dt, lz, lt, False, "Z or T is identically zero")
    if lz != 0 or lt != 0:
        return NegativeCase(dz, dt, lz, lt, False, "a leading coefficient is divisible by 3")
    if dz <= dt:
        # v3(t) < 0 and deg Z <= deg T give v3(Z) = dz*v3(t) >= dt*v3(t) = v3(T)
        note = f"v3(Z) = {dz}*v3(t) >= {dt}*v3(t) = v3(T)"
        if dz == dt:
            note = f"v3(Z) = v3(T) = {dz}*v3(t)"
        return NegativeCase(dz, dt, lz, lt, True, note)
    return NegativeCase(dz, dt, lz, lt, False, f"deg Z = {dz} > deg T = {dt} allows v3(Z) < v3(T)")


def _nonnegative_case(par: Parametrization) -> NonNegativeCase:
    tm = tuple(horner(par.T, r) % 3 for r in range(3))
    zm = tuple(horner(par.Z, r) % 3 for r in range(3))
    if all(tm):
        note = "T is a unit for every t with v3(t) >= 0, so v3(T) = 0 <= v3(Z)"
        return NonNegativeCase(tm, zm, True, note)
    bad = [r for r in range(3) if tm[r] == 0]
    return NonNegativeCase(tm, zm, False, f"T vanishes mod 3 for t = {bad} mod 3")


def obstruction_check(par: Parametrization) -> ObstructionReport:
    """Obstructed iff both ranges of v3(t) contradict v3(Z) < v3(T).

    Uses only degrees, leading coefficients and reductions mod 3, so it does
    not depend on the family actually satisfying the three-distance equation.
    """
    neg = _negative_case(par)
    nonneg = _nonnegative_case(par)
    verdict = Verdict.OBSTRUCTED if neg.contradiction and nonneg.contradiction else Verdict.INCONCLUSIVE
    return ObstructionReport(verdict, neg, nonneg)


def valuation_profile(par: Parametrization, t) -> Tuple[ExtValuation, ...]:
    return tuple(v3(c) for c in eval_param(par, t)[:4])
