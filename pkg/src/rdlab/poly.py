"""Sparse multivariate polynomials over Z (or 3-integral rationals) and the
three built-in systems used by the lifting code."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

from rdlab.exact import as_rational, reduce_mod, v3

Coeff = Union[int, Fraction]
Exps = Tuple[int, ...]


def _norm_coeff(c: Coeff) -> Coeff:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class MultiPoly:
    """Polynomial in ``nvars`` variables stored as {exponent vector: coefficient}.

    Coefficients are integers, or rationals whose denominators are prime to 3
    (so they still make sense modulo 3^k). Zero coefficients are never stored.
    """

    __slots__ = ("nvars", "terms", "_mod_cache")

    def __init__(self, nvars: int, terms: Optional[Dict[Exps, Coeff]] = None):
        self.nvars = nvars
        clean: Dict[Exps, Coeff] = {}
        for exps, c in (terms or {}).items():
            if len(exps) != nvars:
                raise ValueError(f"exponent vector {exps} does not have {nvars} entries")
            if c != 0:
                clean[tuple(exps)] = _norm_coeff(c)
        self.terms = clean
        self._mod_cache: Dict[int, List[Tuple[int, Tuple[Tuple[int, int], ...]]]] = {}

    @classmethod
    def constant(cls, nvars: int, c: Coeff) -> "MultiPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def variables(cls, nvars: int) -> List["MultiPoly"]:
        out = []
        for i in range(nvars):
            exps = [0] * nvars
            exps[i] = 1
            out.append(cls(nvars, {tuple(exps): 1}))
        return out

    def _coerce(self, other) -> "MultiPoly":
        if isinstance(other, MultiPoly):
            if other.nvars != self.nvars:
                raise ValueError("variable counts differ")
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.constant(self.nvars, other)
        return NotImplemented

    def __add__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, 0) + c
        return MultiPoly(self.nvars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self.nvars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms: Dict[Exps, Coeff] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                terms[e] = terms.get(e, 0) + c1 * c2
        return MultiPoly(self.nvars, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPoly":
        if n < 0:
            raise ValueError("negative powers are not polynomials")
        out = MultiPoly.constant(self.nvars, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        return isinstance(other, MultiPoly) and self.nvars == other.nvars and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPoly({self.nvars}, {self.terms!r})"

    @property
    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, i: int) -> "MultiPoly":
        terms: Dict[Exps, Coeff] = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            d = list(e)
            d[i] -= 1
            terms[tuple(d)] = c * e[i]
        return MultiPoly(self.nvars, terms)

    def evaluate(self, values: Sequence[Coeff]) -> Coeff:
        """Exact value at integer or rational arguments."""
        total: Coeff = 0
        for e, c in self.terms.items():
            term = c
            for x, k in zip(values, e):
                if k:
                    term *= x**k
            total += term
        return _norm_coeff(total) if isinstance(total, Fraction) else total

    def compiled_mod(self, modulus: int) -> List[Tuple[int, Tuple[Tuple[int, int], ...]]]:
        """Terms as (coefficient mod m, ((var, exponent), ...)) with zero exponents dropped."""
        table = self._mod_cache.get(modulus)
        if table is None:
            level = _level_of(modulus)
            table = []
            for e, c in self.terms.items():
                cm = c % modulus if isinstance(c, int) else reduce_mod(c, level)
                if cm:
                    table.append((cm, tuple((i, k) for i, k in enumerate(e) if k)))
            self._mod_cache[modulus] = table
        return table

    def eval_mod(self, values: Sequence[int], modulus: int) -> int:
        total = 0
        for c, factors in self.compiled_mod(modulus):
            term = c
            for i, k in factors:
                term = term * pow(values[i], k, modulus)
            total += term
        return total % modulus


def _level_of(modulus: int) -> int:
    k, m = 0, modulus
    while m > 1 and m % 3 == 0:
        m //= 3
        k += 1
    if m != 1 or k == 0:
        raise ValueError(f"modulus {modulus} is not a positive power of 3")
    return k


@dataclass(frozen=True)
class PolySystem:
    """A named system f_1 = ... = f_m = 0 with shared variables.

    ``max_level`` limits the moduli 3^k at which the system is meaningful
    (None means every level).
    """

    name: str
    polys: Tuple[MultiPoly, ...]
    var_names: Tuple[str, ...]
    max_level: Optional[int] = None
    jacobian_polys: Tuple[Tuple[MultiPoly, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not self.polys:
            raise ValueError("a system needs at least one polynomial")
        n = self.polys[0].nvars
        if any(p.nvars != n for p in self.polys) or len(self.var_names) != n:
            raise ValueError("all polynomials must share the same variables")
        jac = tuple(tuple(p.derivative(i) for i in range(n)) for p in self.polys)
        object.__setattr__(self, "jacobian_polys", jac)

    @property
    def nvars(self) -> int:
        return len(self.var_names)

    @property
    def neqs(self) -> int:
        return len(self.polys)

    def evaluate(self, values: Sequence[Coeff]) -> Tuple[Coeff, ...]:
        return tuple(p.evaluate(values) for p in self.polys)


class SystemKind(enum.Enum):
    THREE_AND_ONE = "three-and-one"
    TWO_DIST_PAIR = "two-dist-pair"
    SCALED_MOD3 = "scaled"


def three_and_one() -> PolySystem:
    """Three distances X, Y, Z to corners of a square of side T, plus the fourth distance U."""
    X, Y, Z, T, U = MultiPoly.variables(5)
    eq1 = 2 * (Y**4 + T**4) + X**4 + Z**4 - 2 * (X**2 + Z**2) * (Y**2 + T**2)
    eq2 = U**2 + Y**2 - X**2 - Z**2
    return PolySystem("three-and-one", (eq1, eq2), ("X", "Y", "Z", "T", "U"))


def two_dist_pair(a: Union[int, str, Fraction]) -> PolySystem:
    """The quartics for (x, z) and (x - a, z) in variables x, z, u, mu."""
    a = as_rational(a)
    if v3(a) < 0:
        raise ValueError(f"a = {a} is not 3-integral")
    x, z, u, mu = MultiPoly.variables(4)
    eq1 = u**4 - (z**2 + 4 * x**2 + 1) * u**2 + z**2
    eq2 = mu**4 - (z**2 + 4 * (x - a) ** 2 + 1) * mu**2 + z**2
    return PolySystem(f"two-dist-pair(a={a})", (eq1, eq2), ("x", "z", "u", "mu"))


def scaled_mod3() -> PolySystem:
    """The rescaled pair with the 3^(2k) terms dropped; only meaningful mod 3."""
    x, z, u, mu = MultiPoly.variables(4)
    eq1 = u**4 - z**2 * u**2
    eq2 = mu**4 - z**2 * mu**2
    return PolySystem("scaled", (eq1, eq2), ("x", "z'", "u'", "mu'"), max_level=1)


def builtin_system(kind: Union[SystemKind, str], a: Union[int, str, Fraction, None] = None) -> PolySystem:
    kind = SystemKind(kind)
    if kind is SystemKind.THREE_AND_ONE:
        return three_and_one()
    if kind is SystemKind.TWO_DIST_PAIR:
        return two_dist_pair(1 if a is None else a)
    return scaled_mod3()


def zero_system(nvars: int, neqs: int = 1) -> PolySystem:
    polys = tuple(MultiPoly(nvars) for _ in range(neqs))
    return PolySystem("zero", polys, tuple(f"x{i}" for i in range(nvars)))


def system_from_polys(name: str, polys: Iterable[MultiPoly]) -> PolySystem:
    polys = tuple(polys)
    n = polys[0].nvars
    return PolySystem(name, polys, tuple(f"x{i}" for i in range(n)))
