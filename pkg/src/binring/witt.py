"""
Truncated big Witt vectors and their Frobenius-fixed subrings.

Addition, multiplication and the Frobenius operators are given by universal
integer polynomials.  They are obtained once per truncation set by inverting
the ghost map over Q (using `RatPoly`) and checking that every coefficient is
an integer; afterwards they are evaluated over Z or Z/N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import prod
from typing import Callable, Iterable, Sequence

from sympy import factorint, isprime

from .binomial import RatPoly

__all__ = [
    "BaseRing",
    "Z",
    "Zmod",
    "Fp",
    "WittVector",
    "check_truncation_set",
    "ghost_map",
    "witt_add",
    "witt_mul",
    "frobenius",
    "restrict",
    "p_typical",
    "FixedPointReport",
    "fixed_points",
    "frobenius_fixed_points",
    "abelian_invariants",
]


@dataclass(frozen=True)
class BaseRing:
    """Z when modulus == 0, otherwise Z/modulus (F_p when the modulus is prime)."""

    modulus: int = 0

    @property
    def tag(self) -> str:
        if self.modulus == 0:
            return "Z"
        if isprime(self.modulus):
            return f"F_{self.modulus}"
        return f"Z/{self.modulus}"

    @property
    def torsion_free(self) -> bool:
        return self.modulus == 0

    def reduce(self, a: int) -> int:
        return a % self.modulus if self.modulus else a

    def elements(self) -> range:
        if not self.modulus:
            raise ValueError("Z is infinite")
        return range(self.modulus)


Z = BaseRing(0)


def Zmod(n: int) -> BaseRing:
    if n < 2:
        raise ValueError("modulus must be at least 2")
    return BaseRing(n)


def Fp(p: int) -> BaseRing:
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    return BaseRing(p)


def check_truncation_set(S: Iterable[int]) -> tuple[int, ...]:
    S = tuple(sorted(set(int(n) for n in S)))
    if not S or S[0] < 1:
        raise ValueError("truncation set must be a nonempty set of positive integers")
    members = set(S)
    for n in S:
        for d in range(1, n):
            if n % d == 0 and d not in members:
                raise ValueError(f"truncation set not divisor-closed: {d} | {n} missing")
    return S


def p_typical(p: int, k: int) -> tuple[int, ...]:
    return tuple(p**i for i in range(k))


@dataclass(frozen=True)
class WittVector:
    truncation: tuple[int, ...]
    components: tuple[int, ...]
    base: BaseRing = Z

    def __post_init__(self):
        S = check_truncation_set(self.truncation)
        object.__setattr__(self, "truncation", S)
        comps = tuple(self.base.reduce(int(a)) for a in self.components)
        if len(comps) != len(S):
            raise ValueError(f"{len(comps)} components for truncation set of size {len(S)}")
        object.__setattr__(self, "components", comps)

    @classmethod
    def zero(cls, S: Sequence[int], base: BaseRing = Z) -> WittVector:
        S = check_truncation_set(S)
        return cls(S, (0,) * len(S), base)

    @classmethod
    def one(cls, S: Sequence[int], base: BaseRing = Z) -> WittVector:
        S = check_truncation_set(S)
        return cls(S, (1,) + (0,) * (len(S) - 1), base)

    @classmethod
    def teichmuller(cls, a: int, S: Sequence[int], base: BaseRing = Z) -> WittVector:
        S = check_truncation_set(S)
        return cls(S, (a,) + (0,) * (len(S) - 1), base)

    def __getitem__(self, n: int) -> int:
        return self.components[self.truncation.index(n)]

    def __add__(self, other: WittVector) -> WittVector:
        return witt_add(self, other)

    def __mul__(self, other: WittVector) -> WittVector:
        return witt_mul(self, other)


def _ghost(n: int, comp: Callable[[int], RatPoly]) -> RatPoly:
    total = None
    for d in range(1, n + 1):
        if n % d == 0:
            term = comp(d) ** (n // d) * d
            total = term if total is None else total + term
    return total


def _invert_ghosts(S: tuple[int, ...], targets: Callable[[int], RatPoly], nvars: int) -> dict[int, dict]:
    """Solve ghost_n(s) = targets(n) for n in S recursively; return integer polynomials."""
    sols: dict[int, RatPoly] = {}
    for n in S:
        rest = RatPoly(nvars)
        for d in S:
            if d < n and n % d == 0:
                rest = rest + sols[d] ** (n // d) * d
        sols[n] = (targets(n) - rest).scale(Fraction(1, n))
    out = {}
    for n, poly in sols.items():
        if not poly.is_integral():
            raise ArithmeticError(f"Witt polynomial for component {n} is not integral")
        out[n] = {a: int(c) for a, c in poly.coeffs.items()}
    return out


@lru_cache(maxsize=None)
def _arith_polys(S: tuple[int, ...]) -> tuple[dict, dict]:
    """Universal addition and multiplication polynomials in variables (u_s..., v_s...)."""
    k = len(S)
    nv = 2 * k
    u = {s: RatPoly.variable(nv, i) for i, s in enumerate(S)}
    v = {s: RatPoly.variable(nv, k + i) for i, s in enumerate(S)}
    gu = {n: _ghost(n, lambda d: u[d]) for n in S}
    gv = {n: _ghost(n, lambda d: v[d]) for n in S}
    add = _invert_ghosts(S, lambda n: gu[n] + gv[n], nv)
    mul = _invert_ghosts(S, lambda n: gu[n] * gv[n], nv)
    return add, mul


def _quotient_set(S: tuple[int, ...], m: int) -> tuple[int, ...]:
    members = set(S)
    return tuple(n for n in S if n * m in members)


@lru_cache(maxsize=None)
def _frobenius_polys(S: tuple[int, ...], m: int) -> dict:
    """F_m: W_S -> W_{S/m}, characterized by ghost_n(F_m w) = ghost_{nm}(w)."""
    k = len(S)
    w = {s: RatPoly.variable(k, i) for i, s in enumerate(S)}
    T = _quotient_set(S, m)
    return _invert_ghosts(T, lambda n: _ghost(n * m, lambda d: w[d]), k)


def _eval(poly: dict, values: Sequence[int], base: BaseRing) -> int:
    N = base.modulus
    total = 0
    for alpha, c in poly.items():
        term = c
        for x, a in zip(values, alpha):
            if a:
                term *= pow(x, a, N) if N else x**a
        total += term
    return base.reduce(total)


def _same(u: WittVector, v: WittVector):
    if u.truncation != v.truncation:
        raise ValueError(f"truncation mismatch: {u.truncation} vs {v.truncation}")
    if u.base != v.base:
        raise ValueError(f"base ring mismatch: {u.base.tag} vs {v.base.tag}")


def witt_add(u: WittVector, v: WittVector) -> WittVector:
    _same(u, v)
    add, _ = _arith_polys(u.truncation)
    vals = u.components + v.components
    return WittVector(u.truncation, tuple(_eval(add[n], vals, u.base) for n in u.truncation), u.base)


def witt_mul(u: WittVector, v: WittVector) -> WittVector:
    _same(u, v)
    _, mul = _arith_polys(u.truncation)
    vals = u.components + v.components
    return WittVector(u.truncation, tuple(_eval(mul[n], vals, u.base) for n in u.truncation), u.base)


def ghost_map(w: WittVector) -> dict[int, int]:
    """ghost_n(w) = sum_{d | n} d * w_d^(n/d); only over a torsion-free base."""
    if not w.base.torsion_free:
        raise ValueError(f"ghost map needs a torsion-free base ring, got {w.base.tag}")
    comps = dict(zip(w.truncation, w.components))
    return {n: sum(d * comps[d] ** (n // d) for d in w.truncation if n % d == 0) for n in w.truncation}


def frobenius(w: WittVector, m: int) -> WittVector:
    T = _quotient_set(w.truncation, m)
    if not T:
        raise ValueError(f"F_{m} has empty target for truncation set {w.truncation}")
    polys = _frobenius_polys(w.truncation, m)
    return WittVector(T, tuple(_eval(polys[n], w.components, w.base) for n in T), w.base)


def restrict(w: WittVector, T: Sequence[int]) -> WittVector:
    T = check_truncation_set(T)
    return WittVector(T, tuple(w[n] for n in T), w.base)


# ---------------------------------------------------------------------------
# finite abelian groups given by enumeration


def _times(n: int, x, add, zero):
    result, base = zero, x
    while n:
        if n & 1:
            result = add(result, base)
        n >>= 1
        if n:
            base = add(base, base)
    return result


def abelian_invariants(elements: Sequence, add, zero) -> tuple[int, ...]:
    """Invariant factors d1 | d2 | ... of a finite abelian group given by its elements."""
    order = len(elements)
    primary: list[list[int]] = []
    for q, e in factorint(order).items():
        # s_j = log_q |G[q^j]|; s_j - s_{j-1} counts cyclic factors of exponent >= j
        s = [0]
        j = 0
        while s[-1] < e:
            j += 1
            killed = sum(1 for x in elements if _times(q**j, x, add, zero) == zero)
            s.append(_log(killed, q))
        counts = [s[i] - s[i - 1] for i in range(1, len(s))] + [0]
        exps = []
        for i in range(1, len(counts)):
            exps += [i] * (counts[i - 1] - counts[i])
        primary.append(sorted((q**x for x in exps), reverse=True))
    width = max((len(p) for p in primary), default=0)
    facs = []
    for i in range(width):
        facs.append(prod(p[i] for p in primary if i < len(p)))
    return tuple(sorted(f for f in facs if f > 1))


def _log(n: int, q: int) -> int:
    k = 0
    while n > 1:
        n //= q
        k += 1
    return k


@dataclass(frozen=True)
class FixedPointReport:
    base: str
    truncation: tuple[int, ...]
    candidates: int
    order: int
    invariant_factors: tuple[int, ...]
    unit_order: int
    closed_under_mul: bool

    @property
    def cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def to_json(self) -> dict:
        return {
            "base": self.base,
            "truncation": list(self.truncation),
            "candidates": self.candidates,
            "order": self.order,
            "invariant_factors": list(self.invariant_factors),
            "cyclic": self.cyclic,
            "unit_order": self.unit_order,
            "closed_under_mul": self.closed_under_mul,
        }


def fixed_points(base: BaseRing, S: Sequence[int]) -> FixedPointReport:
    """Enumerate the subring of W_S(base) fixed by every Frobenius F_m (F_m w = w restricted to S/m)."""
    S = check_truncation_set(S)
    ops = [(m, _quotient_set(S, m)) for m in S if m > 1]
    fixed = []
    for comps in product(base.elements(), repeat=len(S)):
        w = WittVector(S, comps, base)
        if all(frobenius(w, m) == restrict(w, T) for m, T in ops):
            fixed.append(w)
    zero = WittVector.zero(S, base)
    one = WittVector.one(S, base)
    members = set(fixed)
    closed = all(witt_mul(a, b) in members for a in fixed for b in fixed) and one in members
    facs = abelian_invariants(fixed, witt_add, zero)
    unit_order = 1
    x = one
    while x != zero:
        x = witt_add(x, one)
        unit_order += 1
    return FixedPointReport(base.tag, S, base.modulus ** len(S), len(fixed), facs, unit_order, closed)


def frobenius_fixed_points(p: int, k: int) -> FixedPointReport:
    """Fixed subring of the p-typically truncated Witt vectors W_{1,p,...,p^(k-1)}(F_p)."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return fixed_points(Fp(p), p_typical(p, k))
