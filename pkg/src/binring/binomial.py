"""
Numerical polynomials in the binomial (Mahler) basis.

A `NumPoly` in k variables is a finite integer combination of the basis
elements  binom(x_1, a_1) * ... * binom(x_k, a_k).  Integrality of values on
Z^k is built into the representation; the monomial basis with rational
coefficients (`RatPoly`) only appears at conversion boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import comb, factorial
from typing import Iterable, Mapping, Sequence

from sympy import isprime

Index = tuple[int, ...]

__all__ = [
    "binom",
    "NumPoly",
    "RatPoly",
    "NotNumerical",
    "InternalDegree",
    "to_rational",
    "from_rational",
    "multiply",
    "evaluate",
    "diagonal",
    "comultiply",
    "counit",
    "swap_vars",
    "frobenius_quotient",
    "binomial_of",
    "internal_degree",
    "grlex_key",
]


def binom(a: int, n: int) -> int:
    """binom(a, n) = a(a-1)...(a-n+1)/n! for any integer a (including negative)."""
    if n < 0:
        return 0
    if a >= 0:
        return comb(a, n)
    # binom(-m, n) = (-1)^n binom(m + n - 1, n)
    return (-1) ** n * comb(-a + n - 1, n)


def grlex_key(alpha: Index) -> tuple:
    return (sum(alpha), alpha)


def _var_names(k: int) -> list[str]:
    if k <= 4:
        return ["x", "y", "z", "w"][:k]
    return [f"x{i + 1}" for i in range(k)]


class NumPoly:
    """Numerical polynomial: {multi-index alpha: integer coefficient} over the binomial basis."""

    __slots__ = ("num_vars", "_terms")

    def __init__(self, num_vars: int, terms: Mapping[Sequence[int], int] | None = None):
        self.num_vars = num_vars
        clean: dict[Index, int] = {}
        for alpha, c in (terms or {}).items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != num_vars or any(a < 0 for a in alpha):
                raise ValueError(f"bad multi-index {alpha} for {num_vars} variables")
            c = int(c)
            if c:
                clean[alpha] = clean.get(alpha, 0) + c
                if not clean[alpha]:
                    del clean[alpha]
        self._terms = clean

    @classmethod
    def basis(cls, *alpha: int) -> NumPoly:
        return cls(len(alpha), {alpha: 1})

    @classmethod
    def constant(cls, num_vars: int, c: int) -> NumPoly:
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, j: int) -> NumPoly:
        alpha = [0] * num_vars
        alpha[j] = 1
        return cls(num_vars, {tuple(alpha): 1})

    def terms(self) -> list[tuple[Index, int]]:
        return sorted(self._terms.items(), key=lambda kv: grlex_key(kv[0]))

    def coeff(self, alpha: Sequence[int]) -> int:
        return self._terms.get(tuple(alpha), 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def _check(self, other: NumPoly):
        if self.num_vars != other.num_vars:
            raise ValueError(f"variable count mismatch: {self.num_vars} vs {other.num_vars}")

    def __add__(self, other: NumPoly) -> NumPoly:
        if isinstance(other, int):
            other = NumPoly.constant(self.num_vars, other)
        self._check(other)
        out = dict(self._terms)
        for a, c in other._terms.items():
            out[a] = out.get(a, 0) + c
        return NumPoly(self.num_vars, out)

    __radd__ = __add__

    def __neg__(self) -> NumPoly:
        return NumPoly(self.num_vars, {a: -c for a, c in self._terms.items()})

    def __sub__(self, other: NumPoly) -> NumPoly:
        if isinstance(other, int):
            other = NumPoly.constant(self.num_vars, other)
        return self + (-other)

    def scale(self, s: int) -> NumPoly:
        return NumPoly(self.num_vars, {a: s * c for a, c in self._terms.items()})

    def __mul__(self, other) -> NumPoly:
        if isinstance(other, int):
            return self.scale(other)
        return multiply(self, other)

    def __rmul__(self, other: int) -> NumPoly:
        return self.scale(other)

    def __pow__(self, e: int) -> NumPoly:
        if e < 0:
            raise ValueError("negative power")
        result = NumPoly.constant(self.num_vars, 1)
        base = self
        while e:
            if e & 1:
                result = multiply(result, base)
            e >>= 1
            if e:
                base = multiply(base, base)
        return result

    def __call__(self, *point: int) -> int:
        return evaluate(self, point)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NumPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"NumPoly({self.num_vars}, {dict(self.terms())!r})"

    def pretty(self, names: Sequence[str] | None = None) -> str:
        names = list(names) if names else _var_names(self.num_vars)
        if not self._terms:
            return "0"
        parts = []
        for alpha, c in self.terms():
            factors = [f"binom({names[j]},{a})" for j, a in enumerate(alpha) if a]
            if not factors:
                parts.append(str(c))
                continue
            mono = "*".join(factors)
            if c == 1:
                parts.append(mono)
            elif c == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")

    __str__ = pretty

    def to_json(self) -> dict:
        return {"vars": self.num_vars, "terms": [[list(a), str(c)] for a, c in self.terms()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> NumPoly:
        return cls(int(obj["vars"]), {tuple(a): int(c) for a, c in obj["terms"]})


class RatPoly:
    """Polynomial with rational coefficients in the monomial basis."""

    __slots__ = ("num_vars", "coeffs")

    def __init__(self, num_vars: int, coeffs: Mapping[Sequence[int], Fraction | int] | None = None):
        self.num_vars = num_vars
        clean: dict[Index, Fraction] = {}
        for alpha, c in (coeffs or {}).items():
            alpha = tuple(alpha)
            if len(alpha) != num_vars:
                raise ValueError(f"bad exponent {alpha} for {num_vars} variables")
            c = Fraction(c)
            if c:
                s = clean.get(alpha, 0) + c
                if s:
                    clean[alpha] = s
                else:
                    clean.pop(alpha, None)
        self.coeffs = clean

    @classmethod
    def constant(cls, num_vars: int, c) -> RatPoly:
        return cls(num_vars, {(0,) * num_vars: c})

    @classmethod
    def variable(cls, num_vars: int, j: int) -> RatPoly:
        e = [0] * num_vars
        e[j] = 1
        return cls(num_vars, {tuple(e): 1})

    def __add__(self, other: RatPoly) -> RatPoly:
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0) + c
        return RatPoly(self.num_vars, out)

    def __neg__(self) -> RatPoly:
        return RatPoly(self.num_vars, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other: RatPoly) -> RatPoly:
        return self + (-other)

    def scale(self, s) -> RatPoly:
        return RatPoly(self.num_vars, {a: s * c for a, c in self.coeffs.items()})

    def __mul__(self, other) -> RatPoly:
        if not isinstance(other, RatPoly):
            return self.scale(other)
        out: dict[Index, Fraction] = {}
        for a, c in self.coeffs.items():
            for b, d in other.coeffs.items():
                e = tuple(x + y for x, y in zip(a, b))
                out[e] = out.get(e, 0) + c * d
        return RatPoly(self.num_vars, out)

    __rmul__ = scale

    def __pow__(self, e: int) -> RatPoly:
        result = RatPoly.constant(self.num_vars, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __call__(self, *point) -> Fraction:
        total = Fraction(0)
        for alpha, c in self.coeffs.items():
            term = c
            for x, a in zip(point, alpha):
                if a:
                    term *= Fraction(x) ** a
            total += term
        return total

    def degrees(self) -> list[int]:
        """Maximal exponent of each variable."""
        degs = [0] * self.num_vars
        for alpha in self.coeffs:
            for j, a in enumerate(alpha):
                degs[j] = max(degs[j], a)
        return degs

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs.values())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatPoly):
            return NotImplemented
        return self.num_vars == other.num_vars and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.num_vars, frozenset(self.coeffs.items())))

    def __repr__(self) -> str:
        items = sorted(self.coeffs.items(), key=lambda kv: grlex_key(kv[0]))
        return f"RatPoly({self.num_vars}, {{{', '.join(f'{a}: {c}' for a, c in items)}}})"


class NotNumerical(ValueError):
    """A rational polynomial has a non-integral Mahler coefficient."""

    def __init__(self, alpha: Index, value: Fraction):
        self.alpha = alpha
        self.value = value
        super().__init__(f"Mahler coefficient at {alpha} is {value}, not an integer")


@dataclass(frozen=True)
class InternalDegree:
    """Binomial-basis degree; `is_zero` flags the zero polynomial (degree reported as 0)."""

    value: int
    is_zero: bool = False

    def __int__(self) -> int:
        return self.value


# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _falling_over_factorial(n: int) -> tuple[Fraction, ...]:
    """Monomial coefficients of binom(x, n) = x(x-1)...(x-n+1)/n!."""
    coeffs = [1]
    for i in range(n):
        # multiply by (x - i)
        nxt = [0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= i * c
        coeffs = nxt
    f = factorial(n)
    return tuple(Fraction(c, f) for c in coeffs)


def to_rational(f: NumPoly) -> RatPoly:
    """Expand every binomial basis element into monomials."""
    out: dict[Index, Fraction] = {}
    for alpha, c in f._terms.items():
        expansions = [list(enumerate(_falling_over_factorial(a))) for a in alpha]
        for combo in product(*expansions):
            e = tuple(k for k, _ in combo)
            v = Fraction(c)
            for _, q in combo:
                v *= q
            if v:
                out[e] = out.get(e, 0) + v
    return RatPoly(f.num_vars, out)


def from_rational(f: RatPoly) -> NumPoly:
    """Mahler expansion by iterated forward differences on the grid 0..deg.

    Raises NotNumerical at the first (graded-lex) non-integral coefficient.
    """
    k = f.num_vars
    degs = f.degrees()
    grid = list(product(*(range(d + 1) for d in degs)))
    vals: dict[Index, Fraction] = {pt: f(*pt) for pt in grid}
    for j in range(k):
        new = {}
        for pt in grid:
            s = Fraction(0)
            bj = pt[j]
            for i in range(bj + 1):
                q = pt[:j] + (i,) + pt[j + 1 :]
                s += (-1) ** (bj - i) * comb(bj, i) * vals[q]
            new[pt] = s
        vals = new
    terms = {}
    for alpha in sorted(grid, key=grlex_key):
        v = vals[alpha]
        if v.denominator != 1:
            raise NotNumerical(alpha, v)
        if v:
            terms[alpha] = int(v)
    return NumPoly(k, terms)


@lru_cache(maxsize=None)
def _basis_product(a: int, b: int) -> tuple[tuple[int, int], ...]:
    """binom(x,a) binom(x,b) = sum_k c_k binom(x,k); c_k = k! / ((k-a)! (k-b)! (a+b-k)!)."""
    out = []
    for k in range(max(a, b), a + b + 1):
        c = factorial(k) // (factorial(k - a) * factorial(k - b) * factorial(a + b - k))
        out.append((k, c))
    return tuple(out)


def multiply(f: NumPoly, g: NumPoly) -> NumPoly:
    f._check(g)
    out: dict[Index, int] = {}
    for alpha, c in f._terms.items():
        for beta, d in g._terms.items():
            per_var = [_basis_product(a, b) for a, b in zip(alpha, beta)]
            for combo in product(*per_var):
                gamma = tuple(k for k, _ in combo)
                v = c * d
                for _, m in combo:
                    v *= m
                out[gamma] = out.get(gamma, 0) + v
    return NumPoly(f.num_vars, out)


def evaluate(f: NumPoly, point: Sequence[int]) -> int:
    if len(point) != f.num_vars:
        raise ValueError(f"point has {len(point)} coordinates, polynomial has {f.num_vars} variables")
    total = 0
    for alpha, c in f._terms.items():
        term = c
        for x, a in zip(point, alpha):
            if a:
                term *= binom(x, a)
                if not term:
                    break
        total += term
    return total


def comultiply(f: NumPoly, var: int = 0) -> NumPoly:
    """Split variable `var` into two adjacent variables: f(..., x, ...) -> f(..., x + y, ...).

    On the basis this is the Vandermonde identity
    binom(x + y, n) = sum_{p+q=n} binom(x, p) binom(y, q).
    """
    if not 0 <= var < f.num_vars:
        raise ValueError(f"no variable {var}")
    out: dict[Index, int] = {}
    for alpha, c in f._terms.items():
        n = alpha[var]
        for p in range(n + 1):
            beta = alpha[:var] + (p, n - p) + alpha[var + 1 :]
            out[beta] = out.get(beta, 0) + c
    return NumPoly(f.num_vars + 1, out)


def diagonal(f: NumPoly) -> NumPoly:
    """Coproduct of Num[x]: Delta(f)(x, y) = f(x + y)."""
    if f.num_vars != 1:
        raise ValueError("diagonal is defined on single-variable polynomials")
    return comultiply(f, 0)


def counit(f: NumPoly, var: int = 0) -> NumPoly:
    """Evaluate variable `var` at 0 and drop it."""
    out = {}
    for alpha, c in f._terms.items():
        if alpha[var] == 0:
            out[alpha[:var] + alpha[var + 1 :]] = c
    return NumPoly(f.num_vars - 1, out)


def swap_vars(f: NumPoly, i: int, j: int) -> NumPoly:
    out = {}
    for alpha, c in f._terms.items():
        a = list(alpha)
        a[i], a[j] = a[j], a[i]
        out[tuple(a)] = c
    return NumPoly(f.num_vars, out)


def frobenius_quotient(f: NumPoly, p: int) -> NumPoly:
    """(f^p - f) / p, which is again numerical."""
    if not isprime(p):
        raise ValueError(f"{p} is not prime")
    diff = (f**p) - f
    out = {}
    for alpha, c in diff._terms.items():
        q, r = divmod(c, p)
        if r:
            raise AssertionError(f"coefficient {c} at {alpha} of f^{p} - f is not divisible by {p}")
        out[alpha] = q
    return NumPoly(f.num_vars, out)


def binomial_of(f: NumPoly, n: int) -> NumPoly:
    """binom(f, n) = f (f - 1) ... (f - n + 1) / n!, which is again numerical."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    falling = NumPoly.constant(f.num_vars, 1)
    for i in range(n):
        falling = falling * (f - NumPoly.constant(f.num_vars, i))
    fact = factorial(n)
    out = {}
    for alpha, c in falling._terms.items():
        q, r = divmod(c, fact)
        if r:
            raise AssertionError(f"coefficient {c} at {alpha} of the falling product is not divisible by {n}!")
        out[alpha] = q
    return NumPoly(f.num_vars, out)


def internal_degree(f: NumPoly) -> InternalDegree:
    if f.is_zero():
        return InternalDegree(0, True)
    return InternalDegree(max(sum(a) for a in f._terms))


def basis_elements(num_vars: int, max_degree: int) -> Iterable[NumPoly]:
    """All binomial basis elements of total degree <= max_degree, in graded-lex order."""
    alphas = [a for a in product(range(max_degree + 1), repeat=num_vars) if sum(a) <= max_degree]
    for a in sorted(alphas, key=grlex_key):
        yield NumPoly(num_vars, {a: 1})
