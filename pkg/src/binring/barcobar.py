"""
Cobar complexes of graded coalgebras and bar complexes of (dg-)algebras.

Both constructions are graded by an internal weight d that the differentials
preserve, so each weight is a finite complex.  Coalgebras are presented by
their reduced diagonal on the coaugmentation coideal (weights >= 1);
algebras by the multiplication on the augmentation ideal (weights >= 1),
optionally with a cohomological grading and a differential.

Sign conventions
----------------
* cobar: delta(c_1 | ... | c_n) = sum_i (-1)^i (... | reduced_diag(c_i) | ...),
  the restriction of the alternating coface sum of [n] -> C^{(x)n}.
* bar: with x_i = s a_i of degree |a_i| - 1,
  D = sum_i (-1)^{|x_1|+...+|x_{i-1}|} ( -[.. | s(d a_i) | ..]
                                        + (-1)^{|a_i|-1} [.. | s(a_i a_{i+1}) | ..] ).
  For algebras concentrated in degree 0 the bar differential is exactly the
  transpose of the cobar differential of the dual coalgebra.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping

from . import binomial as bn
from .cosimplicial import CosimplicialAbGroup
from .exact_linalg import (
    CochainComplex,
    CohomologyGroup,
    ComplexMap,
    IntMatrix,
    cohomology,
    is_quasi_iso,
    random_unimodular,
    unimodular_inverse,
)

__all__ = [
    "GradedCoalgebra",
    "GradedAlgebra",
    "AlgebraMap",
    "BigradedComplex",
    "LengthFiltration",
    "compositions",
    "num_coalgebra",
    "num_coalgebra_multi",
    "trivial_coalgebra",
    "divided_power_dual",
    "deconcatenation_coalgebra",
    "change_basis",
    "polynomial_algebra",
    "truncated_polynomial_algebra",
    "trivial_algebra",
    "koszul_dg_algebra",
    "cobar_complex",
    "cobar_cohomology",
    "cobar_cosimplicial",
    "bar_complex",
    "bar_homology",
    "dual_compare",
    "DualCompareReport",
    "filtration_quotients",
    "conservativity_demo",
    "ConservativityReport",
    "example_maps",
]


def compositions(d: int, n: int, min_part: int = 1) -> Iterator[tuple[int, ...]]:
    """Ordered tuples of n parts >= min_part summing to d, in lexicographic order."""
    if n == 0:
        if d == 0:
            yield ()
        return
    for first in range(min_part, d - min_part * (n - 1) + 1):
        for rest in compositions(d - first, n - 1, min_part):
            yield (first,) + rest


Word = tuple[tuple[int, int], ...]  # ((weight, basis index), ...)


def _words(ranks: Mapping[int, int] | tuple, d: int, n: int, min_part: int = 1) -> list[Word]:
    out = []
    for comp in compositions(d, n, min_part):
        for idx in product(*(range(ranks[e]) for e in comp)):
            out.append(tuple(zip(comp, idx)))
    return out


def _columns(M: IntMatrix) -> list[list[tuple[int, int]]]:
    cols: list[list[tuple[int, int]]] = [[] for _ in range(M.cols)]
    for (r, c), v in M.items():
        cols[c].append((r, v))
    return cols


# ---------------------------------------------------------------------------
# coalgebras and algebras


@dataclass(frozen=True)
class GradedCoalgebra:
    """Connected graded coalgebra C = Z.1 + C-bar, C-bar in weights 1..d_max.

    `reduced_diagonal[(p, q)]` maps C-bar_{p+q} to C-bar_p (x) C-bar_q
    (row index i * rank_q + j).  The full diagonal is
    c -> c (x) 1 + 1 (x) c + reduced(c), so the counit and coaugmentation
    laws hold by construction.
    """

    ranks: tuple[int, ...]
    reduced_diagonal: Mapping[tuple[int, int], IntMatrix] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        ranks = tuple(self.ranks)
        if not ranks or ranks[0] != 0:
            raise ValueError("the coideal must vanish in weight 0")
        object.__setattr__(self, "ranks", ranks)
        full = {}
        for d in range(2, self.d_max + 1):
            for p in range(1, d):
                q = d - p
                M = self.reduced_diagonal.get((p, q))
                shape = (ranks[p] * ranks[q], ranks[d])
                if M is None:
                    M = IntMatrix(*shape)
                if M.shape != shape:
                    raise ValueError(f"reduced diagonal ({p},{q}) has shape {M.shape}, expected {shape}")
                full[(p, q)] = M
        object.__setattr__(self, "reduced_diagonal", full)

    @property
    def d_max(self) -> int:
        return len(self.ranks) - 1

    def delta(self, p: int, q: int) -> IntMatrix:
        return self.reduced_diagonal[(p, q)]

    def coassociativity_defects(self) -> list[tuple[int, int, int]]:
        bad = []
        r = self.ranks
        for d in range(3, self.d_max + 1):
            for p, q, s in compositions(d, 3):
                lhs = self.delta(p, q).kron(IntMatrix.identity(r[s])) @ self.delta(p + q, s)
                rhs = IntMatrix.identity(r[p]).kron(self.delta(q, s)) @ self.delta(p, q + s)
                if lhs != rhs:
                    bad.append((p, q, s))
        return bad

    def is_coassociative(self) -> bool:
        return not self.coassociativity_defects()

    def dual_algebra(self) -> GradedAlgebra:
        """Graded dual: multiplication is the transpose of the reduced diagonal."""
        return GradedAlgebra(self.ranks, {k: M.T for k, M in self.reduced_diagonal.items()}, name=f"dual({self.name})")

    def truncate(self, d_max: int) -> GradedCoalgebra:
        if d_max > self.d_max:
            raise ValueError(f"coalgebra only known up to weight {self.d_max}")
        keep = {k: M for k, M in self.reduced_diagonal.items() if sum(k) <= d_max}
        return GradedCoalgebra(self.ranks[: d_max + 1], keep, self.name)

    def to_json(self) -> dict:
        return {
            "d_max": self.d_max,
            "ranks": list(self.ranks),
            "reduced_diagonal": [
                dict(p=p, q=q, **M.to_json()) for (p, q), M in sorted(self.reduced_diagonal.items()) if not M.is_zero()
            ],
            "name": self.name,
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> GradedCoalgebra:
        ranks = tuple(int(r) for r in obj["ranks"])
        if "d_max" in obj and int(obj["d_max"]) != len(ranks) - 1:
            raise ValueError("d_max does not match ranks")
        diag = {(int(e["p"]), int(e["q"])): IntMatrix.from_json(e) for e in obj.get("reduced_diagonal", [])}
        return cls(ranks, diag, obj.get("name", "file"))


@dataclass(frozen=True)
class GradedAlgebra:
    """Augmented algebra A = Z.1 + A-bar with A-bar in weights 1..d_max.

    `products[(p, q)]` maps A-bar_p (x) A-bar_q to A-bar_{p+q}.  Optionally
    each basis element carries a cohomological degree (`degrees[d]`) and
    `differential[d]` is a square matrix on A-bar_d raising that degree by one.
    """

    ranks: tuple[int, ...]
    products: Mapping[tuple[int, int], IntMatrix] = field(repr=False)
    degrees: Mapping[int, tuple[int, ...]] = field(default_factory=dict, repr=False)
    differential: Mapping[int, IntMatrix] = field(default_factory=dict, repr=False)
    name: str = ""

    def __post_init__(self):
        ranks = tuple(self.ranks)
        if not ranks or ranks[0] != 0:
            raise ValueError("augmentation ideal has a weight-0 part; bar bidegrees would have infinite rank")
        object.__setattr__(self, "ranks", ranks)
        prods = {}
        for d in range(2, self.d_max + 1):
            for p in range(1, d):
                q = d - p
                shape = (ranks[d], ranks[p] * ranks[q])
                M = self.products.get((p, q), IntMatrix(*shape))
                if M.shape != shape:
                    raise ValueError(f"product ({p},{q}) has shape {M.shape}, expected {shape}")
                prods[(p, q)] = M
        object.__setattr__(self, "products", prods)
        degs = {d: tuple(self.degrees.get(d, (0,) * ranks[d])) for d in range(self.d_max + 1)}
        for d, dg in degs.items():
            if len(dg) != ranks[d]:
                raise ValueError(f"weight {d}: {len(dg)} degrees for rank {ranks[d]}")
        object.__setattr__(self, "degrees", degs)
        diff = {d: self.differential.get(d, IntMatrix(ranks[d], ranks[d])) for d in range(self.d_max + 1)}
        for d, M in diff.items():
            if M.shape != (ranks[d], ranks[d]):
                raise ValueError(f"differential in weight {d} has shape {M.shape}")
            for (r, c), _ in M.items():
                if degs[d][r] != degs[d][c] + 1:
                    raise ValueError(f"differential in weight {d} does not raise degree by one")
        object.__setattr__(self, "differential", diff)

    @property
    def d_max(self) -> int:
        return len(self.ranks) - 1

    @property
    def is_dg(self) -> bool:
        return any(not M.is_zero() for M in self.differential.values()) or any(
            any(g) for g in self.degrees.values()
        )

    def mu(self, p: int, q: int) -> IntMatrix:
        return self.products[(p, q)]

    def _sign(self, d: int) -> IntMatrix:
        return IntMatrix.diagonal([(-1) ** g for g in self.degrees[d]])

    def defects(self) -> list[str]:
        """Violations of associativity, degree compatibility, d^2 = 0 and Leibniz."""
        out = []
        r = self.ranks
        for d in range(3, self.d_max + 1):
            for p, q, s in compositions(d, 3):
                lhs = self.mu(p + q, s) @ self.mu(p, q).kron(IntMatrix.identity(r[s]))
                rhs = self.mu(p, q + s) @ IntMatrix.identity(r[p]).kron(self.mu(q, s))
                if lhs != rhs:
                    out.append(f"associativity at {(p, q, s)}")
        for (p, q), M in self.products.items():
            for (row, col), _ in M.items():
                i, j = divmod(col, r[q])
                if self.degrees[p + q][row] != self.degrees[p][i] + self.degrees[q][j]:
                    out.append(f"product ({p},{q}) not homogeneous")
                    break
        for d in range(self.d_max + 1):
            if not (self.differential[d] @ self.differential[d]).is_zero():
                out.append(f"d^2 != 0 in weight {d}")
        for (p, q), M in self.products.items():
            lhs = self.differential[p + q] @ M
            rhs = M @ (
                self.differential[p].kron(IntMatrix.identity(r[q])) + self._sign(p).kron(self.differential[q])
            )
            if lhs != rhs:
                out.append(f"Leibniz rule at ({p},{q})")
        return out

    def is_valid(self) -> bool:
        return not self.defects()

    def weight_complex(self, d: int) -> tuple[CochainComplex, list[int]]:
        """A-bar_d as a cochain complex (by cohomological degree); also the basis order used."""
        if self.ranks[d] == 0:
            return CochainComplex(0, [0]), []
        degs = self.degrees[d]
        lo, hi = min(degs), max(degs)
        order = sorted(range(self.ranks[d]), key=lambda i: (degs[i], i))
        groups = {g: [i for i in order if degs[i] == g] for g in range(lo, hi + 1)}
        ranks = [len(groups[g]) for g in range(lo, hi + 1)]
        D = self.differential[d]
        diffs = []
        for g in range(lo, hi):
            src = {i: k for k, i in enumerate(groups[g])}
            tgt = {i: k for k, i in enumerate(groups[g + 1])}
            ent = {(tgt[r], src[c]): v for (r, c), v in D.items() if c in src}
            diffs.append(IntMatrix(len(tgt), len(src), ent))
        return CochainComplex(lo, ranks, diffs), order


@dataclass(frozen=True)
class AlgebraMap:
    """Map of augmented algebras given on augmentation ideals, weight by weight."""

    source: GradedAlgebra
    target: GradedAlgebra
    components: Mapping[int, IntMatrix] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        S, T = self.source, self.target
        if S.d_max != T.d_max:
            raise ValueError("source and target known up to different weights")
        comps = {}
        for d in range(S.d_max + 1):
            M = self.components.get(d, IntMatrix(T.ranks[d], S.ranks[d]))
            if M.shape != (T.ranks[d], S.ranks[d]):
                raise ValueError(f"component in weight {d} has shape {M.shape}")
            comps[d] = M
        object.__setattr__(self, "components", comps)

    def defects(self) -> list[str]:
        S, T, f = self.source, self.target, self.components
        out = []
        for (p, q), M in S.products.items():
            if f[p + q] @ M != T.mu(p, q) @ f[p].kron(f[q]):
                out.append(f"not multiplicative at ({p},{q})")
        for d in range(S.d_max + 1):
            if T.differential[d] @ f[d] != f[d] @ S.differential[d]:
                out.append(f"does not commute with d in weight {d}")
            for (r, c), _ in f[d].items():
                if T.degrees[d][r] != S.degrees[d][c]:
                    out.append(f"not degree preserving in weight {d}")
                    break
        return out


# constructors ---------------------------------------------------------------


def num_coalgebra(d_max: int) -> GradedCoalgebra:
    """Num[x] with basis binom(x, d), diagonal read off from `binomial.diagonal`."""
    ranks = (0,) + (1,) * d_max
    diag = {}
    for d in range(2, d_max + 1):
        D = bn.diagonal(bn.NumPoly.basis(d))
        for p in range(1, d):
            c = D.coeff((p, d - p))
            diag[(p, d - p)] = IntMatrix(1, 1, {(0, 0): c})
    return GradedCoalgebra(ranks, diag, "Num[x]")


def _multi_basis(k: int, d: int) -> list[tuple[int, ...]]:
    return sorted((a for a in product(range(d + 1), repeat=k) if sum(a) == d), reverse=True)


def num_coalgebra_multi(k: int, d_max: int) -> GradedCoalgebra:
    """Num[x_1..x_k] graded by total binomial degree, diagonal x_j -> x_j + y_j."""
    bases = [_multi_basis(k, d) for d in range(d_max + 1)]
    index = [{a: i for i, a in enumerate(b)} for b in bases]
    ranks = (0,) + tuple(len(b) for b in bases[1:])
    diag = {}
    for d in range(2, d_max + 1):
        for p in range(1, d):
            q = d - p
            ent = {}
            for c, alpha in enumerate(bases[d]):
                for beta in product(*(range(a + 1) for a in alpha)):
                    if sum(beta) != p:
                        continue
                    gamma = tuple(a - b for a, b in zip(alpha, beta))
                    ent[(index[p][beta] * ranks[q] + index[q][gamma], c)] = 1
            diag[(p, q)] = IntMatrix(ranks[p] * ranks[q], ranks[d], ent)
    return GradedCoalgebra(ranks, diag, f"Num[{k} vars]")


def trivial_coalgebra(d_max: int = 0) -> GradedCoalgebra:
    return GradedCoalgebra((0,) * (d_max + 1), {}, "Z")


def divided_power_dual(d_max: int) -> GradedCoalgebra:
    """C-bar_d = Z e_d with reduced diagonal e_d -> sum binom(d, p) e_p (x) e_q.

    This is the graded dual of the divided power algebra on one generator.
    """
    diag = {(p, d - p): IntMatrix(1, 1, {(0, 0): comb(d, p)}) for d in range(2, d_max + 1) for p in range(1, d)}
    return GradedCoalgebra((0,) + (1,) * d_max, diag, "divided-power dual")


def deconcatenation_coalgebra(gen_weights: Iterable[int], d_max: int) -> GradedCoalgebra:
    """Tensor coalgebra on generators of the given weights, with deconcatenation."""
    gens = list(gen_weights)
    words: list[list[tuple[int, ...]]] = [[] for _ in range(d_max + 1)]

    def extend(word, w):
        if w > d_max:
            return
        if word:
            words[w].append(word)
        for g, gw in enumerate(gens):
            extend(word + (g,), w + gw)

    extend((), 0)
    for lst in words:
        lst.sort()
    index = [{w: i for i, w in enumerate(lst)} for lst in words]
    ranks = tuple(len(lst) for lst in words)
    weight = lambda w: sum(gens[g] for g in w)
    diag = {}
    for d in range(2, d_max + 1):
        for p in range(1, d):
            q = d - p
            ent = {}
            for c, w in enumerate(words[d]):
                for cut in range(1, len(w)):
                    a, b = w[:cut], w[cut:]
                    if weight(a) == p:
                        ent[(index[p][a] * ranks[q] + index[q][b], c)] = 1
            diag[(p, q)] = IntMatrix(ranks[p] * ranks[q], ranks[d], ent)
    return GradedCoalgebra(ranks, diag, f"T^c(gens of weight {gens})")


def change_basis(C: GradedCoalgebra, rng: random.Random) -> GradedCoalgebra:
    """Conjugate the structure by random unimodular basis changes in every weight."""
    g = {d: random_unimodular(r, rng) for d, r in enumerate(C.ranks)}
    ginv = {d: unimodular_inverse(m) for d, m in g.items()}
    diag = {(p, q): g[p].kron(g[q]) @ M @ ginv[p + q] for (p, q), M in C.reduced_diagonal.items()}
    return GradedCoalgebra(C.ranks, diag, f"{C.name} (rebased)")


def polynomial_algebra(d_max: int) -> GradedAlgebra:
    """Z[x], x of weight 1."""
    prods = {(p, d - p): IntMatrix(1, 1, {(0, 0): 1}) for d in range(2, d_max + 1) for p in range(1, d)}
    return GradedAlgebra((0,) + (1,) * d_max, prods, name="Z[x]")


def truncated_polynomial_algebra(k: int, d_max: int) -> GradedAlgebra:
    """Z[x]/(x^k), x of weight 1."""
    ranks = (0,) + tuple(1 if d < k else 0 for d in range(1, d_max + 1))
    prods = {}
    for d in range(2, min(k - 1, d_max) + 1):
        for p in range(1, d):
            prods[(p, d - p)] = IntMatrix(1, 1, {(0, 0): 1})
    return GradedAlgebra(ranks, prods, name=f"Z[x]/(x^{k})")


def trivial_algebra(d_max: int) -> GradedAlgebra:
    return GradedAlgebra((0,) * (d_max + 1), {}, name="Z")


def koszul_dg_algebra(d_max: int) -> GradedAlgebra:
    """Z[x] (x) Lambda[e], x and e of weight 1, |x| = 0, |e| = -1, d e = x.

    Weight d >= 1 has basis (x^d, e x^(d-1)) and is acyclic.
    """
    ranks = (0,) + (2,) * d_max
    degrees = {d: (0, -1) for d in range(1, d_max + 1)}
    differential = {d: IntMatrix(2, 2, {(0, 1): 1}) for d in range(1, d_max + 1)}
    prods = {}
    for d in range(2, d_max + 1):
        for p in range(1, d):
            # columns i * 2 + j: (x, x) -> x ; (x, e) -> e ; (e, x) -> e ; (e, e) -> 0
            prods[(p, d - p)] = IntMatrix(2, 4, {(0, 0): 1, (1, 1): 1, (1, 2): 1})
    return GradedAlgebra(ranks, prods, degrees, differential, name="Z[x](x)Lambda[e], de=x")


# ---------------------------------------------------------------------------
# bigraded complexes


@dataclass(frozen=True)
class BigradedComplex:
    """One cochain complex per internal weight d.

    For cochain-type objects (cobar) the reported degree n is the complex
    degree; for chain-type objects (bar) the complex is stored in cohomological
    indexing k = -n and n is reported homologically.  Only degrees
    0 <= n <= n_max are reported; values there are final.
    """

    slices: Mapping[int, CochainComplex]
    homological: bool
    n_max: int
    d_max: int
    bases: Mapping[tuple[int, int], list] = field(default_factory=dict, repr=False)
    label: str = ""

    def _k(self, n: int) -> int:
        return -n if self.homological else n

    def rank(self, n: int, d: int) -> int:
        return self.slices[d].rank(self._k(n))

    def differential(self, n: int, d: int) -> IntMatrix:
        """The matrix leaving bidegree (n, d)."""
        return self.slices[d].d(self._k(n))

    def check(self) -> None:
        for C in self.slices.values():
            C.check()

    def cohomology(self) -> dict[tuple[int, int], CohomologyGroup]:
        out = {}
        for d, C in sorted(self.slices.items()):
            H = cohomology(C)
            for n in range(self.n_max + 1):
                out[(n, d)] = H.get(self._k(n), CohomologyGroup())
        return out

    def ranks_table(self) -> dict[tuple[int, int], int]:
        return {(n, d): self.rank(n, d) for d in self.slices for n in range(self.n_max + 1)}


def cohomology_table(H: Mapping[tuple[int, int], CohomologyGroup]) -> dict[str, dict]:
    return {f"({n},{d})": g.to_json() for (n, d), g in sorted(H.items(), key=lambda kv: (kv[0][1], kv[0][0]))}


def _check_window(n_max: int, d_max: int, have: int):
    if n_max < 0 or d_max < 0:
        raise ValueError("window must be nonnegative")
    if n_max > d_max:
        raise ValueError(f"n_max = {n_max} exceeds d_max = {d_max}: cohomological degrees above the weight vanish")
    if d_max > have:
        raise ValueError(f"structure only known up to weight {have}, window asks for {d_max}")


def _cobar_slice(C: GradedCoalgebra, d: int, top: int) -> tuple[CochainComplex, dict]:
    bases = {n: _words(C.ranks, d, n) for n in range(top + 1)}
    index = {n: {w: i for i, w in enumerate(b)} for n, b in bases.items()}
    cols = {k: _columns(M) for k, M in C.reduced_diagonal.items()}
    diffs = []
    for n in range(top):
        ent: dict[tuple[int, int], int] = {}
        tgt = index[n + 1]
        for c, word in enumerate(bases[n]):
            for i, (e, a) in enumerate(word):
                sign = -1 if (i + 1) % 2 else 1
                for p in range(1, e):
                    q = e - p
                    for row, v in cols[(p, q)][a]:
                        x, y = divmod(row, C.ranks[q])
                        new = word[:i] + ((p, x), (q, y)) + word[i + 1 :]
                        key = (tgt[new], c)
                        ent[key] = ent.get(key, 0) + sign * v
        diffs.append(IntMatrix(len(bases[n + 1]), len(bases[n]), ent))
    return CochainComplex(0, [len(bases[n]) for n in range(top + 1)], diffs), bases


def cobar_complex(C: GradedCoalgebra, n_max: int, d_max: int, full: bool = False) -> BigradedComplex:
    """Reduced cobar complex; bidegree (n, d) is spanned by tensors of n coideal
    elements of total weight d.  Slices are built up to length n_max + 1
    (or completely, with `full`) so that every reported group is final."""
    _check_window(n_max, d_max, C.d_max)
    slices, bases = {}, {}
    for d in range(d_max + 1):
        top = d if full else min(d, n_max + 1)
        S, B = _cobar_slice(C, d, top)
        slices[d] = S
        for n, b in B.items():
            bases[(n, d)] = b
    out = BigradedComplex(slices, False, n_max, d_max, bases, f"cobar({C.name})")
    out.check()
    return out


def cobar_cohomology(C: GradedCoalgebra, n_max: int, d_max: int) -> dict[tuple[int, int], CohomologyGroup]:
    return cobar_complex(C, n_max, d_max).cohomology()


def _bar_slice(A: GradedAlgebra, d: int, top: int) -> tuple[CochainComplex, dict]:
    words = [w for n in range(top + 1) for w in _words(A.ranks, d, n)]
    deg = lambda w: sum(A.degrees[e][a] - 1 for e, a in w)
    groups: dict[int, list[Word]] = {}
    for w in words:
        groups.setdefault(deg(w), []).append(w)
    if not groups:
        groups = {0: []}
    lo, hi = min(groups), max(groups)
    if not A.is_dg:
        lo = min(lo, -top)
    bases = {k: groups.get(k, []) for k in range(lo, hi + 1)}
    index = {k: {w: i for i, w in enumerate(b)} for k, b in bases.items()}
    mcols = {k: _columns(M) for k, M in A.products.items()}
    dcols = {e: _columns(M) for e, M in A.differential.items()}
    diffs = []
    for k in range(lo, hi):
        ent: dict[tuple[int, int], int] = {}
        tgt = index[k + 1]

        def add(new, c, v):
            key = (tgt[new], c)
            ent[key] = ent.get(key, 0) + v

        for c, word in enumerate(bases[k]):
            koszul = 0
            for i, (e, a) in enumerate(word):
                ga = A.degrees[e][a]
                for row, v in dcols[e][a]:
                    new = word[:i] + ((e, row),) + word[i + 1 :]
                    add(new, c, -((-1) ** koszul) * v)
                if i + 1 < len(word):
                    f, b = word[i + 1]
                    if len(word) <= top:
                        for row, v in mcols[(e, f)][a * A.ranks[f] + b]:
                            new = word[:i] + ((e + f, row),) + word[i + 2 :]
                            add(new, c, (-1) ** (koszul + ga - 1) * v)
                koszul += ga - 1
        diffs.append(IntMatrix(len(bases[k + 1]), len(bases[k]), {key: v for key, v in ent.items() if v}))
    return CochainComplex(lo, [len(bases[k]) for k in range(lo, hi + 1)], diffs), bases


def bar_complex(A: GradedAlgebra, n_max: int, d_max: int, full: bool = False) -> BigradedComplex:
    """Bar complex B(A) = (T^c(s A-bar), d_A + d'), one slice per weight.

    For algebras without cohomological grading, bidegree (n, d) is spanned by
    bar words of length n and total weight d.  dg algebras are always built in
    full, since their differential mixes lengths.
    """
    _check_window(n_max, d_max, A.d_max)
    full = full or A.is_dg
    slices, bases = {}, {}
    for d in range(d_max + 1):
        top = d if full else min(d, n_max + 1)
        S, B = _bar_slice(A, d, top)
        slices[d] = S
        for k, b in B.items():
            bases[(-k, d)] = b
    out = BigradedComplex(slices, True, n_max, d_max, bases, f"bar({A.name})")
    out.check()
    return out


def bar_homology(A: GradedAlgebra, n_max: int, d_max: int) -> dict[tuple[int, int], CohomologyGroup]:
    return bar_complex(A, n_max, d_max).cohomology()


def cobar_cosimplicial(C: GradedCoalgebra, d: int, T: int) -> CosimplicialAbGroup:
    """Weight-d part of the cosimplicial object [n] -> C^{(x)n}.

    Level n has the words of n factors (weights >= 0, the weight-0 factor
    being the unit 1) of total weight d.  Inner cofaces apply the full
    diagonal to one factor, the outer ones insert 1; codegeneracies apply the
    counit to one factor.
    """
    ranks = {0: 1}
    ranks.update({e: C.ranks[e] for e in range(1, C.d_max + 1)})
    levels = [_words(ranks, d, n, min_part=0) for n in range(T + 1)]
    index = [{w: i for i, w in enumerate(lv)} for lv in levels]
    cols = {k: _columns(M) for k, M in C.reduced_diagonal.items()}
    one = ((0, 0),)

    def full_diagonal(e, a):
        if e == 0:
            return [((0, 0), (0, 0), 1)]
        out = [((e, a), (0, 0), 1), ((0, 0), (e, a), 1)]
        for p in range(1, e):
            q = e - p
            for row, v in cols[(p, q)][a]:
                x, y = divmod(row, C.ranks[q])
                out.append(((p, x), (q, y), v))
        return out

    cofaces, codegs = {}, {}
    for m in range(1, T + 1):
        for i in range(m + 1):
            ent: dict[tuple[int, int], int] = {}
            for c, w in enumerate(levels[m - 1]):
                if i == 0:
                    images = [(one + w, 1)]
                elif i == m:
                    images = [(w + one, 1)]
                else:
                    e, a = w[i - 1]
                    images = [(w[: i - 1] + (u, v) + w[i:], k) for u, v, k in full_diagonal(e, a)]
                for new, k in images:
                    key = (index[m][new], c)
                    ent[key] = ent.get(key, 0) + k
            cofaces[(m, i)] = IntMatrix(len(levels[m]), len(levels[m - 1]), ent)
    for m in range(T):
        for j in range(m + 1):
            ent = {}
            for c, w in enumerate(levels[m + 1]):
                if w[j][0] == 0:
                    ent[(index[m][w[:j] + w[j + 1 :]], c)] = 1
            codegs[(m, j)] = IntMatrix(len(levels[m]), len(levels[m + 1]), ent)
    return CosimplicialAbGroup(tuple(len(lv) for lv in levels), cofaces, codegs)


# ---------------------------------------------------------------------------
# comparisons, filtrations and conservativity experiments


@dataclass(frozen=True)
class DualCompareReport:
    coalgebra: str
    n_max: int
    d_max: int
    compared: int
    mismatches: list[tuple[int, int]]

    @property
    def equal(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict:
        return {
            "coalgebra": self.coalgebra,
            "window": {"n_max": self.n_max, "d_max": self.d_max},
            "compared_differentials": self.compared,
            "mismatches": [f"({n},{d})" for n, d in self.mismatches],
            "equal": self.equal,
        }


def dual_compare(C: GradedCoalgebra, n_max: int = 5, d_max: int = 8) -> DualCompareReport:
    """Compare B(C^dual) with the transpose of Omega(C), matrix by matrix.

    For each bidegree (n, d) with 1 <= n <= n_max the bar differential
    B_{n,d} -> B_{n-1,d} must equal the transpose of the cobar differential
    Omega^{n-1,d} -> Omega^{n,d}, with identical bases.
    """
    Om = cobar_complex(C, n_max, d_max)
    B = bar_complex(C.dual_algebra(), n_max, d_max)
    mismatches = []
    compared = 0
    for d in range(d_max + 1):
        for n in range(n_max + 1):
            if Om.bases.get((n, d), []) != B.bases.get((n, d), []):
                mismatches.append((n, d))
                continue
            if n == 0:
                continue
            compared += 1
            if B.differential(n, d) != Om.differential(n - 1, d).T:
                mismatches.append((n, d))
    return DualCompareReport(C.name, n_max, d_max, compared, mismatches)


@dataclass(frozen=True)
class LengthFiltration:
    """Omega / F_n (tensor lengths < n) and the slice F_{n-1} / F_n (length n - 1)."""

    n: int
    quotient: BigradedComplex
    slice: BigradedComplex


def filtration_quotients(C: GradedCoalgebra, n: int, d_max: int) -> LengthFiltration:
    """Quotients of the cobar complex by the length filtration F_n = lengths >= n."""
    if n < 1:
        raise ValueError("n must be at least 1")
    d_max = min(d_max, C.d_max)
    quot, sl = {}, {}
    for d in range(d_max + 1):
        S, _ = _cobar_slice(C, d, min(d, n))
        q = S.restrict(0, n - 1)
        quot[d] = q
        sl[d] = CochainComplex(n - 1, [q.rank(n - 1)])
    top = max(n - 1, 0)
    return LengthFiltration(
        n,
        BigradedComplex(quot, False, top, d_max, label=f"cobar/F_{n}"),
        BigradedComplex(sl, False, top, d_max, label=f"F_{n - 1}/F_{n}"),
    )


def _bar_map(f: AlgebraMap, d: int, Bs: BigradedComplex, Bt: BigradedComplex) -> ComplexMap:
    S, T = Bs.slices[d], Bt.slices[d]
    comps = {}
    cols = {e: _columns(M) for e, M in f.components.items()}
    for k in S.degrees():
        src = Bs.bases.get((-k, d), [])
        tgt = {w: i for i, w in enumerate(Bt.bases.get((-k, d), []))}
        ent: dict[tuple[int, int], int] = {}
        for c, word in enumerate(src):
            images = [((), 1)]
            for e, a in word:
                images = [(w + ((e, row),), v * x) for w, v in images for row, x in cols[e][a]]
            for w, v in images:
                key = (tgt[w], c)
                ent[key] = ent.get(key, 0) + v
        comps[k] = IntMatrix(T.rank(k), S.rank(k), ent)
    return ComplexMap(S, T, comps)


def _pad_to(C: CochainComplex, lo: int, hi: int) -> CochainComplex:
    return C.restrict(lo, hi)


def _weight_map(f: AlgebraMap, d: int) -> ComplexMap:
    S, so = f.source.weight_complex(d)
    T, to = f.target.weight_complex(d)
    lo, hi = min(S.lo, T.lo), max(S.hi, T.hi)
    S2, T2 = _pad_to(S, lo, hi), _pad_to(T, lo, hi)
    M = f.components[d]
    sdeg, tdeg = f.source.degrees[d], f.target.degrees[d]
    comps = {}
    for g in range(lo, hi + 1):
        src = [i for i in so if sdeg[i] == g]
        tgt = {i: k for k, i in enumerate(j for j in to if tdeg[j] == g)}
        sp = {i: k for k, i in enumerate(src)}
        ent = {(tgt[r], sp[c]): v for (r, c), v in M.items() if c in sp and r in tgt}
        comps[g] = IntMatrix(len(tgt), len(sp), ent)
    return ComplexMap(S2, T2, comps)


@dataclass(frozen=True)
class ConservativityReport:
    name: str
    d_max: int
    f_qiso: dict[int, bool]
    bar_qiso: dict[int, bool]

    @property
    def f_is_qiso(self) -> bool:
        return all(self.f_qiso.values())

    @property
    def bar_is_qiso(self) -> bool:
        return all(self.bar_qiso.values())

    @property
    def contradiction(self) -> bool:
        """B(f) a quasi-isomorphism in the window while f is not."""
        return self.bar_is_qiso and not self.f_is_qiso

    def to_json(self) -> dict:
        return {
            "map": self.name,
            "window": {"d_max": self.d_max},
            "f_qiso_by_weight": {str(d): v for d, v in self.f_qiso.items()},
            "bar_qiso_by_weight": {str(d): v for d, v in self.bar_qiso.items()},
            "f_qiso": self.f_is_qiso,
            "bar_qiso": self.bar_is_qiso,
            "contradiction": self.contradiction,
        }


def conservativity_demo(f: AlgebraMap, d_max: int) -> ConservativityReport:
    """Quasi-isomorphism verdicts for f and for B(f), weight by weight up to d_max.

    The bar complexes are built in full for each weight, so the verdicts are
    exact within the window.
    """
    problems = f.defects() + f.source.defects() + f.target.defects()
    if problems:
        raise ValueError("not a map of augmented dg algebras: " + "; ".join(problems))
    d_max = min(d_max, f.source.d_max)
    Bs = bar_complex(f.source, 0, d_max, full=True)
    Bt = bar_complex(f.target, 0, d_max, full=True)
    f_q, b_q = {}, {}
    for d in range(d_max + 1):
        f_q[d] = True if d == 0 else is_quasi_iso(_weight_map(f, d))
        S, T = Bs.slices[d], Bt.slices[d]
        lo, hi = min(S.lo, T.lo), max(S.hi, T.hi)
        Bs2 = BigradedComplex({d: S.restrict(lo, hi)}, True, 0, d, Bs.bases)
        Bt2 = BigradedComplex({d: T.restrict(lo, hi)}, True, 0, d, Bt.bases)
        b_q[d] = is_quasi_iso(_bar_map(f, d, Bs2, Bt2))
    return ConservativityReport(f.name, d_max, f_q, b_q)


def example_maps(d_max: int = 5) -> dict[str, AlgebraMap]:
    """The named algebra maps used in the conservativity experiments."""
    zx = polynomial_algebra(d_max)
    dual_numbers = truncated_polynomial_algebra(2, d_max)
    one = lambda: IntMatrix(1, 1, {(0, 0): 1})
    maps = {
        "identity": AlgebraMap(zx, zx, {d: one() for d in range(1, d_max + 1)}, "id: Z[x] -> Z[x]"),
        "double": AlgebraMap(
            zx, zx, {d: IntMatrix(1, 1, {(0, 0): 2**d}) for d in range(1, d_max + 1)}, "x -> 2x on Z[x]"
        ),
        "quotient": AlgebraMap(zx, dual_numbers, {1: one()}, "Z[x] -> Z[x]/(x^2)"),
        "koszul": AlgebraMap(trivial_algebra(d_max), koszul_dg_algebra(d_max), {}, "Z -> Z[x](x)Lambda[e], de=x"),
    }
    return maps
