"""
Finite simplicial sets, their cochain rings Z^X and integer cohomology.

A simplicial set is stored through its nondegenerate simplices.  Every
m-simplex is a pair (y, eta) with y nondegenerate of dimension k and
eta: [m] -> [k] an order-preserving surjection (the Eilenberg-Zilber normal
form); the face d_i y of a nondegenerate y is recorded in the same form.
"""

from __future__ import annotations

import json
import random
import warnings
from dataclasses import dataclass, field
from itertools import combinations
from math import comb, gcd
from pathlib import Path
from typing import Hashable, Iterable, Mapping, Sequence

from . import binomial as bn
from . import delta
from .barcobar import cobar_complex, cobar_cosimplicial, num_coalgebra
from .cosimplicial import (
    CosimplicialAbGroup,
    alexander_whitney,
    dual,
    levelwise_tensor,
    normalized_complex,
    z1_simplicial,
)
from .exact_linalg import (
    CochainComplex,
    CohomologyGroup,
    IntMatrix,
    cohomology,
    is_quasi_iso,
)

__all__ = [
    "FiniteSimplicialSet",
    "point",
    "simplex",
    "boundary",
    "sphere",
    "circle",
    "torus",
    "rp2",
    "product_space",
    "from_simplicial_complex",
    "load_simplicial_set",
    "FIXTURES",
    "cochain_ring",
    "CochainRing",
    "nondegenerate_cochains",
    "space_cohomology",
    "kunneth_formula",
    "kunneth_check",
    "KunnethReport",
    "binomiality_check",
    "BinomialityReport",
    "alpha1_pointwise_check",
    "Alpha1Report",
]

Simplex = tuple[Hashable, tuple[int, ...]]  # (nondegenerate name, surjection [m] -> [k])


class SimplicialIdentityError(ValueError):
    pass


@dataclass(frozen=True)
class FiniteSimplicialSet:
    """Nondegenerate simplices by dimension plus their faces in normal form.

    `faces[(y, i)] = (z, eta)` means d_i y = eta^*(z) with z nondegenerate
    and eta a surjection [dim y - 1] -> [dim z].
    """

    cells: Mapping[int, tuple[Hashable, ...]]
    faces: Mapping[tuple[Hashable, int], Simplex] = field(repr=False)
    name: str = ""

    def __post_init__(self):
        cells = {int(k): tuple(v) for k, v in self.cells.items() if v}
        object.__setattr__(self, "cells", cells)
        dims = {}
        for k, names in cells.items():
            for y in names:
                if y in dims:
                    raise ValueError(f"simplex {y!r} listed twice")
                dims[y] = k
        object.__setattr__(self, "_dims", dims)
        for y, k in dims.items():
            for i in range(k + 1 if k else 0):
                if (y, i) not in self.faces:
                    raise ValueError(f"face d_{i} of {y!r} missing")
                z, eta = self.faces[(y, i)]
                if z not in dims:
                    raise ValueError(f"face d_{i} of {y!r} is the unknown simplex {z!r}")
                if len(eta) != k or not delta.is_surjective(eta, dims[z]) or list(eta) != sorted(eta):
                    raise ValueError(f"face d_{i} of {y!r}: {eta} is not a surjection [{k - 1}] -> [{dims[z]}]")
        bad = self.identity_defects()
        if bad:
            raise SimplicialIdentityError(bad[0])

    @property
    def dim(self) -> int:
        return max(self.cells, default=0)

    def dim_of(self, y: Hashable) -> int:
        return self._dims[y]

    def nondegenerate(self, k: int) -> tuple[Hashable, ...]:
        return self.cells.get(k, ())

    def pullback(self, s: Simplex, theta: delta.Map) -> Simplex:
        """theta^*(s) in normal form, for theta: [m'] -> [m] order preserving."""
        y, eta = s
        return self._apply(y, delta.compose(eta, theta))

    def _apply(self, y: Hashable, f: delta.Map) -> Simplex:
        epi, mono = delta.epi_mono(f)
        k = self._dims[y]
        if len(mono) == k + 1:
            return (y, epi)
        i = max(set(range(k + 1)) - set(mono))
        rest = tuple(v if v < i else v - 1 for v in mono)
        z, eta = self.faces[(y, i)]
        w, zeta = self._apply(z, delta.compose(eta, rest))
        return (w, delta.compose(zeta, epi))

    def face(self, s: Simplex, i: int) -> Simplex:
        return self.pullback(s, delta.coface_map(i, len(s[1]) - 1))

    def degeneracy(self, s: Simplex, j: int) -> Simplex:
        return self.pullback(s, delta.codegeneracy_map(j, len(s[1]) - 1))

    def simplices(self, m: int) -> list[Simplex]:
        """All m-simplices, nondegenerate ones first within each core dimension."""
        out = []
        for k in sorted(self.cells):
            if k > m:
                break
            for y in self.cells[k]:
                for eta in delta.surjections(m, k):
                    out.append((y, eta))
        return out

    def count(self, m: int) -> int:
        return sum(len(v) * comb(m, k) for k, v in self.cells.items() if k <= m)

    def identity_defects(self) -> list[str]:
        """d_i d_j = d_{j-1} d_i (i < j) on every nondegenerate simplex."""
        out = []
        for k, names in self.cells.items():
            if k < 2:
                continue
            for y in names:
                s = (y, tuple(range(k + 1)))
                for j in range(1, k + 1):
                    for i in range(j):
                        if self.face(self.face(s, j), i) != self.face(self.face(s, i), j - 1):
                            out.append(f"d_{i} d_{j} != d_{j - 1} d_{i} on {y!r}")
        return out

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "cells": {str(k): [str(y) for y in v] for k, v in sorted(self.cells.items())},
            "faces": [
                {"simplex": str(y), "index": i, "target": str(z), "surjection": list(eta)}
                for (y, i), (z, eta) in sorted(self.faces.items(), key=lambda kv: (str(kv[0][0]), kv[0][1]))
            ],
        }


def load_simplicial_set(source: str | Path | Mapping) -> FiniteSimplicialSet:
    """Read the JSON format of `FiniteSimplicialSet.to_json`.

    A file may instead give {"facets": [[v0, v1, ...], ...]} for an ordered
    simplicial complex.
    """
    obj = source if isinstance(source, Mapping) else json.loads(Path(source).read_text())
    if "facets" in obj:
        return from_simplicial_complex(obj["facets"], obj.get("name", "file"))
    cells = {int(k): tuple(v) for k, v in obj["cells"].items()}
    faces = {(f["simplex"], int(f["index"])): (f["target"], tuple(f["surjection"])) for f in obj["faces"]}
    return FiniteSimplicialSet(cells, faces, obj.get("name", "file"))


# ---------------------------------------------------------------------------
# standard spaces


def point() -> FiniteSimplicialSet:
    return FiniteSimplicialSet({0: ("*",)}, {}, "point")


def from_simplicial_complex(facets: Iterable[Sequence], name: str = "") -> FiniteSimplicialSet:
    """Ordered simplicial complex: simplices are the sorted subsets of the facets."""
    simplices = set()
    for f in facets:
        f = tuple(sorted(f))
        for k in range(1, len(f) + 1):
            simplices.update(combinations(f, k))
    cells: dict[int, list] = {}
    for s in sorted(simplices, key=lambda s: (len(s), s)):
        cells.setdefault(len(s) - 1, []).append(s)
    faces = {}
    for s in simplices:
        k = len(s) - 1
        if k == 0:
            continue
        for i in range(k + 1):
            faces[(s, i)] = (s[:i] + s[i + 1 :], tuple(range(k)))
    return FiniteSimplicialSet(cells, faces, name)


def simplex(n: int) -> FiniteSimplicialSet:
    return from_simplicial_complex([range(n + 1)], f"Delta[{n}]")


def boundary(n: int) -> FiniteSimplicialSet:
    if n < 1:
        raise ValueError("boundary of Delta[n] needs n >= 1")
    return from_simplicial_complex(combinations(range(n + 1), n), f"boundary Delta[{n}]")


def sphere(n: int) -> FiniteSimplicialSet:
    """Delta[n] / boundary: one vertex and one nondegenerate n-simplex."""
    if n < 1:
        raise ValueError("sphere(n) needs n >= 1")
    faces = {("s", i): ("*", (0,) * n) for i in range(n + 1)}
    return FiniteSimplicialSet({0: ("*",), n: ("s",)}, faces, f"S^{n}")


def circle() -> FiniteSimplicialSet:
    return sphere(1)


def rp2() -> FiniteSimplicialSet:
    """The 6-vertex minimal triangulation of the real projective plane."""
    facets = [(1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6), (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6)]
    return from_simplicial_complex(facets, "RP^2")


def _collapse(etas: Sequence[tuple[int, ...]]) -> tuple[list[tuple[int, ...]], tuple[int, ...]]:
    """Write jointly surjective maps as (jointly nondegenerate maps) after a common surjection."""
    m = len(etas[0]) - 1
    keep = [0] + [j for j in range(1, m + 1) if any(e[j] != e[j - 1] for e in etas)]
    epi = []
    level = -1
    for j in range(m + 1):
        if j in keep:
            level += 1
        epi.append(level)
    return [tuple(e[j] for j in keep) for e in etas], tuple(epi)


def product_space(X: FiniteSimplicialSet, Y: FiniteSimplicialSet) -> FiniteSimplicialSet:
    """X x Y.  Nondegenerate m-simplices are pairs ((x, eta), (y, zeta)) of
    m-simplices with no index j at which both eta and zeta repeat."""
    cells: dict[int, list] = {}
    for m in range(X.dim + Y.dim + 1):
        for a in X.simplices(m):
            for b in Y.simplices(m):
                if not any(a[1][j] == a[1][j + 1] and b[1][j] == b[1][j + 1] for j in range(m)):
                    cells.setdefault(m, []).append((a, b))
    faces = {}
    for m, names in cells.items():
        if m == 0:
            continue
        for a, b in names:
            for i in range(m + 1):
                fa, fb = X.face(a, i), Y.face(b, i)
                (ea, eb), epi = _collapse([fa[1], fb[1]])
                faces[((a, b), i)] = (((fa[0], ea), (fb[0], eb)), epi)
    return FiniteSimplicialSet(cells, faces, f"{X.name} x {Y.name}")


def torus() -> FiniteSimplicialSet:
    return product_space(circle(), circle())


FIXTURES = {
    "point": point,
    "circle": circle,
    "sphere2": lambda: sphere(2),
    "sphere3": lambda: sphere(3),
    "boundary2": lambda: boundary(2),
    "boundary3": lambda: boundary(3),
    "simplex2": lambda: simplex(2),
    "torus": torus,
    "rp2": rp2,
    "circle_x_sphere2": lambda: product_space(circle(), sphere(2)),
}


# ---------------------------------------------------------------------------
# cochains


@dataclass(frozen=True)
class CochainRing:
    """Z^X truncated at level T: level m is Z^{X_m}, with pointwise products."""

    space: FiniteSimplicialSet
    levels: tuple[tuple[Simplex, ...], ...]
    structure: CosimplicialAbGroup

    @property
    def T(self) -> int:
        return len(self.levels) - 1

    def multiply(self, m: int, f: Sequence[int], g: Sequence[int]) -> list[int]:
        if len(f) != len(self.levels[m]) or len(g) != len(self.levels[m]):
            raise ValueError("cochain length does not match the level")
        return [a * b for a, b in zip(f, g)]

    def unit(self, m: int) -> list[int]:
        return [1] * len(self.levels[m])

    def apply(self, M: IntMatrix, f: Sequence[int]) -> list[int]:
        out = [0] * M.rows
        for (r, c), v in M.items():
            out[r] += v * f[c]
        return out


def cochain_ring(X: FiniteSimplicialSet, T: int) -> CochainRing:
    """Cofaces d^i f = f o d_i and codegeneracies s^j f = f o s_j on all simplices."""
    levels = tuple(tuple(X.simplices(m)) for m in range(T + 1))
    index = [{s: k for k, s in enumerate(lv)} for lv in levels]
    cof, cod = {}, {}
    for m in range(1, T + 1):
        for i in range(m + 1):
            ent = {(r, index[m - 1][X.face(s, i)]): 1 for r, s in enumerate(levels[m])}
            cof[(m, i)] = IntMatrix(len(levels[m]), len(levels[m - 1]), ent)
    for m in range(T):
        for j in range(m + 1):
            ent = {(r, index[m + 1][X.degeneracy(s, j)]): 1 for r, s in enumerate(levels[m])}
            cod[(m, j)] = IntMatrix(len(levels[m]), len(levels[m + 1]), ent)
    return CochainRing(X, levels, CosimplicialAbGroup(tuple(map(len, levels)), cof, cod))


def nondegenerate_cochains(X: FiniteSimplicialSet) -> CochainComplex:
    """Cochains vanishing on degenerate simplices, with basis the nondegenerate ones.

    This complex is finite (degrees 0..dim X) and needs no truncation.
    """
    top = X.dim
    index = [{y: k for k, y in enumerate(X.nondegenerate(m))} for m in range(top + 1)]
    diffs = []
    for m in range(top):
        ent: dict[tuple[int, int], int] = {}
        for r, y in enumerate(X.nondegenerate(m + 1)):
            for i in range(m + 2):
                z, eta = X.faces[(y, i)]
                if len(set(eta)) == len(eta):  # nondegenerate face
                    key = (r, index[m][z])
                    ent[key] = ent.get(key, 0) + (-1) ** i
        diffs.append(IntMatrix(len(index[m + 1]), len(index[m]), ent))
    C = CochainComplex(0, [len(ix) for ix in index], diffs)
    C.check()
    return C


def space_cohomology(X: FiniteSimplicialSet, T: int | None = None) -> dict[int, CohomologyGroup]:
    """H^n(X; Z) for 0 <= n < T (default T = dim X + 1)."""
    if T is None:
        T = X.dim + 1
    if T < X.dim + 1:
        warnings.warn(f"truncation T={T} is below dim X + 1 = {X.dim + 1}; only degrees < {T} are reported")
    H = cohomology(nondegenerate_cochains(X))
    return {n: H.get(n, CohomologyGroup()) for n in range(T)}


# ---------------------------------------------------------------------------
# Kunneth


def _tensor_groups(A: CohomologyGroup, B: CohomologyGroup) -> CohomologyGroup:
    free = A.free_rank * B.free_rank
    tors = [t for t in A.torsion for _ in range(B.free_rank)] + [t for t in B.torsion for _ in range(A.free_rank)]
    tors += [gcd(a, b) for a in A.torsion for b in B.torsion]
    return CohomologyGroup(free, tuple(tors))


def _tor_groups(A: CohomologyGroup, B: CohomologyGroup) -> CohomologyGroup:
    return CohomologyGroup(0, tuple(gcd(a, b) for a in A.torsion for b in B.torsion))


def _sum_groups(groups: Iterable[CohomologyGroup]) -> CohomologyGroup:
    free, tors = 0, []
    for g in groups:
        free += g.free_rank
        tors += list(g.torsion)
    return CohomologyGroup.from_cyclic(free, tors)


def kunneth_formula(HX: Mapping[int, CohomologyGroup], HY: Mapping[int, CohomologyGroup], n: int) -> CohomologyGroup:
    """H^n(X x Y) = sum_{p+q=n} H^p (x) H^q  +  sum_{p+q=n+1} Tor(H^p, H^q)."""
    zero = CohomologyGroup()
    terms = [_tensor_groups(HX.get(p, zero), HY.get(n - p, zero)) for p in range(n + 1)]
    terms += [_tor_groups(HX.get(p, zero), HY.get(n + 1 - p, zero)) for p in range(n + 2)]
    return _sum_groups(terms)


@dataclass(frozen=True)
class KunnethReport:
    spaces: tuple[str, str]
    T: int
    levelwise_iso: bool
    cosimplicial_map: bool
    chain_map: bool
    quasi_iso: bool
    product_cohomology: dict[int, CohomologyGroup]
    formula_cohomology: dict[int, CohomologyGroup]

    @property
    def formula_matches(self) -> bool:
        return self.product_cohomology == self.formula_cohomology

    @property
    def passed(self) -> bool:
        return self.levelwise_iso and self.cosimplicial_map and self.chain_map and self.quasi_iso and self.formula_matches

    def to_json(self) -> dict:
        return {
            "spaces": list(self.spaces),
            "T": self.T,
            "levelwise_outer_product_is_iso": self.levelwise_iso,
            "is_cosimplicial_map": self.cosimplicial_map,
            "alexander_whitney_is_chain_map": self.chain_map,
            "quasi_iso_below_T": self.quasi_iso,
            "H_product": {str(n): g.to_json() for n, g in self.product_cohomology.items()},
            "H_kunneth_formula": {str(n): g.to_json() for n, g in self.formula_cohomology.items()},
            "formula_matches": self.formula_matches,
            "passed": self.passed,
        }


def _outer_product_matrix(RX: CochainRing, RY: CochainRing, RP: CochainRing, m: int) -> IntMatrix:
    """Z^{X_m} (x) Z^{Y_m} -> Z^{(X x Y)_m}, f (x) g -> ((a, b) -> f(a) g(b)).

    (X x Y)_m is identified with X_m x Y_m by collapsing each product simplex
    back into its two components.
    """
    X, Y = RX.space, RY.space
    ix = {s: k for k, s in enumerate(RX.levels[m])}
    iy = {s: k for k, s in enumerate(RY.levels[m])}
    ny = len(RY.levels[m])
    ent = {}
    for r, ((a, b), eta) in enumerate(RP.levels[m]):
        sa = X.pullback(a, eta)
        sb = Y.pullback(b, eta)
        ent[(r, ix[sa] * ny + iy[sb])] = 1
    return IntMatrix(len(RP.levels[m]), len(RX.levels[m]) * ny, ent)


def kunneth_check(X: FiniteSimplicialSet, Y: FiniteSimplicialSet, T: int = 4) -> KunnethReport:
    """Compare Z^X (x) Z^Y with Z^{X x Y}.

    * the levelwise outer product of functions is an isomorphism of cosimplicial groups;
    * the Alexander-Whitney map N(Z^X) (x) N(Z^Y) -> C(Z^{X x Y}) is a chain map
      and a quasi-isomorphism in degrees < T;
    * H(X x Y) computed directly agrees with the Kunneth formula.
    """
    RX, RY = cochain_ring(X, T), cochain_ring(Y, T)
    P = product_space(X, Y)
    RP = cochain_ring(P, T)
    tensor = levelwise_tensor(RX.structure, RY.structure)
    phi = {m: _outer_product_matrix(RX, RY, RP, m) for m in range(T + 1)}
    iso = all(
        M.rows == M.cols and M.nnz == M.rows and len({c for (_, c), _v in M.items()}) == M.cols for M in phi.values()
    )
    A, B = tensor, RP.structure
    cosimp = all(
        phi[m] @ A.coface(m, i) == B.coface(m, i) @ phi[m - 1] for m in range(1, T + 1) for i in range(m + 1)
    ) and all(phi[m] @ A.codegeneracy(m, j) == B.codegeneracy(m, j) @ phi[m + 1] for m in range(T) for j in range(m + 1))
    aw = alexander_whitney(RX.structure, RY.structure)
    chain = aw.commutes()
    qiso = chain and is_quasi_iso(aw, below=T)
    HP = space_cohomology(P, P.dim + 1)
    HX, HY = space_cohomology(X, X.dim + 1), space_cohomology(Y, Y.dim + 1)
    HF = {n: kunneth_formula(HX, HY, n) for n in HP}
    return KunnethReport((X.name, Y.name), T, iso, cosimp, chain, qiso, HP, HF)


# ---------------------------------------------------------------------------
# binomiality


@dataclass(frozen=True)
class BinomialityReport:
    space: str
    T: int
    samples: int
    primes: tuple[int, ...]
    max_n: int
    checks: int
    failures: list[str]
    structure_maps_are_ring_maps: bool

    @property
    def passed(self) -> bool:
        return not self.failures and self.structure_maps_are_ring_maps

    def to_json(self) -> dict:
        return {
            "space": self.space,
            "T": self.T,
            "samples": self.samples,
            "primes": list(self.primes),
            "max_n": self.max_n,
            "checks": self.checks,
            "failures": self.failures[:20],
            "structure_maps_are_ring_maps": self.structure_maps_are_ring_maps,
            "passed": self.passed,
        }


def _is_pullback(M: IntMatrix) -> bool:
    """Precomposition with a map of sets: exactly one entry 1 in every row."""
    rows = [0] * M.rows
    for (r, _), v in M.items():
        if v != 1:
            return False
        rows[r] += 1
    return all(k == 1 for k in rows)


def binomiality_check(
    X: FiniteSimplicialSet,
    T: int = 3,
    samples: int = 100,
    seed: int = 0,
    primes: Sequence[int] = (2, 3, 5, 7),
    max_n: int = 5,
    value_range: int = 50,
) -> BinomialityReport:
    """Sampled cochains a on levels <= T: (a^p - a)/p and binom(a, n) are integer valued."""
    R = cochain_ring(X, T)
    rng = random.Random(seed)
    failures, checks = [], 0
    for k in range(samples):
        m = rng.randrange(T + 1)
        a = [rng.randint(-value_range, value_range) for _ in R.levels[m]]
        for p in primes:
            power = a
            for _ in range(p - 1):
                power = R.multiply(m, power, a)
            checks += 1
            if any((u - v) % p for u, v in zip(power, a)):
                failures.append(f"sample {k}: (a^{p} - a)/{p} not integral at level {m}")
        for n in range(1, max_n + 1):
            falling = R.unit(m)
            for i in range(n):
                falling = R.multiply(m, falling, [v - i for v in a])
            fact = 1
            for i in range(2, n + 1):
                fact *= i
            checks += 1
            if any(v % fact for v in falling) or [v // fact for v in falling] != [bn.binom(v, n) for v in a]:
                failures.append(f"sample {k}: binom(a, {n}) not integral at level {m}")
    S = R.structure
    maps = list(S.cofaces.values()) + list(S.codegeneracies.values())
    return BinomialityReport(X.name, T, samples, tuple(primes), max_n, checks, failures, all(map(_is_pullback, maps)))


# ---------------------------------------------------------------------------
# alpha_1 on sampled points of K_1


@dataclass(frozen=True)
class Alpha1Report:
    max_internal_degree: int
    max_level: int
    samples: int
    seed: int
    evaluations: int
    discrepancies: list[str]
    x_is_cocycle: bool
    x_generates_cobar_h1: bool
    x_matches_linear_generator: bool

    @property
    def passed(self) -> bool:
        return (
            not self.discrepancies
            and self.x_is_cocycle
            and self.x_generates_cobar_h1
            and self.x_matches_linear_generator
        )

    def to_json(self) -> dict:
        return {
            "max_internal_degree": self.max_internal_degree,
            "max_level": self.max_level,
            "samples": self.samples,
            "seed": self.seed,
            "evaluations": self.evaluations,
            "discrepancies": self.discrepancies[:20],
            "discrepancy_count": len(self.discrepancies),
            "x_is_cocycle": self.x_is_cocycle,
            "x_generates_cobar_H1": self.x_generates_cobar_h1,
            "x_matches_linear_generator": self.x_matches_linear_generator,
            "passed": self.passed,
        }


def _word_value(word, point: Sequence[int]) -> int:
    out = 1
    for (d, _), a in zip(word, point):
        out *= bn.binom(a, d)
    return out


def alpha1_pointwise_check(
    max_internal_degree: int = 6,
    samples: int = 500,
    seed: int = 0,
    max_level: int = 3,
    value_range: int = 10,
) -> Alpha1Report:
    """Compare the cobar object of Num[x] with Z^{K_1} on sampled points.

    A cobar word (d_1, ..., d_n) is the function a -> prod binom(a_i, d_i) on
    Z^n.  For a random level n <= max_level and a random point b of Z^{n+1}
    (resp. Z^{n-1}), every coface (resp. codegeneracy) of Z^{K_1}, i.e.
    precomposition with the faces (resp. degeneracies) of the simplicial
    model of K_1, must agree with the cobar coface (resp. codegeneracy)
    computed from the Vandermonde diagonal.
    """
    C = num_coalgebra(max_internal_degree)
    T = max_level + 1
    objects = {d: cobar_cosimplicial(C, d, T) for d in range(max_internal_degree + 1)}
    levels = {
        d: [[w for w in _level_words(d, m)] for m in range(T + 1)] for d in range(max_internal_degree + 1)
    }
    K1 = z1_simplicial(T)
    rng = random.Random(seed)
    bad: list[str] = []
    evals = 0
    for k in range(samples):
        n = rng.randint(1, max_level)
        up = tuple(rng.randint(-value_range, value_range) for _ in range(n + 1))
        down = tuple(rng.randint(-value_range, value_range) for _ in range(n - 1))
        for d, A in objects.items():
            words_n, words_up = levels[d][n], levels[d][n + 1]
            for i in range(n + 2):
                # face d_i of K_1 at level n + 1, applied to the point
                F = K1.face(n + 1, i)
                image = tuple(sum(v * up[c] for (r, c), v in F.items() if r == row) for row in range(n))
                M = A.coface(n + 1, i)
                for c, w in enumerate(words_n):
                    lhs = _word_value(w, image)
                    rhs = sum(v * _word_value(words_up[r], up) for r, v in _column(M, c))
                    evals += 1
                    if lhs != rhs:
                        bad.append(f"d^{i} on {w} at {up}: {lhs} != {rhs}")
            words_down = levels[d][n - 1]
            for j in range(n):
                G = K1.degeneracy(n - 1, j)
                image = tuple(sum(v * down[c] for (r, c), v in G.items() if r == row) for row in range(n))
                M = A.codegeneracy(n - 1, j)
                for c, w in enumerate(words_n):
                    lhs = _word_value(w, image)
                    rhs = sum(v * _word_value(words_down[r], down) for r, v in _column(M, c))
                    evals += 1
                    if lhs != rhs:
                        bad.append(f"s^{j} on {w} at {down}: {lhs} != {rhs}")

    # the linear cochain x = binom(x, 1) in bidegree (1, 1)
    Om = cobar_complex(C, 1, 1, full=True).slices[1]
    x_cocycle = Om.d(1).is_zero()
    H = cohomology(Om)
    x_generates = H.get(1) == CohomologyGroup(1) and Om.rank(1) == 1 and Om.rank(0) == 0
    # the sub-object of additive maps: level 1 of Z[-1] is Hom(Z, Z) = Z.id, and x(a) = a
    Zm1 = normalized_complex(dual(K1))
    linear = cohomology(Zm1).get(1) == CohomologyGroup(1) and all(
        bn.binom(a, 1) == a for a in range(-value_range, value_range + 1)
    )
    return Alpha1Report(max_internal_degree, max_level, samples, seed, evals, bad, x_cocycle, x_generates, linear)


def _level_words(d: int, m: int):
    from .barcobar import _words

    ranks = {e: 1 for e in range(d + 1)}
    return _words(ranks, d, m, min_part=0)


def _column(M: IntMatrix, c: int):
    return [(r, v) for (r, cc), v in M.items() if cc == c]
