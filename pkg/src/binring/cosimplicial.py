"""
Truncated (co)simplicial abelian groups with free levels of finite rank.

Conventions: `coface(m, i)` is d^i landing in degree m (i = 0..m), and
`codegeneracy(m, i)` is s^i landing in degree m (i = 0..m), coming from m+1.
On the simplicial side `face(m, i)` and `degeneracy(m, i)` are indexed by
their source degree.  Matrices act on column vectors.

Everything is cohomologically graded: Z[-n] means Z placed in cohomological
degree n, and normalized complexes live in degrees 0..T.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

from . import delta
from .exact_linalg import (
    CochainComplex,
    ComplexMap,
    IntMatrix,
    block_matrix,
    hermite_columns,
    kernel_basis,
    left_inverse,
)

__all__ = [
    "CosimplicialAbGroup",
    "SimplicialAbGroup",
    "Violation",
    "CosimplicialIdentityError",
    "validate",
    "validate_simplicial",
    "normalized_complex",
    "normalized_inclusion",
    "unnormalized_complex",
    "constant",
    "z1_simplicial",
    "dual",
    "gamma_sphere",
    "sphere_complex",
    "levelwise_tensor",
    "iterated_coface",
    "tensor_complex",
    "alexander_whitney",
]


@dataclass(frozen=True)
class Violation:
    identity: str
    degree: int
    indices: tuple[int, ...]

    def __str__(self) -> str:
        return f"{self.identity} fails in degree {self.degree} at indices {self.indices}"


class CosimplicialIdentityError(ValueError):
    def __init__(self, violation: Violation):
        self.violation = violation
        super().__init__(str(violation))


@dataclass(frozen=True)
class CosimplicialAbGroup:
    ranks: tuple[int, ...]
    cofaces: Mapping[tuple[int, int], IntMatrix] = field(repr=False)
    codegeneracies: Mapping[tuple[int, int], IntMatrix] = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "ranks", tuple(self.ranks))
        T = self.T
        for m in range(1, T + 1):
            for i in range(m + 1):
                M = self.cofaces.get((m, i))
                if M is None or M.shape != (self.ranks[m], self.ranks[m - 1]):
                    raise ValueError(f"coface d^{i} into degree {m} missing or misshapen")
        for m in range(T):
            for i in range(m + 1):
                M = self.codegeneracies.get((m, i))
                if M is None or M.shape != (self.ranks[m], self.ranks[m + 1]):
                    raise ValueError(f"codegeneracy s^{i} into degree {m} missing or misshapen")

    @property
    def T(self) -> int:
        return len(self.ranks) - 1

    def coface(self, m: int, i: int) -> IntMatrix:
        return self.cofaces[(m, i)]

    def codegeneracy(self, m: int, i: int) -> IntMatrix:
        return self.codegeneracies[(m, i)]

    def replace(self, **changes) -> CosimplicialAbGroup:
        cof = dict(self.cofaces)
        cod = dict(self.codegeneracies)
        cof.update(changes.get("cofaces", {}))
        cod.update(changes.get("codegeneracies", {}))
        return CosimplicialAbGroup(self.ranks, cof, cod)

    def to_json(self) -> dict:
        return {
            "T": self.T,
            "ranks": list(self.ranks),
            "cofaces": [dict(degree=m, index=i, **M.to_json()) for (m, i), M in sorted(self.cofaces.items())],
            "codegeneracies": [
                dict(degree=m, index=i, **M.to_json()) for (m, i), M in sorted(self.codegeneracies.items())
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> CosimplicialAbGroup:
        cof = {(int(e["degree"]), int(e["index"])): IntMatrix.from_json(e) for e in obj["cofaces"]}
        cod = {(int(e["degree"]), int(e["index"])): IntMatrix.from_json(e) for e in obj["codegeneracies"]}
        return cls(tuple(obj["ranks"]), cof, cod)


@dataclass(frozen=True)
class SimplicialAbGroup:
    ranks: tuple[int, ...]
    faces: Mapping[tuple[int, int], IntMatrix] = field(repr=False)
    degeneracies: Mapping[tuple[int, int], IntMatrix] = field(repr=False)

    @property
    def T(self) -> int:
        return len(self.ranks) - 1

    def face(self, m: int, i: int) -> IntMatrix:
        return self.faces[(m, i)]

    def degeneracy(self, m: int, i: int) -> IntMatrix:
        return self.degeneracies[(m, i)]


def dual(A):
    """Hom(-, Z): transpose every structure map, exchanging simplicial and cosimplicial."""
    if isinstance(A, SimplicialAbGroup):
        return CosimplicialAbGroup(
            A.ranks,
            {k: M.T for k, M in A.faces.items()},
            {k: M.T for k, M in A.degeneracies.items()},
        )
    if isinstance(A, CosimplicialAbGroup):
        return SimplicialAbGroup(
            A.ranks,
            {k: M.T for k, M in A.cofaces.items()},
            {k: M.T for k, M in A.codegeneracies.items()},
        )
    raise TypeError(f"cannot dualize {type(A).__name__}")


def validate(A: CosimplicialAbGroup) -> Violation | None:
    """First violated cosimplicial identity, or None."""
    T = A.T
    d, s = A.coface, A.codegeneracy
    for m in range(1, T):
        for j in range(1, m + 2):
            for i in range(j):
                if d(m + 1, j) @ d(m, i) != d(m + 1, i) @ d(m, j - 1):
                    return Violation("d^j d^i = d^i d^(j-1)", m + 1, (i, j))
    for m in range(T - 1):
        for j in range(m + 1):
            for i in range(j + 1):
                if s(m, j) @ s(m + 1, i) != s(m, i) @ s(m + 1, j + 1):
                    return Violation("s^j s^i = s^i s^(j+1)", m, (i, j))
    for m in range(T):
        eye = IntMatrix.identity(A.ranks[m])
        for j in range(m + 1):
            for i in range(m + 2):
                lhs = s(m, j) @ d(m + 1, i)
                if i < j:
                    rhs = d(m, i) @ s(m - 1, j - 1)
                elif i in (j, j + 1):
                    rhs = eye
                else:
                    rhs = d(m, i - 1) @ s(m - 1, j)
                if lhs != rhs:
                    return Violation("s^j d^i", m, (i, j))
    return None


def validate_simplicial(A: SimplicialAbGroup) -> Violation | None:
    """Simplicial identities, checked on the dual (they are transposes of each other)."""
    v = validate(dual(A))
    if v is None:
        return None
    return Violation(f"dual of {v.identity}", v.degree, v.indices)


def assert_valid(A: CosimplicialAbGroup) -> None:
    v = validate(A)
    if v is not None:
        raise CosimplicialIdentityError(v)


def _alternating(A: CosimplicialAbGroup, m: int) -> IntMatrix:
    """sum_i (-1)^i d^i from degree m to m + 1."""
    total = IntMatrix(A.ranks[m + 1], A.ranks[m])
    for i in range(m + 2):
        M = A.coface(m + 1, i)
        total = total + (M if i % 2 == 0 else -M)
    return total


def unnormalized_complex(A: CosimplicialAbGroup) -> CochainComplex:
    return CochainComplex(0, A.ranks, [_alternating(A, m) for m in range(A.T)])


def _normal_bases(A: CosimplicialAbGroup) -> list[IntMatrix]:
    """Canonical integral bases of the intersections of the codegeneracy kernels."""
    bases = [IntMatrix.identity(A.ranks[0])]
    for m in range(1, A.T + 1):
        stack = block_matrix([[A.codegeneracy(m - 1, j)] for j in range(m)])
        bases.append(hermite_columns(kernel_basis(stack)))
    return bases


def _normalize(A: CosimplicialAbGroup) -> tuple[CochainComplex, list[IntMatrix]]:
    K = _normal_bases(A)
    diffs = []
    for m in range(A.T):
        image = _alternating(A, m) @ K[m]
        X = left_inverse(K[m + 1]) @ image
        if K[m + 1] @ X != image:
            raise ArithmeticError(f"differential leaves the normalized subgroup in degree {m + 1}")
        diffs.append(X)
    N = CochainComplex(0, [k.cols for k in K], diffs)
    N.check()
    return N, K


def normalized_complex(A: CosimplicialAbGroup) -> CochainComplex:
    """Normalized cochains N(A) in degrees 0..T.

    N(A)^n is realized inside A^n as the common kernel of the codegeneracies
    A^n -> A^(n-1) (a canonical complement of the images of d^1, ..., d^n),
    with a Hermite-normal-form basis; the differential is the restriction of
    the alternating sum of cofaces.
    """
    return _normalize(A)[0]


def normalized_inclusion(A: CosimplicialAbGroup) -> ComplexMap:
    """The inclusion N(A) -> unnormalized cochains of A, as a chain map."""
    N, K = _normalize(A)
    U = unnormalized_complex(A)
    return ComplexMap(N, U, dict(enumerate(K)))


def constant(T: int, rank: int = 1) -> CosimplicialAbGroup:
    eye = IntMatrix.identity(rank)
    cof = {(m, i): eye for m in range(1, T + 1) for i in range(m + 1)}
    cod = {(m, i): eye for m in range(T) for i in range(m + 1)}
    return CosimplicialAbGroup((rank,) * (T + 1), cof, cod)


def z1_simplicial(T: int) -> SimplicialAbGroup:
    """The simplicial bar construction of Z: degree n is Z^n.

    Inner faces add two consecutive coordinates, the outer faces drop the
    first or last coordinate; degeneracies insert a zero.
    """
    if T < 1:
        raise ValueError("T must be at least 1")
    faces = {}
    degens = {}
    for m in range(1, T + 1):
        for i in range(m + 1):
            ent = {}
            for j in range(1, m + 1):
                tgt = j if j <= i else j - 1
                if 1 <= tgt <= m - 1:
                    ent[(tgt - 1, j - 1)] = 1
            faces[(m, i)] = IntMatrix(m - 1, m, ent)
    for m in range(T):
        for i in range(m + 1):
            ent = {((j if j <= i else j + 1) - 1, j - 1): 1 for j in range(1, m + 1)}
            degens[(m, i)] = IntMatrix(m + 1, m, ent)
    return SimplicialAbGroup(tuple(range(T + 1)), faces, degens)


def _gamma_simplicial(n: int, T: int) -> SimplicialAbGroup:
    """Dold-Kan Gamma of Z in homological degree n: basis of degree m = surjections [m] -> [n]."""
    basis = [delta.surjections(m, n) for m in range(T + 1)]
    index = [{s: k for k, s in enumerate(b)} for b in basis]
    faces = {}
    degens = {}
    for m in range(1, T + 1):
        for i in range(m + 1):
            theta = delta.coface_map(i, m)
            ent = {}
            for k, sigma in enumerate(basis[m]):
                comp = delta.compose(sigma, theta)
                if delta.is_surjective(comp, n):
                    ent[(index[m - 1][comp], k)] = 1
            faces[(m, i)] = IntMatrix(len(basis[m - 1]), len(basis[m]), ent)
    for m in range(T):
        for j in range(m + 1):
            theta = delta.codegeneracy_map(j, m)
            ent = {(index[m + 1][delta.compose(sigma, theta)], k): 1 for k, sigma in enumerate(basis[m])}
            degens[(m, j)] = IntMatrix(len(basis[m + 1]), len(basis[m]), ent)
    return SimplicialAbGroup(tuple(len(b) for b in basis), faces, degens)


def gamma_sphere(n: int, T: int) -> CosimplicialAbGroup:
    """Z[-n]: the cosimplicial abelian group corresponding to Z in cohomological degree n.

    Degree m has a basis indexed by the order-preserving surjections
    [m] -> [n]; it is the Z-dual of the simplicial Gamma(Z[n]).
    """
    if n < 1 or T < n:
        raise ValueError("need n >= 1 and T >= n")
    return dual(_gamma_simplicial(n, T))


def sphere_complex(n: int, T: int) -> CochainComplex:
    """Z in cohomological degree n, zero elsewhere, on degrees 0..T."""
    return CochainComplex(0, [1 if k == n else 0 for k in range(T + 1)])


def levelwise_tensor(A: CosimplicialAbGroup, B: CosimplicialAbGroup) -> CosimplicialAbGroup:
    """(A (x) B)^m = A^m (x) B^m with structure maps acting diagonally."""
    T = min(A.T, B.T)
    cof = {(m, i): A.coface(m, i).kron(B.coface(m, i)) for m in range(1, T + 1) for i in range(m + 1)}
    cod = {(m, i): A.codegeneracy(m, i).kron(B.codegeneracy(m, i)) for m in range(T) for i in range(m + 1)}
    return CosimplicialAbGroup(tuple(a * b for a, b in zip(A.ranks, B.ranks)), cof, cod)


def iterated_coface(A: CosimplicialAbGroup, theta: delta.Map, m: int) -> IntMatrix:
    """A(theta): A^k -> A^m for an injection theta: [k] -> [m]."""
    k = len(theta) - 1
    M = IntMatrix.identity(A.ranks[k])
    # theta is the composite of the cofaces skipping its missing values, smallest first
    missing = sorted(set(range(m + 1)) - set(theta))
    level = k
    for v in missing:
        level += 1
        M = A.coface(level, v) @ M
    return M


def tensor_complex(C: CochainComplex, D: CochainComplex, top: int) -> tuple[CochainComplex, dict]:
    """Total complex of C (x) D in degrees 0..top, d(a (x) b) = da (x) b + (-1)^p a (x) db.

    Also returns the block layout {n: [(p, q, offset), ...]}.
    """
    layout = {}
    ranks = []
    for n in range(top + 1):
        blocks, off = [], 0
        for p in range(n + 1):
            q = n - p
            blocks.append((p, q, off))
            off += C.rank(p) * D.rank(q)
        layout[n] = blocks
        ranks.append(off)
    diffs = []
    for n in range(top):
        ent: dict[tuple[int, int], int] = {}
        tgt = {(p, q): o for p, q, o in layout[n + 1]}
        for p, q, off in layout[n]:
            pieces = [((p + 1, q), C.d(p).kron(IntMatrix.identity(D.rank(q))))]
            sign_id = IntMatrix.identity(C.rank(p)).kron(D.d(q))
            pieces.append(((p, q + 1), sign_id if p % 2 == 0 else -sign_id))
            for key, M in pieces:
                o = tgt[key]
                for (r, c), v in M.items():
                    ent[(o + r, off + c)] = ent.get((o + r, off + c), 0) + v
        diffs.append(IntMatrix(ranks[n + 1], ranks[n], ent))
    out = CochainComplex(0, ranks, diffs)
    out.check()
    return out, layout


def alexander_whitney(A: CosimplicialAbGroup, B: CosimplicialAbGroup) -> ComplexMap:
    """N(A) (x) N(B) -> unnormalized cochains of the levelwise tensor product.

    a (x) b in degrees (p, q) goes to A(front)(a) (x) B(back)(b) in degree p + q,
    where front: [p] -> [p+q] is the initial and back: [q] -> [p+q] the final segment.
    """
    T = min(A.T, B.T)
    NA, KA = _normalize(A)
    NB, KB = _normalize(B)
    src, layout = tensor_complex(NA, NB, T)
    AB = levelwise_tensor(A, B)
    tgt = unnormalized_complex(AB)
    comps = {}
    for n in range(T + 1):
        cols = []
        for p, q, _ in layout[n]:
            fa = iterated_coface(A, delta.front(p, n), n) @ KA[p]
            fb = iterated_coface(B, delta.back(q, n), n) @ KB[q]
            cols.append(fa.kron(fb))
        comps[n] = block_matrix([cols]) if cols else IntMatrix(AB.ranks[n], 0)
    return ComplexMap(src, tgt, comps)
