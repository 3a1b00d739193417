"""Order-preserving maps between the finite ordinals [m] = {0, ..., m}.

A map [a] -> [b] is a tuple of length a + 1 with values in range(b + 1).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

Map = tuple[int, ...]


def coface_map(i: int, m: int) -> Map:
    """delta^i: [m-1] -> [m], the injection skipping i."""
    return tuple(k if k < i else k + 1 for k in range(m))


def codegeneracy_map(j: int, m: int) -> Map:
    """sigma^j: [m+1] -> [m], the surjection hitting j twice."""
    return tuple(k if k <= j else k - 1 for k in range(m + 2))


def compose(f: Map, g: Map) -> Map:
    """f after g."""
    return tuple(f[x] for x in g)


def is_surjective(f: Map, target: int) -> bool:
    return len(set(f)) == target + 1


def is_identity(f: Map) -> bool:
    return all(v == k for k, v in enumerate(f))


@lru_cache(maxsize=None)
def surjections(m: int, n: int) -> tuple[Map, ...]:
    """Order-preserving surjections [m] -> [n], ordered by their jump positions."""
    out = []
    for jumps in combinations(range(1, m + 1), n):
        vals = []
        level = 0
        for k in range(m + 1):
            if level < n and k == jumps[level]:
                level += 1
            vals.append(level)
        out.append(tuple(vals))
    return tuple(out)


def epi_mono(f: Map) -> tuple[Map, Map]:
    """Factor f = mono after epi; returns (epi, mono)."""
    image = sorted(set(f))
    pos = {v: k for k, v in enumerate(image)}
    return tuple(pos[v] for v in f), tuple(image)


def front(p: int, m: int) -> Map:
    """[p] -> [m], k -> k."""
    return tuple(range(p + 1))


def back(q: int, m: int) -> Map:
    """[q] -> [m], k -> k + m - q."""
    return tuple(k + m - q for k in range(q + 1))
