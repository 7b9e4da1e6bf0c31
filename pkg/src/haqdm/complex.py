"""Finite oriented simplicial complexes and their incidence matrices."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "InvalidFacetError",
    "OrientedSimplex",
    "SimplicialComplex",
    "boundary_matrix",
    "build_complex",
    "check_regularity",
    "coboundary_matrix",
]


class InvalidFacetError(ValueError):
    """A facet repeats a vertex (or is empty)."""


def _permutation_sign(seq: Sequence[str]) -> int:
    sign = 1
    seq = list(seq)
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


@dataclass(frozen=True)
class OrientedSimplex:
    """Simplex in canonical (sorted) vertex order plus the orientation sign of the input ordering."""

    vertices: tuple[str, ...]
    sign: int = 1

    @classmethod
    def from_ordering(cls, vertices: Iterable) -> OrientedSimplex:
        verts = [str(v) for v in vertices]
        if not verts:
            raise InvalidFacetError("empty simplex")
        if len(set(verts)) != len(verts):
            raise InvalidFacetError(f"repeated vertex in {verts}")
        return cls(tuple(sorted(verts)), _permutation_sign(verts))

    @property
    def dim(self) -> int:
        return len(self.vertices) - 1

    def faces(self) -> list[tuple[int, tuple[str, ...]]]:
        """``(epsilon, face)`` pairs of the canonical simplex (sign ignored)."""
        if self.dim == 0:
            return []
        return [((-1) ** i, self.vertices[:i] + self.vertices[i + 1 :]) for i in range(self.dim + 1)]

    def __neg__(self) -> OrientedSimplex:
        return OrientedSimplex(self.vertices, -self.sign)

    def __str__(self) -> str:
        body = "[" + ",".join(self.vertices) + "]"
        return body if self.sign > 0 else "-" + body


@dataclass(frozen=True, eq=False)
class SimplicialComplex:
    """Finite simplicial complex with sorted-vertex orientations.

    ``skeleta[n]`` lists the canonical ``n``-simplices (vertex tuples) in
    lexicographic order; ``incidence[n]`` holds the sparse boundary
    ``K_n -> K_{n-1}`` as ``(row, col, epsilon)`` triplets.
    """

    skeleta: tuple[tuple[tuple[str, ...], ...], ...]
    incidence: tuple[tuple[tuple[int, int, int], ...], ...] = field(repr=False)
    facets: tuple[tuple[str, ...], ...] = field(default=(), repr=False)
    _index: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        for n, simplices in enumerate(self.skeleta):
            for i, s in enumerate(simplices):
                self._index[s] = (n, i)

    @property
    def dimension(self) -> int:
        return len(self.skeleta) - 1

    def size(self, n: int) -> int:
        return len(self.skeleta[n]) if 0 <= n < len(self.skeleta) else 0

    @property
    def sizes(self) -> list[int]:
        return [len(s) for s in self.skeleta]

    def index(self, simplex) -> tuple[int, int]:
        """``(dim, position)`` of a simplex given as any vertex ordering."""
        key = tuple(sorted(str(v) for v in simplex))
        try:
            return self._index[key]
        except KeyError:
            raise KeyError(f"{list(simplex)} is not a simplex of this complex") from None

    def simplex(self, n: int, i: int) -> tuple[str, ...]:
        return self.skeleta[n][i]

    def __iter__(self):
        for n, simplices in enumerate(self.skeleta):
            for i, s in enumerate(simplices):
                yield n, i, s

    def cofaces(self, n: int, i: int) -> list[tuple[int, int]]:
        """``(position, epsilon)`` of the (n+1)-simplices having simplex ``(n, i)`` as a face."""
        if n + 1 > self.dimension:
            return []
        return [(c, e) for r, c, e in self.incidence[n + 1] if r == i]

    def faces(self, n: int, i: int) -> list[tuple[int, int]]:
        """``(position, epsilon)`` of the (n-1)-faces of simplex ``(n, i)``."""
        if n == 0:
            return []
        return [(r, e) for r, c, e in self.incidence[n] if c == i]

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in enumerate(self.sizes))


def build_complex(facets: Iterable[Sequence]) -> SimplicialComplex:
    """Close a facet list under faces and orient every simplex by sorted vertices."""
    facets = [OrientedSimplex.from_ordering(f) for f in facets]
    if not facets:
        return SimplicialComplex((), ())
    top = max(f.dim for f in facets)
    layers: list[set[tuple[str, ...]]] = [set() for _ in range(top + 1)]
    for f in facets:
        for k in range(1, len(f.vertices) + 1):
            for sub in itertools.combinations(f.vertices, k):
                layers[k - 1].add(sub)
    skeleta = tuple(tuple(sorted(layer)) for layer in layers)
    lookup = [{s: i for i, s in enumerate(sk)} for sk in skeleta]
    incidence: list[tuple[tuple[int, int, int], ...]] = [()]
    for n in range(1, top + 1):
        trips = []
        for col, s in enumerate(skeleta[n]):
            for eps, face in OrientedSimplex(s).faces():
                trips.append((lookup[n - 1][face], col, eps))
        incidence.append(tuple(sorted(trips)))
    return SimplicialComplex(skeleta, tuple(incidence), tuple(f.vertices for f in facets))


def boundary_matrix(K: SimplicialComplex, n: int) -> np.ndarray:
    """Integer matrix of the boundary ``K_n -> K_{n-1}`` (rows: faces, columns: n-simplices).

    Out-of-range degrees give an empty matrix with the natural shape.
    """
    rows, cols = K.size(n - 1), K.size(n)
    out = np.zeros((rows, cols), dtype=np.int64)
    if 1 <= n <= K.dimension:
        for r, c, e in K.incidence[n]:
            out[r, c] = e
    return out


def coboundary_matrix(K: SimplicialComplex, n: int) -> np.ndarray:
    """Coboundary ``C_n -> C_{n+1}``; the transpose of :func:`boundary_matrix` at ``n+1``."""
    rows, cols = K.size(n + 1), K.size(n)
    out = np.zeros((rows, cols), dtype=np.int64)
    if 0 <= n < K.dimension:
        for r, c, e in K.incidence[n + 1]:
            out[c, r] = e
    return out


def oriented_column(K: SimplicialComplex, ordering: Sequence) -> np.ndarray:
    """Boundary of a simplex given in an arbitrary vertex ordering, as a vector over ``K_{n-1}``."""
    s = OrientedSimplex.from_ordering(ordering)
    n, i = K.index(s.vertices)
    return s.sign * boundary_matrix(K, n)[:, i]


def check_regularity(K: SimplicialComplex, L: int) -> bool:
    """True iff every simplex is a face of at most ``L`` simplices one dimension up."""
    for n in range(1, K.dimension + 1):
        counts = np.zeros(K.size(n - 1), dtype=np.int64)
        for r, _, _ in K.incidence[n]:
            counts[r] += 1
        if counts.size and counts.max() > L:
            return False
    return True
