"""Graded homomorphism groups ``Hom(C, G)^p`` / ``Hom(C, G)_p`` and their differentials.

A p-map (configuration) assigns to every ``n``-simplex an element of
``G_{n-p}``; a dual p-map (representation) assigns a character of
``G_{n-p}``. For a finite complex both groups are finite direct sums of
cyclic groups, laid out with coordinates ordered by dimension, then simplex
index, then generator of the coefficient group.

Sign conventions
----------------
``delta^p`` is the two-term map

    (delta^p t)_n = t_{n-1} o boundary_n  -  (-1)^p  d^G_{n-p} o t_n

and ``delta_q`` is built so that it is the exact adjoint of
``delta^{q-1}`` under the evaluation pairing:

    (delta_q g)_n = g_{n+1} o coboundary_{n+1}  +  (-1)^q  d^G^ o g_n

so that ``g(delta^p t) == (delta_{p+1} g)(t)`` holds for every coefficient
system. Passing ``sign="alternate"`` to :func:`assemble_delta_chain` selects
the opposite sign on the coefficient term; the two agree whenever
``2 d^G = 0`` and otherwise break the pairing identity.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from typing import Literal, Sequence

import numpy as np

from .coeffs import CoefficientComplex, dualize
from .complex import OrientedSimplex, SimplicialComplex
from .finab import FinAbGroup, PhaseQZ, lcm

__all__ = [
    "DeltaMap",
    "DualPMap",
    "GradedHomGroup",
    "InvalidAssignmentError",
    "PMap",
    "assemble_delta_chain",
    "assemble_delta_cochain",
    "duality_check",
    "evaluate_pairing",
    "localized_dual",
    "localized_pmap",
]


class InvalidAssignmentError(ValueError):
    """A group element or character does not belong to the required level."""


@dataclass(frozen=True, eq=False)
class GradedHomGroup:
    """The finite group ``prod_n G_{n-p}^{|K_n|}`` (or its character version when ``dual``)."""

    complex: SimplicialComplex
    coeffs: CoefficientComplex
    p: int
    dual: bool = False
    offsets: tuple[int, ...] = field(init=False, repr=False)
    orders: tuple[int, ...] = field(init=False, repr=False)

    def __post_init__(self):
        offsets, orders = [], []
        for n in range(self.complex.dimension + 1):
            offsets.append(len(orders))
            orders.extend(self.level(n).invariant_factors * self.complex.size(n))
        offsets.append(len(orders))
        object.__setattr__(self, "offsets", tuple(offsets))
        object.__setattr__(self, "orders", tuple(orders))

    def level(self, n: int) -> FinAbGroup:
        """Coefficient group attached to ``n``-simplices."""
        return self.coeffs.group(n - self.p)

    @property
    def size(self) -> int:
        return len(self.orders)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def group(self) -> FinAbGroup:
        return FinAbGroup.from_orders(self.orders)

    def slot(self, n: int, i: int) -> slice:
        k = self.level(n).ngens
        start = self.offsets[n] + i * k
        return slice(start, start + k)

    def locate(self, c: int) -> tuple[int, int, int]:
        """``(n, simplex index, generator)`` of coordinate ``c``."""
        n = max(k for k in range(len(self.offsets) - 1) if self.offsets[k] <= c)
        k = self.level(n).ngens
        i, g = divmod(c - self.offsets[n], k)
        return n, i, g

    def same_as(self, other: GradedHomGroup) -> bool:
        return (
            self.complex is other.complex
            and self.coeffs is other.coeffs
            and self.p == other.p
            and self.dual == other.dual
        )

    def element(self, coords) -> PMap | DualPMap:
        cls = DualPMap if self.dual else PMap
        return cls(self, coords)

    def zero(self) -> PMap | DualPMap:
        return self.element([0] * self.size)

    def random(self, rng: np.random.Generator) -> PMap | DualPMap:
        return self.element([int(rng.integers(d)) for d in self.orders])

    def from_values(self, values: dict) -> PMap | DualPMap:
        """Build an element from ``{simplex (vertex list): group element}``."""
        coords = [0] * self.size
        for simplex, value in values.items():
            s = OrientedSimplex.from_ordering(simplex)
            n, i = self.complex.index(s.vertices)
            sl = self.slot(n, i)
            value = list(value) if not isinstance(value, int) else [value]
            if len(value) != sl.stop - sl.start:
                raise InvalidAssignmentError(
                    f"value {value} does not match {self.level(n)} at simplex {list(simplex)}"
                )
            coords[sl] = [s.sign * int(v) for v in value]
        return self.element(coords)


@dataclass(frozen=True, eq=False)
class _GradedElement:
    space: GradedHomGroup
    coords: tuple[int, ...]

    def __post_init__(self):
        coords = tuple(int(v) % d for v, d in zip(self.coords, self.space.orders))
        if len(coords) != self.space.size or len(tuple(self.coords)) != self.space.size:
            raise InvalidAssignmentError(
                f"expected {self.space.size} coordinates, got {len(tuple(self.coords))}"
            )
        object.__setattr__(self, "coords", coords)

    @property
    def p(self) -> int:
        return self.space.p

    def value(self, n: int, i: int) -> tuple[int, ...]:
        return self.coords[self.space.slot(n, i)]

    def support(self) -> list[tuple[int, int]]:
        K = self.space.complex
        return [(n, i) for n in range(K.dimension + 1) for i in range(K.size(n)) if any(self.value(n, i))]

    def _check(self, other):
        if type(other) is not type(self) or not self.space.same_as(other.space):
            raise InvalidAssignmentError("maps live in different graded groups")

    def __add__(self, other):
        self._check(other)
        return type(self)(self.space, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        self._check(other)
        return type(self)(self.space, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return type(self)(self.space, [-a for a in self.coords])

    def __mul__(self, k: int):
        return type(self)(self.space, [int(k) * a for a in self.coords])

    __rmul__ = __mul__

    def __eq__(self, other):
        return type(other) is type(self) and self.space.same_as(other.space) and self.coords == other.coords

    def __hash__(self):
        return hash((type(self).__name__, self.space.p, self.coords))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def decompose(self) -> list:
        """Split into localized maps, one per simplex of the support."""
        out = []
        for n, i in self.support():
            coords = [0] * self.space.size
            sl = self.space.slot(n, i)
            coords[sl] = self.coords[sl]
            out.append(type(self)(self.space, coords))
        return out

    def to_json(self) -> list[dict]:
        """Sparse ``simplex -> value`` listing, in layout order."""
        K = self.space.complex
        return [
            {"simplex": list(K.simplex(n, i)), "value": list(self.value(n, i))}
            for n, i in self.support()
        ]


class PMap(_GradedElement):
    """Configuration: ``t_n : K_n -> G_{n-p}``."""


class DualPMap(_GradedElement):
    """Representation: ``gamma_n : K_n -> G^_{n-p}`` stored as character exponents."""


################################################################################
# localized maps


def _localized(K, cc, x, value, p, dual):
    space = GradedHomGroup(K, cc, p, dual=dual)
    s = OrientedSimplex.from_ordering(x)
    n, i = K.index(s.vertices)
    grp = space.level(n)
    value = [int(v) for v in value]
    if len(value) != grp.ngens:
        kind = "character of" if dual else "element of"
        raise InvalidAssignmentError(
            f"{value} is not an {kind} G_{n - p} = {grp} (simplex of dimension {n}, degree {p})"
        )
    coords = [0] * space.size
    coords[space.slot(n, i)] = [s.sign * v for v in value]
    return space.element(coords)


def localized_pmap(K: SimplicialComplex, cc: CoefficientComplex, x: Sequence, g: Sequence[int], p: int) -> PMap:
    """The configuration ``x*_g`` of degree ``p``: value ``g`` on ``x``, zero elsewhere."""
    return _localized(K, cc, x, g, p, dual=False)


def localized_dual(K: SimplicialComplex, cc: CoefficientComplex, x: Sequence, alpha: Sequence[int], p: int) -> DualPMap:
    """The representation ``x_*^alpha`` with ``alpha`` a character of ``G_{n-p}``, ``x`` in ``K_n``.

    The result has dual degree ``p``, the degree at which ``alpha`` fits.
    """
    return _localized(K, cc, x, alpha, p, dual=True)


################################################################################
# differentials


@dataclass(frozen=True, eq=False)
class DeltaMap:
    """Morphism between graded groups given by an integer matrix (target x source)."""

    p: int
    direction: Literal["cochain", "chain"]
    source: GradedHomGroup
    target: GradedHomGroup
    matrix: np.ndarray = field(repr=False)

    def __call__(self, elem):
        if not elem.space.same_as(self.source):
            raise InvalidAssignmentError("map applied outside its domain")
        if not self.source.size or not self.target.size:
            return self.target.zero()
        return self.target.element(self.matrix.dot(np.array(elem.coords, dtype=object)))

    def apply_batch(self, X: np.ndarray) -> np.ndarray:
        """Apply to each row of an integer array; result reduced mod target orders."""
        if not self.target.size:
            return np.zeros((X.shape[0], 0), dtype=np.int64)
        if not self.source.size:
            return np.zeros((X.shape[0], self.target.size), dtype=np.int64)
        bound = max(self.source.orders) * max(abs(int(v)) for v in self.matrix.flat) * self.source.size
        orders = np.array(self.target.orders, dtype=object)
        if bound < 2**62:
            out = np.asarray(X, dtype=np.int64) @ self.matrix.astype(np.int64).T
            return out % orders.astype(np.int64)
        return (np.asarray(X, dtype=object).dot(self.matrix.T)) % orders

    @property
    def orders(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return self.source.orders, self.target.orders

    def compose(self, inner: DeltaMap) -> np.ndarray:
        """Reduced matrix of ``self o inner``."""
        if not self.matrix.size or not inner.matrix.size:
            return np.zeros((self.target.size, inner.source.size), dtype=object)
        mat = self.matrix.dot(inner.matrix)
        for (r, c), v in np.ndenumerate(mat):
            mat[r, c] = v % self.target.orders[r]
        return mat


def _reduce_rows(mat: np.ndarray, orders: Sequence[int]) -> np.ndarray:
    for (r, c), v in np.ndenumerate(mat):
        mat[r, c] = v % orders[r]
    return mat


@functools.lru_cache(maxsize=128)
def assemble_delta_cochain(K: SimplicialComplex, cc: CoefficientComplex, p: int) -> DeltaMap:
    """``delta^p : Hom(C,G)^p -> Hom(C,G)^{p+1}``."""
    src = GradedHomGroup(K, cc, p)
    tgt = GradedHomGroup(K, cc, p + 1)
    M = np.zeros((tgt.size, src.size), dtype=object)
    sign = -((-1) ** p)
    for n in range(K.dimension + 1):
        k = tgt.level(n).ngens
        if not k:
            continue
        # simplicial part: t_{n-1} o boundary_n, same group G_{n-1-p}
        if n >= 1:
            for y, x, eps in K.incidence[n]:
                ts, ss = tgt.slot(n, x), src.slot(n - 1, y)
                for g in range(k):
                    M[ts.start + g, ss.start + g] += eps
        # coefficient part: -(-1)^p d^G_{n-p} o t_n
        dG = cc.boundary(n - p).matrix
        if dG.size:
            for x in range(K.size(n)):
                ts, ss = tgt.slot(n, x), src.slot(n, x)
                M[ts, ss] += sign * dG
    return DeltaMap(p, "cochain", src, tgt, _reduce_rows(M, tgt.orders))


@functools.lru_cache(maxsize=128)
def assemble_delta_chain(
    K: SimplicialComplex,
    cc: CoefficientComplex,
    p: int,
    sign: Literal["adjoint", "alternate"] = "adjoint",
) -> DeltaMap:
    """``delta_p : Hom(C,G)_p -> Hom(C,G)_{p-1}`` built from coboundaries and dual coefficient maps."""
    src = GradedHomGroup(K, cc, p, dual=True)
    tgt = GradedHomGroup(K, cc, p - 1, dual=True)
    dual_cc = dualize(cc)
    M = np.zeros((tgt.size, src.size), dtype=object)
    coeff_sign = (-1) ** p if sign == "adjoint" else -((-1) ** p)
    for n in range(K.dimension + 1):
        k = tgt.level(n).ngens
        if not k:
            continue
        # simplicial part: gamma_{n+1} o coboundary_{n+1}
        if n + 1 <= K.dimension:
            for x, z, eps in K.incidence[n + 1]:
                ts, ss = tgt.slot(n, x), src.slot(n + 1, z)
                for g in range(k):
                    M[ts.start + g, ss.start + g] += eps
        # coefficient part: dual of d^G_{n+1-p}, G^_{n-p} -> G^_{n+1-p}
        dG = dual_cc.boundary(n + 1 - p).matrix
        if dG.size:
            for x in range(K.size(n)):
                ts, ss = tgt.slot(n, x), src.slot(n, x)
                M[ts, ss] += coeff_sign * dG
    return DeltaMap(p, "chain", src, tgt, _reduce_rows(M, tgt.orders))


################################################################################
# pairing


def pairing_weights(space: GradedHomGroup) -> tuple[int, np.ndarray]:
    """Common denominator ``L`` and per-coordinate weights ``L / d``."""
    L = lcm(space.orders) if space.orders else 1
    return L, np.array([L // d for d in space.orders], dtype=object)


def evaluate_pairing(gamma: DualPMap, t: PMap) -> PhaseQZ:
    """``gamma(t)``: the sum over simplices of ``gamma_n(x)[t_n(x)]`` in Q/Z."""
    if not isinstance(gamma, DualPMap) or not isinstance(t, PMap):
        raise InvalidAssignmentError("pairing takes (DualPMap, PMap)")
    if gamma.p != t.p or gamma.space.complex is not t.space.complex or gamma.space.coeffs is not t.space.coeffs:
        raise InvalidAssignmentError(f"degree mismatch: representation of degree {gamma.p}, configuration of degree {t.p}")
    L, w = pairing_weights(t.space)
    num = sum(a * b * int(c) for a, b, c in zip(gamma.coords, t.coords, w))
    return PhaseQZ(num, L)


def pairing_batch(space: GradedHomGroup, G: np.ndarray, T: np.ndarray) -> tuple[int, np.ndarray]:
    """Row-wise pairing numerators modulo ``L`` for integer arrays ``G``, ``T``."""
    L, w = pairing_weights(space)
    if not space.size:
        return L, np.zeros(G.shape[0], dtype=np.int64)
    if L * L * space.size < 2**62:
        vals = (np.asarray(G, np.int64) * np.asarray(T, np.int64)) @ w.astype(np.int64)
        return L, vals % L
    vals = (np.asarray(G, dtype=object) * np.asarray(T, dtype=object)).dot(w)
    return L, vals % L


def duality_check(gamma: DualPMap, t: PMap, p: int) -> bool:
    """Check ``gamma(delta^p t) == (delta_{p+1} gamma)(t)`` exactly."""
    if t.p != p or gamma.p != p + 1:
        raise InvalidAssignmentError("duality_check needs t of degree p and gamma of degree p+1")
    K, cc = t.space.complex, t.space.coeffs
    lhs = evaluate_pairing(gamma, assemble_delta_cochain(K, cc, p)(t))
    rhs = evaluate_pairing(assemble_delta_chain(K, cc, p + 1)(gamma), t)
    return lhs == rhs
