"""Exact arithmetic for finitely generated abelian groups.

Everything here runs on Python integers (numpy ``object`` arrays where a
matrix is convenient). Groups are presented as direct sums of cyclic
factors given by a list of *orders*, with ``0`` standing for a copy of Z.
The public :class:`FinAbGroup` is always normalized to invariant-factor
form, so two groups are isomorphic iff they compare equal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Sequence

import numpy as np

__all__ = [
    "Character",
    "FinAbGroup",
    "GroupMorphism",
    "InvalidCharacterError",
    "MorphismError",
    "PhaseQZ",
    "Subquotient",
    "dual_group",
    "eval_char",
    "ext_group",
    "hom_group",
    "image_of",
    "kernel_of",
    "morphism_image",
    "morphism_kernel",
    "quotient_group",
    "smith_normal_form",
]


class MorphismError(ValueError):
    """A matrix does not define a homomorphism between the given groups."""


class InvalidCharacterError(ValueError):
    """Character exponents do not match the group they are attached to."""


def as_int_matrix(rows, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Coerce ``rows`` to a 2-d numpy array of Python ints."""
    arr = np.array(rows, dtype=object)
    if arr.size == 0:
        if shape is None:
            shape = arr.shape if arr.ndim == 2 else (0, 0)
        return np.zeros(shape, dtype=object)
    if arr.ndim != 2:
        raise ValueError(f"expected a 2-d integer matrix, got shape {arr.shape}")
    out = np.empty(arr.shape, dtype=object)
    for idx, v in np.ndenumerate(arr):
        out[idx] = int(v)
    return out


def identity(n: int) -> np.ndarray:
    out = np.zeros((n, n), dtype=object)
    for i in range(n):
        out[i, i] = 1
    return out


################################################################################
# Smith normal form


def smith_normal_form(M, *, with_inverses: bool = False):
    """Smith normal form of an integer matrix.

    Returns ``(U, D, V)`` with ``U @ M @ V == D``, ``U`` and ``V`` unimodular,
    and ``D`` diagonal with non-negative entries ``d_1 | d_2 | ...`` (zeros
    last). With ``with_inverses=True`` the exact inverses of ``U`` and ``V``
    are appended, which saves callers a rational inversion.
    """
    A = [list(map(int, row)) for row in as_int_matrix(M)]
    m = len(A)
    n = as_int_matrix(M).shape[1]
    U = [[int(i == j) for j in range(m)] for i in range(m)]
    Ui = [[int(i == j) for j in range(m)] for i in range(m)]
    # V is kept transposed so column operations become row operations.
    Vt = [[int(i == j) for j in range(n)] for i in range(n)]
    Vit = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_addmul(i, j, q):  # row_i -= q * row_j
        if q == 0:
            return
        Ai, Aj = A[i], A[j]
        for c in range(n):
            if Aj[c]:
                Ai[c] -= q * Aj[c]
        Ui_row, Uj_row = U[i], U[j]
        for c in range(m):
            if Uj_row[c]:
                Ui_row[c] -= q * Uj_row[c]
        for r in range(m):  # inverse: col_j += q * col_i
            if Ui[r][i]:
                Ui[r][j] += q * Ui[r][i]

    def col_addmul(i, j, q):  # col_i -= q * col_j
        if q == 0:
            return
        for r in range(m):
            if A[r][j]:
                A[r][i] -= q * A[r][j]
        Vi, Vj = Vt[i], Vt[j]
        for c in range(n):
            if Vj[c]:
                Vi[c] -= q * Vj[c]
        # inverse: row_j += q * row_i, i.e. (transposed) col_j of Vit
        for r in range(n):
            if Vit[r][i]:
                Vit[r][j] += q * Vit[r][i]

    def row_swap(i, j):
        if i != j:
            A[i], A[j] = A[j], A[i]
            U[i], U[j] = U[j], U[i]
            for r in range(m):
                Ui[r][i], Ui[r][j] = Ui[r][j], Ui[r][i]

    def col_swap(i, j):
        if i != j:
            for r in range(m):
                A[r][i], A[r][j] = A[r][j], A[r][i]
            Vt[i], Vt[j] = Vt[j], Vt[i]
            for r in range(n):
                Vit[r][i], Vit[r][j] = Vit[r][j], Vit[r][i]

    def row_neg(i):
        A[i] = [-v for v in A[i]]
        U[i] = [-v for v in U[i]]
        for r in range(m):
            Ui[r][i] = -Ui[r][i]

    for t in range(min(m, n)):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                v = A[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        row_swap(t, best[1])
        col_swap(t, best[2])
        while True:
            done = True
            for i in range(t + 1, m):
                if A[i][t]:
                    row_addmul(i, t, A[i][t] // A[t][t])
                    if A[i][t]:
                        done = False
            for j in range(t + 1, n):
                if A[t][j]:
                    col_addmul(j, t, A[t][j] // A[t][t])
                    if A[t][j]:
                        done = False
            if not done:
                # a smaller remainder exists in row/column t; pivot on it
                cand = [(abs(A[i][t]), i, t) for i in range(t + 1, m) if A[i][t]]
                cand += [(abs(A[t][j]), t, j) for j in range(t + 1, n) if A[t][j]]
                _, i, j = min(cand)
                row_swap(t, i)
                col_swap(t, j)
                continue
            piv = A[t][t]
            bad = next(
                (i for i in range(t + 1, m) for j in range(t + 1, n) if A[i][j] % piv),
                None,
            )
            if bad is None:
                break
            row_addmul(t, bad, -1)
        if A[t][t] < 0:
            row_neg(t)

    D = as_int_matrix(A, shape=(m, n))
    Uo = as_int_matrix(U, shape=(m, m))
    Vo = as_int_matrix(Vt, shape=(n, n)).T.copy()
    if with_inverses:
        return Uo, D, Vo, as_int_matrix(Ui, shape=(m, m)), as_int_matrix(Vit, shape=(n, n)).T.copy()
    return Uo, D, Vo


def _diagonal(D: np.ndarray) -> list[int]:
    return [int(D[i, i]) for i in range(min(D.shape))]


################################################################################
# lattices in Z^m (columns are generators)


class _LatticeSolver:
    """Basis of a lattice plus exact membership / coordinate solving."""

    def __init__(self, gens: np.ndarray):
        self.ambient = gens.shape[0]
        U, D, V, Ui, _ = smith_normal_form(gens, with_inverses=True)
        diag = _diagonal(D)
        self.rank = sum(1 for d in diag if d)
        self._U = U
        self._diag = diag[: self.rank]
        # column span of gens = Ui * D * Z^k
        basis = np.zeros((self.ambient, self.rank), dtype=object)
        for j, d in enumerate(self._diag):
            basis[:, j] = Ui[:, j] * d
        self.basis = basis

    def solve(self, vec) -> list[int] | None:
        """Coordinates of ``vec`` in :attr:`basis`, or ``None`` if outside."""
        y = self._U.dot(np.array(vec, dtype=object)) if self.ambient else np.zeros(0, dtype=object)
        coords = []
        for i, d in enumerate(self._diag):
            q, r = divmod(int(y[i]), d)
            if r:
                return None
            coords.append(q)
        if any(int(v) for v in y[self.rank:]):
            return None
        return coords


def _hstack(ambient: int, *blocks) -> np.ndarray:
    parts = [as_int_matrix(b, shape=(ambient, 0)) for b in blocks]
    parts = [p for p in parts if p.shape[1]]
    if not parts:
        return np.zeros((ambient, 0), dtype=object)
    return np.concatenate(parts, axis=1)


def _diag_columns(orders: Sequence[int]) -> np.ndarray:
    cols = [i for i, d in enumerate(orders) if d]
    out = np.zeros((len(orders), len(cols)), dtype=object)
    for j, i in enumerate(cols):
        out[i, j] = int(orders[i])
    return out


def integer_kernel(M) -> np.ndarray:
    """Basis (as columns) of the integer solutions of ``M x = 0``."""
    M = as_int_matrix(M)
    _, D, V = smith_normal_form(M)
    r = sum(1 for d in _diagonal(D) if d)
    return V[:, r:].copy()


class Subquotient:
    """The group ``span(S) / span(R)`` for integer lattices ``R <= S <= Z^m``.

    Exposes the abstract group, explicit generators (in ambient coordinates,
    one per invariant factor) and a coordinate map for elements of ``span(S)``.
    """

    def __init__(self, S, R, ambient: int):
        S = _hstack(ambient, S)
        R = _hstack(ambient, R)
        self.ambient = ambient
        self._S = _LatticeSolver(S)
        r = self._S.rank
        X = np.zeros((r, R.shape[1]), dtype=object)
        for j in range(R.shape[1]):
            c = self._S.solve(R[:, j])
            if c is None:
                raise ValueError("relation lattice is not contained in the generator lattice")
            X[:, j] = c
        U, D, _, Ui, _ = smith_normal_form(X, with_inverses=True)
        diag = _diagonal(D) + [0] * (r - min(X.shape))
        self._U = U
        self._keep = [i for i, d in enumerate(diag) if d != 1]
        self.orders = [diag[i] for i in self._keep]
        new_basis = self._S.basis.dot(Ui) if r else np.zeros((ambient, 0), dtype=object)
        self.generators = [new_basis[:, i].copy() for i in self._keep]
        self.group = FinAbGroup.from_orders(self.orders)

    @property
    def order(self) -> int:
        return self.group.order

    def contains(self, vec) -> bool:
        return self._S.solve(vec) is not None

    def coordinates(self, vec) -> list[int]:
        """Coordinates of the class of ``vec`` along :attr:`generators`."""
        c = self._S.solve(vec)
        if c is None:
            raise ValueError("vector does not lie in the generator lattice")
        y = self._U.dot(np.array(c, dtype=object)) if c else []
        out = []
        for i, d in zip(self._keep, self.orders):
            v = int(y[i])
            out.append(v % d if d else v)
        return out

    def is_zero(self, vec) -> bool:
        return not any(self.coordinates(vec))


################################################################################
# groups


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def invariant_factors_from_orders(orders: Sequence[int]) -> tuple[tuple[int, ...], int]:
    """Normalize cyclic orders (``0`` = Z) into ``(invariant factors, free rank)``."""
    free = sum(1 for d in orders if d == 0)
    primary: dict[int, list[int]] = {}
    for d in orders:
        d = abs(int(d))
        if d <= 1:
            continue
        for p, e in _factorize(d).items():
            primary.setdefault(p, []).append(p**e)
    if not primary:
        return (), free
    length = max(len(v) for v in primary.values())
    factors = [1] * length
    for powers in primary.values():
        powers.sort()
        for k, q in enumerate(powers):
            factors[length - len(powers) + k] *= q
    return tuple(f for f in factors if f > 1), free


@dataclass(frozen=True)
class FinAbGroup:
    """Finitely generated abelian group ``Z^r + Z_{d1} + ... + Z_{dk}``, ``d1 | d2 | ...``."""

    invariant_factors: tuple[int, ...] = ()
    free_rank: int = 0

    def __post_init__(self):
        facs = tuple(int(d) for d in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", facs)
        if any(d < 2 for d in facs):
            raise ValueError(f"invariant factors must be >= 2, got {facs}")
        if any(b % a for a, b in zip(facs, facs[1:])):
            raise ValueError(f"invariant factors must form a divisibility chain, got {facs}")
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")

    @classmethod
    def from_orders(cls, orders: Sequence[int]) -> FinAbGroup:
        facs, free = invariant_factors_from_orders(orders)
        return cls(facs, free)

    @classmethod
    def cyclic(cls, n: int) -> FinAbGroup:
        return cls.from_orders([n])

    @classmethod
    def trivial(cls) -> FinAbGroup:
        return cls()

    @property
    def orders(self) -> list[int]:
        """Cyclic orders of the generators, free generators (``0``) first."""
        return [0] * self.free_rank + list(self.invariant_factors)

    @property
    def ngens(self) -> int:
        return self.free_rank + len(self.invariant_factors)

    @property
    def is_finite(self) -> bool:
        return self.free_rank == 0

    @property
    def is_trivial(self) -> bool:
        return self.ngens == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise ValueError(f"{self} is infinite")
        return math.prod(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def __add__(self, other: FinAbGroup) -> FinAbGroup:
        """Direct sum."""
        return FinAbGroup.from_orders(self.orders + other.orders)

    def __pow__(self, k: int) -> FinAbGroup:
        return FinAbGroup.from_orders(self.orders * k)

    def elements(self):
        """Iterate over all elements (finite groups only) as coordinate tuples."""
        import itertools

        return itertools.product(*(range(d) for d in self.invariant_factors))

    def reduce(self, element) -> tuple[int, ...]:
        return tuple(int(v) % d if d else int(v) for v, d in zip(element, self.orders))

    def to_json(self) -> dict:
        return {"invariant_factors": list(self.invariant_factors), "free_rank": self.free_rank}

    def __str__(self) -> str:
        parts = ["Z"] * self.free_rank + [f"Z{d}" for d in self.invariant_factors]
        return " x ".join(parts) if parts else "0"


def _check_compatible(matrix: np.ndarray, src: Sequence[int], tgt: Sequence[int]) -> None:
    for j, dj in enumerate(tgt):
        for i, di in enumerate(src):
            v = int(matrix[j, i])
            if dj == 0 and di != 0 and v != 0:
                raise MorphismError(f"entry ({j},{i}) maps a torsion generator to a free one")
            if dj and (v * di) % dj:
                raise MorphismError(
                    f"entry ({j},{i})={v} is incompatible: {v}*{di} is not 0 mod {dj}"
                )


@dataclass(frozen=True, eq=False)
class GroupMorphism:
    """Homomorphism given by an integer matrix (target generators x source generators)."""

    source: FinAbGroup
    target: FinAbGroup
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        mat = as_int_matrix(self.matrix, shape=(self.target.ngens, self.source.ngens))
        if mat.shape != (self.target.ngens, self.source.ngens):
            raise MorphismError(
                f"matrix shape {mat.shape} does not match "
                f"{self.target.ngens}x{self.source.ngens}"
            )
        for (j, i), v in np.ndenumerate(mat):
            d = self.target.orders[j]
            mat[j, i] = v % d if d else v
        _check_compatible(mat, self.source.orders, self.target.orders)
        object.__setattr__(self, "matrix", mat)

    @classmethod
    def zero(cls, source: FinAbGroup, target: FinAbGroup) -> GroupMorphism:
        return cls(source, target, np.zeros((target.ngens, source.ngens), dtype=object))

    @classmethod
    def identity(cls, group: FinAbGroup) -> GroupMorphism:
        return cls(group, group, identity(group.ngens))

    def __call__(self, element) -> tuple[int, ...]:
        if self.source.ngens == 0:
            return tuple(0 for _ in self.target.orders)
        return self.target.reduce(self.matrix.dot(np.array(list(element), dtype=object)))

    def __matmul__(self, other: GroupMorphism) -> GroupMorphism:
        """Composition ``self o other``."""
        if other.target != self.source:
            raise MorphismError("cannot compose: codomain/domain mismatch")
        if self.matrix.size and other.matrix.size:
            mat = self.matrix.dot(other.matrix)
        else:
            mat = np.zeros((self.target.ngens, other.source.ngens), dtype=object)
        return GroupMorphism(other.source, self.target, mat)

    def is_zero(self) -> bool:
        return not any(int(v) for v in self.matrix.flat)

    def dual(self) -> GroupMorphism:
        """Pontryagin dual ``beta -> beta o f`` in character-exponent coordinates."""
        return GroupMorphism(self.target, self.source, dual_matrix(self.matrix, self.source.orders, self.target.orders))


def dual_matrix(matrix: np.ndarray, src: Sequence[int], tgt: Sequence[int]) -> np.ndarray:
    """Matrix of ``beta -> beta o f`` between dual groups.

    A character of ``Z_d`` with exponent ``a`` sends ``g`` to ``a*g/d``. The
    entry is ``M[j, i] * d_src[i] / d_tgt[j]``, integral by compatibility.
    """
    if any(d == 0 for d in list(src) + list(tgt)):
        raise ValueError("dual coordinates require finite groups")
    out = np.zeros((len(src), len(tgt)), dtype=object)
    for j, dj in enumerate(tgt):
        for i, di in enumerate(src):
            v = int(matrix[j, i]) * di
            if v % dj:
                raise MorphismError("matrix is not compatible with the group orders")
            out[i, j] = (v // dj) % di
    return out


def kernel_of(matrix, src: Sequence[int], tgt: Sequence[int]) -> Subquotient:
    """Kernel of ``matrix: (+) Z_src -> (+) Z_tgt`` as a subquotient of ``Z^m``."""
    matrix = as_int_matrix(matrix, shape=(len(tgt), len(src)))
    m = len(src)
    aug = _hstack(len(tgt), matrix, _diag_columns(tgt))
    if aug.shape[1]:
        ker = integer_kernel(aug)[:m, :]
    else:
        ker = np.zeros((m, 0), dtype=object)
    if not len(tgt):
        ker = identity(m)
    return Subquotient(_hstack(m, ker, _diag_columns(src)), _diag_columns(src), m)


def image_of(matrix, src: Sequence[int], tgt: Sequence[int]) -> Subquotient:
    """Image of ``matrix`` as a subquotient of the target's free cover."""
    matrix = as_int_matrix(matrix, shape=(len(tgt), len(src)))
    k = len(tgt)
    return Subquotient(_hstack(k, matrix, _diag_columns(tgt)), _diag_columns(tgt), k)


def morphism_kernel(f: GroupMorphism) -> tuple[FinAbGroup, GroupMorphism]:
    """Kernel of ``f`` with its embedding into the source."""
    sq = kernel_of(f.matrix, f.source.orders, f.target.orders)
    return sq.group, _embedding(sq, f.source)


def morphism_image(f: GroupMorphism) -> tuple[FinAbGroup, list[tuple[int, ...]]]:
    """Image of ``f`` with generators in target coordinates."""
    sq = image_of(f.matrix, f.source.orders, f.target.orders)
    return sq.group, [f.target.reduce(g) for g in sq.generators]


def _embedding(sq: Subquotient, ambient: FinAbGroup) -> GroupMorphism:
    # Subquotient lists free generators last; FinAbGroup lists them first
    order = [i for i, d in enumerate(sq.orders) if d == 0] + [i for i, d in enumerate(sq.orders) if d]
    group = sq.group
    mat = np.zeros((ambient.ngens, group.ngens), dtype=object)
    for j, i in enumerate(order):
        mat[:, j] = list(ambient.reduce(sq.generators[i]))
    return GroupMorphism(group, ambient, mat)


def quotient_group(relations, ambient_rank: int) -> FinAbGroup:
    """``Z^ambient_rank`` modulo the column span of ``relations``."""
    rel = as_int_matrix(relations, shape=(ambient_rank, 0))
    if rel.shape[1] == 0:
        return FinAbGroup((), ambient_rank)
    _, D, _ = smith_normal_form(rel)
    diag = _diagonal(D) + [0] * (ambient_rank - min(rel.shape))
    return FinAbGroup.from_orders(diag)


def hom_group(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    """``Hom(A, B)`` for finite ``B``: ``B^r + (+)_i B[m_i]``."""
    if not B.is_finite:
        raise ValueError("hom_group requires a finite target")
    orders = list(B.invariant_factors) * A.free_rank
    for m in A.invariant_factors:
        orders += [math.gcd(m, b) for b in B.invariant_factors]
    return FinAbGroup.from_orders(orders)


def ext_group(A: FinAbGroup, B: FinAbGroup) -> FinAbGroup:
    """``Ext^1(A, B)`` for finite ``B``: ``(+)_i B / m_i B``."""
    if not B.is_finite:
        raise ValueError("ext_group requires a finite target")
    orders = [math.gcd(m, b) for m in A.invariant_factors for b in B.invariant_factors]
    return FinAbGroup.from_orders(orders)


################################################################################
# characters and phases


@dataclass(frozen=True, order=True)
class PhaseQZ:
    """Element ``numerator/denominator`` of Q/Z, i.e. ``exp(2 pi i num/den)`` in U(1)."""

    numerator: int = 0
    denominator: int = 1

    def __post_init__(self):
        if self.denominator <= 0:
            raise ValueError("denominator must be positive")
        fr = Fraction(self.numerator, self.denominator) % 1
        object.__setattr__(self, "numerator", fr.numerator)
        object.__setattr__(self, "denominator", fr.denominator)

    @classmethod
    def of(cls, value) -> PhaseQZ:
        fr = Fraction(value)
        return cls(fr.numerator, fr.denominator)

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.numerator, self.denominator)

    def __add__(self, other: PhaseQZ) -> PhaseQZ:
        return PhaseQZ.of(self.fraction + other.fraction)

    def __sub__(self, other: PhaseQZ) -> PhaseQZ:
        return PhaseQZ.of(self.fraction - other.fraction)

    def __neg__(self) -> PhaseQZ:
        return PhaseQZ.of(-self.fraction)

    def __mul__(self, k: int) -> PhaseQZ:
        return PhaseQZ.of(self.fraction * int(k))

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.numerator != 0

    def to_complex(self) -> complex:
        return complex(np.exp(2j * np.pi * self.numerator / self.denominator))

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}" if self.numerator else "0"


@dataclass(frozen=True)
class Character:
    """Character of a finite group; exponent ``a_i`` sends generator ``i`` to ``a_i/d_i``."""

    group: FinAbGroup
    exponents: tuple[int, ...]

    def __post_init__(self):
        if not self.group.is_finite:
            raise InvalidCharacterError("characters are only defined here for finite groups")
        exps = tuple(int(a) for a in self.exponents)
        if len(exps) != self.group.ngens:
            raise InvalidCharacterError(
                f"{len(exps)} exponents given for a group with {self.group.ngens} generators"
            )
        exps = tuple(a % d for a, d in zip(exps, self.group.invariant_factors))
        object.__setattr__(self, "exponents", exps)

    def __add__(self, other: Character) -> Character:
        return Character(self.group, tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __call__(self, g) -> PhaseQZ:
        return eval_char(self, g)


def dual_group(G: FinAbGroup) -> FinAbGroup:
    if not G.is_finite:
        raise ValueError("Pontryagin dual is only taken for finite groups")
    return FinAbGroup(G.invariant_factors)


def eval_char(alpha: Character, g) -> PhaseQZ:
    g = list(g)
    if len(g) != alpha.group.ngens:
        raise InvalidCharacterError("element and character live in different groups")
    return PhaseQZ.of(sum(Fraction(a * int(x), d) for a, x, d in zip(alpha.exponents, g, alpha.group.invariant_factors)))


def lcm(values) -> int:
    return reduce(lambda a, b: a * b // math.gcd(a, b), [int(v) for v in values if v], 1)
