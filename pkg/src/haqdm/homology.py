"""Finite (co)homology of the graded Hom complexes and the classical cross-checks."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .coeffs import CoefficientComplex, coefficient_homology
from .complex import SimplicialComplex, boundary_matrix
from .finab import (
    FinAbGroup,
    Subquotient,
    _diag_columns,
    _hstack,
    ext_group,
    hom_group,
    identity,
    kernel_of,
)
from .maps import DeltaMap, DualPMap, GradedHomGroup, PMap, assemble_delta_chain, assemble_delta_cochain

__all__ = [
    "BrownReport",
    "CohomologyResult",
    "UCTReport",
    "brown_check",
    "brown_cohomology",
    "brown_homology",
    "simplicial_cohomology",
    "simplicial_homology",
    "uct_check",
]


def _columns(vectors, ambient: int) -> np.ndarray:
    if not vectors:
        return np.zeros((ambient, 0), dtype=object)
    return np.array([list(v) for v in vectors], dtype=object).T


def _ker_mod_im(outgoing: np.ndarray, incoming: np.ndarray, orders, out_orders) -> Subquotient:
    """``Ker(outgoing) / Im(incoming)`` on ``(+) Z_orders`` (``0`` = Z)."""
    m = len(orders)
    ker = kernel_of(outgoing, orders, out_orders)
    S = _hstack(m, _columns(ker.generators, m), _diag_columns(orders))
    R = _hstack(m, incoming, _diag_columns(orders))
    return Subquotient(S, R, m)


@dataclass(frozen=True, eq=False)
class CohomologyResult:
    """A (co)homology group together with one cycle representative per generator."""

    group: FinAbGroup
    representatives: list
    quotient: Subquotient
    space: GradedHomGroup
    outgoing: DeltaMap
    incoming: DeltaMap

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def orders(self) -> list[int]:
        return list(self.quotient.orders)

    def is_cycle(self, elem: Union[PMap, DualPMap]) -> bool:
        return self.outgoing(elem).is_zero()

    def coordinates(self, elem) -> list[int]:
        return self.quotient.coordinates(elem.coords)

    def is_boundary(self, elem) -> bool:
        return self.quotient.is_zero(elem.coords)

    def representative(self, coords) -> Union[PMap, DualPMap]:
        """Cycle representing the class with the given generator coordinates."""
        out = self.space.zero()
        for c, rep in zip(coords, self.representatives):
            out = out + int(c) * rep
        return out

    def classes(self):
        """Iterate over all coordinate tuples of the (finite) group."""
        import itertools

        return itertools.product(*(range(d) for d in self.orders))

    def to_json(self) -> dict:
        return {
            "degree": self.space.p,
            "group": self.group.to_json(),
            "order": self.order,
            "generator_orders": self.orders,
            "representatives": [r.to_json() for r in self.representatives],
        }


def _result(sq: Subquotient, space: GradedHomGroup, outgoing: DeltaMap, incoming: DeltaMap) -> CohomologyResult:
    reps = [space.element(g) for g in sq.generators]
    return CohomologyResult(sq.group, reps, sq, space, outgoing, incoming)


def brown_cohomology(K: SimplicialComplex, cc: CoefficientComplex, p: int) -> CohomologyResult:
    """``H^p(C, G) = Ker delta^p / Im delta^{p-1}`` with cocycle representatives."""
    out = assemble_delta_cochain(K, cc, p)
    inc = assemble_delta_cochain(K, cc, p - 1)
    sq = _ker_mod_im(out.matrix, inc.matrix, out.source.orders, out.target.orders)
    return _result(sq, out.source, out, inc)


def brown_homology(K: SimplicialComplex, cc: CoefficientComplex, p: int) -> CohomologyResult:
    """``H_p(C, G) = Ker delta_p / Im delta_{p+1}`` with cycle representatives."""
    out = assemble_delta_chain(K, cc, p)
    inc = assemble_delta_chain(K, cc, p + 1)
    sq = _ker_mod_im(out.matrix, inc.matrix, out.source.orders, out.target.orders)
    return _result(sq, out.source, out, inc)


def simplicial_homology(K: SimplicialComplex, n: int) -> FinAbGroup:
    """Integral homology ``H_n(C)`` (free rank plus torsion)."""
    size = K.size(n)
    if not size:
        return FinAbGroup.trivial()
    d_out = boundary_matrix(K, n).astype(object)
    d_in = boundary_matrix(K, n + 1).astype(object)
    return _ker_mod_im(d_out, d_in, [0] * size, [0] * K.size(n - 1)).group


def _cochain_coboundary(K: SimplicialComplex, A: FinAbGroup, n: int) -> np.ndarray:
    # C^n(K; A) -> C^{n+1}(K; A): transpose of the boundary, tensored with id_A
    return np.kron(boundary_matrix(K, n + 1).T.astype(object), identity(A.ngens))


def simplicial_cohomology(K: SimplicialComplex, A: FinAbGroup, n: int) -> FinAbGroup:
    """``H^n(C; A)`` for constant coefficients ``A``."""
    if not K.size(n) or A.is_trivial:
        return FinAbGroup.trivial()
    orders = A.orders * K.size(n)
    d_out = _cochain_coboundary(K, A, n)
    d_in = _cochain_coboundary(K, A, n - 1) if n >= 1 else np.zeros((len(orders), 0), dtype=object)
    return _ker_mod_im(d_out, d_in, orders, A.orders * K.size(n + 1)).group


@dataclass(frozen=True)
class BrownReport:
    p: int
    left: FinAbGroup
    factors: dict[int, tuple[FinAbGroup, FinAbGroup]]  # n -> (H_{n-p}(G), H^n(C; H_{n-p}(G)))
    right: FinAbGroup

    @property
    def passed(self) -> bool:
        return self.left == self.right

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "left": self.left.to_json(),
            "left_str": str(self.left),
            "right_factors": [
                {"n": n, "coefficients": str(coef), "factor": fac.to_json(), "factor_str": str(fac)}
                for n, (coef, fac) in self.factors.items()
            ],
            "right": self.right.to_json(),
            "right_str": str(self.right),
            "status": "PASS" if self.passed else "FAIL",
        }


def brown_check(K: SimplicialComplex, cc: CoefficientComplex, p: int) -> BrownReport:
    """Compare ``H^p(C,G)`` with ``prod_n H^n(C; H_{n-p}(G))`` by invariant factors."""
    left = brown_cohomology(K, cc, p).group
    factors = {}
    right = FinAbGroup.trivial()
    for n in range(K.dimension + 1):
        coef = coefficient_homology(cc, n - p)
        fac = simplicial_cohomology(K, coef, n)
        factors[n] = (coef, fac)
        right = right + fac
    return BrownReport(p, left, factors, right)


@dataclass(frozen=True)
class UCTReport:
    n: int
    coefficients: FinAbGroup
    left: FinAbGroup
    hom: FinAbGroup
    ext: FinAbGroup

    @property
    def right(self) -> FinAbGroup:
        return self.hom + self.ext

    @property
    def passed(self) -> bool:
        return self.left == self.right

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "coefficients": str(self.coefficients),
            "left": str(self.left),
            "hom": str(self.hom),
            "ext": str(self.ext),
            "right": str(self.right),
            "status": "PASS" if self.passed else "FAIL",
        }


def uct_check(K: SimplicialComplex, A: FinAbGroup, n: int) -> UCTReport:
    """Compare ``H^n(C; A)`` with ``Hom(H_n(C), A) + Ext(H_{n-1}(C), A)``."""
    left = simplicial_cohomology(K, A, n)
    hom = hom_group(simplicial_homology(K, n), A)
    ext = ext_group(simplicial_homology(K, n - 1), A) if n >= 1 else FinAbGroup.trivial()
    return UCTReport(n, A, left, hom, ext)
