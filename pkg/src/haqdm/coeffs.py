"""Bounded chain complexes of finite abelian groups (the coefficient data)."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .finab import FinAbGroup, GroupMorphism, Subquotient, _diag_columns, _hstack, kernel_of

__all__ = ["CoefficientComplex", "Violation", "coefficient_homology", "dualize", "validate"]


@dataclass(frozen=True)
class Violation:
    level: int
    message: str

    def to_json(self) -> dict:
        return {"level": self.level, "message": self.message}


@dataclass(frozen=True, eq=False)
class CoefficientComplex:
    """Finite groups ``G_j`` with boundaries ``d_j: G_j -> G_{j-1}``.

    Missing levels are trivial and missing boundaries are zero. With
    ``dual=True`` the object is the dualized cochain complex, whose maps go
    ``G^_{j-1} -> G^_j`` and are stored under key ``j``.
    """

    levels: Mapping[int, FinAbGroup] = field(default_factory=dict)
    boundaries: Mapping[int, GroupMorphism] = field(default_factory=dict)
    dual: bool = False

    def __post_init__(self):
        levels = {int(j): g for j, g in self.levels.items() if not g.is_trivial}
        object.__setattr__(self, "levels", dict(sorted(levels.items())))
        object.__setattr__(self, "boundaries", {int(j): f for j, f in sorted(self.boundaries.items())})
        for j, f in self.boundaries.items():
            src, tgt = (j - 1, j) if self.dual else (j, j - 1)
            if f.source != self.group(src) or f.target != self.group(tgt):
                raise ValueError(
                    f"boundary at level {j} runs {f.source} -> {f.target}, "
                    f"expected {self.group(src)} -> {self.group(tgt)}"
                )

    def group(self, j: int) -> FinAbGroup:
        return self.levels.get(j, FinAbGroup.trivial())

    def boundary(self, j: int) -> GroupMorphism:
        """``d_j``: ``G_j -> G_{j-1}`` (or ``G^_{j-1} -> G^_j`` when dual)."""
        if j in self.boundaries:
            return self.boundaries[j]
        src, tgt = (j - 1, j) if self.dual else (j, j - 1)
        return GroupMorphism.zero(self.group(src), self.group(tgt))

    @property
    def top(self) -> int:
        return max(self.levels, default=-1)

    def is_flat(self) -> bool:
        """True when every boundary is zero (the plain homological-code case)."""
        return all(f.is_zero() for f in self.boundaries.values())

    def to_json(self) -> dict:
        return {
            "groups": {str(j): list(g.invariant_factors) for j, g in self.levels.items()},
            "boundaries": {
                str(j): [[int(v) for v in row] for row in f.matrix]
                for j, f in self.boundaries.items()
                if not f.is_zero()
            },
        }


def validate(cc: CoefficientComplex, N: int) -> list[Violation]:
    """Check level bounds and ``d_j o d_{j+1} = 0``; never raises."""
    out = []
    for j, g in cc.levels.items():
        if j < 0 or j > N:
            out.append(Violation(j, f"G_{j} = {g} is nonzero outside levels 0..{N}"))
        if not g.is_finite:
            out.append(Violation(j, f"G_{j} = {g} is not finite"))
    for j in sorted(set(cc.boundaries) | {k + 1 for k in cc.boundaries}):
        lower, upper = cc.boundary(j), cc.boundary(j + 1)
        comp = upper @ lower if cc.dual else lower @ upper
        if not comp.is_zero():
            out.append(Violation(j, f"boundary composite d_{j} o d_{j + 1} is not zero"))
    return out


def _subquotient(cc: CoefficientComplex, j: int) -> Subquotient:
    g = cc.group(j)
    out_map, in_map = cc.boundary(j), cc.boundary(j + 1)
    ker = kernel_of(out_map.matrix, g.orders, out_map.target.orders)
    kgens = _hstack(g.ngens, *[np.array(v, dtype=object).reshape(-1, 1) for v in ker.generators])
    rel = _hstack(g.ngens, in_map.matrix, _diag_columns(g.orders))
    return Subquotient(_hstack(g.ngens, kgens, _diag_columns(g.orders)), rel, g.ngens)


def coefficient_homology(cc: CoefficientComplex, j: int) -> FinAbGroup:
    """``H_j(G) = Ker d_j / Im d_{j+1}`` in invariant-factor form."""
    if cc.dual:
        raise ValueError("coefficient_homology expects a chain complex, not its dual")
    if cc.group(j).is_trivial:
        return FinAbGroup.trivial()
    return _subquotient(cc, j).group


def dualize(cc: CoefficientComplex) -> CoefficientComplex:
    """Character groups with the adjoint maps ``alpha -> alpha o d_j``.

    Dualizing a dual complex returns a chain complex again (double dual).
    """
    boundaries = {j: f.dual() for j, f in cc.boundaries.items()}
    return CoefficientComplex(dict(cc.levels), boundaries, dual=not cc.dual)
