"""Logical classes of the ground space: ``H = H^0 x H_0``, the pairing, and the capacities ``c`` and ``q``."""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .coeffs import CoefficientComplex
from .complex import SimplicialComplex
from .finab import FinAbGroup, PhaseQZ, kernel_of
from .homology import CohomologyResult, brown_cohomology, brown_homology
from .maps import DualPMap, PMap, assemble_delta_chain, assemble_delta_cochain, evaluate_pairing

__all__ = [
    "LogicalClass",
    "LogicalContext",
    "LogicalReport",
    "NotInCommutantError",
    "commutator",
    "commutator_subgroup",
    "conjugate_partners",
    "is_unit",
    "logical_class",
    "logical_report",
    "pairing",
    "weyl_commutator",
]


class NotInCommutantError(ValueError):
    """``P_t Q_gamma`` is not a unit: ``t`` or ``gamma`` fails the cycle condition."""


@dataclass(frozen=True, eq=False)
class LogicalContext:
    """Everything the logical layer needs for one (complex, coefficients) instance."""

    complex: SimplicialComplex
    coeffs: CoefficientComplex
    cohomology: CohomologyResult = field(repr=False)  # H^0(C,G)
    homology: CohomologyResult = field(repr=False)  # H_0(C,G)

    @classmethod
    @functools.lru_cache(maxsize=32)
    def of(cls, K: SimplicialComplex, cc: CoefficientComplex) -> LogicalContext:
        return cls(K, cc, brown_cohomology(K, cc, 0), brown_homology(K, cc, 0))

    @property
    def delta_m1(self):
        return assemble_delta_cochain(self.complex, self.coeffs, -1)

    @property
    def delta0(self):
        return assemble_delta_cochain(self.complex, self.coeffs, 0)

    @property
    def chain0(self):
        return assemble_delta_chain(self.complex, self.coeffs, 0)

    @property
    def chain1(self):
        return assemble_delta_chain(self.complex, self.coeffs, 1)

    @property
    def orders(self) -> list[int]:
        return self.cohomology.orders + self.homology.orders

    @property
    def H_order(self) -> int:
        return self.cohomology.order * self.homology.order

    def zero(self) -> LogicalClass:
        return LogicalClass(self, (0,) * len(self.cohomology.orders), (0,) * len(self.homology.orders))

    def generators(self) -> list[LogicalClass]:
        """One class per cyclic factor: the ``H^0`` generators first, then ``H_0``."""
        a, b = len(self.cohomology.orders), len(self.homology.orders)
        out = []
        for i in range(a):
            out.append(LogicalClass(self, tuple(int(k == i) for k in range(a)), (0,) * b))
        for j in range(b):
            out.append(LogicalClass(self, (0,) * a, tuple(int(k == j) for k in range(b))))
        return out

    def from_flat(self, coords) -> LogicalClass:
        a = len(self.cohomology.orders)
        return LogicalClass(self, tuple(coords[:a]), tuple(coords[a:]))


@dataclass(frozen=True, eq=False)
class LogicalClass:
    """``h = ([t], [gamma])`` in coordinates along the generators of ``H^0`` and ``H_0``."""

    context: LogicalContext = field(repr=False)
    t_class: tuple[int, ...]
    gamma_class: tuple[int, ...]

    def __post_init__(self):
        ctx = self.context
        object.__setattr__(self, "t_class", tuple(int(v) % d for v, d in zip(self.t_class, ctx.cohomology.orders)))
        object.__setattr__(self, "gamma_class", tuple(int(v) % d for v, d in zip(self.gamma_class, ctx.homology.orders)))

    def _check(self, other: LogicalClass):
        if other.context is not self.context:
            raise ValueError("logical classes belong to different instances")

    def __add__(self, other: LogicalClass) -> LogicalClass:
        self._check(other)
        return LogicalClass(
            self.context,
            tuple(a + b for a, b in zip(self.t_class, other.t_class)),
            tuple(a + b for a, b in zip(self.gamma_class, other.gamma_class)),
        )

    def __neg__(self) -> LogicalClass:
        return LogicalClass(self.context, tuple(-a for a in self.t_class), tuple(-a for a in self.gamma_class))

    def __mul__(self, k: int) -> LogicalClass:
        return LogicalClass(self.context, tuple(k * a for a in self.t_class), tuple(k * a for a in self.gamma_class))

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, LogicalClass)
            and other.context is self.context
            and (self.t_class, self.gamma_class) == (other.t_class, other.gamma_class)
        )

    def __hash__(self):
        return hash((self.t_class, self.gamma_class))

    @property
    def flat(self) -> tuple[int, ...]:
        return self.t_class + self.gamma_class

    def is_zero(self) -> bool:
        return not any(self.flat)

    @property
    def t(self) -> PMap:
        """Stored cocycle representative."""
        return self.context.cohomology.representative(self.t_class)

    @property
    def gamma(self) -> DualPMap:
        """Stored cycle representative."""
        return self.context.homology.representative(self.gamma_class)

    def to_json(self) -> dict:
        return {"t_class": list(self.t_class), "gamma_class": list(self.gamma_class)}


def is_unit(t: PMap, gamma: DualPMap) -> bool:
    """True iff ``delta^0 t = 0`` and ``delta_0 gamma = 0``."""
    if t.p != 0 or gamma.p != 0:
        raise ValueError("units are built from degree-0 maps")
    K, cc = t.space.complex, t.space.coeffs
    return assemble_delta_cochain(K, cc, 0)(t).is_zero() and assemble_delta_chain(K, cc, 0)(gamma).is_zero()


def logical_class(t: PMap, gamma: DualPMap) -> LogicalClass:
    """Class of the unit ``P_t Q_gamma`` modulo ``(Im delta^-1, Im delta_1)``."""
    if not is_unit(t, gamma):
        raise NotInCommutantError("P_t Q_gamma is not in the commutant: t or gamma is not closed")
    ctx = LogicalContext.of(t.space.complex, t.space.coeffs)
    return LogicalClass(ctx, tuple(ctx.cohomology.coordinates(t)), tuple(ctx.homology.coordinates(gamma)))


def pairing(h: LogicalClass, h2: LogicalClass) -> PhaseQZ:
    """``<h, h'> = gamma(t')``."""
    h._check(h2)
    return evaluate_pairing(h.gamma, h2.t)


def commutator(h: LogicalClass, h2: LogicalClass) -> PhaseQZ:
    """``[[h, h']] = <h, h'> + <h', h>`` in Q/Z."""
    return pairing(h, h2) + pairing(h2, h)


def weyl_commutator(h: LogicalClass, h2: LogicalClass) -> PhaseQZ:
    """Phase in ``W_h W_h' = exp(2 pi i w) W_h' W_h``, namely ``<h,h'> - <h',h>``.

    Its radical coincides with that of :func:`commutator`.
    """
    return pairing(h, h2) - pairing(h2, h)


def conjugate_partners(ctx: LogicalContext) -> list[LogicalClass] | None:
    """For each ``H^0`` generator ``x_i`` of order ``o_i``, a class ``z_i = (0, [gamma])`` with
    ``<z_i, x_k> = delta_ik / o_i``; ``None`` when the pairing admits no such basis."""
    gens = ctx.generators()
    xs = gens[: len(ctx.cohomology.orders)]
    cands = [LogicalClass(ctx, ctx.zero().t_class, c) for c in ctx.homology.classes()]
    out = []
    for i, x in enumerate(xs):
        want = [PhaseQZ(int(k == i), ctx.cohomology.orders[i]) for k in range(len(xs))]
        match = next((z for z in cands if [pairing(z, y) for y in xs] == want), None)
        if match is None:
            return None
        out.append(match)
    return out


def commutator_matrix(ctx: LogicalContext) -> list[list[PhaseQZ]]:
    gens = ctx.generators()
    return [[commutator(a, b) for b in gens] for a in gens]


def commutator_subgroup(ctx: LogicalContext) -> tuple[FinAbGroup, list[LogicalClass]]:
    """Radical of the commutator form: the kernel of ``H -> H^``, ``h -> [[h, .]]``."""
    orders = ctx.orders
    if not orders:
        return FinAbGroup.trivial(), []
    omega = commutator_matrix(ctx)
    M = np.zeros((len(orders), len(orders)), dtype=object)
    for i, row in enumerate(omega):
        for j, ph in enumerate(row):
            val = ph.fraction * orders[j]
            if val.denominator != 1:  # pragma: no cover - guaranteed by bi-additivity
                raise ArithmeticError("commutator phase incompatible with generator order")
            M[j, i] = int(val) % orders[j]
    sq = kernel_of(M, orders, orders)
    return sq.group, [ctx.from_flat(g) for g in sq.generators]


def _log2_exact(n: int) -> int | None:
    return n.bit_length() - 1 if n > 0 and n & (n - 1) == 0 else None


@dataclass
class LogicalReport:
    H_order: int
    H0: FinAbGroup
    H_0: FinAbGroup
    I_group: FinAbGroup
    c: Fraction | float
    q: Fraction | float
    X_c_size: int
    h_q_dim: int | None
    ground_dim: int
    non_qubit_dimension: bool
    generators: list[LogicalClass]
    pairing_matrix: list[list[PhaseQZ]]  # rows: H_0 generators, columns: H^0 generators
    weyl_table: list[dict]
    flags: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        def num(x):
            if isinstance(x, Fraction):
                return int(x) if x.denominator == 1 else str(x)
            return x

        return {
            "H_order": self.H_order,
            "H0": str(self.H0),
            "H_0": str(self.H_0),
            "I_group": str(self.I_group),
            "I_order": self.I_group.order,
            "X_c_size": self.X_c_size,
            "c": num(self.c),
            "q": num(self.q),
            "h_q_dim": self.h_q_dim,
            "ground_dim": self.ground_dim,
            "non_qubit_dimension": self.non_qubit_dimension,
            "flags": self.flags,
            "generators": [
                {
                    **g.to_json(),
                    "t_representative": g.t.to_json(),
                    "gamma_representative": g.gamma.to_json(),
                }
                for g in self.generators
            ],
            "pairing_matrix": [[str(v) for v in row] for row in self.pairing_matrix],
            "weyl_table": self.weyl_table,
        }


def weyl_table(ctx: LogicalContext) -> list[dict]:
    """``W_h W_h' = <h,h'> W_{h+h'}`` on generator pairs.

    The product of the stored representatives is reduced to a class with
    :func:`logical_class` and compared with the class sum; the phase is
    the one picked up by moving ``Q_gamma`` past ``P_t'``.
    """
    from .ed import MonomialOperator

    rows = []
    gens = ctx.generators()
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            prod = MonomialOperator(a.t, a.gamma) @ MonomialOperator(b.t, b.gamma)
            cls = logical_class(prod.shift, prod.clock)
            phase = pairing(a, b)
            rows.append(
                {
                    "i": i,
                    "j": j,
                    "phase": str(phase),
                    "sum_class": list((a + b).flat),
                    "consistent": cls == a + b and prod.phase == phase,
                }
            )
    return rows


def logical_report(ctx: LogicalContext) -> LogicalReport:
    """Assemble ``|H|``, the radical, ``c``, ``q`` and the ground-space dimension."""
    from .ed import ground_space_dim_exact

    H = ctx.H_order
    I_group, _ = commutator_subgroup(ctx)
    I = I_group.order
    flags = []
    ratio = Fraction(H, I)
    lc, lr = _log2_exact(I), _log2_exact(int(ratio)) if ratio.denominator == 1 else None
    non_qubit = lc is None or lr is None
    c = Fraction(lc) if lc is not None else math.log2(I)
    q = Fraction(lr, 2) if lr is not None else 0.5 * math.log2(float(ratio))
    if non_qubit:
        flags.append("non-qubit dimension: |I| or |H|/|I| is not a power of two")
    root = math.isqrt(int(ratio)) if ratio.denominator == 1 else 0
    h_q_dim = root if root * root == ratio else None
    if h_q_dim is None:
        flags.append("|H|/|I| is not a perfect square")
    if I > 1:
        flags.append("nontrivial radical: classical bits present")
    gens = ctx.generators()
    n_t = len(ctx.cohomology.orders)
    pmat = [[pairing(g, h) for h in gens[:n_t]] for g in gens[n_t:]]
    return LogicalReport(
        H_order=H,
        H0=ctx.cohomology.group,
        H_0=ctx.homology.group,
        I_group=I_group,
        c=c,
        q=q,
        X_c_size=I,
        h_q_dim=h_q_dim,
        ground_dim=ground_space_dim_exact(ctx.complex, ctx.coeffs),
        non_qubit_dimension=non_qubit,
        generators=gens,
        pairing_matrix=pmat,
        weyl_table=weyl_table(ctx),
        flags=flags,
    )
