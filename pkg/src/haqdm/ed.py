"""Exact-diagonalization oracle for the local Hamiltonian on small instances.

The Hilbert space is spanned by degree-0 configurations ``|h>``, one
tensor factor per cyclic coordinate of ``Hom(C, G)^0``; sites whose local
group is trivial carry no factor. Basis states are indexed in mixed radix
with the first coordinate most significant.

Monomials ``c P_t Q_gamma`` act as ``|h> -> c gamma(h) |t + h>`` and are kept
as exact (shift, clock, phase) triples. Complex floats appear only when
monomials are summed into projectors or the Hamiltonian.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np
import scipy.sparse as sp

from .coeffs import CoefficientComplex
from .complex import SimplicialComplex
from .finab import PhaseQZ, image_of
from .maps import (
    DualPMap,
    GradedHomGroup,
    PMap,
    assemble_delta_chain,
    assemble_delta_cochain,
    evaluate_pairing,
    localized_dual,
    localized_pmap,
    pairing_batch,
)

__all__ = [
    "DEFAULT_MAX_DIM",
    "DimensionCapError",
    "HilbertSpace",
    "MonomialOperator",
    "ProjectorSum",
    "SiteSpace",
    "apply_monomial",
    "commuting_projector_check",
    "ground_space_dim_exact",
    "ground_space_dim_float",
    "group_law_check",
    "logical_action_check",
    "plaquette_projector",
    "resolve_max_dim",
    "star_projector",
    "support_of",
    "weyl_relation_check",
]

DEFAULT_MAX_DIM = 2**14
PROJECTOR_TOL = 1e-12
RESTRICTED_TOL = 1e-10


class DimensionCapError(ValueError):
    """The Hilbert space is larger than the configured cap."""


def resolve_max_dim(explicit: int | None = None) -> int:
    """Explicit value, else ``HAQDM_MAX_DIM``, else the default ``2**14``."""
    if explicit is not None:
        return int(explicit)
    env = os.environ.get("HAQDM_MAX_DIM")
    return int(env) if env else DEFAULT_MAX_DIM


@dataclass(frozen=True)
class SiteSpace:
    simplex: tuple[str, ...]
    dim: int  # local dimension |G_n|
    coordinates: slice


@dataclass(frozen=True, eq=False)
class HilbertSpace:
    """Tensor product of ``L^2(G_n)`` over all simplices with nontrivial ``G_n``."""

    space: GradedHomGroup

    @classmethod
    def of(cls, K: SimplicialComplex, cc: CoefficientComplex, max_dim: int | None = None) -> HilbertSpace:
        hs = cls(GradedHomGroup(K, cc, 0))
        cap = resolve_max_dim(max_dim)
        if hs.dim > cap:
            raise DimensionCapError(
                f"Hilbert dimension {hs.dim} exceeds the cap {cap}; "
                "use ground_space_dim_exact or raise --max-dim"
            )
        return hs

    @property
    def orders(self) -> tuple[int, ...]:
        return self.space.orders

    @property
    def dim(self) -> int:
        return self.space.order

    def sites(self) -> list[SiteSpace]:
        K = self.space.complex
        out = []
        for n, i, s in K:
            sl = self.space.slot(n, i)
            if sl.stop > sl.start:
                out.append(SiteSpace(s, self.space.level(n).order, sl))
        return out

    def index(self, coords: Sequence[int]) -> int:
        if len(coords) != len(self.orders):
            raise ValueError(f"basis state has {len(coords)} coordinates, expected {len(self.orders)}")
        idx = 0
        for v, d in zip(coords, self.orders):
            idx = idx * d + int(v) % d
        return idx

    def label(self, idx: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self.orders):
            idx, r = divmod(idx, d)
            out.append(r)
        return tuple(reversed(out))

    def labels(self) -> np.ndarray:
        """``dim x m`` array of basis labels in index order."""
        if not self.orders:
            return np.zeros((1, 0), dtype=np.int64)
        return np.indices(self.orders, dtype=np.int64).reshape(len(self.orders), -1).T

    def ravel(self, X: np.ndarray) -> np.ndarray:
        if not self.orders:
            return np.zeros(X.shape[0], dtype=np.int64)
        return np.ravel_multi_index(tuple(X.T), self.orders)


@dataclass(frozen=True)
class Action:
    """A monomial on the basis: ``|i> -> exp(2 pi i num[i]/L) |target[i]>``."""

    target: np.ndarray
    num: np.ndarray
    L: int

    def rescale(self, L: int) -> Action:
        return Action(self.target, (self.num * (L // self.L)) % L, L)

    def then(self, outer: Action) -> Action:
        """``outer o self``."""
        L = math.lcm(self.L, outer.L)
        a, b = self.rescale(L), outer.rescale(L)
        return Action(b.target[a.target], (a.num + b.num[a.target]) % L, L)

    def __eq__(self, other):
        L = math.lcm(self.L, other.L)
        a, b = self.rescale(L), other.rescale(L)
        return bool(np.array_equal(a.target, b.target) and np.array_equal(a.num, b.num))

    def with_phase(self, ph: PhaseQZ) -> Action:
        L = math.lcm(self.L, ph.denominator)
        a = self.rescale(L)
        return Action(a.target, (a.num + ph.numerator * (L // ph.denominator)) % L, L)

    def to_sparse(self) -> sp.csr_matrix:
        vals = np.exp(2j * np.pi * self.num.astype(float) / self.L)
        n = len(self.target)
        return sp.csr_matrix((vals, (self.target, np.arange(n))), shape=(n, n))


@dataclass(frozen=True, eq=False)
class MonomialOperator:
    """``exp(2 pi i phase) P_shift Q_clock``."""

    shift: PMap
    clock: DualPMap
    phase: PhaseQZ = field(default_factory=lambda: PhaseQZ(0, 1))

    def __post_init__(self):
        if self.shift.p != 0 or self.clock.p != 0:
            raise ValueError("monomials act on degree-0 configurations")

    @classmethod
    def identity(cls, K: SimplicialComplex, cc: CoefficientComplex) -> MonomialOperator:
        return cls(GradedHomGroup(K, cc, 0).zero(), GradedHomGroup(K, cc, 0, dual=True).zero())

    @classmethod
    def shift_by(cls, t: PMap) -> MonomialOperator:
        return cls(t, GradedHomGroup(t.space.complex, t.space.coeffs, 0, dual=True).zero())

    @classmethod
    def clock_by(cls, gamma: DualPMap) -> MonomialOperator:
        return cls(GradedHomGroup(gamma.space.complex, gamma.space.coeffs, 0).zero(), gamma)

    def __matmul__(self, other: MonomialOperator) -> MonomialOperator:
        # (P_a Q_al)(P_b Q_be) = al(b) P_{a+b} Q_{al+be}
        phase = self.phase + other.phase + evaluate_pairing(self.clock, other.shift)
        return MonomialOperator(self.shift + other.shift, self.clock + other.clock, phase)

    def adjoint(self) -> MonomialOperator:
        # (P_t Q_g)^* = Q_{-g} P_{-t} = g(t) P_{-t} Q_{-g}
        return MonomialOperator(-self.shift, -self.clock, -self.phase + evaluate_pairing(self.clock, self.shift))

    def same_as(self, other: MonomialOperator) -> bool:
        return self.shift == other.shift and self.clock == other.clock and self.phase == other.phase

    def commutes_with(self, other: MonomialOperator) -> bool:
        return (self @ other).same_as(other @ self)

    def action(self, hs: HilbertSpace) -> Action:
        X = hs.labels()
        L, num = pairing_batch(hs.space, np.broadcast_to(np.array(self.clock.coords, dtype=np.int64), X.shape), X)
        Y = (X + np.array(self.shift.coords, dtype=np.int64)) % np.array(hs.orders, dtype=np.int64)
        return Action(hs.ravel(Y), np.asarray(num, dtype=np.int64), L).with_phase(self.phase)

    def to_sparse(self, hs: HilbertSpace) -> sp.csr_matrix:
        return self.action(hs).to_sparse()

    def apply_to_vector(self, vec: dict) -> dict:
        """Matrix-free action on ``{label tuple: amplitude}``."""
        out: dict = {}
        for h, amp in vec.items():
            h2, ph = apply_monomial(self, h)
            out[h2] = out.get(h2, 0) + amp * ph.to_complex()
        return out


def apply_monomial(op: MonomialOperator, basis_state: Sequence[int]) -> tuple[tuple[int, ...], PhaseQZ]:
    """Exact image of a basis label: ``(t + h, phase + gamma(h))``."""
    space = op.shift.space
    if len(basis_state) != space.size:
        raise ValueError(f"basis state has {len(basis_state)} coordinates, expected {space.size}")
    h = space.element(basis_state)
    return (op.shift + h).coords, op.phase + evaluate_pairing(op.clock, h)


def weyl_relation_check(t: PMap, gamma: DualPMap, max_dim: int | None = None) -> bool:
    """``Q_gamma P_t == gamma(t) P_t Q_gamma`` on every basis vector."""
    hs = HilbertSpace.of(t.space.complex, t.space.coeffs, max_dim)
    P, Q = MonomialOperator.shift_by(t).action(hs), MonomialOperator.clock_by(gamma).action(hs)
    return P.then(Q) == Q.then(P).with_phase(evaluate_pairing(gamma, t))


def group_law_check(t1: PMap, t2: PMap, g1: DualPMap, g2: DualPMap, max_dim: int | None = None) -> bool:
    """``P_t1 P_t2 = P_{t1+t2}``, ``Q_g1 Q_g2 = Q_{g1+g2}``, and symbolic products match the basis action."""
    hs = HilbertSpace.of(t1.space.complex, t1.space.coeffs, max_dim)
    P1, P2 = MonomialOperator.shift_by(t1), MonomialOperator.shift_by(t2)
    Q1, Q2 = MonomialOperator.clock_by(g1), MonomialOperator.clock_by(g2)
    ok = P2.action(hs).then(P1.action(hs)) == MonomialOperator.shift_by(t1 + t2).action(hs)
    ok &= Q2.action(hs).then(Q1.action(hs)) == MonomialOperator.clock_by(g1 + g2).action(hs)
    W1, W2 = MonomialOperator(t1, g1), MonomialOperator(t2, g2)
    ok &= W2.action(hs).then(W1.action(hs)) == (W1 @ W2).action(hs)
    return bool(ok)


################################################################################
# projectors


@dataclass(frozen=True)
class ProjectorSum:
    """``sum_k w_k M_k`` with rational weights."""

    terms: tuple[tuple[Fraction, MonomialOperator], ...]
    kind: str = ""
    simplex: tuple[str, ...] = ()

    def adjoint(self) -> ProjectorSum:
        return ProjectorSum(tuple((w, m.adjoint()) for w, m in self.terms), self.kind, self.simplex)

    def to_sparse(self, hs: HilbertSpace) -> sp.csr_matrix:
        out = sp.csr_matrix((hs.dim, hs.dim), dtype=complex)
        for w, m in self.terms:
            out = out + float(w) * m.to_sparse(hs)
        return out.tocsr()

    def apply_to_vector(self, vec: dict) -> dict:
        out: dict = {}
        for w, m in self.terms:
            for h, a in m.apply_to_vector(vec).items():
                out[h] = out.get(h, 0) + float(w) * a
        return out

    def operator_support(self) -> set[tuple[str, ...]]:
        """Simplices where some term acts nontrivially."""
        out = set()
        for _, m in self.terms:
            K = m.shift.space.complex
            for n, i in m.shift.support() + m.clock.support():
                out.add(K.simplex(n, i))
        return out


def _simplex(K: SimplicialComplex, x) -> tuple[int, int, tuple[str, ...]]:
    n, i = K.index(x)
    return n, i, K.simplex(n, i)


def star_projector(K: SimplicialComplex, cc: CoefficientComplex, x) -> ProjectorSum:
    """``A_x^0 = |G_{n+1}|^-1 sum_g P_{delta^-1 x*_g}`` for ``x`` in ``K_n``."""
    n, _, s = _simplex(K, x)
    G = cc.group(n + 1)
    d = assemble_delta_cochain(K, cc, -1)
    w = Fraction(1, G.order)
    terms = tuple((w, MonomialOperator.shift_by(d(localized_pmap(K, cc, s, g, -1)))) for g in G.elements())
    return ProjectorSum(terms, "star", s)


def plaquette_projector(K: SimplicialComplex, cc: CoefficientComplex, x) -> ProjectorSum:
    """``B_x^0 = |G_{n-1}|^-1 sum_alpha Q_{delta_1 x_*^alpha}`` for ``x`` in ``K_n``."""
    n, _, s = _simplex(K, x)
    G = cc.group(n - 1)
    d = assemble_delta_chain(K, cc, 1)
    w = Fraction(1, G.order)
    terms = tuple((w, MonomialOperator.clock_by(d(localized_dual(K, cc, s, a, 1)))) for a in G.elements())
    return ProjectorSum(terms, "plaquette", s)


def all_projectors(K: SimplicialComplex, cc: CoefficientComplex) -> tuple[list[ProjectorSum], list[ProjectorSum]]:
    stars = [star_projector(K, cc, s) for _, _, s in K]
    plaqs = [plaquette_projector(K, cc, s) for _, _, s in K]
    return stars, plaqs


def support_of(kind: str, K: SimplicialComplex, x) -> set[tuple[str, ...]]:
    """``{x}`` plus its cofaces (star) or faces (plaquette)."""
    n, i, s = _simplex(K, x)
    if kind == "star":
        return {s} | {K.simplex(n + 1, c) for c, _ in K.cofaces(n, i)}
    if kind == "plaquette":
        return {s} | {K.simplex(n - 1, r) for r, _ in K.faces(n, i)}
    raise ValueError(f"kind must be 'star' or 'plaquette', got {kind!r}")


def _max_abs(M) -> float:
    M = sp.csr_matrix(M)
    return float(abs(M).max()) if M.nnz else 0.0


@dataclass
class ProjectorCheck:
    x: tuple[str, ...]
    y: tuple[str, ...]
    deviations: dict[str, float]
    tolerance: float = PROJECTOR_TOL

    @property
    def passed(self) -> bool:
        return all(v <= self.tolerance for v in self.deviations.values())

    def __bool__(self) -> bool:
        return self.passed

    def to_json(self) -> dict:
        return {
            "x": list(self.x),
            "y": list(self.y),
            "deviations": self.deviations,
            "tolerance": self.tolerance,
            "status": "PASS" if self.passed else "FAIL",
        }


def commuting_projector_check(
    K: SimplicialComplex, cc: CoefficientComplex, x, y, max_dim: int | None = None
) -> ProjectorCheck:
    """Idempotence and self-adjointness of ``A_x^0``, ``B_y^0`` and ``[A_x^0, B_y^0] = 0``, entrywise."""
    hs = HilbertSpace.of(K, cc, max_dim)
    A = star_projector(K, cc, x).to_sparse(hs)
    B = plaquette_projector(K, cc, y).to_sparse(hs)
    dev = {
        "A_idempotent": _max_abs(A @ A - A),
        "A_selfadjoint": _max_abs(A - A.conj().T),
        "B_idempotent": _max_abs(B @ B - B),
        "B_selfadjoint": _max_abs(B - B.conj().T),
        "AB_commute": _max_abs(A @ B - B @ A),
    }
    return ProjectorCheck(_simplex(K, x)[2], _simplex(K, y)[2], dev)


################################################################################
# ground space


def _image_order(delta) -> int:
    return image_of(delta.matrix, delta.source.orders, delta.target.orders).order


def ground_space_dim_exact(K: SimplicialComplex, cc: CoefficientComplex) -> int:
    """``D / (|Im delta^-1| |Im delta_1|)``: the closed-form trace of ``prod A^0 prod B^0``."""
    D = GradedHomGroup(K, cc, 0).order
    denom = _image_order(assemble_delta_cochain(K, cc, -1)) * _image_order(assemble_delta_chain(K, cc, 1))
    if D % denom:  # pragma: no cover - subgroup orders divide D
        raise ArithmeticError("image orders do not divide the Hilbert dimension")
    return D // denom


@dataclass
class FloatGroundReport:
    dim: int
    trace: float
    deviation: float
    energy: float
    expected_energy: int
    hilbert_dim: int

    def to_json(self) -> dict:
        return {
            "ground_dim": self.dim,
            "trace": self.trace,
            "deviation": self.deviation,
            "ground_energy": self.energy,
            "expected_ground_energy": self.expected_energy,
            "hilbert_dim": self.hilbert_dim,
        }


def ground_space_float_report(
    K: SimplicialComplex, cc: CoefficientComplex, max_dim: int | None = None
) -> FloatGroundReport:
    hs = HilbertSpace.of(K, cc, max_dim)
    stars, plaqs = all_projectors(K, cc)
    mats = [p.to_sparse(hs) for p in stars + plaqs]
    Pi = sp.identity(hs.dim, dtype=complex, format="csr")
    H = sp.csr_matrix((hs.dim, hs.dim), dtype=complex)
    for M in mats:
        Pi = (Pi @ M).tocsr()
        H = H - M
    trace = float(Pi.diagonal().sum().real)
    dim = int(round(trace))
    deviation = abs(trace - dim)
    if deviation > 0.1:
        raise ArithmeticError(f"trace {trace} is {deviation} away from an integer")
    energy = float((H @ Pi).diagonal().sum().real / trace) if dim else 0.0
    return FloatGroundReport(dim, trace, deviation, energy, -len(mats), hs.dim)


def ground_space_dim_float(K: SimplicialComplex, cc: CoefficientComplex, max_dim: int | None = None) -> int:
    """Rank of ``prod A_x^0 prod B_x^0`` from its sparse trace (requires dimension <= cap)."""
    return ground_space_float_report(K, cc, max_dim).dim


################################################################################
# logical action on the ground space (matrix-free)


def _subgroup_closure(orders: Sequence[int], generators: Iterable[tuple[int, ...]], cap: int) -> list[tuple[int, ...]]:
    gens = [tuple(g) for g in generators if any(g)]
    zero = (0,) * len(orders)
    seen = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for e in frontier:
            for g in gens:
                s = tuple((a + b) % d for a, b, d in zip(e, g, orders))
                if s not in seen:
                    seen.add(s)
                    nxt.append(s)
                    if len(seen) > cap:
                        raise DimensionCapError(f"gauge orbit exceeds {cap} states")
        frontier = nxt
    return sorted(seen)


def _inner(u: dict, v: dict) -> complex:
    return sum(np.conj(a) * v.get(h, 0) for h, a in u.items())


def _residual(u: dict, v: dict) -> float:
    keys = set(u) | set(v)
    return max((abs(u.get(k, 0) - v.get(k, 0)) for k in keys), default=0.0)


@dataclass
class LogicalActionReport:
    ground_dim: int
    orbit_size: int
    checks: dict[str, float | bool]
    restricted: dict[str, list] = field(default_factory=dict)
    anticommuting_pairs: list[tuple[int, int]] = field(default_factory=list)
    conjugate_pairs: list[tuple[list[int], list[int], int]] = field(default_factory=list)
    tolerance: float = RESTRICTED_TOL

    @property
    def passed(self) -> bool:
        return all(v if isinstance(v, bool) else v <= self.tolerance for v in self.checks.values())

    def to_json(self) -> dict:
        return {
            "method": "matrix-free restriction to gauge-orbit basis",
            "ground_dim": self.ground_dim,
            "orbit_size": self.orbit_size,
            "tolerance": self.tolerance,
            "checks": self.checks,
            "anticommuting_pairs": [list(p) for p in self.anticommuting_pairs],
            "conjugate_pairs": [{"x": x, "z": z, "order": o} for x, z, o in self.conjugate_pairs],
            "status": "PASS" if self.passed else "FAIL",
        }


def logical_action_check(ctx, *, shifts: int = 8, seed: int = 0, max_states: int | None = None) -> LogicalActionReport:
    """Restrict every ``W_h = P_t Q_gamma`` to the ground space and compare with the pairing.

    The ground space is spanned by uniform superpositions over the cosets
    ``t_c + Im delta^-1`` for ``c`` in ``H^0``; these are built explicitly as
    sparse vectors, so only ``|Ker delta^0|`` amplitudes are ever stored and
    instances far above the Hilbert-space cap remain tractable.
    """
    from .logical import conjugate_partners, pairing

    K, cc = ctx.complex, ctx.coeffs
    cap = resolve_max_dim(max_states)
    d_m1, d_1 = ctx.delta_m1, ctx.chain1
    space = d_m1.target
    orders = space.orders
    basis_imgs = [d_m1(d_m1.source.element([int(i == k) for i in range(d_m1.source.size)])).coords for k in range(d_m1.source.size)]
    orbit = _subgroup_closure(orders, basis_imgs, cap)
    classes = list(ctx.cohomology.classes())
    if len(orbit) * len(classes) > cap:
        raise DimensionCapError(f"ground support {len(orbit) * len(classes)} exceeds {cap}")
    amp = 1 / math.sqrt(len(orbit))
    basis = []
    for c in classes:
        t = ctx.cohomology.representative(c).coords
        basis.append({tuple((a + b) % d for a, b, d in zip(t, s, orders)): amp for s in orbit})
    dim = len(basis)

    checks: dict[str, float | bool] = {}
    gram = np.array([[_inner(u, v) for v in basis] for u in basis])
    checks["orthonormal"] = float(np.abs(gram - np.eye(dim)).max()) if dim else 0.0
    stars, plaqs = all_projectors(K, cc)
    checks["projectors_fix_ground"] = max(
        (_residual(p.apply_to_vector(v), v) for p in stars + plaqs for v in basis), default=0.0
    )

    def restrict(op: MonomialOperator) -> tuple[np.ndarray, float]:
        R = np.zeros((dim, dim), dtype=complex)
        leak = 0.0
        for b, v in enumerate(basis):
            w = op.apply_to_vector(v)
            for a, u in enumerate(basis):
                R[a, b] = _inner(u, w)
            proj: dict = {}
            for a, u in enumerate(basis):
                for h, x in u.items():
                    proj[h] = proj.get(h, 0) + R[a, b] * x
            leak = max(leak, float(_residual(w, proj)))
        return R, leak

    gens = ctx.generators()
    W = [MonomialOperator(h.t, h.gamma) for h in gens]
    terms = [m for p in stars + plaqs for _, m in p.terms]
    checks["commutant"] = all(w.commutes_with(m) for w in W for m in terms)
    R, leaks = [], []
    for w in W:
        r, leak = restrict(w)
        R.append(r)
        leaks.append(leak)
    checks["ground_preserved"] = max(leaks, default=0.0)
    R0, _ = restrict(MonomialOperator.identity(K, cc))
    checks["identity_class"] = float(np.abs(R0 - np.eye(dim)).max()) if dim else 0.0

    weyl_dev, comm_dev = 0.0, 0.0
    anti = []
    for i, a in enumerate(gens):
        for j, b in enumerate(gens):
            Rsum, _ = restrict(MonomialOperator(a.t + b.t, a.gamma + b.gamma))
            ph = pairing(a, b).to_complex()
            weyl_dev = max(weyl_dev, float(np.abs(R[i] @ R[j] - ph * Rsum).max()))
            # W_a W_b = (<a,b> - <b,a>) W_b W_a
            grp = (pairing(a, b) - pairing(b, a)).to_complex()
            comm_dev = max(comm_dev, float(np.abs(R[i] @ R[j] - grp * R[j] @ R[i]).max()))
            if i < j and np.abs(R[i] @ R[j] + R[j] @ R[i]).max() <= RESTRICTED_TOL:
                anti.append((i, j))
    checks["weyl_product"] = weyl_dev
    checks["weyl_commutation"] = comm_dev

    # conjugate pairs (x_i, z_i): z_i x_k = exp(2 pi i delta_ik / o_i) x_k z_i
    partners = conjugate_partners(ctx)
    pairs = []
    if partners is not None:
        xs = gens[: len(partners)]
        RX = R[: len(partners)]
        RZ = [restrict(MonomialOperator(z.t, z.gamma))[0] for z in partners]
        pair_dev = 0.0
        for i, (z, rz) in enumerate(zip(partners, RZ)):
            o = ctx.cohomology.orders[i]
            for k, rx in enumerate(RX):
                ph = np.exp(2j * np.pi / o) if k == i else 1.0
                pair_dev = max(pair_dev, float(np.abs(rz @ rx - ph * rx @ rz).max()))
            pairs.append((list(xs[i].flat), list(z.flat), o))
        checks["conjugate_pairs"] = pair_dev
    checks["conjugate_basis_found"] = partners is not None

    rng = np.random.default_rng(seed)
    shift_dev = 0.0
    src_m1, src_1 = d_m1.source, d_1.source
    for h, r in zip(gens, R):
        for _ in range(shifts):
            t = h.t + d_m1(src_m1.random(rng))
            g = h.gamma + d_1(src_1.random(rng))
            r2, _ = restrict(MonomialOperator(t, g))
            shift_dev = max(shift_dev, float(np.abs(r2 - r).max()))
    checks["representative_shift"] = shift_dev

    restricted = {f"W{i}": [[str(complex(np.round(z, 12))) for z in row] for row in r] for i, r in enumerate(R)}
    return LogicalActionReport(dim, len(orbit), checks, restricted, anti, pairs)

