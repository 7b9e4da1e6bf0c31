import itertools
import math
from fractions import Fraction

import numpy as np
import pytest

from haqdm.catalog import CATALOG_NAMES, catalog
from haqdm.coeffs import CoefficientComplex
from haqdm.finab import FinAbGroup, PhaseQZ
from haqdm.logical import (
    LogicalContext,
    NotInCommutantError,
    commutator,
    commutator_subgroup,
    conjugate_partners,
    is_unit,
    logical_class,
    logical_report,
    pairing,
    weyl_commutator,
)
from haqdm.maps import GradedHomGroup, evaluate_pairing, localized_pmap


def _ctx(name):
    e = catalog(name)
    return LogicalContext.of(e.complex, e.coefficients)


def _all_classes(ctx):
    return [ctx.from_flat(c) for c in itertools.product(*(range(d) for d in ctx.orders))]


def test_zero_is_unit():
    ctx = _ctx("toric")
    z = ctx.zero()
    assert is_unit(z.t, z.gamma)
    assert logical_class(z.t, z.gamma).is_zero()


@pytest.mark.parametrize("name", ["toric", "torus"])
def test_cocycle_loops_are_units(name):
    ctx = _ctx(name)
    for h in ctx.generators():
        assert is_unit(h.t, h.gamma)
        assert logical_class(h.t, h.gamma) == h


def test_single_edge_configuration_is_not_unit():
    ctx = _ctx("toric")
    K, cc = ctx.complex, ctx.coeffs
    t = localized_pmap(K, cc, ["0", "1"], [1], 0)
    gamma = GradedHomGroup(K, cc, 0, dual=True).zero()
    assert not ctx.delta0(t).is_zero()
    assert not is_unit(t, gamma)
    with pytest.raises(NotInCommutantError):
        logical_class(t, gamma)


def test_toric_generators_are_two_loops():
    ctx = _ctx("toric")
    assert ctx.cohomology.orders == [2, 2] and ctx.homology.orders == [2, 2]
    xs = ctx.generators()[:2]
    assert {tuple(h.t_class) for h in xs} == {(1, 0), (0, 1)}


@pytest.mark.parametrize("name", ["toric", "torus", "rp2", "qudit-circle", "two-points"])
def test_representative_independence(name):
    """Pairing values survive 100 random shifts by (delta^-1 s, delta_1 nu)."""
    ctx = _ctx(name)
    rng = np.random.default_rng(17)
    gens = ctx.generators()
    dm, d1 = ctx.delta_m1, ctx.chain1
    base = [[pairing(a, b) for b in gens] for a in gens]
    for _ in range(100):
        shifted = []
        for h in gens:
            t = h.t + dm(dm.source.random(rng))
            g = h.gamma + d1(d1.source.random(rng))
            assert logical_class(t, g) == h
            shifted.append((t, g))
        vals = [[evaluate_pairing(ga, tb) for tb, _ in shifted] for _, ga in shifted]
        assert vals == base


@pytest.mark.parametrize("name", ["toric", "qudit-circle", "rp2"])
def test_bi_additivity_and_cocycle(name):
    ctx = _ctx(name)
    classes = _all_classes(ctx)
    rng = np.random.default_rng(2)
    picks = [classes[i] for i in rng.integers(len(classes), size=12)]
    for a, b, c in itertools.product(picks[:4], picks[4:8], picks[8:]):
        assert pairing(a + b, c) == pairing(a, c) + pairing(b, c)
        assert pairing(a, b + c) == pairing(a, b) + pairing(a, c)
        assert pairing(a, b) + pairing(a + b, c) == pairing(a, b + c) + pairing(b, c)


def test_pairing_and_commutator_basics():
    ctx = _ctx("qudit-circle")
    zero = ctx.zero()
    for h in _all_classes(ctx):
        assert pairing(h, zero) == PhaseQZ()
        assert commutator(h, h) == 2 * pairing(h, h)
        assert weyl_commutator(h, h) == PhaseQZ()
    ctx2 = _ctx("toric")
    for h in _all_classes(ctx2):
        assert commutator(h, h) == PhaseQZ()


def test_toric_conjugate_pairs_anticommute():
    ctx = _ctx("toric")
    xs = ctx.generators()[:2]
    zs = conjugate_partners(ctx)
    assert zs is not None
    for i, z in enumerate(zs):
        for k, x in enumerate(xs):
            assert commutator(z, x) == (PhaseQZ(1, 2) if i == k else PhaseQZ())
        for z2 in zs:
            assert commutator(z, z2) == PhaseQZ()


def test_mixed_context_rejected():
    with pytest.raises(ValueError):
        pairing(_ctx("toric").zero(), _ctx("torus").zero())


def _brute_radical_order(ctx) -> int:
    classes = _all_classes(ctx)
    return sum(all(not commutator(h, g) for g in classes) for h in classes)


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_radical_matches_definition(name):
    ctx = _ctx(name)
    if ctx.H_order > 256:
        pytest.skip("H too large to enumerate pairs")
    I, gens = commutator_subgroup(ctx)
    assert I.order == _brute_radical_order(ctx)
    for g in gens:
        assert all(not commutator(g, h) for h in _all_classes(ctx))


def test_radical_for_degenerate_form():
    """A hand-built antisymmetric form with a radical: only reachable through the kernel routine."""
    from haqdm.finab import kernel_of

    # H = Z2^3 with [[e0, e1]] = 1/2 and e2 central
    omega = [[0, 1, 0], [1, 0, 0], [0, 0, 0]]
    M = np.array([[omega[i][j] for i in range(3)] for j in range(3)], dtype=object)
    assert kernel_of(M, [2, 2, 2], [2, 2, 2]).group == FinAbGroup((2,))


@pytest.mark.parametrize(
    "name,H,I,c,q,ground",
    [
        ("toric", 16, 1, 0, 2, 4),
        ("torus", 16, 1, 0, 2, 4),
        ("sphere", 1, 1, 0, 0, 1),
        ("circle", 4, 1, 0, 1, 2),
        ("two-points", 16, 1, 0, 2, 4),
        ("rp2", 4, 1, 0, 1, 2),
        ("qudit-circle", 16, 1, 0, 2, 4),
        ("higher-triangle", 1, 1, 0, 0, 1),
        ("interval", 1, 1, 0, 0, 1),
    ],
)
def test_logical_report(name, H, I, c, q, ground):
    rep = logical_report(_ctx(name))
    assert (rep.H_order, rep.X_c_size, rep.c, rep.q, rep.ground_dim) == (H, I, c, q, ground)
    assert isinstance(rep.c, Fraction) and isinstance(rep.q, Fraction)
    assert not rep.non_qubit_dimension
    assert rep.h_q_dim is not None and rep.H_order == rep.X_c_size * rep.h_q_dim**2
    assert rep.h_q_dim == _ctx(name).cohomology.order
    assert all(row["consistent"] for row in rep.weyl_table)
    doc = rep.to_json()
    assert doc["c"] == c and doc["q"] == q and doc["I_order"] == I


def test_qutrit_data_is_flagged():
    K = catalog("circle").complex
    rep = logical_report(LogicalContext.of(K, CoefficientComplex({1: FinAbGroup((3,))})))
    assert rep.H_order == 9 and rep.h_q_dim == 3
    assert rep.non_qubit_dimension
    assert isinstance(rep.q, float) and math.isclose(rep.q, math.log2(3))
    assert rep.c == 0
    assert any("non-qubit" in f for f in rep.flags)


def test_pairing_matrix_shape():
    rep = logical_report(_ctx("toric"))
    assert len(rep.pairing_matrix) == 2 and all(len(r) == 2 for r in rep.pairing_matrix)
    # perfect pairing: the Z2 matrix is invertible
    M = np.array([[int(v.fraction * 2) for v in row] for row in rep.pairing_matrix])
    assert round(abs(np.linalg.det(M))) % 2 == 1
