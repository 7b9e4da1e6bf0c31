import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from haqdm.catalog import CATALOG_NAMES, catalog
from haqdm.finab import PhaseQZ
from haqdm.maps import (
    DualPMap,
    GradedHomGroup,
    InvalidAssignmentError,
    PMap,
    assemble_delta_chain,
    assemble_delta_cochain,
    duality_check,
    evaluate_pairing,
    localized_dual,
    localized_pmap,
    pairing_batch,
)
from oracles import chain_delta, cochain_delta


def _entry(name):
    e = catalog(name)
    return e.complex, e.coefficients


@pytest.mark.parametrize("name", CATALOG_NAMES)
@pytest.mark.parametrize("p", [-2, -1, 0, 1])
def test_delta_squares_to_zero(name, p):
    K, cc = _entry(name)
    d1, d0 = assemble_delta_cochain(K, cc, p + 1), assemble_delta_cochain(K, cc, p)
    assert not d1.compose(d0).any()
    c1, c0 = assemble_delta_chain(K, cc, p), assemble_delta_chain(K, cc, p + 1)
    assert not c1.compose(c0).any()


@pytest.mark.parametrize("name", ["torus", "higher-triangle", "interval", "qudit-circle", "rp2"])
@pytest.mark.parametrize("p", [-1, 0, 1])
def test_assembled_delta_matches_simplexwise_formula(name, p):
    K, cc = _entry(name)
    rng = np.random.default_rng(7)
    d = assemble_delta_cochain(K, cc, p)
    c = assemble_delta_chain(K, cc, p + 1)
    for _ in range(25):
        t = d.source.random(rng)
        assert d(t).coords == cochain_delta(K, cc, p, t.coords)
        g = c.source.random(rng)
        assert c(g).coords == chain_delta(K, cc, p + 1, g.coords)


@pytest.mark.parametrize("name", CATALOG_NAMES)
@pytest.mark.parametrize("p", [-1, 0])
def test_duality_lemma_random(name, p):
    K, cc = _entry(name)
    rng = np.random.default_rng(11)
    src, dst = GradedHomGroup(K, cc, p), GradedHomGroup(K, cc, p + 1, dual=True)
    assert all(duality_check(dst.random(rng), src.random(rng), p) for _ in range(100))


def test_alternate_sign_breaks_duality_when_2d_nonzero():
    """The opposite coefficient sign in delta_q fails the pairing identity on torus data with 2 d^G != 0."""
    K, cc = _entry("torus")
    rng = np.random.default_rng(3)
    alt = assemble_delta_chain(K, cc, 0, sign="alternate")
    d = assemble_delta_cochain(K, cc, -1)
    src, dst = d.source, alt.source
    fails = 0
    for _ in range(50):
        t, g = src.random(rng), dst.random(rng)
        fails += evaluate_pairing(g, d(t)) != evaluate_pairing(alt(g), t)
    assert fails > 0


def test_alternate_sign_agrees_for_z2():
    K, cc = _entry("higher-triangle")
    for p in (0, 1, 2):
        a = assemble_delta_chain(K, cc, p)
        b = assemble_delta_chain(K, cc, p, sign="alternate")
        assert (a.matrix == b.matrix).all()


def test_batch_application_matches_single():
    K, cc = _entry("torus")
    d = assemble_delta_cochain(K, cc, 0)
    rng = np.random.default_rng(0)
    elems = [d.source.random(rng) for _ in range(10)]
    X = np.array([e.coords for e in elems])
    Y = d.apply_batch(X)
    assert [tuple(int(v) for v in row) for row in Y] == [d(e).coords for e in elems]


def test_pairing_batch_matches_exact():
    K, cc = _entry("qudit-circle")
    sp = GradedHomGroup(K, cc, 0)
    dsp = GradedHomGroup(K, cc, 0, dual=True)
    rng = np.random.default_rng(1)
    gs = [dsp.random(rng) for _ in range(8)]
    ts = [sp.random(rng) for _ in range(8)]
    L, nums = pairing_batch(sp, np.array([g.coords for g in gs]), np.array([t.coords for t in ts]))
    assert [PhaseQZ(int(n), L) for n in nums] == [evaluate_pairing(g, t) for g, t in zip(gs, ts)]


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**31))
def test_pairing_bi_additive(seed):
    K, cc = _entry("torus")
    rng = np.random.default_rng(seed)
    sp, dsp = GradedHomGroup(K, cc, 0), GradedHomGroup(K, cc, 0, dual=True)
    g1, g2, t1, t2 = dsp.random(rng), dsp.random(rng), sp.random(rng), sp.random(rng)
    assert evaluate_pairing(g1 + g2, t1) == evaluate_pairing(g1, t1) + evaluate_pairing(g2, t1)
    assert evaluate_pairing(g1, t1 + t2) == evaluate_pairing(g1, t1) + evaluate_pairing(g1, t2)


def test_localized_maps():
    K, cc = _entry("torus")
    t = localized_pmap(K, cc, ["0", "1"], [5], 0)
    assert isinstance(t, PMap) and t.support() == [(1, K.index(["0", "1"])[1])]
    assert localized_pmap(K, cc, ["1", "0"], [5], 0) == -t
    gamma = localized_dual(K, cc, ["0", "1", "3"], [1], 1)  # character of G_1 = Z12 on a face
    assert isinstance(gamma, DualPMap) and gamma.p == 1
    with pytest.raises(InvalidAssignmentError):
        localized_pmap(K, cc, ["0", "1"], [1, 1], 0)


def test_from_values_and_decompose():
    K, cc = _entry("circle")
    sp = GradedHomGroup(K, cc, 0)
    t = sp.from_values({("b", "a"): 1, ("b", "c"): 1})
    assert t.value(1, 0) == (1,)  # sign flip is invisible in Z2
    parts = t.decompose()
    assert len(parts) == 2 and parts[0] + parts[1] == t
    assert t.to_json() == [{"simplex": ["a", "b"], "value": [1]}, {"simplex": ["b", "c"], "value": [1]}]


def test_degree_mismatch_rejected():
    K, cc = _entry("circle")
    g = GradedHomGroup(K, cc, 1, dual=True).zero()
    t = GradedHomGroup(K, cc, 0).zero()
    with pytest.raises(InvalidAssignmentError):
        evaluate_pairing(g, t)
    with pytest.raises(InvalidAssignmentError):
        duality_check(g, t, 1)
