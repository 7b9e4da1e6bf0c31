"""Independent brute-force oracles shared by the tests.

Nothing here touches Smith normal form or the assembled delta matrices:
differentials are evaluated simplex by simplex from the defining formulas
and (co)homology orders are obtained by enumerating every element.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from haqdm.maps import GradedHomGroup

ENUM_LIMIT = 4096


def elements(orders):
    return itertools.product(*(range(d) for d in orders))


def _values(space: GradedHomGroup, coords) -> dict:
    K = space.complex
    return {(n, i): tuple(coords[space.slot(n, i)]) for n in range(K.dimension + 1) for i in range(K.size(n))}


def _flatten(space: GradedHomGroup, values: dict) -> tuple:
    out = [0] * space.size
    for (n, i), v in values.items():
        sl = space.slot(n, i)
        out[sl] = v
    return tuple(int(a) % d for a, d in zip(out, space.orders))


def cochain_delta(K, cc, p: int, coords) -> tuple:
    """``(delta^p t)_n(x) = sum_faces eps t(face) - (-1)^p d^G(t(x))``, evaluated per simplex."""
    src, tgt = GradedHomGroup(K, cc, p), GradedHomGroup(K, cc, p + 1)
    t = _values(src, coords)
    out = {}
    for n in range(K.dimension + 1):
        G = tgt.level(n)
        for i in range(K.size(n)):
            acc = [0] * G.ngens
            for r, eps in K.faces(n, i):
                acc = [a + eps * b for a, b in zip(acc, t[(n - 1, r)])]
            if src.level(n).ngens and G.ngens:
                image = cc.boundary(n - p)(t[(n, i)])
                acc = [a - (-1) ** p * b for a, b in zip(acc, image)]
            out[(n, i)] = tuple(acc)
    return _flatten(tgt, out)


def _pull_back(alpha, G_src, f) -> list[int]:
    """Exponents of the character ``alpha o f`` on ``G_src``."""
    exps = []
    for k, d in enumerate(G_src.invariant_factors):
        e = [int(j == k) for j in range(G_src.ngens)]
        img = f(e)
        val = sum(Fraction(a * x, m) for a, x, m in zip(alpha, img, f.target.invariant_factors))
        exps.append(int(val * d) % d)
    return exps


def chain_delta(K, cc, p: int, coords) -> tuple:
    """``(delta_p g)_n(x) = sum_cofaces eps g(z) + (-1)^p g(x) o d^G``, evaluated per simplex."""
    src, tgt = GradedHomGroup(K, cc, p, dual=True), GradedHomGroup(K, cc, p - 1, dual=True)
    g = _values(src, coords)
    out = {}
    for n in range(K.dimension + 1):
        G = tgt.level(n)
        for i in range(K.size(n)):
            acc = [0] * G.ngens
            for c, eps in K.cofaces(n, i):
                acc = [a + eps * b for a, b in zip(acc, g[(n + 1, c)])]
            if src.level(n).ngens and G.ngens:
                pulled = _pull_back(g[(n, i)], G, cc.boundary(n + 1 - p))
                acc = [a + (-1) ** p * b for a, b in zip(acc, pulled)]
            out[(n, i)] = tuple(acc)
    return _flatten(tgt, out)


def cohomology_order(K, cc, p: int) -> int:
    """``|Ker delta^p| / |Im delta^{p-1}|`` by full enumeration."""
    src, prev = GradedHomGroup(K, cc, p), GradedHomGroup(K, cc, p - 1)
    assert src.order <= ENUM_LIMIT and prev.order <= ENUM_LIMIT
    zero = (0,) * GradedHomGroup(K, cc, p + 1).size
    ker = sum(cochain_delta(K, cc, p, t) == zero for t in elements(src.orders))
    im = len({cochain_delta(K, cc, p - 1, s) for s in elements(prev.orders)})
    assert ker % im == 0
    return ker // im


def homology_order(K, cc, p: int) -> int:
    """``|Ker delta_p| / |Im delta_{p+1}|`` by full enumeration."""
    src, prev = GradedHomGroup(K, cc, p, dual=True), GradedHomGroup(K, cc, p + 1, dual=True)
    assert src.order <= ENUM_LIMIT and prev.order <= ENUM_LIMIT
    zero = (0,) * GradedHomGroup(K, cc, p - 1, dual=True).size
    ker = sum(chain_delta(K, cc, p, g) == zero for g in elements(src.orders))
    im = len({chain_delta(K, cc, p + 1, s) for s in elements(prev.orders)})
    assert ker % im == 0
    return ker // im


def small_enough(K, cc, p: int) -> bool:
    return all(GradedHomGroup(K, cc, q).order <= ENUM_LIMIT for q in (p - 1, p, p + 1))
