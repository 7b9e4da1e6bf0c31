import pytest

from haqdm.catalog import catalog
from haqdm.coeffs import CoefficientComplex, coefficient_homology, dualize, validate
from haqdm.finab import FinAbGroup, GroupMorphism

Z2, Z3, Z4, Z12 = (FinAbGroup((d,)) for d in (2, 3, 4, 12))


def _brute_homology_order(cc: CoefficientComplex, j: int) -> int:
    G = cc.group(j)
    out, inc = cc.boundary(j), cc.boundary(j + 1)
    ker = sum(not any(out(g)) for g in G.elements())
    im = len({inc(g) for g in cc.group(j + 1).elements()})
    return ker // im


def test_validate_accepts_catalog_torus():
    cc = catalog("torus").coefficients
    assert validate(cc, 2) == []


def test_validate_reports_nonzero_composite():
    cc = CoefficientComplex({0: Z2, 1: Z2, 2: Z2}, {1: GroupMorphism.identity(Z2), 2: GroupMorphism.identity(Z2)})
    problems = validate(cc, 2)
    assert [v.level for v in problems] == [1]
    assert "not zero" in problems[0].message


def test_validate_reports_levels_out_of_range():
    cc = CoefficientComplex({3: Z2})
    assert [v.level for v in validate(cc, 2)] == [3]
    assert validate(cc, 3) == []


def test_boundary_shape_checked():
    with pytest.raises(ValueError):
        CoefficientComplex({0: Z2, 1: Z4}, {1: GroupMorphism.identity(Z2)})


@pytest.mark.parametrize(
    "levels,maps,expected",
    [
        ({0: Z3, 1: Z12, 2: Z2}, {2: [[6]], 1: [[1]]}, {0: (), 1: (2,), 2: ()}),
        ({1: Z2, 2: Z2}, {2: [[1]]}, {0: (), 1: (), 2: ()}),
        ({0: Z3, 1: Z3}, {1: [[1]]}, {0: (), 1: ()}),
        ({0: Z2, 1: Z4}, {1: [[1]]}, {0: (), 1: (2,)}),
        ({1: Z2}, {}, {0: (), 1: (2,)}),
    ],
)
def test_coefficient_homology_by_enumeration(levels, maps, expected):
    boundaries = {j: GroupMorphism(levels[j], levels[j - 1], m) for j, m in maps.items()}
    cc = CoefficientComplex(levels, boundaries)
    for j, factors in expected.items():
        H = coefficient_homology(cc, j)
        assert H == FinAbGroup.from_orders(factors)
        assert H.order == _brute_homology_order(cc, j)


def test_trivial_levels_dropped_and_flatness():
    cc = CoefficientComplex({0: FinAbGroup(), 1: Z2})
    assert list(cc.levels) == [1]
    assert cc.is_flat() and cc.top == 1
    assert not catalog("higher-triangle").coefficients.is_flat()


def test_dualize_is_involutive():
    cc = catalog("torus").coefficients
    d = dualize(cc)
    assert d.dual
    assert (d.boundary(1).source, d.boundary(1).target) == (Z3, Z12)
    dd = dualize(d)
    assert not dd.dual
    for j, f in cc.boundaries.items():
        assert dd.boundary(j).matrix.tolist() == f.matrix.tolist()
    with pytest.raises(ValueError):
        coefficient_homology(d, 1)


def test_to_json_round_trip_fields():
    doc = catalog("torus").coefficients.to_json()
    assert doc == {"groups": {"0": [3], "1": [12], "2": [2]}, "boundaries": {"1": [[1]], "2": [[6]]}}
