import pytest

from haqdm.catalog import CATALOG_NAMES, UnknownInstanceError, catalog
from haqdm.coeffs import coefficient_homology, validate
from haqdm.ed import ground_space_dim_exact
from haqdm.finab import FinAbGroup
from haqdm.homology import brown_check, brown_cohomology, simplicial_homology
from haqdm.logical import LogicalContext, logical_report


def test_names():
    assert set(CATALOG_NAMES) == {
        "interval", "circle", "two-points", "sphere", "torus", "rp2", "higher-triangle", "toric", "qudit-circle",
    }


def test_unknown_name_lists_valid_names():
    with pytest.raises(UnknownInstanceError) as exc:
        catalog("klein")
    assert "toric" in str(exc.value) and "klein" in str(exc.value)


def test_entries_are_cached():
    assert catalog("toric") is catalog("toric")


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_entry_validates(name):
    e = catalog(name)
    assert validate(e.coefficients, e.complex.dimension) == []
    assert all(isinstance(prov, str) and prov for _, prov in e.expected.values())


def _computed(e, key):
    K, cc = e.complex, e.coefficients
    if key == "homology_G":
        return {j: coefficient_homology(cc, j) for j in range(K.dimension + 1)}
    if key == "H1_integral":
        return simplicial_homology(K, 1)
    if key == "brown_right_trivial":
        return all(brown_check(K, cc, p).right.is_trivial for p in (-1, 0, 1))
    if key == "H0_order":
        return brown_cohomology(K, cc, 0).order
    if key == "ground_dim":
        return ground_space_dim_exact(K, cc)
    rep = logical_report(LogicalContext.of(K, cc))
    return {"H_order": rep.H_order, "I_order": rep.X_c_size, "c": rep.c, "q": rep.q}[key]


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_expected_values_reproduced(name):
    e = catalog(name)
    for key, (value, _) in e.expected.items():
        got = _computed(e, key)
        if isinstance(value, dict):
            assert {j: got[j] for j in value} == value, key
        else:
            assert got == value, key


def test_toric_expectations():
    e = catalog("toric")
    assert {k: v for k, (v, _) in e.expected.items() if k in ("q", "c", "ground_dim")} == {"q": 2, "c": 0, "ground_dim": 4}
    assert e.complex.sizes == [7, 21, 14]


def test_document_export():
    doc = catalog("higher-triangle").to_document()
    assert doc["dimension"] == 2 and doc["facets"] == [["a", "b", "c"]]
    assert doc["groups"] == {"1": [2], "2": [2]} and doc["boundaries"] == {"2": [[1]]}
    assert isinstance(catalog("sphere").expected["ground_dim"][0], int)
    assert catalog("rp2").expected["H1_integral"][0] == FinAbGroup((2,))
