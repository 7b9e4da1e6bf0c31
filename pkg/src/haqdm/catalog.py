"""Named built-in instances: a complex plus coefficient data plus known invariants."""

from __future__ import annotations

from dataclasses import dataclass, field

from .coeffs import CoefficientComplex, validate
from .complex import SimplicialComplex, build_complex
from .finab import FinAbGroup, GroupMorphism

__all__ = ["CATALOG_NAMES", "CatalogEntry", "UnknownInstanceError", "catalog"]


class UnknownInstanceError(KeyError):
    def __init__(self, name: str):
        super().__init__(f"unknown catalog instance {name!r}; valid names: {', '.join(CATALOG_NAMES)}")
        self.name = name


@dataclass(frozen=True, eq=False)
class CatalogEntry:
    name: str
    complex: SimplicialComplex
    coefficients: CoefficientComplex
    description: str = ""
    # invariant -> (value, provenance)
    expected: dict = field(default_factory=dict)

    def to_document(self) -> dict:
        doc = {"dimension": self.complex.dimension, "facets": [list(f) for f in self.complex.facets]}
        doc.update(self.coefficients.to_json())
        return doc


# 7-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7
TORUS_FACETS = [[str(i), str((i + 1) % 7), str((i + 3) % 7)] for i in range(7)] + [
    [str(i), str((i + 2) % 7), str((i + 3) % 7)] for i in range(7)
]

# 6-vertex projective plane (hemi-icosahedron)
RP2_FACETS = [
    ["0", "1", "2"], ["0", "2", "3"], ["0", "3", "4"], ["0", "4", "5"], ["0", "5", "1"],
    ["1", "2", "4"], ["2", "3", "5"], ["3", "4", "1"], ["4", "5", "2"], ["5", "1", "3"],
]

SPHERE_FACETS = [["a", "b", "c"], ["a", "b", "d"], ["a", "c", "d"], ["b", "c", "d"]]
CIRCLE_FACETS = [["a", "b"], ["b", "c"], ["a", "c"]]

Z2, Z3, Z4 = FinAbGroup((2,)), FinAbGroup((3,)), FinAbGroup((4,))


def _levels(**groups: FinAbGroup) -> dict[int, FinAbGroup]:
    return {int(k[1:]): g for k, g in groups.items()}


def _build(name: str) -> CatalogEntry:
    if name == "interval":
        K = build_complex([["v0", "v1"]])
        cc = CoefficientComplex(_levels(G0=Z3, G1=Z3), {1: GroupMorphism.identity(Z3)})
        expected = {"ground_dim": (1, "DERIVED: all H_j(G) vanish")}
        return CatalogEntry(name, K, cc, "single edge, G1 = G0 = Z3 with identity boundary", expected)
    if name == "circle":
        K = build_complex(CIRCLE_FACETS)
        cc = CoefficientComplex(_levels(G1=Z2))
        expected = {
            "H0_order": (2, "DERIVED: H^1(S^1; Z2) by brute force over 2^3 cochains"),
            "H_order": (4, "DERIVED: H^0 and H_0 both Z2"),
            "c": (0, "DERIVED"),
            "q": (1, "DERIVED"),
            "ground_dim": (2, "DERIVED: 2^3 / (|Im delta^-1| |Im delta_1|) = 8 / (4 * 1)"),
        }
        return CatalogEntry(name, K, cc, "hollow triangle, G1 = Z2", expected)
    if name == "two-points":
        K = build_complex([["p"], ["q"]])
        cc = CoefficientComplex(_levels(G0=Z2))
        expected = {
            "H0_order": (4, "DERIVED: delta^0 = delta^-1 = 0"),
            "H_order": (16, "DERIVED"),
            "I_order": (1, "DERIVED: full-rank Z2 pairing"),
            "ground_dim": (4, "DERIVED"),
        }
        return CatalogEntry(name, K, cc, "two isolated vertices, G0 = Z2", expected)
    if name == "sphere":
        K = build_complex(SPHERE_FACETS)
        cc = CoefficientComplex(_levels(G1=Z2))
        expected = {
            "H0_order": (1, "DERIVED: H^1(S^2; Z2) = 0"),
            "H_order": (1, "DERIVED"),
            "c": (0, "DERIVED"),
            "q": (0, "DERIVED"),
            "ground_dim": (1, "DERIVED: H^1(S^2; Z2) = 0 via SNF"),
        }
        return CatalogEntry(name, K, cc, "tetrahedron boundary, G1 = Z2", expected)
    if name == "torus":
        K = build_complex(TORUS_FACETS)
        z12 = FinAbGroup((12,))
        d2 = GroupMorphism(Z2, z12, [[6]])
        d1 = GroupMorphism(z12, Z3, [[1]])
        cc = CoefficientComplex(_levels(G0=Z3, G1=z12, G2=Z2), {2: d2, 1: d1})
        expected = {
            "homology_G": (
                {2: FinAbGroup(), 1: Z2, 0: FinAbGroup()},
                "DERIVED: Z2 -(x6)-> Z12 -(mod 3)-> Z3 by enumeration",
            ),
        }
        return CatalogEntry(name, K, cc, "7-vertex torus, G2 = Z2 -(x6)-> G1 = Z12 -(mod 3)-> G0 = Z3", expected)
    if name == "rp2":
        K = build_complex(RP2_FACETS)
        cc = CoefficientComplex(_levels(G1=Z2))
        expected = {"H1_integral": (Z2, "DERIVED: SNF of the 6-vertex RP^2 boundary matrices")}
        return CatalogEntry(name, K, cc, "6-vertex projective plane, G1 = Z2", expected)
    if name == "higher-triangle":
        K = build_complex([["a", "b", "c"]])
        cc = CoefficientComplex(_levels(G1=Z2, G2=Z2), {2: GroupMorphism.identity(Z2)})
        expected = {
            "homology_G": ({0: FinAbGroup(), 1: FinAbGroup(), 2: FinAbGroup()}, "DERIVED: identity boundary kills homology"),
            "brown_right_trivial": (True, "DERIVED"),
        }
        return CatalogEntry(name, K, cc, "solid triangle, G2 = G1 = Z2 with identity boundary", expected)
    if name == "toric":
        K = build_complex(TORUS_FACETS)
        cc = CoefficientComplex(_levels(G1=Z2))
        expected = {
            "H_order": (16, "REFERENCE: toric code, fourfold degenerate ground state manifold"),
            "I_order": (1, "REFERENCE"),
            "c": (0, "REFERENCE"),
            "q": (2, "REFERENCE"),
            "ground_dim": (4, "REFERENCE: fourfold degenerate ground state manifold"),
        }
        return CatalogEntry(name, K, cc, "7-vertex torus, G1 = Z2 (toric code)", expected)
    if name == "qudit-circle":
        K = build_complex(CIRCLE_FACETS)
        cc = CoefficientComplex(_levels(G1=Z4))
        expected = {
            "H0_order": (4, "DERIVED: H^1(S^1; Z4) = Z4"),
            "ground_dim": (4, "DERIVED"),
            "q": (2, "DERIVED: |H| = 16"),
        }
        return CatalogEntry(name, K, cc, "hollow triangle, G1 = Z4", expected)
    raise UnknownInstanceError(name)


CATALOG_NAMES = (
    "interval",
    "circle",
    "two-points",
    "sphere",
    "torus",
    "rp2",
    "higher-triangle",
    "toric",
    "qudit-circle",
)

_CACHE: dict[str, CatalogEntry] = {}


def catalog(name: str) -> CatalogEntry:
    """Return the validated built-in instance ``name`` (cached, immutable)."""
    if name not in CATALOG_NAMES:
        raise UnknownInstanceError(name)
    if name not in _CACHE:
        entry = _build(name)
        problems = validate(entry.coefficients, entry.complex.dimension)
        if problems:  # pragma: no cover - catalog data is fixed
            raise AssertionError(f"catalog entry {name} is invalid: {problems}")
        _CACHE[name] = entry
    return _CACHE[name]
