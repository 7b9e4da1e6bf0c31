import json
import subprocess
import sys

import pytest

from haqdm.catalog import CATALOG_NAMES, catalog
from haqdm.cli import InvalidInputError, parse_instance, run


def _run(*argv):
    code, text = run(list(argv))
    return code, json.loads(text)


@pytest.fixture(autouse=True)
def _quiet(capsys):
    yield
    capsys.readouterr()


def test_logical_toric():
    code, rep = _run("logical", "--catalog", "toric")
    assert code == 0
    body = rep["logical"]
    assert (body["H_order"], body["I_order"], body["c"], body["q"], body["ground_dim"]) == (16, 1, 0, 2, 4)
    assert len(rep["instance"]["sha256"]) == 64


def test_brown_check_higher_triangle():
    code, rep = _run("brown-check", "--catalog", "higher-triangle", "--p", "0")
    assert code == 0 and rep["status"] == "PASS"
    check = rep["brown_check"]["checks"][0]
    assert check["left_str"] == check["right_str"] == "0"


def test_uct_variants():
    code, rep = _run("uct-check", "--catalog", "rp2", "--coeff", "2")
    assert code == 0 and rep["uct_check"]["coefficient_group"] == "Z2"
    assert [c["ext"] for c in rep["uct_check"]["checks"]] == ["0", "0", "Z2"]
    code, rep = _run("uct-check", "--catalog", "torus", "--coeff-level", "1")
    assert code == 0 and rep["uct_check"]["coefficient_group"] == "Z2"


def test_homology_command():
    code, rep = _run("homology", "--catalog", "rp2", "--p", "0")
    assert code == 0
    assert rep["homology"]["integral"] == {"0": "Z", "1": "Z2", "2": "0"}
    assert rep["homology"]["cohomology"]["0"]["order"] == 2


def test_ed_verify_circle():
    code, rep = _run("ed-verify", "--catalog", "circle", "--samples", "50")
    assert code == 0
    body = rep["ed_verify"]
    assert body["ground_dim_exact"] == body["ground_dim_float"]["ground_dim"] == 2
    assert body["duality"]["failures"] == 0


def test_ed_verify_over_cap_skips_float():
    code, rep = _run("ed-verify", "--catalog", "toric", "--samples", "20")
    assert code == 0
    body = rep["ed_verify"]
    assert "skipped" in body["ground_dim_float"]
    assert body["logical_action"]["status"] == "PASS"


def test_catalog_listing_and_export(tmp_path):
    code, rep = _run("catalog")
    assert [i["name"] for i in rep["catalog"]["instances"]] == list(CATALOG_NAMES)
    code, rep = _run("catalog", "--catalog", "toric")
    assert rep["catalog"]["expected"]["q"]["value"] == 2


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_round_trip(tmp_path, name):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps(catalog(name).to_document()))
    _, a = _run("logical", "--catalog", name)
    _, b = _run("logical", "--input", str(path))
    assert a["logical"] == b["logical"]
    assert a["instance"]["sha256"] == b["instance"]["sha256"]


def test_invalid_boundary_composite(tmp_path):
    bad = {
        "dimension": 2,
        "facets": [["a", "b", "c"]],
        "groups": {"0": [2], "1": [2], "2": [2]},
        "boundaries": {"1": [[1]], "2": [[1]]},
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(bad))
    code, rep = _run("validate", "--input", str(path))
    assert code == 2 and rep["status"] == "INVALID"
    assert rep["errors"] == ["$.boundaries.1: boundary composite d_1 o d_2 is not zero"]


@pytest.mark.parametrize(
    "doc,fragment",
    [
        ([], "$: expected a JSON object"),
        ({"dimension": -1, "facets": [["a"]]}, "$.dimension"),
        ({"dimension": 1, "facets": [["a", "b", "c"]]}, "$.facets[0]"),
        ({"dimension": 1, "facets": [["a", "b"]], "groups": {"1": [4, 2]}}, "$.groups.1"),
        ({"dimension": 1, "facets": [["a", "b"]], "groups": {"5": [2]}}, "$.groups.5"),
        ({"dimension": 1, "facets": [["a", "b"]], "groups": {"0": [2], "1": [3]}, "boundaries": {"1": [[1]]}}, "$.boundaries.1"),
        ({"dimension": 1, "facets": [["a", "b"]], "groups": {"0": [2], "1": [2]}, "boundaries": {"1": [[1, 0]]}}, "$.boundaries.1"),
        ({"dimension": 1, "facets": [["a", "a"]]}, "$.facets"),
    ],
)
def test_parse_errors_are_path_addressed(doc, fragment):
    with pytest.raises(InvalidInputError) as exc:
        parse_instance(doc)
    assert any(e.startswith(fragment) for e in exc.value.errors), exc.value.errors


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"dimension": 1,\n "facets": [}')
    code, rep = _run("validate", "--input", str(path))
    assert code == 2 and rep["errors"][0].startswith(f"{path}:2:")


def test_unknown_catalog_and_missing_source():
    code, rep = _run("logical", "--catalog", "nope")
    assert code == 2 and "valid names" in rep["errors"][0]
    code, rep = _run("logical")
    assert code == 2


def test_failing_check_exits_one(monkeypatch):
    import haqdm.cli as cli
    from haqdm.homology import BrownReport
    from haqdm.finab import FinAbGroup

    monkeypatch.setattr(cli, "brown_check", lambda K, cc, p: BrownReport(p, FinAbGroup((2,)), {}, FinAbGroup()))
    code, rep = _run("brown-check", "--catalog", "circle", "--p", "0")
    assert code == 1 and rep["status"] == "FAIL"


def test_output_file_and_determinism(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for path in (a, b):
        code, _ = run(["ed-verify", "--catalog", "qudit-circle", "--seed", "5", "--samples", "30", "--output", str(path)])
        assert code == 0
    assert a.read_bytes() == b.read_bytes()
    assert json.loads(a.read_text())["seed"] == 5


def test_timings_opt_in():
    _, rep = _run("logical", "--catalog", "circle")
    assert "timings" not in rep
    _, rep = _run("logical", "--catalog", "circle", "--timings")
    assert rep["timings"]["total_seconds"] >= 0


def test_module_entry_point():
    out = subprocess.run(
        [sys.executable, "-m", "haqdm", "logical", "--catalog", "sphere"], capture_output=True, text=True, check=False
    )
    assert out.returncode == 0
    assert json.loads(out.stdout)["logical"]["ground_dim"] == 1
