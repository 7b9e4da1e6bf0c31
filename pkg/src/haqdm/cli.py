"""Command-line interface: ``haqdm <command> [--catalog NAME | --input PATH] ...``.

Exit codes: 0 success, 1 a check failed, 2 invalid input.
"""

from __future__ import annotations

import argparse
import hashlib
import itertools
import json
import sys
import time
from typing import Any

import numpy as np

from . import __version__
from .catalog import CATALOG_NAMES, UnknownInstanceError, catalog
from .coeffs import CoefficientComplex, coefficient_homology, validate
from .complex import InvalidFacetError, SimplicialComplex, build_complex
from .ed import (
    DimensionCapError,
    all_projectors,
    commuting_projector_check,
    ground_space_dim_exact,
    ground_space_float_report,
    group_law_check,
    logical_action_check,
    resolve_max_dim,
    weyl_relation_check,
)
from .finab import FinAbGroup, GroupMorphism, MorphismError
from .homology import brown_check, brown_cohomology, brown_homology, simplicial_homology, uct_check
from .logical import LogicalContext, logical_report
from .maps import GradedHomGroup, duality_check

EXIT_OK, EXIT_FAIL, EXIT_INVALID = 0, 1, 2


class InvalidInputError(ValueError):
    """A malformed instance document; ``errors`` holds path-addressed messages."""

    def __init__(self, errors: list[str]):
        super().__init__("; ".join(errors))
        self.errors = errors


################################################################################
# instance documents


def _is_int(v) -> bool:
    return isinstance(v, int) and not isinstance(v, bool)


def parse_instance(doc: Any) -> tuple[SimplicialComplex, CoefficientComplex]:
    """Turn an instance document into a validated (complex, coefficients) pair."""
    errors: list[str] = []
    if not isinstance(doc, dict):
        raise InvalidInputError(["$: expected a JSON object"])
    N = doc.get("dimension")
    if not _is_int(N) or N < 0:
        errors.append("$.dimension: expected a non-negative integer")
        N = None
    facets = doc.get("facets")
    if not isinstance(facets, list) or not facets:
        errors.append("$.facets: expected a non-empty list of vertex lists")
        facets = []
    for i, f in enumerate(facets):
        if not isinstance(f, list) or not f or not all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in f):
            errors.append(f"$.facets[{i}]: expected a non-empty list of vertex names")
        elif N is not None and len(f) - 1 > N:
            errors.append(f"$.facets[{i}]: simplex of dimension {len(f) - 1} exceeds dimension {N}")
    groups: dict[int, FinAbGroup] = {}
    for key, factors in (doc.get("groups") or {}).items():
        path = f"$.groups.{key}"
        try:
            j = int(key)
        except ValueError:
            errors.append(f"{path}: level must be an integer string")
            continue
        if N is not None and not 0 <= j <= N:
            errors.append(f"{path}: level outside 0..{N}")
        if not isinstance(factors, list) or not all(_is_int(d) and d >= 1 for d in factors):
            errors.append(f"{path}: expected a list of positive invariant factors")
            continue
        groups[j] = FinAbGroup.from_orders(factors)
        if list(groups[j].invariant_factors) != [d for d in factors if d > 1]:
            errors.append(f"{path}: {factors} is not in invariant-factor form (each divides the next)")
    boundaries: dict[int, GroupMorphism] = {}
    for key, rows in (doc.get("boundaries") or {}).items():
        path = f"$.boundaries.{key}"
        try:
            j = int(key)
        except ValueError:
            errors.append(f"{path}: level must be an integer string")
            continue
        src, tgt = groups.get(j, FinAbGroup()), groups.get(j - 1, FinAbGroup())
        if not isinstance(rows, list) or not all(isinstance(r, list) and all(_is_int(v) for v in r) for r in rows):
            errors.append(f"{path}: expected an integer matrix (list of rows)")
            continue
        if not rows and not tgt.ngens:
            continue  # zero map into a trivial group
        shape = (len(rows), len(rows[0]) if rows else 0)
        if shape != (tgt.ngens, src.ngens) or any(len(r) != shape[1] for r in rows):
            errors.append(f"{path}: matrix shape {shape} does not match G_{j - 1} x G_{j} = ({tgt.ngens}, {src.ngens})")
            continue
        try:
            boundaries[j] = GroupMorphism(src, tgt, rows)
        except MorphismError as exc:
            errors.append(f"{path}: {exc}")
    if errors:
        raise InvalidInputError(errors)
    try:
        K = build_complex(facets)
    except InvalidFacetError as exc:
        raise InvalidInputError([f"$.facets: {exc}"]) from None
    cc = CoefficientComplex(groups, boundaries)
    problems = validate(cc, N)
    if problems:
        raise InvalidInputError([f"$.boundaries.{v.level}: {v.message}" for v in problems])
    return K, cc


def _canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def load(args) -> tuple[str, dict, SimplicialComplex, CoefficientComplex]:
    if bool(args.catalog) == bool(args.input):
        raise InvalidInputError(["exactly one of --catalog or --input is required"])
    if args.catalog:
        try:
            entry = catalog(args.catalog)
        except UnknownInstanceError as exc:
            raise InvalidInputError([str(exc.args[0])]) from None
        return f"catalog:{entry.name}", entry.to_document(), entry.complex, entry.coefficients
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidInputError([f"{args.input}: {exc.strerror}"]) from None
    except json.JSONDecodeError as exc:
        raise InvalidInputError([f"{args.input}:{exc.lineno}:{exc.colno}: {exc.msg}"]) from None
    K, cc = parse_instance(doc)
    return "input", doc, K, cc


def instance_block(source: str, doc: dict) -> dict:
    return {"source": source, "document": doc, "sha256": hashlib.sha256(_canonical(doc).encode()).hexdigest()}


################################################################################
# commands


def _degrees(args, default=(-1, 0, 1)) -> list[int]:
    return [args.p] if args.p is not None else list(default)


def cmd_validate(args, K, cc) -> tuple[dict, int]:
    return {"valid": True, "violations": [], "sizes": K.sizes}, EXIT_OK


def cmd_homology(args, K, cc) -> tuple[dict, int]:
    out = {
        "integral": {str(n): str(simplicial_homology(K, n)) for n in range(K.dimension + 1)},
        "coefficients": {str(j): str(coefficient_homology(cc, j)) for j in range(K.dimension + 1)},
        "cohomology": {},
        "homology": {},
    }
    for p in _degrees(args):
        out["cohomology"][str(p)] = brown_cohomology(K, cc, p).to_json()
        out["homology"][str(p)] = brown_homology(K, cc, p).to_json()
    return out, EXIT_OK


def cmd_logical(args, K, cc) -> tuple[dict, int]:
    return logical_report(LogicalContext.of(K, cc)).to_json(), EXIT_OK


def cmd_brown(args, K, cc) -> tuple[dict, int]:
    reports = [brown_check(K, cc, p) for p in _degrees(args)]
    ok = all(r.passed for r in reports)
    return {"checks": [r.to_json() for r in reports], "status": "PASS" if ok else "FAIL"}, EXIT_OK if ok else EXIT_FAIL


def _coeff_group(args, cc) -> FinAbGroup:
    if args.coeff:
        try:
            factors = [int(v) for v in args.coeff.split(",") if v.strip()]
        except ValueError:
            raise InvalidInputError([f"--coeff: expected comma-separated integers, got {args.coeff!r}"]) from None
        if not all(d >= 1 for d in factors):
            raise InvalidInputError(["--coeff: invariant factors must be positive"])
        return FinAbGroup.from_orders(factors)
    return coefficient_homology(cc, args.coeff_level if args.coeff_level is not None else 0)


def cmd_uct(args, K, cc) -> tuple[dict, int]:
    A = _coeff_group(args, cc)
    degrees = [args.p] if args.p is not None else list(range(K.dimension + 1))
    reports = [uct_check(K, A, n) for n in degrees]
    ok = all(r.passed for r in reports)
    return {
        "coefficient_group": str(A),
        "checks": [r.to_json() for r in reports],
        "status": "PASS" if ok else "FAIL",
    }, EXIT_OK if ok else EXIT_FAIL


def cmd_ed(args, K, cc) -> tuple[dict, int]:
    rng = np.random.default_rng(args.seed)
    cap = resolve_max_dim(args.max_dim)
    ok = True
    out: dict[str, Any] = {"max_dim": cap, "hilbert_dim": GradedHomGroup(K, cc, 0).order}
    exact = ground_space_dim_exact(K, cc)
    h0 = brown_cohomology(K, cc, 0).order
    out["ground_dim_exact"] = exact
    out["H0_order"] = h0
    ok &= exact == h0

    failures = 0
    for p in (-1, 0):
        src, dst = GradedHomGroup(K, cc, p), GradedHomGroup(K, cc, p + 1, dual=True)
        failures += sum(not duality_check(dst.random(rng), src.random(rng), p) for _ in range(args.samples))
    out["duality"] = {"samples_per_degree": args.samples, "degrees": [-1, 0], "failures": failures}
    ok &= failures == 0

    if out["hilbert_dim"] <= cap:
        fl = ground_space_float_report(K, cc, cap)
        out["ground_dim_float"] = fl.to_json()
        ok &= fl.dim == exact
        t0, g0 = GradedHomGroup(K, cc, 0), GradedHomGroup(K, cc, 0, dual=True)
        weyl = [weyl_relation_check(t0.random(rng), g0.random(rng), cap) for _ in range(args.operator_samples)]
        laws = [
            group_law_check(t0.random(rng), t0.random(rng), g0.random(rng), g0.random(rng), cap)
            for _ in range(args.operator_samples)
        ]
        simplices = [s for _, _, s in K]
        proj = [commuting_projector_check(K, cc, x, y, cap) for x, y in itertools.product(simplices, simplices)]
        worst = {k: max(c.deviations[k] for c in proj) for k in proj[0].deviations}
        out["operators"] = {
            "weyl_relation": {"samples": len(weyl), "passed": all(weyl)},
            "group_laws": {"samples": len(laws), "passed": all(laws)},
            "projectors": {"pairs": len(proj), "max_deviation": worst, "tolerance": proj[0].tolerance, "passed": all(proj)},
        }
        ok &= all(weyl) and all(laws) and all(proj)
    else:
        out["ground_dim_float"] = {"skipped": f"Hilbert dimension {out['hilbert_dim']} exceeds cap {cap}"}
        out["operators"] = {"skipped": "over cap"}
    try:
        la = logical_action_check(LogicalContext.of(K, cc), seed=args.seed, max_states=cap)
        out["logical_action"] = la.to_json()
        ok &= la.passed
    except DimensionCapError as exc:
        out["logical_action"] = {"skipped": str(exc)}
    out["terms"] = sum(len(x) for x in all_projectors(K, cc))
    out["status"] = "PASS" if ok else "FAIL"
    return out, EXIT_OK if ok else EXIT_FAIL


COMMANDS = {
    "validate": cmd_validate,
    "homology": cmd_homology,
    "logical": cmd_logical,
    "brown-check": cmd_brown,
    "uct-check": cmd_uct,
    "ed-verify": cmd_ed,
}


def cmd_catalog(args) -> tuple[dict, int]:
    if not args.catalog:
        return {"instances": [{"name": n, "description": catalog(n).description} for n in CATALOG_NAMES]}, EXIT_OK
    try:
        entry = catalog(args.catalog)
    except UnknownInstanceError as exc:
        raise InvalidInputError([str(exc.args[0])]) from None
    expected = {k: {"value": _jsonable(v), "provenance": prov} for k, (v, prov) in entry.expected.items()}
    return {"name": entry.name, "description": entry.description, "document": entry.to_document(), "expected": expected}, EXIT_OK


def _jsonable(v):
    if isinstance(v, FinAbGroup):
        return str(v)
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="haqdm", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"haqdm {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in [*COMMANDS, "catalog"]:
        p = sub.add_parser(name)
        p.add_argument("--input", help="instance document (JSON)")
        p.add_argument("--catalog", help="built-in instance name")
        p.add_argument("--p", type=int, help="degree (default: -1, 0, 1)")
        p.add_argument("--coeff-level", type=int, help="uct-check: use A = H_j(G) for this level j")
        p.add_argument("--coeff", help="uct-check: explicit invariant factors of A, e.g. '2' or '2,4'")
        p.add_argument("--max-dim", type=int, help="ED Hilbert-dimension cap (default 16384 or HAQDM_MAX_DIM)")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--samples", type=int, default=1000, help="random duality pairs per degree")
        p.add_argument("--operator-samples", type=int, default=20)
        p.add_argument("--timings", action="store_true", help="include wall-clock timings (non-deterministic)")
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    """Execute one command; returns ``(exit code, report text)``."""
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    report: dict[str, Any] = {"command": args.command, "version": __version__, "seed": args.seed}
    try:
        if args.command == "catalog":
            body, code = cmd_catalog(args)
        else:
            source, doc, K, cc = load(args)
            report["instance"] = instance_block(source, doc)
            body, code = COMMANDS[args.command](args, K, cc)
    except InvalidInputError as exc:
        report.update({"status": "INVALID", "errors": exc.errors})
        code = EXIT_INVALID
    else:
        report[args.command.replace("-", "_")] = body
        report["status"] = body.get("status", "PASS" if code == EXIT_OK else "FAIL")
    if args.timings:
        report["timings"] = {"total_seconds": round(time.perf_counter() - start, 6)}
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code, text


def main(argv: list[str] | None = None) -> int:
    return run(argv)[0]


if __name__ == "__main__":
    sys.exit(main())
