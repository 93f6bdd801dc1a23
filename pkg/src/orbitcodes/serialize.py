"""JSON schemas for instances, codes, and reports.

Everything is written in terms of canonical integer encodings: field
elements as enc values, points as tuples of enc values of the normalized
coordinates, maps as row-major enc tuples, polynomials as sorted
(exponents, enc) pairs.  Dumps sort keys and use fixed separators so a
given configuration always produces byte-identical files.

Schemas:
  orbitcodes.instance.v1  input description of a custom instance
  orbitcodes.code.v1      constructed code with checks and metadata
  orbitcodes.verify.v1    check reports only
"""

from __future__ import annotations

import json

from .gf import FieldSpec
from .geometry import PlaneCurve, Poly, ProjPoint, projective_line
from .autgroup import AutGroup, ProjMap, close
from .construction import ConstructionResult, Divisor, Instance


def dumps(obj: dict) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1) + "\n"


# ---------------------------------------------------------------------------
# to JSON


def field_to_dict(spec: FieldSpec) -> dict:
    return {"p": spec.p, "k": spec.k, "modulus": list(spec.modulus)}


def point_to_list(pt: ProjPoint) -> list[int]:
    return list(pt.key)


def map_to_list(m: ProjMap) -> list[int]:
    return list(m.key)


def poly_to_list(poly: Poly) -> list:
    return [[list(e), c.enc] for e, c in sorted(poly.items())]


def curve_to_dict(curve: PlaneCurve) -> dict:
    return {
        "coords": curve.n_coords,
        "terms": poly_to_list(curve.poly()) if curve.terms else [],
    }


def group_to_dict(group: AutGroup) -> dict:
    return {
        "label": group.label,
        "order": group.order,
        "generators": [map_to_list(g) for g in group.generators],
    }


def divisor_to_dict(div: Divisor) -> dict:
    return {
        "points": [point_to_list(p) for p, _ in div.support],
        "multiplicities": [m for _, m in div.support],
        "degree": div.degree,
        "e": div.e,
        "field_of_definition": field_to_dict(div.field_of_definition),
        "ground_rational": div.ground_rational,
    }


def result_to_dict(result: ConstructionResult) -> dict:
    inst = result.instance
    out = {
        "schema": "orbitcodes.code.v1",
        "family": inst.family,
        "q": inst.q,
        "m": inst.m,
        "ground_field": field_to_dict(inst.ground),
        "working_field": field_to_dict(inst.working),
        "curve": curve_to_dict(inst.curve),
        "groups": [group_to_dict(g) for g in inst.groups],
        "joint_group_order": result.joint_order,
        "base_point": point_to_list(inst.Q),
        "evaluation_seed": point_to_list(inst.Qprime),
        "checks": [r.as_dict() for r in result.reports],
        "passed": result.passed,
        "divisor": divisor_to_dict(result.divisor) if result.divisor else None,
        "points": [point_to_list(p) for p in result.points],
    }
    if result.code is not None:
        code = result.code
        out.update(
            {
                "n": code.n,
                "k": code.rank,
                "k_nominal": len(code.matrix),
                "distance_bound": code.distance_bound,
                "distance_exact": code.distance_exact,
                "matrix": [[c.enc for c in row] for row in code.matrix],
            }
        )
    return out


def report_to_dict(reports, meta: dict) -> dict:
    out = {
        "schema": "orbitcodes.verify.v1",
        "passed": all(r.passed for r in reports),
        "checks": [r.as_dict() for r in reports],
    }
    out.update(meta)
    return out


# ---------------------------------------------------------------------------
# from JSON


def field_from_dict(d: dict) -> FieldSpec:
    return FieldSpec(int(d["p"]), int(d["k"]), tuple(int(c) for c in d["modulus"]))


def poly_from_list(items, field: FieldSpec) -> Poly:
    return {tuple(int(x) for x in e): field.from_enc(int(c)) for e, c in items}


def curve_from_dict(d: dict, field: FieldSpec) -> PlaneCurve:
    n = int(d["coords"])
    if n == 2:
        return projective_line(field)
    terms = poly_from_list(d["terms"], field)
    return PlaneCurve(3, field, tuple(terms.items()))


def map_from_list(flat, field: FieldSpec, n: int) -> ProjMap:
    vals = [field.from_enc(int(x)) for x in flat]
    rows = tuple(tuple(vals[i * n : (i + 1) * n]) for i in range(n))
    return ProjMap(rows, field)


def point_from_list(flat, field: FieldSpec) -> ProjPoint:
    return ProjPoint(tuple(field.from_enc(int(x)) for x in flat))


def instance_from_dict(d: dict) -> Instance:
    """Load a custom instance; all computable conditions are re-checked by
    the construction pipeline, this only rebuilds the objects."""
    if d.get("schema") != "orbitcodes.instance.v1":
        raise ValueError("expected an orbitcodes.instance.v1 document")
    ground = field_from_dict(d["ground_field"])
    working = field_from_dict(d["working_field"])
    curve = curve_from_dict(d["curve"], working)
    n = curve.n_coords
    groups = []
    for gd in d["groups"]:
        gens = [map_from_list(flat, working, n) for flat in gd["generators"]]
        groups.append(close(gens, label=str(gd.get("label", f"G{len(groups) + 1}"))))
    functions = None
    if d.get("functions"):
        functions = tuple(poly_from_list(f, working) for f in d["functions"])
    return Instance(
        curve=curve,
        groups=tuple(groups),
        Q=point_from_list(d["Q"], working),
        Qprime=point_from_list(d["Qprime"], working),
        ground=ground,
        working=working,
        m=int(d.get("m", 1)),
        functions=functions,
        condition_a_declared=bool(d.get("condition_a_holds", False)),
        family="custom",
        q=d.get("q"),
    )
