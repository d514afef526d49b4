"""JSON round trip for presentations and relations."""

from __future__ import annotations

import json
from fractions import Fraction

from ..cartan import GeneralizedCartanMatrix
from .build import GFRelation, Presentation
from .ncpoly import Gen, NCPoly, Relation


def _num_to_json(x):
    if isinstance(x, Fraction) and x.denominator != 1:
        return f"{x.numerator}/{x.denominator}"
    return int(x)


def _num_from_json(x):
    if isinstance(x, str):
        f = Fraction(x)
        return int(f) if f.denominator == 1 else f
    return int(x)


def poly_to_json(p: NCPoly) -> list:
    out = []
    for (word, c, d), f in p.grouped().items():
        out.append(
            {
                "word": [g.to_json() for g in word],
                "C": c,
                "D": d,
                "coeff": {str(e): _num_to_json(x) for e, x in f.items()},
            }
        )
    return out


def poly_from_json(data) -> NCPoly:
    terms = {}
    for t in data:
        word = tuple(Gen.from_json(g) for g in t["word"])
        for e, x in t["coeff"].items():
            terms[(word, int(t.get("C", 0)), int(t.get("D", 0)), int(e))] = _num_from_json(x)
    return NCPoly(terms)


def relation_to_json(r: Relation) -> dict:
    return {"family": r.family, "slot": list(r.slot), "lhs": poly_to_json(r.lhs), "rhs": poly_to_json(r.rhs), "text": str(r)}


def relation_from_json(data) -> Relation:
    return Relation(data["family"], poly_from_json(data["lhs"]), poly_from_json(data["rhs"]), tuple(data.get("slot", ())))


def presentation_to_json(p: Presentation, truncation: int | None = None) -> dict:
    out = {
        "kind": p.kind,
        "cartan": p.cartan.to_json(),
        "matrix": [list(r) for r in p.matrix],
        "central": list(p.central),
        "symmetrizers": list(p.symmetrizers),
        "generators": p.generator_families(),
        "relations": [relation_to_json(r) for r in p.relations],
        "gf_relations": [g.to_json() for g in p.gf_relations],
    }
    if truncation is not None:
        out["truncation"] = truncation
        out["coefficient_relations"] = [relation_to_json(r) for r in p.expand(truncation)[len(p.relations) :]]
    return out


def presentation_from_json(data) -> Presentation:
    if isinstance(data, str):
        data = json.loads(data)
    return Presentation(
        kind=data["kind"],
        cartan=GeneralizedCartanMatrix.of(data["cartan"]),
        relations=[relation_from_json(r) for r in data["relations"]],
        gf_relations=[GFRelation.from_json(g) for g in data.get("gf_relations", [])],
        central=tuple(data.get("central", ())),
        symmetrizers=tuple(data.get("symmetrizers", ())),
        matrix=tuple(tuple(r) for r in data.get("matrix", ())) or (),
    )
