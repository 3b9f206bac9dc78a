"""JSON forms of presentations, structure-constant tables, and invariant reports.

Scalars are always integers in 0..p-1 and degrees are emitted both as a lift
(or null) and as a residue mod L.
"""

from __future__ import annotations

import json

import numpy as np

from .algebra import GradedAlgebra, Generator, Presentation, _label_str, from_presentation, group_algebra
from .errors import KnDegreeError, PresentationError
from .linalg import CoefficientContext, GradedSpace

SCHEMA_VERSION = "1"


def context_json(ctx: CoefficientContext) -> dict:
    return {"p": ctx.p, "n": ctx.n, "period": ctx.period}


def presentation_to_json(ctx: CoefficientContext, pres: Presentation) -> list:
    out = []
    for g in pres.generators:
        d = ctx.degree(g.degree)
        out.append({
            "name": g.label,
            "degree_lift": d.lift,
            "degree_mod": d.value,
            "truncation": g.truncation,
            "relation_rhs": [[int(c) % ctx.p, int(e)] for c, e in g.relation if int(c) % ctx.p],
        })
    return out


def presentation_from_json(data) -> Presentation:
    gens = []
    try:
        for g in data:
            deg = g["degree_lift"] if g.get("degree_lift") is not None else g["degree_mod"]
            gens.append(Generator(str(g["name"]), int(deg), int(g["truncation"]),
                                  tuple((int(c), int(e)) for c, e in g.get("relation_rhs", []))))
    except (KeyError, TypeError, ValueError) as exc:
        raise PresentationError(f"malformed presentation: {exc}") from exc
    return Presentation(tuple(gens))


def element_terms(A: GradedAlgebra, v) -> list:
    """[[coeff, exponent-list], ...] in basis order."""
    v = np.asarray(v) % A.p
    out = []
    for i in np.flatnonzero(v):
        exps = A.exponents[i].tolist() if A.exponents is not None else [int(i)]
        out.append([int(v[i]), [int(x) for x in exps]])
    return out


def algebra_to_json(A: GradedAlgebra) -> dict:
    """Full structure-constant form of an algebra."""
    i, j, k, c = A.products
    order = np.lexsort((k, j, i))
    return {
        "schema": SCHEMA_VERSION,
        "context": context_json(A.ctx),
        "basis": [{"label": _label_str(lab), "degree_lift": A.space.lifts[t],
                   "degree_mod": int(A.space.degrees[t])} for t, lab in enumerate(A.labels)],
        "unit": [int(x) for x in A.unit],
        "augmentation": None if A.augmentation is None else [int(x) for x in A.augmentation],
        "commutative": bool(A.commutative),
        "products": [[int(i[t]), int(j[t]), int(k[t]), int(c[t])] for t in order],
    }


def algebra_from_json(data, check=True) -> GradedAlgebra:
    try:
        ctx = CoefficientContext(int(data["context"]["p"]), int(data["context"]["n"]))
        basis = data["basis"]
        labels = tuple(b["label"] for b in basis)
        degs = np.array([b["degree_mod"] for b in basis], dtype=np.int64)
        lifts = tuple(b.get("degree_lift") for b in basis)
        space = GradedSpace(ctx, labels, degs, lifts)
        prods = np.array(data["products"], dtype=np.int64).reshape(-1, 4)
    except (KeyError, TypeError, ValueError) as exc:
        raise PresentationError(f"malformed algebra table: {exc}") from exc
    return GradedAlgebra(space, tuple(prods.T), data["unit"], data.get("augmentation"),
                         commutative=bool(data.get("commutative", False)), check=check)


def load_group_table(path):
    """A group table file: either a bare list of rows or {"elements": [...], "table": [...]}."""
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    if isinstance(data, dict):
        return data["table"], data.get("elements")
    return data, None


def _has_dict(x) -> bool:
    return isinstance(x, dict) or (isinstance(x, list) and any(_has_dict(y) for y in x))


def _pretty(x, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(x, dict):
        if not x:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_pretty(v, indent + 1)}" for k, v in x.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(x, list) and _has_dict(x):
        items = [pad + _pretty(v, indent + 1) for v in x]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(x, ensure_ascii=True, separators=(", ", ": "))


def dumps(doc) -> str:
    """Deterministic JSON: one key per line, lists of scalars kept on one line."""
    return _pretty(doc, 0) + "\n"


__all__ = ["SCHEMA_VERSION", "context_json", "presentation_to_json", "presentation_from_json",
           "element_terms", "algebra_to_json", "algebra_from_json", "load_group_table", "dumps"]
