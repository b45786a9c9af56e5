"""JSON (de)serialization for presentations, complexes, modules and silting
objects.  One canonical machine format; DOT is export-only."""

from __future__ import annotations

import json
from fractions import Fraction

from . import amat
from .complexes import PerfectComplex
from .errors import MixedAlgebras
from .modules import Representation
from .quiver import AlgebraTable, QuiverPresentation
from .workspace import Workspace


def _coeff_to_json(field, c):
    if field.char:
        return int(c)
    return str(c)


def _coeff_from_json(field, c):
    if field.char:
        return field.scalar(int(c))
    return Fraction(str(c))


def presentation_to_json(pres: QuiverPresentation) -> dict:
    return {
        "field_char": pres.field_char,
        "vertices": [str(v) for v in pres.vertices],
        "arrows": [{"name": n, "from": str(s), "to": str(t)} for (n, s, t) in pres.arrows],
        "relations": [
            [{"coeff": str(c), "path": list(p)} for (c, p) in rel] for rel in pres.relations
        ],
        "path_length_cap": pres.path_length_cap,
    }


def presentation_from_json(data: dict, field_override: int | None = None) -> QuiverPresentation:
    char = field_override if field_override is not None else data.get("field_char", 32003)
    relations = []
    for rel in data.get("relations", []):
        terms = []
        for t in rel:
            c = t["coeff"]
            coeff = Fraction(str(c)) if "/" in str(c) else int(c)
            terms.append((coeff, list(t["path"])))
        relations.append(terms)
    return QuiverPresentation(
        vertices=[str(v) for v in data["vertices"]],
        arrows=[(a["name"], str(a["from"]), str(a["to"])) for a in data["arrows"]],
        relations=relations,
        field_char=int(char),
        path_length_cap=int(data.get("path_length_cap", 12)),
    )


def _element_terms(alg: AlgebraTable, vec):
    terms = []
    for i in range(alg.dim):
        if vec[i] != alg.field.zero:
            p = alg.basis[i]
            terms.append(
                {
                    "coeff": _coeff_to_json(alg.field, vec[i]),
                    "path": [alg.pres.arrows[a][0] for a in p.arrows],
                }
            )
    return terms


def _element_from_terms(alg: AlgebraTable, terms, start_vertex: int):
    """Rebuild a coefficient vector; empty path means the idempotent at start_vertex."""
    out = alg.zero_el()
    arrow_by_name = {a.name: k for k, a in enumerate(alg.arrow_list)}
    for t in terms:
        c = _coeff_from_json(alg.field, t["coeff"])
        el = alg.e(start_vertex)
        for name in t["path"]:
            el = alg.el_mul(el, alg.arrow_elements[arrow_by_name[name]])
        if alg.field.char:
            out = (out + c * el) % alg.field.char
        else:
            out = out + c * el
    return out


def complex_to_json(C: PerfectComplex) -> dict:
    alg = C.alg
    if C.is_zero():
        return {"lo": 0, "hi": -1, "terms": [], "diffs": [], "algebra_hash": alg.hash(), "field_char": alg.field.char}
    lo, hi = C.lo, C.hi
    terms = [list(C.term(d)) for d in range(lo, hi + 1)]
    diffs = []
    for d in range(lo, hi):
        m = C.diff(d)
        entries = []
        for r in range(m.shape[0]):
            for c in range(m.shape[1]):
                if not alg.field.is_zero(m[r, c]):
                    entries.append({"row": r, "col": c, "terms": _element_terms(alg, m[r, c])})
        diffs.append(entries)
    return {
        "lo": lo,
        "hi": hi,
        "terms": terms,
        "diffs": diffs,
        "algebra_hash": alg.hash(),
        "field_char": alg.field.char,
    }


def complex_from_json(alg: AlgebraTable, data: dict) -> PerfectComplex:
    if data.get("algebra_hash") and data["algebra_hash"] != alg.hash():
        raise MixedAlgebras("complex file belongs to a different algebra")
    lo, hi = int(data["lo"]), int(data["hi"])
    if hi < lo:
        return PerfectComplex(alg, {}, {}, check=False)
    terms = {lo + i: tuple(int(v) for v in t) for i, t in enumerate(data["terms"])}
    diffs = {}
    for i, entries in enumerate(data.get("diffs", [])):
        d = lo + i
        rows = len(terms.get(d + 1, ()))
        cols = len(terms.get(d, ()))
        m = amat.zeros(alg, rows, cols)
        for e in entries:
            r, c = int(e["row"]), int(e["col"])
            m[r, c] = _element_from_terms(alg, e["terms"], terms[d + 1][r])
        diffs[d] = m
    return PerfectComplex(alg, terms, diffs)


def module_to_json(M: Representation) -> dict:
    return {
        "dims": list(M.dims),
        "arrows": {
            M.alg.arrow_list[k].name: [[_coeff_to_json(M.alg.field, x) for x in row] for row in M.mats[k]]
            for k in range(len(M.alg.arrow_list))
        },
    }


def module_from_json(alg: AlgebraTable, data: dict) -> Representation:
    f = alg.field
    dims = [int(d) for d in data["dims"]]
    mats = {}
    arrow_by_name = {a.name: k for k, a in enumerate(alg.arrow_list)}
    for name, rows in data.get("arrows", {}).items():
        k = arrow_by_name[name]
        a = alg.arrow_list[k]
        m = f.zeros((dims[a.source], dims[a.target]))
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                m[i, j] = _coeff_from_json(f, x)
        mats[k] = m
    return Representation(alg, dims, mats)


def trail_to_positions(ws: Workspace, trail) -> list:
    """Re-encode a mutation trail as summand positions, which survive
    serialization across sessions (registry ids do not)."""
    from .silting import algebra_object

    cur = tuple(sorted(ws.projective_ids))
    steps = []
    for (direction, class_ids) in trail:
        positions = sorted(cur.index(c) for c in class_ids)
        steps.append([direction, positions])
        from .mutation import mutate
        from .silting import SiltingObject

        cur = mutate(ws, SiltingObject(cur, None), list(class_ids), direction).ids
    return steps


def replay_position_trail(ws: Workspace, steps):
    """Apply a position-encoded trail from the algebra stalk; returns
    (final ids, id-encoded trail)."""
    from .mutation import mutate
    from .silting import SiltingObject

    cur = tuple(sorted(ws.projective_ids))
    trail = []
    for step in steps:
        direction, positions = step[0], step[1]
        class_ids = [cur[int(p)] for p in positions]
        trail.append((direction, tuple(sorted(class_ids))))
        cur = mutate(ws, SiltingObject(cur, None), class_ids, direction).ids
    return cur, trail


def silting_to_json(ws: Workspace, ids, trail=None) -> dict:
    out = {
        "algebra_hash": ws.alg.hash(),
        "field_char": ws.alg.field.char,
        "summands": [complex_to_json(ws.registry.complex(i)) for i in sorted(ids)],
    }
    if trail is not None:
        out["trail"] = trail_to_positions(ws, trail)
    return out


def silting_from_json(ws: Workspace, data: dict):
    """Returns the sorted tuple of registry ids of all summands."""
    ids = []
    for s in data["summands"]:
        if isinstance(s, dict) and "registry_id" in s:
            ids.append(int(s["registry_id"]))
            continue
        C = complex_from_json(ws.alg, s)
        ids.extend(ws.registry.register_decomposition(C))
    return tuple(sorted(ids))


def silting_object_from_json(ws: Workspace, data: dict):
    """Rebuild a SiltingObject; a stored trail is replayed and only kept when
    it reproduces the stored summands (Verified), otherwise ignored."""
    from .silting import make_object

    ids = silting_from_json(ws, data)
    if "trail" in data:
        final, trail = replay_position_trail(ws, data["trail"])
        if final == ids:
            return make_object(ws, ids, trail=trail)
    return make_object(ws, ids)


def load_json(path: str) -> dict:
    with open(path) as fh:
        return json.load(fh)


def dump_json(data: dict, path: str | None = None) -> str:
    text = json.dumps(data, indent=2)
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    return text
