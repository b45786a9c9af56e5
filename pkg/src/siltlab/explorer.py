"""Breadth-first generation of silting quivers, Hasse verification, export."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .mutation import mutate, right_mutation
from .silting import SiltingObject, compare, gamma_matrix, make_object
from .workspace import Workspace


@dataclass
class ExplorerConfig:
    depth: int = 2
    directions: str = "left"  # left | right | both
    mod_shift: bool = False


@dataclass
class Node:
    index: int
    key: tuple  # identity: sorted summand ids (after normalization if mod_shift)
    ids: tuple  # representative object (as discovered)
    depth: int
    certificate_status: str
    shift_normal_form: int = 0  # shift applied to normalize (0 unless mod_shift)


@dataclass
class Arrow:
    source: int
    target: int
    class_id: int  # mutated summand class (id inside the source representative)
    discovered_by: str  # left | right


@dataclass
class SiltingQuiverGraph:
    nodes: list
    arrows: list
    mod_shift: bool
    exhausted: bool  # true when the budget stopped the expansion
    node_index: dict


def _normal_form(ws: Workspace, ids):
    """Shift so the minimal support degree across summands is 0."""
    lo = min(ws.registry.complex(i).lo for i in ids)
    if lo == 0:
        return tuple(sorted(ids)), 0
    shifted = tuple(sorted(ws.registry.shift_id(i, lo) for i in ids))
    return shifted, lo


def bfs(ws: Workspace, start: SiltingObject, cfg: ExplorerConfig) -> SiltingQuiverGraph:
    """Expand by irreducible mutations at every summand class up to depth."""
    directions = {"left": ("left",), "right": ("right",), "both": ("left", "right")}[cfg.directions]
    nodes = []
    arrows = []
    node_index = {}
    arrow_seen = set()

    def key_of(ids):
        if cfg.mod_shift:
            return _normal_form(ws, ids)
        return tuple(sorted(ids)), 0

    def add_node(obj: SiltingObject, depth):
        key, nf = key_of(obj.ids)
        if key in node_index:
            return node_index[key], False, nf
        idx = len(nodes)
        nodes.append(
            Node(
                index=idx,
                key=key,
                ids=tuple(sorted(obj.ids)),
                depth=depth,
                certificate_status=obj.certificate.status if obj.certificate else "NecessaryOnly",
                shift_normal_form=nf,
            )
        )
        node_index[key] = idx
        return idx, True, nf

    def norm_class(c, nf):
        return ws.registry.shift_id(c, nf) if cfg.mod_shift and nf else c

    start_idx, _, start_nf = add_node(start, 0)
    frontier = [(start, start_idx, start_nf)]
    exhausted = False
    for level in range(cfg.depth):
        new_frontier = []
        for obj, idx, nf in frontier:
            for c in sorted(obj.ids):
                for direction in directions:
                    nxt = mutate(ws, obj, [c], direction)
                    tgt_idx, fresh, tgt_nf = add_node(nxt, level + 1)
                    if direction == "left":
                        arrow = (idx, tgt_idx, norm_class(c, nf), "left")
                    else:
                        # a right mutation discovered M' with arrow M' -> M,
                        # labelled by the class of M' that replaces c
                        new_class = [x for x in nxt.ids if x not in obj.ids]
                        label = new_class[0] if new_class else c
                        arrow = (tgt_idx, idx, norm_class(label, tgt_nf), "right")
                    if arrow[:3] not in arrow_seen:
                        arrow_seen.add(arrow[:3])
                        arrows.append(Arrow(*arrow))
                    if fresh:
                        new_frontier.append((nxt, tgt_idx, tgt_nf))
        frontier = new_frontier
        if not frontier:
            break
    if frontier:
        exhausted = True
    return SiltingQuiverGraph(nodes, arrows, cfg.mod_shift, exhausted, node_index)


def hasse_check(ws: Workspace, graph: SiltingQuiverGraph) -> dict:
    """Arrows must be covering relations of >= within the explored node set,
    and reversing an arrow by the dual mutation must return the source."""
    violations = []
    objs = {n.index: make_object(ws, n.key) for n in graph.nodes}
    for a in graph.arrows:
        src, tgt = objs[a.source], objs[a.target]
        rel = compare(ws, src, tgt)
        if rel != "greater":
            violations.append(("order", a.source, a.target, rel))
            continue
        for n in graph.nodes:
            if n.index in (a.source, a.target):
                continue
            mid = objs[n.index]
            if compare(ws, src, mid) == "greater" and compare(ws, mid, tgt) == "greater":
                violations.append(("not_covering", a.source, a.target, n.index))
        new_classes = [c for c in tgt.ids if c not in src.ids]
        if new_classes:
            back = right_mutation(ws, tgt, new_classes[:1])
            if back.ids != src.ids:
                violations.append(("reversal", a.source, a.target))
    return {
        "arrows": len(graph.arrows),
        "nodes": len(graph.nodes),
        "violations": violations,
        "note": "covering relations checked within the explored set only",
    }


def export_dot(ws: Workspace, graph: SiltingQuiverGraph) -> str:
    lines = ["digraph silting {"]
    for n in graph.nodes:
        label = ws.labels(n.key)
        if graph.mod_shift:
            label = f"[{label}]"
        lines.append(f'  n{n.index} [label="{label}"];')
    for a in graph.arrows:
        lines.append(f'  n{a.source} -> n{a.target} [label="{ws.registry.label(a.class_id)}"];')
    lines.append("}")
    return "\n".join(lines)


def export_json(ws: Workspace, graph: SiltingQuiverGraph, base_ids=None) -> str:
    base = tuple(sorted(base_ids)) if base_ids else tuple(sorted(ws.projective_ids))
    nodes = []
    for n in graph.nodes:
        obj = SiltingObject(n.key, None)
        gm = gamma_matrix(ws, base, obj)
        nodes.append(
            {
                "id": n.index,
                "summands": list(n.key),
                "labels": [ws.registry.label(i) for i in n.key],
                "certificate": n.certificate_status,
                "gamma_matrix": [list(map(int, row)) for row in gm],
                "shift_normal_form": n.shift_normal_form,
                "graded_dims": [
                    {str(d): list(v) for d, v in ws.registry.complex(i).graded_dims().items()}
                    for i in n.key
                ],
            }
        )
    arrows = [
        {
            "source": a.source,
            "target": a.target,
            "class": a.class_id,
            "class_label": ws.registry.label(a.class_id),
            "direction": a.discovered_by,
        }
        for a in graph.arrows
    ]
    return json.dumps(
        {
            "field_char": ws.alg.field.char,
            "algebra_hash": ws.alg.hash(),
            "mod_shift": graph.mod_shift,
            "exhausted": graph.exhausted,
            "nodes": nodes,
            "arrows": arrows,
        },
        indent=2,
    )
