"""Minimal left/right approximations by additive classes of registered
indecomposables, assembled from Hom bases and pruned greedily.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import amat
from .complexes import ChainMap, PerfectComplex, direct_sum, zero_complex, zero_map
from .linalg import rank
from .workspace import Workspace


@dataclass
class ApproximationMap:
    map: ChainMap  # X -> D0 (left) or D0 -> X (right)
    summand_ids: list  # registry ids of the assembled copies, in order
    is_left: bool
    minimal: bool


def _stack_maps_into_sum(ws: Workspace, X: PerfectComplex, parts):
    """Chain map X -> sum of targets from a list of (target complex, map)."""
    alg = ws.alg
    if not parts:
        return zero_map(X, zero_complex(alg)), zero_complex(alg)
    targets = [t for (t, _) in parts]
    total = direct_sum(targets)
    degrees = sorted(total.terms)
    comps = {}
    for d in degrees:
        if not X.term(d):
            continue
        rows = []
        for (t, g) in parts:
            sub = g.comp(d)
            rows.append(sub)
        comps[d] = amat.vstack(alg, rows)
    return ChainMap(X, total, comps, check=False), total


def _stack_maps_from_sum(ws: Workspace, X: PerfectComplex, parts):
    """Chain map (sum of sources) -> X from a list of (source complex, map)."""
    alg = ws.alg
    if not parts:
        return zero_map(zero_complex(alg), X), zero_complex(alg)
    sources = [s for (s, _) in parts]
    total = direct_sum(sources)
    comps = {}
    for d in sorted(total.terms):
        if not X.term(d):
            continue
        cols = [g.comp(d) for (_, g) in parts]
        comps[d] = amat.hstack(alg, cols)
    return ChainMap(total, X, comps, check=False), total


def _left_property_holds(ws: Workspace, X: PerfectComplex, f: ChainMap, class_ids) -> bool:
    """Every class in Hom_K(X, D_j) factors through f, for each j."""
    from .hom import hom_space

    for j in class_ids:
        Dj = ws.registry.complex(j)
        need = hom_space(X, Dj, 0)
        if need.dim == 0:
            continue
        have = hom_space(f.tgt, Dj, 0)
        if have.dim == 0:
            return False
        field = ws.alg.field
        mat = []
        for g in have.basis_maps():
            mat.append(need.class_coords(f.compose(g)))
        m = np.stack(mat)
        if rank(field, field.array(m) if not field.char else m) < need.dim:
            return False
    return True


def _right_property_holds(ws: Workspace, X: PerfectComplex, g: ChainMap, class_ids) -> bool:
    """Hom_K(D_j, source) -> Hom_K(D_j, X) surjective for each class j."""
    from .hom import hom_space

    for j in class_ids:
        Dj = ws.registry.complex(j)
        need = hom_space(Dj, X, 0)
        if need.dim == 0:
            continue
        have = hom_space(Dj, g.src, 0)
        if have.dim == 0:
            return False
        field = ws.alg.field
        mat = []
        for h in have.basis_maps():
            mat.append(need.class_coords(h.compose(g)))
        m = np.stack(mat)
        if rank(field, field.array(m) if not field.char else m) < need.dim:
            return False
    return True


def left_approximation(ws: Workspace, X: PerfectComplex, class_ids, minimize: bool = True) -> ApproximationMap:
    """Left add(D)-approximation of X: one target copy per Hom basis class,
    then greedy removal in registry order while the property survives."""
    from .hom import hom_space

    parts = []
    ids = []
    for j in sorted(set(class_ids)):
        Dj = ws.registry.complex(j)
        hs = hom_space(X, Dj, 0)
        for g in hs.basis_maps():
            parts.append((Dj, g))
            ids.append(j)
    f, total = _stack_maps_into_sum(ws, X, parts)
    if not minimize or not parts:
        return ApproximationMap(f, ids, True, minimal=not parts)
    keep = list(range(len(parts)))
    changed = True
    while changed:
        changed = False
        for drop in list(keep):
            trial = [k for k in keep if k != drop]
            ftrial, _ = _stack_maps_into_sum(ws, X, [parts[k] for k in trial])
            if _left_property_holds(ws, X, ftrial, sorted(set(class_ids))):
                keep = trial
                changed = True
                break
    f, total = _stack_maps_into_sum(ws, X, [parts[k] for k in keep])
    return ApproximationMap(f, [ids[k] for k in keep], True, minimal=True)


def right_approximation(ws: Workspace, X: PerfectComplex, class_ids, minimize: bool = True) -> ApproximationMap:
    from .hom import hom_space

    parts = []
    ids = []
    for j in sorted(set(class_ids)):
        Dj = ws.registry.complex(j)
        hs = hom_space(Dj, X, 0)
        for g in hs.basis_maps():
            parts.append((Dj, g))
            ids.append(j)
    g, total = _stack_maps_from_sum(ws, X, parts)
    if not minimize or not parts:
        return ApproximationMap(g, ids, False, minimal=not parts)
    keep = list(range(len(parts)))
    changed = True
    while changed:
        changed = False
        for drop in list(keep):
            trial = [k for k in keep if k != drop]
            gtrial, _ = _stack_maps_from_sum(ws, X, [parts[k] for k in trial])
            if _right_property_holds(ws, X, gtrial, sorted(set(class_ids))):
                keep = trial
                changed = True
                break
    g, total = _stack_maps_from_sum(ws, X, [parts[k] for k in keep])
    return ApproximationMap(g, [ids[k] for k in keep], False, minimal=True)
