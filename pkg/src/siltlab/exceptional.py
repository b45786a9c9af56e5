"""Exceptional sequences over hereditary path algebras, the braid action,
and conversions to and from silting objects."""

from __future__ import annotations

from dataclasses import dataclass

from . import amat
from .complexes import ChainMap, cocone, cone, direct_sum, zero_complex, zero_map
from .errors import CycleDetected, NotHereditary, ValidationFailed
from .hom import hom_space, hom_window
from .mutation import mutate
from .silting import SiltingObject, make_object
from .workspace import Workspace


@dataclass(frozen=True)
class ExceptionalSequence:
    ids: tuple  # ordered registry ids

    def __len__(self):
        return len(self.ids)

    def label(self, ws: Workspace) -> str:
        return "(" + ", ".join(ws.registry.label(i) for i in self.ids) + ")"


def require_hereditary(ws: Workspace):
    if not ws.alg.is_hereditary():
        raise NotHereditary("exceptional-sequence operations need an acyclic quiver without relations")


def is_exceptional_object(ws: Workspace, rid: int) -> bool:
    C = ws.registry.complex(rid)
    lo, hi = hom_window(C, C)
    for i in range(lo, hi + 1):
        d = ws.hom_dim(rid, rid, i)
        if i == 0:
            if d != 1:
                return False  # split division algebras only
        elif d != 0:
            return False
    return True


def validate_sequence(ws: Workspace, ids) -> None:
    require_hereditary(ws)
    for r in ids:
        if not is_exceptional_object(ws, r):
            raise ValidationFailed(f"entry {ws.registry.label(r)} is not exceptional")
    for i in range(len(ids)):
        for j in range(i):
            X, Y = ids[i], ids[j]
            lo, hi = hom_window(ws.registry.complex(X), ws.registry.complex(Y))
            for ell in range(lo, hi + 1):
                if ws.hom_dim(X, Y, ell) != 0:
                    raise ValidationFailed(
                        f"backward morphism {ws.registry.label(X)} -> {ws.registry.label(Y)}[{ell}]"
                    )


def sequence(ws: Workspace, ids) -> ExceptionalSequence:
    seq = ExceptionalSequence(tuple(ids))
    validate_sequence(ws, seq.ids)
    return seq


def _coev_map(ws: Workspace, x_id: int, y_id: int):
    """X -> sum over shifts of Hom(X, Y[l])-many copies of Y[l]."""
    X = ws.registry.complex(x_id)
    Y = ws.registry.complex(y_id)
    parts = []
    lo, hi = hom_window(X, Y)
    for ell in range(lo, hi + 1):
        hs = ws.hom(x_id, y_id, ell)
        for g in hs.basis_maps():
            parts.append((Y.shift(ell), g))
    if not parts:
        return zero_map(X, zero_complex(ws.alg))
    targets = direct_sum([t for (t, _) in parts])
    comps = {}
    for d in targets.terms:
        if not X.term(d):
            continue
        rows = [g.comp(d) for (_, g) in parts]
        comps[d] = amat.vstack(ws.alg, rows)
    return ChainMap(X, targets, comps, check=False)


def _ev_map(ws: Workspace, x_id: int, y_id: int):
    """sum over shifts of Hom(X[l], Y)-many copies of X[l] -> Y."""
    X = ws.registry.complex(x_id)
    Y = ws.registry.complex(y_id)
    parts = []
    lo, hi = hom_window(X, Y)
    # Hom(X[l], Y) = Hom(X, Y[-l]); support forces -l in the window
    for ell in range(-hi, -lo + 1):
        hs = hom_space(X.shift(ell), Y, 0)
        for g in hs.basis_maps():
            parts.append((X.shift(ell), g))
    if not parts:
        return zero_map(zero_complex(ws.alg), Y)
    sources = direct_sum([s for (s, _) in parts])
    comps = {}
    for d in sources.terms:
        if not Y.term(d):
            continue
        cols = [g.comp(d) for (_, g) in parts]
        comps[d] = amat.hstack(ws.alg, cols)
    return ChainMap(sources, Y, comps, check=False)


def left_twist(ws: Workspace, x_id: int, y_id: int) -> int:
    """L_Y X: cone of the coevaluation X -> (sums of shifted copies of Y).

    Together with right_twist = co-cone of the evaluation this satisfies
    sigma . sigma^{-1} = id on the nose (twist and dual twist are inverse)."""
    coev = _coev_map(ws, x_id, y_id)
    L = cone(coev)
    pieces = ws.registry.register_decomposition(L)
    if len(pieces) != 1:
        raise ValidationFailed("left twist is not indecomposable")
    return pieces[0]


def right_twist(ws: Workspace, x_id: int, y_id: int) -> int:
    """R_X Y: co-cone of the evaluation (sums of shifted X) -> Y."""
    ev = _ev_map(ws, x_id, y_id)
    N, _ = cocone(ev)
    pieces = ws.registry.register_decomposition(N)
    if len(pieces) != 1:
        raise ValidationFailed("right twist is not indecomposable")
    return pieces[0]


def parse_braid_word(word: str):
    """Comma-separated tokens s<i> and s<i>^-1 (1-based positions)."""
    out = []
    for tok in word.split(","):
        tok = tok.strip()
        if not tok:
            continue
        inv = tok.endswith("^-1")
        core = tok[:-3] if inv else tok
        if not core.startswith("s"):
            raise ValueError(f"bad braid token {tok!r}")
        out.append((int(core[1:]), -1 if inv else 1))
    return out


def braid_apply(ws: Workspace, seq: ExceptionalSequence, word) -> ExceptionalSequence:
    """Apply a braid word; tokens act left to right."""
    require_hereditary(ws)
    if isinstance(word, str):
        word = parse_braid_word(word)
    ids = list(seq.ids)
    for (i, sign) in word:
        if not (1 <= i <= len(ids) - 1):
            raise ValueError(f"braid generator s{i} out of range")
        x, y = ids[i - 1], ids[i]
        if sign == 1:
            ids[i - 1], ids[i] = right_twist(ws, x, y), x
        else:
            ids[i - 1], ids[i] = y, left_twist(ws, x, y)
    return sequence(ws, ids)


def shift_action(ws: Workspace, seq: ExceptionalSequence, shifts) -> ExceptionalSequence:
    if len(shifts) != len(seq.ids):
        raise ValueError("shift vector length mismatch")
    return sequence(ws, tuple(ws.registry.shift_id(r, n) for r, n in zip(seq.ids, shifts)))


def silting_to_exceptional(ws: Workspace, obj: SiltingObject) -> ExceptionalSequence:
    """Order the summands so that all morphisms point forward."""
    require_hereditary(ws)
    ids = sorted(obj.ids)
    edges = {i: set() for i in ids}
    for x in ids:
        for y in ids:
            if x == y:
                continue
            X, Y = ws.registry.complex(x), ws.registry.complex(y)
            lo, hi = hom_window(X, Y)
            if any(ws.hom_dim(x, y, ell) for ell in range(lo, hi + 1)):
                edges[x].add(y)
    # Kahn topological sort, ties by registry id
    indeg = {i: 0 for i in ids}
    for x in ids:
        for y in edges[x]:
            indeg[y] += 1
    ready = sorted(i for i in ids if indeg[i] == 0)
    out = []
    while ready:
        x = ready.pop(0)
        out.append(x)
        for y in sorted(edges[x]):
            indeg[y] -= 1
            if indeg[y] == 0:
                ready.append(y)
        ready.sort()
    if len(out) != len(ids):
        raise CycleDetected("morphism relation on summands has a cycle")
    return sequence(ws, out)


def exceptional_to_silting(ws: Workspace, seq: ExceptionalSequence):
    """Shift the entries apart until the sum is presilting; returns
    (object, gap a, shift vector)."""
    require_hereditary(ws)
    a = 0
    for x in seq.ids:
        for y in seq.ids:
            X, Y = ws.registry.complex(x), ws.registry.complex(y)
            lo, hi = hom_window(X, Y)
            for ell in range(max(1, lo), hi + 1):
                if ell > a and ws.hom_dim(x, y, ell) > 0:
                    a = ell
    shifts = [i * a for i in range(len(seq.ids))]
    ids = tuple(ws.registry.shift_id(r, n) for r, n in zip(seq.ids, shifts))
    return make_object(ws, ids), a, shifts


def hereditary_connectivity_probe(ws: Workspace, start: SiltingObject, goal: SiltingObject, budget: int):
    """Bidirectional BFS over irreducible mutations; returns a mutation word
    (direction, class id) from start to goal, or None when exhausted.

    Backward steps store the replacement class so they can be inverted
    (mu^- inverts mu^+ at the new summand, and dually)."""
    if start.ids == goal.ids:
        return []
    sides = {"fwd": {start.ids: []}, "bwd": {goal.ids: []}}
    frontiers = {"fwd": [start.ids], "bwd": [goal.ids]}
    depth = {"fwd": 0, "bwd": 0}

    def expand(side):
        new = []
        for ids in frontiers[side]:
            base = sides[side][ids]
            for c in ids:
                for direction in ("left", "right"):
                    nxt = mutate(ws, SiltingObject(ids, None), [c], direction)
                    if nxt.ids in sides[side]:
                        continue
                    fresh = [x for x in nxt.ids if x not in ids]
                    new_class = fresh[0] if fresh else c
                    sides[side][nxt.ids] = base + [(direction, c, new_class)]
                    new.append(nxt.ids)
        frontiers[side] = new
        depth[side] += 1

    def meet():
        common = set(sides["fwd"]) & set(sides["bwd"])
        if not common:
            return None
        ids = sorted(common)[0]
        fwd = sides["fwd"][ids]
        bwd = sides["bwd"][ids]
        inverted = [
            ("right" if d == "left" else "left", new_c)
            for (d, c, new_c) in reversed(bwd)
        ]
        word = [(d, c) for (d, c, _n) in fwd] + inverted
        return word if len(word) <= budget else None

    while depth["fwd"] + depth["bwd"] < budget:
        got = meet()
        if got is not None:
            return got
        side = "fwd" if len(frontiers["fwd"]) <= len(frontiers["bwd"]) else "bwd"
        if not frontiers[side]:
            side = "bwd" if side == "fwd" else "fwd"
        if not frontiers[side]:
            break
        expand(side)
    return meet()


def apply_word(ws: Workspace, obj: SiltingObject, word) -> SiltingObject:
    cur = obj
    for (direction, c) in word:
        cur = mutate(ws, cur, [c], direction)
    return cur
