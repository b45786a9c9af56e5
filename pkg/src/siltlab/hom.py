"""Hom spaces in the homotopy category: chain maps, null-homotopics, quotients.

Unknowns for a map f: C -> E are the block coordinates of every component
f^n: C^n -> E^n; the chain-map condition d_E f = f d_C is one linear system,
null-homotopic maps are the image of h |-> d_E h + h d_C.
"""

from __future__ import annotations

import numpy as np

from . import amat
from .complexes import ChainMap, PerfectComplex
from .linalg import extend_basis, nullspace, reduce_against, rref, solve


class SlotIndex:
    """Flat enumeration of the block coordinates of graded maps C -> E[off]."""

    def __init__(self, C: PerfectComplex, E: PerfectComplex, offset: int = 0):
        # slots for maps g with g^n: C^n -> E^{n+offset}
        self.C = C
        self.E = E
        self.alg = C.alg
        self.offset = offset
        self.slots = []  # (degree n, row m, col c, basis index)
        self.by_degree = {}
        for n in sorted(set(C.terms)):
            tgt = E.term(n + offset)
            src = C.term(n)
            if not tgt or not src:
                continue
            start = len(self.slots)
            for m in range(len(tgt)):
                for c in range(len(src)):
                    for b in self.alg.block(tgt[m], src[c]):
                        self.slots.append((n, m, c, b))
            self.by_degree[n] = (start, len(self.slots))

    @property
    def dim(self):
        return len(self.slots)

    def to_components(self, vec):
        """Slot vector -> dict degree -> A-matrix for a map C^n -> E^{n+offset}."""
        comps = {}
        for n, (lo, hi) in self.by_degree.items():
            m = amat.zeros(self.alg, len(self.E.term(n + self.offset)), len(self.C.term(n)))
            for k in range(lo, hi):
                _, r, c, b = self.slots[k]
                m[r, c, b] = vec[k]
            comps[n] = m
        return comps

    def from_components(self, comps):
        f = self.alg.field
        vec = f.zeros(self.dim)
        for k, (n, r, c, b) in enumerate(self.slots):
            m = comps.get(n)
            if m is not None and m.shape[0] > r and m.shape[1] > c:
                vec[k] = m[r, c, b]
        # consistency: nothing outside the enumerated blocks
        return vec


class HomSpace:
    """Hom_K(C, D[shift]) with explicit chain-map and null-homotopic bases."""

    def __init__(self, C: PerfectComplex, D: PerfectComplex, shift: int = 0):
        self.C = C
        self.D = D
        self.shift_by = shift
        self.alg = C.alg
        self.E = D.shift(shift)
        f = self.alg.field
        self.slot_index = SlotIndex(C, self.E, 0)
        nslots = self.slot_index.dim

        eq_rows = self._chain_constraints()
        if eq_rows.shape[0]:
            self.chain_rows = nullspace(f, eq_rows)
        else:
            self.chain_rows = f.eye(nslots)
        self.null_rows = self._null_homotopics()
        # quotient representatives: chain maps independent modulo null-homotopics
        if self.null_rows.shape[0]:
            bR, bP = rref(f, self.null_rows)
        else:
            bR, bP = f.zeros((0, nslots)), []
        self.null_rref = (bR, bP)
        kept, _ = extend_basis(f, bR, self.chain_rows)
        self.quotient_rows = self.chain_rows[kept] if kept else f.zeros((0, nslots))
        self._solver = None

    # -- linear systems ----------------------------------------------------
    def _chain_constraints(self):
        f = self.alg.field
        C, E = self.C, self.E
        si = self.slot_index
        degrees = sorted(set(C.terms) | set(E.terms))
        rows = []
        for n in degrees:
            n_rows = len(E.term(n + 1))
            n_cols = len(C.term(n))
            if n_rows == 0 or n_cols == 0:
                continue
            block = f.zeros((n_rows * n_cols * self.alg.dim, si.dim))
            dE = E.diff(n)
            dC = C.diff(n)
            # d_E . f^n
            lo_hi = si.by_degree.get(n)
            if lo_hi:
                for k in range(*lo_hi):
                    _, m, c, b = si.slots[k]
                    for r in range(n_rows):
                        x = dE[r, m]
                        if f.is_zero(x):
                            continue
                        prod = self.alg.mul_el_basis(x, b)
                        base = (r * n_cols + c) * self.alg.dim
                        for s in range(self.alg.dim):
                            if prod[s] != f.zero:
                                block[base + s, k] = block[base + s, k] + prod[s]
            # - f^{n+1} . d_C
            lo_hi = si.by_degree.get(n + 1)
            if lo_hi:
                for k in range(*lo_hi):
                    _, r, m, b = si.slots[k]
                    for c in range(n_cols):
                        y = dC[m, c]
                        if f.is_zero(y):
                            continue
                        prod = self.alg.mul_basis_el(b, y)
                        base = (r * n_cols + c) * self.alg.dim
                        for s in range(self.alg.dim):
                            if prod[s] != f.zero:
                                block[base + s, k] = block[base + s, k] - prod[s]
            rows.append(f.normalize(block))
        if rows:
            return np.concatenate(rows, axis=0)
        return f.zeros((0, si.dim))

    def _null_homotopics(self):
        """Rows spanning {d_E h + h d_C} inside the slot space."""
        f = self.alg.field
        C, E = self.C, self.E
        si = self.slot_index
        hs = SlotIndex(C, E, -1)  # h^n: C^n -> E^{n-1}
        cols = []
        for k in range(hs.dim):
            n, m, c, b = hs.slots[k]
            comps = {}
            # d_E^{n-1} . (unit at [m, c] in degree n)
            dE = E.diff(n - 1)
            if dE.shape[0] and len(C.term(n)):
                out = amat.zeros(self.alg, dE.shape[0], len(C.term(n)))
                for r in range(dE.shape[0]):
                    x = dE[r, m]
                    if not f.is_zero(x):
                        out[r, c] = self.alg.mul_el_basis(x, b)
                comps[n] = out
            # (unit at degree n as h^{n}) . d_C^{n-1} contributes to f^{n-1}
            dC = C.diff(n - 1)
            if dC.shape[0] and len(E.term(n - 1)) and len(C.term(n - 1)):
                out = amat.zeros(self.alg, len(E.term(n - 1)), len(C.term(n - 1)))
                for c2 in range(len(C.term(n - 1))):
                    y = dC[c, c2]
                    if not f.is_zero(y):
                        out[m, c2] = self.alg.mul_basis_el(b, y)
                prev = comps.get(n - 1)
                comps[n - 1] = out if prev is None else amat.add(self.alg, prev, out)
            cols.append(si.from_components(comps))
        if cols:
            return np.stack(cols)
        return f.zeros((0, si.dim))

    # -- public API ---------------------------------------------------------
    @property
    def chain_dim(self):
        return self.chain_rows.shape[0]

    @property
    def null_dim(self):
        return self.null_rref[0].shape[0]

    @property
    def dim(self):
        return self.quotient_rows.shape[0]

    def basis_maps(self):
        """Representative chain maps for a basis of the quotient."""
        return [self.vector_to_map(self.quotient_rows[i]) for i in range(self.dim)]

    def vector_to_map(self, vec) -> ChainMap:
        return ChainMap(self.C, self.E, self.slot_index.to_components(vec), check=False)

    def map_to_vector(self, g: ChainMap):
        return self.slot_index.from_components(g.comps)

    def class_coords(self, g: ChainMap):
        """Coordinates of [g] in the quotient basis; g must be a chain map."""
        f = self.alg.field
        if self.dim == 0:
            return f.zeros(0)
        if self._solver is None:
            stacked = np.concatenate([self.quotient_rows, self.null_rref[0]], axis=0)
            self._solver = stacked
        vec = self.map_to_vector(g)
        sol = solve(f, self._solver.T, vec)
        if sol is None:
            raise ValueError("map does not lie in the chain-map space")
        return sol[: self.dim]

    def is_null_homotopic(self, g: ChainMap) -> bool:
        vec = self.map_to_vector(g)
        r, piv = self.null_rref
        residue, _ = reduce_against(self.alg.field, r, piv, vec)
        return self.alg.field.is_zero(residue)


def hom_window(C: PerfectComplex, D: PerfectComplex):
    """Interval of shifts i outside which Hom_K(C, D[i]) = 0 by support."""
    if C.is_zero() or D.is_zero():
        return (0, -1)
    return (D.lo - C.hi, D.hi - C.lo)


def hom_space(C: PerfectComplex, D: PerfectComplex, shift: int = 0) -> HomSpace:
    return HomSpace(C, D, shift)


def hom_dim(C: PerfectComplex, D: PerfectComplex, shift: int = 0) -> int:
    lo, hi = hom_window(C, D)
    if shift < lo or shift > hi:
        return 0
    return HomSpace(C, D, shift).dim
