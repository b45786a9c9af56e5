"""Finite-dimensional path algebras kQ/I presented by a quiver with relations.

Composition of paths is written left to right: for arrows a: i -> j and
b: j -> k the product ab is a path i -> k.  The span of paths from u to v
is the block e_u A e_v; the map Hom(e_i A, e_j A) is realized by left
multiplication with paths j -> i.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass, field as dc_field

import numpy as np

from .errors import InfiniteDimensional, MalformedPresentation
from .linalg import Field, rref, reduce_against


@dataclass(frozen=True)
class Arrow:
    name: str
    source: int
    target: int


@dataclass
class QuiverPresentation:
    """Input data: vertices, arrows, relations, coefficient field, length cap.

    Relations are lists of terms (coeff, path) where path is a list of arrow
    names; each relation is split internally into parallel components, and
    every component must be homogeneous in path length (the reduction is done
    stratum by stratum).
    """

    vertices: list
    arrows: list  # list of (name, source_label, target_label)
    relations: list = dc_field(default_factory=list)  # list of [ (coeff, [arrow names]) ]
    field_char: int = 32003
    path_length_cap: int = 12

    def canonical_json(self) -> str:
        return json.dumps(
            {
                "field_char": self.field_char,
                "vertices": [str(v) for v in self.vertices],
                "arrows": [{"name": n, "from": str(s), "to": str(t)} for (n, s, t) in self.arrows],
                "relations": [
                    [{"coeff": str(c), "path": list(p)} for (c, p) in rel] for rel in self.relations
                ],
                "path_length_cap": self.path_length_cap,
            },
            sort_keys=True,
        )

    def hash(self) -> str:
        return hashlib.sha256(self.canonical_json().encode()).hexdigest()[:16]


class Path:
    """A path in the quiver: start vertex plus a tuple of arrow indices."""

    __slots__ = ("start", "arrows", "end")

    def __init__(self, start: int, arrows: tuple, end: int):
        self.start = start
        self.arrows = arrows
        self.end = end

    def __len__(self):
        return len(self.arrows)

    def key(self):
        return (self.start, self.arrows)

    def __repr__(self):
        return f"Path({self.start},{self.arrows},{self.end})"


class AlgebraTable:
    """Basis, block and multiplication data of a finite-dimensional kQ/I.

    basis[i] is a reduced path; the first n entries are the trivial paths
    e_1..e_n.  mult[s, t, :] holds the coefficients of basis_s * basis_t.
    blocks[(u, v)] lists basis indices of paths u -> v.
    """

    def __init__(self, pres: QuiverPresentation, field: Field, basis, mult, blocks, arrow_elements):
        self.pres = pres
        self.field = field
        self.basis = basis  # list of Path
        self.mult = mult  # (d, d, d)
        self.blocks = blocks  # (u, v) -> list of basis indices
        self.arrow_elements = arrow_elements  # arrow idx -> coefficient vector in A
        self.n_simples = len(pres.vertices)
        self.dim = len(basis)
        self.vertex_labels = [str(v) for v in pres.vertices]
        self.arrow_list = [Arrow(n, self._vi(s), self._vi(t)) for (n, s, t) in pres.arrows]
        self._names = [self._path_name(p) for p in basis]
        self._block_pos = {}
        for (u, v), idxs in blocks.items():
            for pos, b in enumerate(idxs):
                self._block_pos[b] = ((u, v), pos)

    def _vi(self, label):
        return [str(x) for x in self.pres.vertices].index(str(label))

    def _path_name(self, p: Path) -> str:
        if not p.arrows:
            return f"e{self.vertex_labels[p.start]}"
        names = [self.pres.arrows[a][0] for a in p.arrows]
        if all(len(n) == 1 for n in names):
            return "".join(names)
        return "*".join(names)

    # -- elements ---------------------------------------------------------
    def zero_el(self):
        return self.field.zeros(self.dim)

    def unit(self):
        v = self.zero_el()
        for i in range(self.n_simples):
            v[i] = self.field.one
        return v

    def e(self, i: int):
        v = self.zero_el()
        v[i] = self.field.one
        return v

    def el_mul(self, x, y):
        """Product of two coefficient vectors."""
        f = self.field
        out = self.zero_el()
        xi = np.nonzero(x)[0] if f.char else [i for i in range(self.dim) if x[i] != 0]
        yi = np.nonzero(y)[0] if f.char else [i for i in range(self.dim) if y[i] != 0]
        for s in xi:
            for t in yi:
                c = x[s] * y[t]
                if f.char:
                    out = (out + c * self.mult[s, t]) % f.char
                else:
                    out = out + c * self.mult[s, t]
        return out

    def el_name(self, x) -> str:
        parts = []
        for i in range(self.dim):
            if x[i] != self.field.zero:
                c = x[i]
                parts.append(self._names[i] if c == self.field.one else f"{c}*{self._names[i]}")
        return " + ".join(parts) if parts else "0"

    def mul_basis_el(self, b: int, el):
        """basis_b * el as a coefficient vector."""
        f = self.field
        out = self.zero_el()
        for s in range(self.dim):
            if el[s] != f.zero:
                if f.char:
                    out = (out + el[s] * self.mult[b, s]) % f.char
                else:
                    out = out + el[s] * self.mult[b, s]
        return out

    def mul_el_basis(self, el, b: int):
        """el * basis_b as a coefficient vector."""
        f = self.field
        out = self.zero_el()
        for s in range(self.dim):
            if el[s] != f.zero:
                if f.char:
                    out = (out + el[s] * self.mult[s, b]) % f.char
                else:
                    out = out + el[s] * self.mult[s, b]
        return out

    def basis_start(self, i: int) -> int:
        return self.basis[i].start

    def basis_end(self, i: int) -> int:
        return self.basis[i].end

    def block(self, u: int, v: int):
        return self.blocks.get((u, v), [])

    def is_hereditary(self) -> bool:
        if self.pres.relations:
            return False
        # acyclic quiver: no reduced path of positive length returns to its start
        return all(p.start != p.end for p in self.basis if p.arrows)

    def hash(self) -> str:
        return self.pres.hash()

    def __repr__(self):
        return f"AlgebraTable(dim={self.dim}, n={self.n_simples}, {self.field})"


def _parse_relations(pres: QuiverPresentation, arrow_index, arrow_by_name):
    """Split relations into parallel, length-homogeneous components."""
    comps = []
    for rel in pres.relations:
        by_ends = {}
        for coeff, names in rel:
            if not names:
                raise MalformedPresentation("relation term with empty path")
            try:
                idxs = tuple(arrow_by_name[n] for n in names)
            except KeyError as exc:
                raise MalformedPresentation(f"unknown arrow {exc} in relation") from exc
            for a, b in zip(idxs, idxs[1:]):
                if arrow_index[a][2] != arrow_index[b][1]:
                    raise MalformedPresentation(f"incomposable relation path {names}")
            src = arrow_index[idxs[0]][1]
            tgt = arrow_index[idxs[-1]][2]
            by_ends.setdefault((src, tgt), []).append((coeff, idxs))
        for (src, tgt), terms in by_ends.items():
            lengths = {len(p) for _, p in terms}
            if len(lengths) != 1:
                raise MalformedPresentation(
                    "relation component mixes path lengths; presentations must be length-homogeneous"
                )
            comps.append((src, tgt, lengths.pop(), terms))
    return comps


def hom_proj_basis(alg: AlgebraTable, i: int, j: int):
    """Basis of Hom(e_i A, e_j A) as elements acting by left multiplication:
    the paths from j to i."""
    if not (0 <= i < alg.n_simples and 0 <= j < alg.n_simples):
        raise ValueError(f"invalid vertex pair ({i}, {j})")
    return [_unit_vec(alg, b) for b in alg.block(j, i)]


def _unit_vec(alg: AlgebraTable, b: int):
    v = alg.zero_el()
    v[b] = alg.field.one
    return v


def build_algebra(pres: QuiverPresentation) -> AlgebraTable:
    """Compute basis and multiplication table of kQ/I by stratum-wise reduction.

    Paths are enumerated length by length; within each stratum the span of
    u*r*v over all relations r and composable paths u, v is row reduced and
    the non-pivot paths survive as basis vectors.  Enumeration stops at the
    first empty stratum; if none appears up to the cap the presentation is
    rejected as infinite dimensional.
    """
    field = Field(pres.field_char)
    labels = [str(v) for v in pres.vertices]
    if len(set(labels)) != len(labels) or not labels:
        raise MalformedPresentation("vertices must be nonempty and distinct")
    arrow_index = []
    arrow_by_name = {}
    for k, (name, s, t) in enumerate(pres.arrows):
        if str(s) not in labels or str(t) not in labels:
            raise MalformedPresentation(f"arrow {name} has undeclared endpoint")
        if name in arrow_by_name:
            raise MalformedPresentation(f"duplicate arrow name {name}")
        arrow_by_name[name] = k
        arrow_index.append((name, labels.index(str(s)), labels.index(str(t))))
    comps = _parse_relations(pres, arrow_index, arrow_by_name)
    if comps and pres.path_length_cap < max(c[2] for c in comps):
        raise MalformedPresentation("path_length_cap smaller than a relation length")

    n = len(labels)
    strata = [[Path(i, (), i) for i in range(n)]]  # all paths per length
    index_of = [{p.key(): i for i, p in enumerate(strata[0])}]
    # reduced data per length: (basis positions, path -> coords over basis positions)
    reduced_paths = [list(range(n))]
    reduce_maps = [field.eye(n)]
    death = None
    for ell in range(1, pres.path_length_cap + 1):
        prev = strata[ell - 1]
        cur = []
        for p in prev:
            for k, (_, s, t) in enumerate(arrow_index):
                if s == p.end:
                    cur.append(Path(p.start, p.arrows + (k,), t))
        strata.append(cur)
        index_of.append({p.key(): i for i, p in enumerate(cur)})
        if not cur:
            death = ell
            break
        # ideal span inside this stratum
        rows = []
        for (src, tgt, d, terms) in comps:
            if d > ell:
                continue
            for l1 in range(ell - d + 1):
                l2 = ell - d - l1
                for u in strata[l1]:
                    if u.end != src:
                        continue
                    for v in strata[l2]:
                        if v.start != tgt:
                            continue
                        row = field.zeros(len(cur))
                        for coeff, idxs in terms:
                            key = (u.start, u.arrows + idxs + v.arrows)
                            row[index_of[ell][key]] = row[index_of[ell][key]] + field.scalar(coeff)
                        rows.append(field.normalize(row))
        if rows:
            r, pivots = rref(field, np.stack(rows))
        else:
            r, pivots = field.zeros((0, len(cur))), []
        nonpivot = [c for c in range(len(cur)) if c not in pivots]
        reduced_paths.append(nonpivot)
        red = field.zeros((len(cur), len(nonpivot)))
        for c in range(len(cur)):
            unit = field.zeros(len(cur))
            unit[c] = field.one
            residue, _ = reduce_against(field, r, pivots, unit)
            for j, np_c in enumerate(nonpivot):
                red[c, j] = residue[np_c]
        reduce_maps.append(red)
        if not nonpivot:
            death = ell
            break
    if death is None:
        raise InfiniteDimensional(
            f"nonzero reduced paths still appear at path_length_cap={pres.path_length_cap}"
        )

    # global basis
    basis = []
    offsets = []  # per length: global index of stratum basis start
    for ell in range(len(reduced_paths)):
        offsets.append(len(basis))
        for pos in reduced_paths[ell]:
            basis.append(strata[ell][pos])
    dim = len(basis)
    pos_in_stratum = {}
    for ell in range(len(reduced_paths)):
        for j, pos in enumerate(reduced_paths[ell]):
            pos_in_stratum[(ell, pos)] = offsets[ell] + j

    mult = field.zeros((dim, dim, dim))
    for s in range(dim):
        p = basis[s]
        for t in range(dim):
            q = basis[t]
            if p.end != q.start:
                continue
            ell = len(p) + len(q)
            if ell >= len(reduced_paths):
                continue
            key = (p.start, p.arrows + q.arrows)
            idx = index_of[ell][key]
            coords = reduce_maps[ell][idx]
            for j, pos in enumerate(reduced_paths[ell]):
                if coords[j] != field.zero:
                    mult[s, t, pos_in_stratum[(ell, pos)]] = coords[j]

    blocks = {}
    for i, p in enumerate(basis):
        blocks.setdefault((p.start, p.end), []).append(i)
    arrow_elements = []
    for k in range(len(arrow_index)):
        el = field.zeros(dim)
        if 1 < len(reduced_paths):
            key = (arrow_index[k][1], (k,))
            idx = index_of[1].get(key)
            if idx is not None:
                coords = reduce_maps[1][idx]
                for j, pos in enumerate(reduced_paths[1]):
                    el[pos_in_stratum[(1, pos)]] = coords[j]
        arrow_elements.append(el)
    return AlgebraTable(pres, field, basis, mult, blocks, arrow_elements)
