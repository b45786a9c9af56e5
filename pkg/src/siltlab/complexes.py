"""Bounded complexes of projectives and chain maps, with shift, cone,
direct sums and Gaussian-elimination minimization.

Cohomological indexing: the differential raises degree, d_{C[1]} = -d_C,
and stalk modules sit in degree 0.  The mapping cone of f: C -> D has term
C^{n+1} + D^n in degree n and differential [[-d_C, 0], [f, d_D]].
"""

from __future__ import annotations

import numpy as np

from . import amat
from .errors import MixedAlgebras, NotChainMap
from .quiver import AlgebraTable


class PerfectComplex:
    def __init__(self, alg: AlgebraTable, terms: dict, diffs: dict, check: bool = True):
        """terms: degree -> tuple of vertex indices; diffs: degree -> A-matrix."""
        self.alg = alg
        self.terms = {int(d): tuple(t) for d, t in terms.items() if len(t)}
        self.diffs = {}
        for d, m in diffs.items():
            d = int(d)
            if d in self.terms and (d + 1) in self.terms:
                self.diffs[d] = alg.field.normalize(m)
        for d in self.terms:
            if d + 1 in self.terms and d not in self.diffs:
                self.diffs[d] = amat.zeros(alg, len(self.terms[d + 1]), len(self.terms[d]))
        if check:
            self.validate()

    # -- structure ---------------------------------------------------------
    @property
    def lo(self):
        return min(self.terms) if self.terms else 0

    @property
    def hi(self):
        return max(self.terms) if self.terms else 0

    def is_zero(self):
        return not self.terms

    def term(self, d):
        return self.terms.get(d, ())

    def diff(self, d):
        if d in self.diffs:
            return self.diffs[d]
        return amat.zeros(self.alg, len(self.term(d + 1)), len(self.term(d)))

    def graded_dims(self):
        out = {}
        for d, t in sorted(self.terms.items()):
            counts = [0] * self.alg.n_simples
            for v in t:
                counts[v] += 1
            out[d] = tuple(counts)
        return out

    def total_rank(self):
        return sum(len(t) for t in self.terms.values())

    def key(self):
        return tuple(sorted((d, tuple(sorted(t))) for d, t in self.terms.items()))

    def validate(self):
        for d, m in self.diffs.items():
            assert m.shape[:2] == (len(self.term(d + 1)), len(self.term(d)))
            if not amat.entries_in_blocks(self.alg, m, self.term(d + 1), self.term(d)):
                raise ValueError("differential entry outside its Hom block")
        for d in list(self.terms):
            if d + 2 in self.terms and d + 1 in self.terms:
                dd = amat.mul(self.alg, self.diff(d + 1), self.diff(d))
                if not amat.is_zero(self.alg, dd):
                    raise ValueError("d.d != 0")

    def is_minimal(self) -> bool:
        for d, m in self.diffs.items():
            rows, cols = self.term(d + 1), self.term(d)
            for r in range(len(rows)):
                for c in range(len(cols)):
                    if amat.unit_coefficient(self.alg, m, r, c, rows, cols) is not None:
                        return False
        return True

    # -- constructions ------------------------------------------------------
    def shift(self, n: int) -> "PerfectComplex":
        """C[n]: degrees translated by -n, differential scaled by (-1)^n."""
        sign = self.alg.field.one if n % 2 == 0 else self.alg.field.neg(self.alg.field.one)
        terms = {d - n: t for d, t in self.terms.items()}
        diffs = {d - n: amat.scale(self.alg, sign, m) for d, m in self.diffs.items()}
        return PerfectComplex(self.alg, terms, diffs, check=False)

    def euler_class(self):
        """Class in K_0: alternating sum of vertex multiplicity vectors."""
        out = [0] * self.alg.n_simples
        for d, t in self.terms.items():
            s = 1 if d % 2 == 0 else -1
            for v in t:
                out[v] += s
        return tuple(out)

    def __repr__(self):
        if self.is_zero():
            return "PerfectComplex(0)"
        parts = []
        for d in range(self.lo, self.hi + 1):
            names = "+".join(f"P{self.alg.vertex_labels[v]}" for v in self.term(d)) or "0"
            parts.append(f"{d}:{names}")
        return f"PerfectComplex({', '.join(parts)})"


def stalk(alg: AlgebraTable, vertices, degree: int = 0) -> PerfectComplex:
    return PerfectComplex(alg, {degree: tuple(vertices)}, {}, check=False)


def projective_stalk(alg: AlgebraTable, v: int, degree: int = 0) -> PerfectComplex:
    return stalk(alg, (v,), degree)


def algebra_stalk(alg: AlgebraTable, degree: int = 0) -> PerfectComplex:
    return stalk(alg, tuple(range(alg.n_simples)), degree)


def zero_complex(alg: AlgebraTable) -> PerfectComplex:
    return PerfectComplex(alg, {}, {}, check=False)


def direct_sum(complexes, alg: AlgebraTable | None = None) -> PerfectComplex:
    complexes = list(complexes)
    if not complexes:
        if alg is None:
            raise ValueError("empty direct sum needs an explicit algebra")
        return zero_complex(alg)
    alg = complexes[0].alg
    if any(c.alg is not alg for c in complexes):
        raise MixedAlgebras("direct sum of complexes over different algebras")
    degrees = sorted({d for c in complexes for d in c.terms})
    terms = {}
    offsets = {d: [] for d in degrees}
    for d in degrees:
        t = []
        for c in complexes:
            offsets[d].append(len(t))
            t.extend(c.term(d))
        terms[d] = tuple(t)
    diffs = {}
    for d in degrees:
        if d + 1 not in terms:
            continue
        m = amat.zeros(alg, len(terms[d + 1]), len(terms[d]))
        for i, c in enumerate(complexes):
            sub = c.diff(d)
            r0 = offsets[d + 1][i]
            c0 = offsets[d][i]
            m[r0 : r0 + sub.shape[0], c0 : c0 + sub.shape[1]] = sub
        diffs[d] = m
    return PerfectComplex(alg, terms, diffs, check=False)


class ChainMap:
    def __init__(self, src: PerfectComplex, tgt: PerfectComplex, comps: dict, check: bool = True):
        self.src = src
        self.tgt = tgt
        self.alg = src.alg
        self.comps = {}
        for d, m in comps.items():
            d = int(d)
            if len(src.term(d)) and len(tgt.term(d)):
                self.comps[d] = self.alg.field.normalize(m)
        if check and not self.is_chain_map():
            raise NotChainMap("components do not commute with the differentials")

    def comp(self, d):
        if d in self.comps:
            return self.comps[d]
        return amat.zeros(self.alg, len(self.tgt.term(d)), len(self.src.term(d)))

    def is_chain_map(self) -> bool:
        degrees = set(self.src.terms) | set(self.tgt.terms)
        for d in degrees:
            left = amat.mul(self.alg, self.tgt.diff(d), self.comp(d))
            right = amat.mul(self.alg, self.comp(d + 1), self.src.diff(d))
            if not amat.equal(self.alg, left, right):
                return False
        return True

    def compose(self, other: "ChainMap") -> "ChainMap":
        """other after self: self: X -> Y, other: Y -> Z gives X -> Z."""
        comps = {}
        for d in set(self.comps) | set(other.comps):
            comps[d] = amat.mul(self.alg, other.comp(d), self.comp(d))
        return ChainMap(self.src, other.tgt, comps, check=False)

    def add(self, other: "ChainMap") -> "ChainMap":
        comps = {}
        for d in set(self.comps) | set(other.comps):
            comps[d] = amat.add(self.alg, self.comp(d), other.comp(d))
        return ChainMap(self.src, self.tgt, comps, check=False)

    def scale(self, c) -> "ChainMap":
        return ChainMap(self.src, self.tgt, {d: amat.scale(self.alg, c, m) for d, m in self.comps.items()}, check=False)

    def neg(self) -> "ChainMap":
        return ChainMap(self.src, self.tgt, {d: amat.neg(self.alg, m) for d, m in self.comps.items()}, check=False)

    def is_zero(self) -> bool:
        return all(amat.is_zero(self.alg, m) for m in self.comps.values())

    def equal(self, other: "ChainMap") -> bool:
        for d in set(self.comps) | set(other.comps):
            if not amat.equal(self.alg, self.comp(d), other.comp(d)):
                return False
        return True

    def shift(self, n: int) -> "ChainMap":
        return ChainMap(
            self.src.shift(n),
            self.tgt.shift(n),
            {d - n: m for d, m in self.comps.items()},
            check=False,
        )


def identity_map(C: PerfectComplex) -> ChainMap:
    comps = {d: amat.identity(C.alg, C.term(d)) for d in C.terms}
    return ChainMap(C, C, comps, check=False)


def zero_map(C: PerfectComplex, D: PerfectComplex) -> ChainMap:
    return ChainMap(C, D, {}, check=False)


def cone(f: ChainMap) -> PerfectComplex:
    """Mapping cone: degree n term C^{n+1} + D^n, d = [[-d_C, 0], [f, d_D]]."""
    C, D, alg = f.src, f.tgt, f.alg
    if not f.is_chain_map():
        raise NotChainMap("cone of a non-chain map")
    degrees = sorted(set(d - 1 for d in C.terms) | set(D.terms))
    terms = {}
    for n in degrees:
        terms[n] = tuple(C.term(n + 1)) + tuple(D.term(n))
    diffs = {}
    for n in degrees:
        if n + 1 not in terms:
            continue
        rows_c, rows_d = len(C.term(n + 2)), len(D.term(n + 1))
        cols_c, cols_d = len(C.term(n + 1)), len(D.term(n))
        m = amat.zeros(alg, rows_c + rows_d, cols_c + cols_d)
        m[:rows_c, :cols_c] = amat.neg(alg, C.diff(n + 1))
        m[rows_c:, :cols_c] = f.comp(n + 1)
        m[rows_c:, cols_c:] = D.diff(n)
        diffs[n] = m
    return PerfectComplex(alg, terms, diffs, check=False)


def cone_with_maps(f: ChainMap):
    """Cone plus the canonical maps D -> cone(f) and cone(f) -> C[1]."""
    C, D, alg = f.src, f.tgt, f.alg
    Z = cone(f)
    inc = {}
    for n in D.terms:
        if n not in Z.terms:
            continue
        m = amat.zeros(alg, len(Z.term(n)), len(D.term(n)))
        cshift = len(C.term(n + 1))
        for i, v in enumerate(D.term(n)):
            m[cshift + i, i, v] = alg.field.one
        inc[n] = m
    proj = {}
    C1 = C.shift(1)
    for n in Z.terms:
        if n not in C1.terms:
            continue
        m = amat.zeros(alg, len(C1.term(n)), len(Z.term(n)))
        for i, v in enumerate(C.term(n + 1)):
            m[i, i, v] = alg.field.one
        proj[n] = m
    return Z, ChainMap(D, Z, inc, check=False), ChainMap(Z, C1, proj, check=False)


def cocone(f: ChainMap):
    """cocone(f) = cone(f)[-1] with the canonical map to the source of f."""
    Z = cone(f)
    N = Z.shift(-1)
    C = f.src
    alg = f.alg
    comps = {}
    for n in N.terms:
        if n not in C.terms:
            continue
        m = amat.zeros(alg, len(C.term(n)), len(N.term(n)))
        # N^n = Z^{n-1} = C^n + D^{n-1}; project onto C^n
        for i, v in enumerate(C.term(n)):
            m[i, i, v] = alg.field.one
        comps[n] = m
    return N, ChainMap(N, C, comps, check=False)


def minimize(C: PerfectComplex):
    """Strip contractible two-term summands by Gaussian elimination.

    Returns (M, incl: M -> C, proj: C -> M) with proj . incl = id_M strictly
    and M homotopy equivalent to C, all differential entries radical.
    """
    alg = C.alg
    f = alg.field
    cur = PerfectComplex(alg, dict(C.terms), dict(C.diffs), check=False)
    incl = ChainMap(cur, C, {d: amat.identity(alg, C.term(d)) for d in C.terms}, check=False)
    proj = ChainMap(C, cur, {d: amat.identity(alg, C.term(d)) for d in C.terms}, check=False)
    while True:
        pivot = None
        for d in sorted(cur.diffs):
            m = cur.diffs[d]
            rows, cols = cur.term(d + 1), cur.term(d)
            for r in range(len(rows)):
                for c in range(len(cols)):
                    u = amat.unit_coefficient(alg, m, r, c, rows, cols)
                    if u is not None:
                        pivot = (d, r, c)
                        break
                if pivot:
                    break
            if pivot:
                break
        if pivot is None:
            break
        d, r, c = pivot
        cur, step_in, step_out = _eliminate(cur, d, r, c)
        incl = step_in.compose(incl)
        proj = proj.compose(step_out)
    return cur, incl, proj


def _eliminate(C: PerfectComplex, d: int, r: int, c: int):
    """Split off the contractible summand P -> P at entry (r, c) of diff d."""
    alg = C.alg
    f = alg.field
    v = C.term(d)[c]
    m = C.diff(d)
    x = m[r, c]
    xinv = amat.local_inverse(alg, x, v)

    cols = [j for j in range(len(C.term(d))) if j != c]
    rows = [i for i in range(len(C.term(d + 1))) if i != r]
    beta = m[r : r + 1, cols] if cols else amat.zeros(alg, 1, 0)
    gamma = m[rows, c : c + 1] if rows else amat.zeros(alg, 0, 1)
    delta = m[np.ix_(rows, cols)] if rows and cols else amat.zeros(alg, len(rows), len(cols))

    terms = {k: (tuple(t) if k not in (d, d + 1) else None) for k, t in C.terms.items()}
    terms[d] = tuple(C.term(d)[j] for j in cols)
    terms[d + 1] = tuple(C.term(d + 1)[i] for i in rows)
    terms = {k: t for k, t in terms.items() if t}

    # x^{-1} as 1x1 matrices
    xinv_m = amat.zeros(alg, 1, 1)
    xinv_m[0, 0] = xinv
    corr = amat.mul(alg, amat.mul(alg, gamma, xinv_m), beta)
    new_d = amat.add(alg, delta, amat.neg(alg, corr))

    diffs = {}
    for k, mm in C.diffs.items():
        if k == d:
            diffs[k] = new_d
        elif k == d - 1:
            diffs[k] = mm[cols, :] if cols else amat.zeros(alg, 0, mm.shape[1])
        elif k == d + 1:
            diffs[k] = mm[:, rows] if rows else amat.zeros(alg, mm.shape[0], 0)
        else:
            diffs[k] = mm
    new = PerfectComplex(alg, terms, diffs, check=False)

    # projection C -> new
    proj = {}
    for k in C.terms:
        if k == d:
            p = amat.zeros(alg, len(cols), len(C.term(d)))
            for i, j in enumerate(cols):
                p[i, j, C.term(d)[j]] = f.one
            proj[k] = p
        elif k == d + 1:
            p = amat.zeros(alg, len(rows), len(C.term(d + 1)))
            for i, j in enumerate(rows):
                p[i, j, C.term(d + 1)[j]] = f.one
            # subtract gamma x^{-1} on the pivot column
            gx = amat.mul(alg, gamma, xinv_m)
            for i in range(len(rows)):
                p[i, r] = f.normalize(p[i, r] - gx[i, 0]) if f.char else p[i, r] - gx[i, 0]
            proj[k] = p
        else:
            proj[k] = amat.identity(alg, C.term(k))
    # inclusion new -> C
    incl = {}
    for k in new.terms:
        if k == d:
            q = amat.zeros(alg, len(C.term(d)), len(cols))
            xb = amat.mul(alg, xinv_m, beta)
            for i, j in enumerate(cols):
                q[j, i, C.term(d)[j]] = f.one
            for i in range(len(cols)):
                q[c, i] = f.normalize(-xb[0, i]) if f.char else -xb[0, i]
            incl[k] = q
        elif k == d + 1:
            q = amat.zeros(alg, len(C.term(d + 1)), len(rows))
            for i, j in enumerate(rows):
                q[j, i, C.term(d + 1)[j]] = f.one
            incl[k] = q
        else:
            incl[k] = amat.identity(alg, C.term(k))
    return new, ChainMap(new, C, incl, check=False), ChainMap(C, new, proj, check=False)
