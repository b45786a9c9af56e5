"""Krull-Schmidt machinery: endomorphism algebras, radicals, idempotent
splitting and lifting, decomposition into indecomposables, isomorphism tests,
and the registry of indecomposable complexes.
"""

from __future__ import annotations

import threading

import numpy as np

from . import amat
from .complexes import ChainMap, PerfectComplex, identity_map, minimize
from .errors import FieldTooSmall, LiftFailed
from .hom import hom_space
from .linalg import Field, nullspace, rank, reduce_against, rref, solve


class FDAlgebra:
    """Associative unital algebra by structure constants over an exact field."""

    def __init__(self, field: Field, mult, unit):
        self.field = field
        self.mult = mult  # (d, d, d)
        self.unit = unit  # vector
        self.dim = mult.shape[0] if mult.shape else 0
        self._rad = None

    def mul(self, x, y):
        f = self.field
        out = f.zeros(self.dim)
        for s in range(self.dim):
            if x[s] == f.zero:
                continue
            for t in range(self.dim):
                if y[t] == f.zero:
                    continue
                c = x[s] * y[t]
                if f.char:
                    out = (out + c * self.mult[s, t]) % f.char
                else:
                    out = out + c * self.mult[s, t]
        return out

    def left_mult_matrix(self, x):
        """Matrix of y |-> x*y acting on column coordinate vectors."""
        f = self.field
        m = f.zeros((self.dim, self.dim))
        for t in range(self.dim):
            e = f.zeros(self.dim)
            e[t] = f.one
            m[:, t] = self.mul(x, e)
        return m

    def power(self, x, n):
        acc = np.array(self.unit, copy=True)
        for _ in range(n):
            acc = self.mul(acc, x)
        return acc

    def is_nilpotent(self, x) -> bool:
        m = self.left_mult_matrix(x)
        p = np.array(m, copy=True)
        for _ in range(self.dim + 1):
            if self.field.is_zero(p):
                return True
            p = self.field.matmul(p, m)
        return self.field.is_zero(p)

    def is_invertible(self, x) -> bool:
        m = self.left_mult_matrix(x)
        return rank(self.field, m) == self.dim

    def minpoly(self, x, unit=None):
        """Coefficients (ascending) of the minimal polynomial of x."""
        f = self.field
        one = unit if unit is not None else self.unit
        powers = [np.array(one, copy=True)]
        while True:
            mat = np.stack(powers)
            if rank(f, mat) < len(powers):
                break
            powers.append(self.mul(powers[-1], x))
        # last power is dependent: solve the relation
        mat = np.stack(powers[:-1]).T
        sol = solve(f, mat, powers[-1])
        assert sol is not None
        coeffs = [f.neg(c) for c in sol] + [f.one]
        return coeffs

    def radical(self):
        """Radical basis rows, via the trace form of the regular representation."""
        if self._rad is not None:
            return self._rad
        f = self.field
        if self.dim == 0:
            self._rad = f.zeros((0, 0))
            return self._rad
        if f.char and f.char <= self.dim:
            raise FieldTooSmall(
                f"radical computation needs characteristic 0 or > dim={self.dim}; rerun with a larger prime"
            )
        lms = [self.left_mult_matrix(self._basis_el(i)) for i in range(self.dim)]
        gram = f.zeros((self.dim, self.dim))
        for i in range(self.dim):
            for j in range(self.dim):
                prod = f.matmul(lms[i], lms[j])
                tr = f.zero
                for k in range(self.dim):
                    tr = tr + prod[k, k]
                gram[i, j] = tr % f.char if f.char else tr
        rad = nullspace(f, gram)
        for i in range(rad.shape[0]):
            if not self.is_nilpotent(rad[i]):
                raise ArithmeticError("trace-form kernel element not nilpotent (bug)")
        self._rad = rref(f, rad)[0] if rad.shape[0] else rad
        return self._rad

    def in_radical(self, x) -> bool:
        r = self.radical()
        piv = [int(np.argmax(r[i] != self.field.zero)) if self.field.char else next(c for c in range(self.dim) if r[i][c] != 0) for i in range(r.shape[0])]
        residue, _ = reduce_against(self.field, r, piv, x)
        return self.field.is_zero(residue)

    def _basis_el(self, i):
        e = self.field.zeros(self.dim)
        e[i] = self.field.one
        return e


def quotient_algebra(E: FDAlgebra):
    """E / rad(E): returns (Ebar, projection matrix, section matrix)."""
    f = E.field
    rad = E.radical()
    r, piv = (rref(f, rad) if rad.shape[0] else (f.zeros((0, E.dim)), []))
    free = [c for c in range(E.dim) if c not in piv]
    proj = f.zeros((E.dim, len(free)))
    for k in range(E.dim):
        e = f.zeros(E.dim)
        e[k] = f.one
        residue, _ = reduce_against(f, r, piv, e)
        for j, c in enumerate(free):
            proj[k, j] = residue[c]
    sect = f.zeros((len(free), E.dim))
    for j, c in enumerate(free):
        sect[j, c] = f.one
    d = len(free)
    mult = f.zeros((d, d, d))
    for s in range(d):
        for t in range(d):
            prod = E.mul(sect[s], sect[t])
            mult[s, t] = f.matmul(prod.reshape(1, -1), proj)[0]
    unit = f.matmul(E.unit.reshape(1, -1), proj)[0]
    return FDAlgebra(f, mult, unit), proj, sect


def _factor_minpoly(field: Field, coeffs):
    """Primary factorization of a monic polynomial via sympy. Returns list of
    (factor coeffs ascending, multiplicity)."""
    import sympy

    x = sympy.symbols("x")
    if field.char:
        poly = sympy.Poly([int(c) for c in reversed(coeffs)], x, modulus=field.char)
    else:
        poly = sympy.Poly([sympy.Rational(c.numerator, c.denominator) for c in reversed(coeffs)], x, domain="QQ")
    _, factors = poly.factor_list()
    out = []
    for fac, mult in factors:
        cs = fac.all_coeffs()  # descending
        lead = cs[0]
        cs = [c / lead for c in cs]
        asc = list(reversed(cs))
        if field.char:
            out.append(([field.scalar(int(c) % field.char) for c in asc], mult))
        else:
            from fractions import Fraction

            out.append(([Fraction(c.p, c.q) for c in asc], mult))
    return out


def _poly_eval(E: FDAlgebra, coeffs, x, unit):
    acc = E.field.zeros(E.dim)
    p = np.array(unit, copy=True)
    for c in coeffs:
        if c != E.field.zero:
            if E.field.char:
                acc = (acc + c * p) % E.field.char
            else:
                acc = acc + c * p
        p = E.mul(p, x)
    return acc


def _poly_mul(field: Field, a, b):
    out = [field.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % field.char if field.char else out[i + j] + x * y
    return out


def _poly_divmod(field: Field, a, b):
    a = list(a)
    out = [field.zero] * max(0, len(a) - len(b) + 1)
    inv_lead = field.inv(b[-1])
    for i in range(len(a) - len(b), -1, -1):
        c = (a[i + len(b) - 1] * inv_lead) % field.char if field.char else a[i + len(b) - 1] * inv_lead
        out[i] = c
        for j in range(len(b)):
            a[i + j] = (a[i + j] - c * b[j]) % field.char if field.char else a[i + j] - c * b[j]
    while len(a) > 1 and a[-1] == field.zero:
        a.pop()
    return out, a


def _poly_gcdex(field: Field, a, b):
    """(g, u, v) with u*a + v*b = g monic."""
    r0, r1 = list(a), list(b)
    u0, u1 = [field.one], [field.zero]
    v0, v1 = [field.zero], [field.one]
    while any(c != field.zero for c in r1):
        q, r = _poly_divmod(field, r0, r1)
        r0, r1 = r1, r
        u0, u1 = u1, _poly_sub(field, u0, _poly_mul(field, q, u1))
        v0, v1 = v1, _poly_sub(field, v0, _poly_mul(field, q, v1))
        if len(r1) == 1 and r1[0] == field.zero:
            break
    lead = r0[-1]
    inv = field.inv(lead)
    scale = lambda p: [(c * inv) % field.char if field.char else c * inv for c in p]
    return scale(r0), scale(u0), scale(v0)


def _poly_sub(field: Field, a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else field.zero
        y = b[i] if i < len(b) else field.zero
        out.append((x - y) % field.char if field.char else x - y)
    return out


class SplitReport:
    def __init__(self):
        self.extension_field = False


def split_semisimple(E: FDAlgebra, report: SplitReport, tries: int = 64):
    """Complete orthogonal primitive idempotents of a semisimple algebra."""
    f = E.field
    out = []
    queue = [np.array(E.unit, copy=True)]
    rng = np.random.default_rng(0x51171AB)
    while queue:
        e = queue.pop()
        # corner basis
        corner = []
        for i in range(E.dim):
            v = E.mul(E.mul(e, E._basis_el(i)), e)
            corner.append(v)
        corner = np.stack(corner)
        crows, cpiv = rref(f, corner)
        cdim = crows.shape[0]
        if cdim == 1:
            out.append(e)
            continue
        candidates = [crows[i] for i in range(cdim)]
        for i in range(cdim):
            for j in range(i + 1, min(cdim, i + 4)):
                candidates.append(
                    (crows[i] + crows[j]) % f.char if f.char else crows[i] + crows[j]
                )
        split_found = False
        field_certified = False
        commutative = _corner_commutative(E, crows)
        for attempt in range(tries):
            if attempt < len(candidates):
                x = candidates[attempt]
            else:
                coef = rng.integers(0, f.char if f.char else 1000, cdim)
                x = f.zeros(E.dim)
                for i in range(cdim):
                    x = (x + int(coef[i]) * crows[i]) % f.char if f.char else x + int(coef[i]) * crows[i]
            mp = E.minpoly(x, unit=e)
            factors = _factor_minpoly(f, mp)
            if len(factors) >= 2:
                idems = _crt_idempotents(E, mp, factors, x, e)
                queue.extend(idems)
                split_found = True
                break
            if len(mp) - 1 == cdim and commutative:
                field_certified = True
        if split_found:
            continue
        if field_certified:
            # corner is a genuine field extension: local, so primitive
            report.extension_field = True
            out.append(e)
            continue
        raise FieldTooSmall(
            "semisimple quotient could not be split over the prime field; rerun with another prime"
        )
    return out


def _corner_commutative(E: FDAlgebra, crows) -> bool:
    for i in range(crows.shape[0]):
        for j in range(i + 1, crows.shape[0]):
            d = E.mul(crows[i], crows[j]) - E.mul(crows[j], crows[i])
            if not E.field.is_zero(E.field.normalize(d) if E.field.char else d):
                return False
    return True


def _crt_idempotents(E: FDAlgebra, mp, factors, x, e):
    """Orthogonal idempotents from the primary factorization of minpoly(x)."""
    f = E.field
    idems = []
    for fac, mult in factors:
        primary = fac
        for _ in range(mult - 1):
            primary = _poly_mul(f, primary, fac)
        qpoly, rem = _poly_divmod(f, mp, primary)
        assert all(c == f.zero for c in rem)
        g, u, v = _poly_gcdex(f, qpoly, primary)
        assert len(g) == 1
        h = _poly_mul(f, u, qpoly)
        idem = _poly_eval(E, h, x, e)
        idems.append(idem)
    total = f.zeros(E.dim)
    for i in idems:
        total = (total + i) % f.char if f.char else total + i
    assert f.is_zero(f.normalize(total - e) if f.char else total - e)
    return idems


def newton_lift_idempotent(E: FDAlgebra, x, cap: int = 64):
    """Lift x with x^2 = x mod nilpotents to an exact idempotent: e <- 3e^2 - 2e^3."""
    f = E.field
    e = np.array(x, copy=True)
    for _ in range(cap):
        e2 = E.mul(e, e)
        if f.is_zero(f.normalize(e2 - e) if f.char else e2 - e):
            return e
        e3 = E.mul(e2, e)
        e = (3 * e2 - 2 * e3) % f.char if f.char else 3 * e2 - 2 * e3
    raise LiftFailed("idempotent lifting did not converge")


def primitive_idempotents(E: FDAlgebra):
    """Complete orthogonal set of primitive idempotents of E (exact)."""
    f = E.field
    if E.dim == 0:
        return [], SplitReport()
    report = SplitReport()
    Ebar, proj, sect = quotient_algebra(E)
    prims_bar = split_semisimple(Ebar, report)
    if len(prims_bar) == 1:
        return [np.array(E.unit, copy=True)], report
    lifted = []
    g = np.array(E.unit, copy=True)  # unit of the current corner
    for k, ebar in enumerate(prims_bar):
        if k == len(prims_bar) - 1:
            lifted.append(g)
            break
        x0 = f.matmul(ebar.reshape(1, -1), sect)[0]  # a representative in E
        x = E.mul(E.mul(g, x0), g)
        e = newton_lift_idempotent(E, x)
        lifted.append(e)
        g = (g - e) % f.char if f.char else g - e
    # sanity: orthogonal, sum to 1
    total = f.zeros(E.dim)
    for e in lifted:
        total = (total + e) % f.char if f.char else total + e
    assert f.is_zero(f.normalize(total - E.unit) if f.char else total - E.unit)
    return lifted, report


# --------------------------------------------------------------------------
# endomorphism algebras of complexes and splitting of summands


class EndoAlgebra:
    """End_K(C) for minimal C, with chain-map representatives."""

    def __init__(self, C: PerfectComplex):
        self.C = C
        self.hs = hom_space(C, C, 0)
        self.reps = self.hs.basis_maps()
        f = C.alg.field
        d = len(self.reps)
        mult = f.zeros((d, d, d))
        for s in range(d):
            for t in range(d):
                comp = self.reps[t].compose(self.reps[s])  # s after t = reps[s] . reps[t]
                mult[s, t] = self.hs.class_coords(comp)
        unit = self.hs.class_coords(identity_map(C)) if d else f.zeros(0)
        self.algebra = FDAlgebra(f, mult, unit)

    def realize(self, coords) -> ChainMap:
        f = self.C.alg.field
        out = None
        for i, c in enumerate(coords):
            if c == f.zero:
                continue
            term = self.reps[i].scale(c)
            out = term if out is None else out.add(term)
        if out is None:
            from .complexes import zero_map

            return zero_map(self.C, self.C)
        return out


def endo_algebra(C: PerfectComplex) -> EndoAlgebra:
    return EndoAlgebra(C)


def _top_scalar_blocks(C: PerfectComplex, eps: ChainMap):
    """Per degree, per vertex: scalar idempotent matrix of unit coefficients."""
    alg = C.alg
    f = alg.field
    out = {}
    for d in C.terms:
        terms = C.term(d)
        m = eps.comp(d)
        for v in set(terms):
            idx = [i for i, t in enumerate(terms) if t == v]
            blk = f.zeros((len(idx), len(idx)))
            for a, i in enumerate(idx):
                for b, j in enumerate(idx):
                    blk[a, b] = m[i, j, v]
            out[(d, v)] = (idx, blk)
    return out


def split_by_idempotent(C: PerfectComplex, eps: ChainMap):
    """Split off the image of an exact idempotent chain map eps on minimal C.

    Returns the minimized image complex.
    """
    alg = C.alg
    f = alg.field
    blocks = _top_scalar_blocks(C, eps)
    # new terms and scalar factor matrices per degree
    U = {}
    W = {}
    new_terms = {}
    for d in sorted(C.terms):
        terms = C.term(d)
        n = len(terms)
        cols = []  # (vertex, scalar column over old summands)
        wrows = []
        new_t = []
        for v in sorted(set(terms)):
            idx, blk = blocks[(d, v)]
            r, piv = rref(f, blk)
            C0 = blk[:, piv] if piv else f.zeros((len(idx), 0))
            for j in range(len(piv)):
                col = f.zeros(n)
                for a, i in enumerate(idx):
                    col[i] = C0[a, j]
                cols.append((v, col))
                new_t.append(v)
            for jr in range(r.shape[0]):
                row = f.zeros(n)
                for a, i in enumerate(idx):
                    row[i] = r[jr, a]
                wrows.append(row)
        new_terms[d] = tuple(new_t)
        u = amat.zeros(alg, n, len(cols))
        for j, (v, col) in enumerate(cols):
            for i in range(n):
                if col[i] != f.zero:
                    u[i, j, v] = col[i]
        w = amat.zeros(alg, len(wrows), n)
        for i, row in enumerate(wrows):
            v = new_t[i]
            for j in range(n):
                if row[j] != f.zero:
                    w[i, j, v] = row[j]
        U[d] = u
        W[d] = w
    # iota0 = eps . U, pi0 = W . eps (graded maps)
    iota = {}
    pi = {}
    for d in C.terms:
        iota[d] = amat.mul(alg, eps.comp(d), U[d])
        pi[d] = amat.mul(alg, W[d], eps.comp(d))
    # rho = pi0 iota0 - id, nilpotent; correct iota by (1+rho)^{-1}
    for d in C.terms:
        n_new = len(new_terms[d])
        rho = amat.mul(alg, pi[d], iota[d])
        ident = amat.identity(alg, new_terms[d])
        rho = amat.add(alg, rho, amat.neg(alg, ident))
        # (1 + rho)^{-1} = sum (-rho)^k
        inv = ident
        power = amat.neg(alg, rho)
        guard = 0
        while not amat.is_zero(alg, power):
            inv = amat.add(alg, inv, power)
            power = amat.mul(alg, power, amat.neg(alg, rho))
            guard += 1
            if guard > 4 * (C.total_rank() + alg.dim):
                raise LiftFailed("correction series did not terminate (bug)")
        iota[d] = amat.mul(alg, iota[d], inv)
    new_diffs = {}
    for d in C.terms:
        if d + 1 not in C.terms:
            continue
        new_diffs[d] = amat.mul(alg, pi[d + 1], amat.mul(alg, C.diff(d), iota[d]))
    N = PerfectComplex(alg, new_terms, new_diffs, check=False)
    # exactness checks (cheap at desk scale)
    for d in C.terms:
        pid = amat.mul(alg, pi[d], iota[d])
        assert amat.equal(alg, pid, amat.identity(alg, new_terms[d])), "pi.iota != id"
        ipd = amat.mul(alg, iota[d], pi[d])
        assert amat.equal(alg, ipd, eps.comp(d)), "iota.pi != idempotent"
    M, _, _ = minimize(N)
    return M


def lift_homotopy_idempotent(C: PerfectComplex, eps0: ChainMap, cap: int = 64) -> ChainMap:
    """Make an exact chain-level idempotent out of a homotopy idempotent."""
    e = eps0
    for _ in range(cap):
        e2 = e.compose(e)
        if e2.equal(e):
            return e
        e3 = e2.compose(e)
        e = e2.scale(e.alg.field.scalar(3)).add(e3.scale(e.alg.field.neg(e.alg.field.scalar(2))))
    raise LiftFailed("chain-level idempotent lifting did not converge")


def split_summand(C: PerfectComplex, coords, endo: EndoAlgebra) -> PerfectComplex:
    eps0 = endo.realize(coords)
    eps = lift_homotopy_idempotent(C, eps0)
    return split_by_idempotent(C, eps)


def decompose_complex(C: PerfectComplex):
    """List of indecomposable minimal complexes whose sum is homotopy
    equivalent to C (with multiplicity)."""
    M, _, _ = minimize(C)
    if M.is_zero():
        return []
    endo = endo_algebra(M)
    if endo.algebra.dim == 1:
        return [M]
    prims, _report = primitive_idempotents(endo.algebra)
    if len(prims) == 1:
        return [M]
    return [split_summand(M, e, endo) for e in prims]


def are_isomorphic(C: PerfectComplex, D: PerfectComplex) -> bool:
    """Isomorphism in the homotopy category: equal decomposition multisets."""
    pc = decompose_complex(C)
    pd = decompose_complex(D)
    if len(pc) != len(pd):
        return False
    used = [False] * len(pd)
    for a in pc:
        hit = None
        for i, b in enumerate(pd):
            if not used[i] and are_isomorphic_indec(a, b):
                hit = i
                break
        if hit is None:
            return False
        used[hit] = True
    return True


def are_isomorphic_indec(C: PerfectComplex, D: PerfectComplex, endoC: EndoAlgebra = None) -> bool:
    """Isomorphism test for minimal indecomposable complexes via the pairing
    Hom(C, D) x Hom(D, C) -> End(C)."""
    if C.key() != D.key():
        return False
    fwd = hom_space(C, D, 0)
    if fwd.dim == 0:
        return False
    bwd = hom_space(D, C, 0)
    if bwd.dim == 0:
        return False
    endo = endoC if endoC is not None else endo_algebra(C)
    E = endo.algebra
    for i in range(fwd.dim):
        f_map = fwd.basis_maps()[i]
        for j in range(bwd.dim):
            g_map = bwd.basis_maps()[j]
            comp = f_map.compose(g_map)  # C -> D -> C
            coords = endo.hs.class_coords(comp)
            if not E.in_radical(coords):
                return True
    return False


# --------------------------------------------------------------------------


def _shifted_label(base: str, n: int) -> str:
    if base.endswith("]") and "[" in base:
        stem, k = base.rsplit("[", 1)
        total = int(k[:-1]) + n
        return stem if total == 0 else f"{stem}[{total}]"
    return f"{base}[{n}]"


class RegisteredComplex:
    def __init__(self, rid: int, complex_: PerfectComplex, label: str):
        self.id = rid
        self.complex = complex_
        self.label = label
        self.key = complex_.key()

    def __repr__(self):
        return f"<{self.id}:{self.label}>"


class Registry:
    """Global store of indecomposable complexes up to isomorphism.

    Insert-or-find is synchronized; ids are dense ints in insertion order.
    """

    def __init__(self, alg):
        self.alg = alg
        self._lock = threading.RLock()
        self._items = []
        self._buckets = {}
        self._shape_buckets = {}  # shift-normalized key -> ids, for labels
        self._endos = {}
        self._shift_cache = {}

    def __len__(self):
        return len(self._items)

    def get(self, rid: int) -> RegisteredComplex:
        return self._items[rid]

    def complex(self, rid: int) -> PerfectComplex:
        return self._items[rid].complex

    def label(self, rid: int) -> str:
        return self._items[rid].label

    def endo(self, rid: int) -> EndoAlgebra:
        with self._lock:
            if rid not in self._endos:
                self._endos[rid] = endo_algebra(self._items[rid].complex)
            return self._endos[rid]

    def _auto_label(self, C: PerfectComplex, rid: int) -> str:
        if len(C.terms) == 1:
            (d, t), = C.terms.items()
            if len(t) == 1:
                base = f"P{self.alg.vertex_labels[t[0]]}"
                return base if d == 0 else f"{base}[{-d}]"
        return f"X{rid}"

    def register(self, C: PerfectComplex, assume_minimal: bool = False) -> int:
        """Insert-or-find an indecomposable complex; returns its id."""
        if not assume_minimal:
            C, _, _ = minimize(C)
        key = C.key()
        shape = tuple((d - C.lo, t) for d, t in key) if key else key
        with self._lock:
            for rid in self._buckets.get(key, []):
                if are_isomorphic_indec(self._items[rid].complex, C):
                    return rid
            rid = len(self._items)
            label = self._auto_label(C, rid)
            if label == f"X{rid}":
                # recognize shifts of known classes for readable labels
                for other in self._shape_buckets.get(shape, []):
                    m = self._items[other].complex.lo - C.lo
                    if m and are_isomorphic_indec(self._items[other].complex.shift(m), C):
                        label = _shifted_label(self._items[other].label, m)
                        self._shift_cache[(other, m)] = rid
                        self._shift_cache[(rid, -m)] = other
                        break
            item = RegisteredComplex(rid, C, label)
            self._items.append(item)
            self._buckets.setdefault(key, []).append(rid)
            self._shape_buckets.setdefault(shape, []).append(rid)
            return rid

    def register_decomposition(self, C: PerfectComplex):
        """Decompose C and return the sorted list of summand ids (with multiplicity)."""
        return sorted(self.register(p, assume_minimal=True) for p in decompose_complex(C))

    def shift_id(self, rid: int, n: int) -> int:
        if n == 0:
            return rid
        with self._lock:
            if (rid, n) in self._shift_cache:
                return self._shift_cache[(rid, n)]
        before = len(self._items)
        out = self.register(self._items[rid].complex.shift(n), assume_minimal=True)
        with self._lock:
            self._shift_cache[(rid, n)] = out
            self._shift_cache[(out, -n)] = rid
            if out >= before and self._items[out].label == f"X{out}":
                self._items[out].label = _shifted_label(self._items[rid].label, n)
        return out
