"""Matrices with entries in the algebra, stored as 3D arrays (rows, cols, dim A).

Entry [r, c] of a map  (sum of P_{v_c})  ->  (sum of P_{u_r})  lives in the
block of paths u_r -> v_c and acts by left multiplication.
"""

from __future__ import annotations

import numpy as np

from .quiver import AlgebraTable


def zeros(alg: AlgebraTable, rows: int, cols: int):
    return alg.field.zeros((rows, cols, alg.dim))


def identity(alg: AlgebraTable, verts):
    m = zeros(alg, len(verts), len(verts))
    for i, v in enumerate(verts):
        m[i, i, v] = alg.field.one
    return m


def mul(alg: AlgebraTable, X, Y):
    """Matrix product over A: (X Y)[r, c] = sum_m X[r, m] * Y[m, c]."""
    f = alg.field
    r, m, _ = X.shape
    m2, c, _ = Y.shape
    assert m == m2, "shape mismatch"
    out = zeros(alg, r, c)
    if r == 0 or c == 0 or m == 0:
        return out
    # T1[r, m, t, d] = sum_s X[r, m, s] mult[s, t, d]
    t1 = np.tensordot(X, alg.mult, axes=([2], [0]))
    if f.char:
        t1 = t1 % f.char
    out = np.einsum("rmtd,mct->rcd", t1, Y) if f.char else _obj_contract(t1, Y)
    if f.char:
        out = out % f.char
    return out


def _obj_contract(t1, Y):
    r, m, t, d = t1.shape
    _, c, _ = Y.shape
    out = np.empty((r, c, d), dtype=object)
    for i in range(r):
        for j in range(c):
            for k in range(d):
                acc = 0
                for mm in range(m):
                    for tt in range(t):
                        acc = acc + t1[i, mm, tt, k] * Y[mm, j, tt]
                out[i, j, k] = acc
    return out


def add(alg: AlgebraTable, X, Y):
    f = alg.field
    return (X + Y) % f.char if f.char else X + Y


def neg(alg: AlgebraTable, X):
    f = alg.field
    return (-X) % f.char if f.char else -X


def scale(alg: AlgebraTable, c, X):
    f = alg.field
    return (c * X) % f.char if f.char else c * X


def is_zero(alg: AlgebraTable, X) -> bool:
    return alg.field.is_zero(X)


def equal(alg: AlgebraTable, X, Y) -> bool:
    return alg.field.is_zero(add(alg, X, neg(alg, Y)))


def entry_mul(alg: AlgebraTable, x, y):
    return alg.el_mul(x, y)


def hstack(alg: AlgebraTable, mats):
    return np.concatenate(mats, axis=1)


def vstack(alg: AlgebraTable, mats):
    return np.concatenate(mats, axis=0)


def block_diag(alg: AlgebraTable, mats):
    rows = sum(m.shape[0] for m in mats)
    cols = sum(m.shape[1] for m in mats)
    out = zeros(alg, rows, cols)
    r = c = 0
    for m in mats:
        out[r : r + m.shape[0], c : c + m.shape[1]] = m
        r += m.shape[0]
        c += m.shape[1]
    return out


def entries_in_blocks(alg: AlgebraTable, X, row_verts, col_verts) -> bool:
    """Every entry supported on the block of paths row_vertex -> col_vertex."""
    f = alg.field
    for r, u in enumerate(row_verts):
        for c, v in enumerate(col_verts):
            for s in range(alg.dim):
                if X[r, c, s] != f.zero:
                    p = alg.basis[s]
                    if p.start != u or p.end != v:
                        return False
    return True


def unit_coefficient(alg: AlgebraTable, X, r, c, row_verts, col_verts):
    """Coefficient of the vertex idempotent in a same-vertex entry, else None."""
    u, v = row_verts[r], col_verts[c]
    if u != v:
        return None
    coeff = X[r, c, u]
    return coeff if coeff != alg.field.zero else None


def local_inverse(alg: AlgebraTable, x, v):
    """Inverse of a unit x in e_v A e_v (nonzero e_v coefficient)."""
    f = alg.field
    block = alg.block(v, v)
    from .linalg import solve

    mat = f.zeros((len(block), len(block)))
    for j, b in enumerate(block):
        prod = alg.mul_el_basis(x, b)
        for i, b2 in enumerate(block):
            mat[i, j] = prod[b2]
    rhs = f.zeros(len(block))
    rhs[block.index(v)] = f.one
    sol = solve(f, mat, rhs)
    assert sol is not None, "entry was not invertible"
    out = alg.zero_el()
    for j, b in enumerate(block):
        out[b] = sol[j]
    return out
