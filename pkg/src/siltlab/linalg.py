"""Exact linear algebra over a prime field GF(p) or the rationals.

Matrices are numpy arrays: dtype int64 for GF(p) (entries normalized to
[0, p)), dtype object holding fractions.Fraction for the rationals.  All
routines are exact; nothing here ever touches floating point.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .errors import UnsupportedField


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class Field:
    """Exact coefficient field, either GF(p) or Q (characteristic 0)."""

    def __init__(self, char: int = 32003):
        if char != 0 and not _is_prime(char):
            raise UnsupportedField(f"field characteristic must be 0 or prime, got {char}")
        self.char = char

    # -- scalars ---------------------------------------------------------
    def scalar(self, x):
        if self.char:
            return int(x) % self.char
        return Fraction(x)

    @property
    def zero(self):
        return 0 if self.char else Fraction(0)

    @property
    def one(self):
        return 1 if self.char else Fraction(1)

    def inv(self, x):
        if self.char:
            return pow(int(x), self.char - 2, self.char)
        return Fraction(1) / x

    def neg(self, x):
        if self.char:
            return (-int(x)) % self.char
        return -x

    # -- arrays ----------------------------------------------------------
    def zeros(self, shape):
        if self.char:
            return np.zeros(shape, dtype=np.int64)
        a = np.empty(shape, dtype=object)
        a[...] = Fraction(0)
        return a

    def array(self, data):
        if self.char:
            return np.asarray(data, dtype=np.int64) % self.char
        a = np.empty(np.asarray(data, dtype=object).shape, dtype=object)
        flat = a.reshape(-1)
        src = np.asarray(data, dtype=object).reshape(-1)
        for i, v in enumerate(src):
            flat[i] = Fraction(v)
        return a

    def eye(self, n):
        m = self.zeros((n, n))
        for i in range(n):
            m[i, i] = self.one
        return m

    def normalize(self, a):
        if self.char:
            return np.asarray(a, dtype=np.int64) % self.char
        return a

    def matmul(self, a, b):
        if self.char:
            if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
                return self.zeros((a.shape[0], b.shape[1]))
            return (a @ b) % self.char
        if a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        if a.shape[1] == 0:
            return self.zeros((a.shape[0], b.shape[1]))
        return np.dot(a, b)

    def is_zero(self, a) -> bool:
        if self.char:
            return not np.any(np.asarray(a) % self.char)
        return all(x == 0 for x in np.asarray(a, dtype=object).reshape(-1))

    def equal(self, a, b) -> bool:
        return self.is_zero(self.normalize(a) - self.normalize(b)) if self.char else self.is_zero(a - b)

    def __repr__(self):
        return f"Field(GF({self.char}))" if self.char else "Field(Q)"

    def __eq__(self, other):
        return isinstance(other, Field) and other.char == self.char

    def __hash__(self):
        return hash(("Field", self.char))


def rref(field: Field, mat):
    """Reduced row echelon form.  Returns (R, pivot_columns).

    R has one row per pivot; zero rows are dropped.
    """
    m = field.normalize(np.array(mat, copy=True))
    rows, cols = m.shape
    pivots = []
    r = 0
    for c in range(cols):
        sel = None
        for i in range(r, rows):
            if m[i, c] != field.zero:
                sel = i
                break
        if sel is None:
            continue
        if sel != r:
            m[[r, sel]] = m[[sel, r]]
        inv = field.inv(m[r, c])
        if field.char:
            m[r] = (m[r] * inv) % field.char
        else:
            m[r] = m[r] * inv
        for i in range(rows):
            if i != r and m[i, c] != field.zero:
                if field.char:
                    m[i] = (m[i] - m[i, c] * m[r]) % field.char
                else:
                    m[i] = m[i] - m[i, c] * m[r]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return m[:r], pivots


def rank(field: Field, mat) -> int:
    if mat.shape[0] == 0 or mat.shape[1] == 0:
        return 0
    return len(rref(field, mat)[1])


def nullspace(field: Field, mat):
    """Basis of {x : mat @ x = 0}, returned as rows of a matrix."""
    rows, cols = mat.shape
    if cols == 0:
        return field.zeros((0, 0))
    if rows == 0:
        return field.eye(cols)
    r, pivots = rref(field, mat)
    free = [c for c in range(cols) if c not in pivots]
    basis = field.zeros((len(free), cols))
    for k, f in enumerate(free):
        basis[k, f] = field.one
        for i, p in enumerate(pivots):
            basis[k, p] = field.neg(r[i, f])
    return basis


def reduce_against(field: Field, r, pivots, v):
    """Reduce vector v against an rref basis (r, pivots).  Returns (residue, coeffs)."""
    v = field.normalize(np.array(v, copy=True))
    coeffs = []
    for i, p in enumerate(pivots):
        c = v[p]
        coeffs.append(c)
        if c != field.zero:
            if field.char:
                v = (v - c * r[i]) % field.char
            else:
                v = v - c * r[i]
    return v, coeffs


def solve(field: Field, a, b):
    """One solution x of a @ x = b, or None.  b is a vector."""
    rows, cols = a.shape
    aug = field.zeros((rows, cols + 1))
    aug[:, :cols] = a
    aug[:, cols] = b
    r, pivots = rref(field, aug)
    if cols in pivots:
        return None
    x = field.zeros(cols)
    for i, p in enumerate(pivots):
        x[p] = r[i, cols]
    return x


def extend_basis(field: Field, base_rows, candidates):
    """Rows of `candidates` that are independent modulo span(base_rows).

    Returns (indices of kept candidates, rref of the combined span).
    """
    if base_rows.shape[0]:
        r, pivots = rref(field, base_rows)
    else:
        r = field.zeros((0, candidates.shape[1] if candidates.shape[0] else 0))
        pivots = []
    kept = []
    r = np.array(r, copy=True)
    pivots = list(pivots)
    for idx in range(candidates.shape[0]):
        residue, _ = reduce_against(field, r, pivots, candidates[idx])
        if not field.is_zero(residue):
            lead = next(c for c in range(len(residue)) if residue[c] != field.zero)
            inv = field.inv(residue[lead])
            if field.char:
                residue = (residue * inv) % field.char
            else:
                residue = residue * inv
            # keep rref property: clear column `lead` in existing rows
            for i in range(r.shape[0]):
                c = r[i, lead]
                if c != field.zero:
                    if field.char:
                        r[i] = (r[i] - c * residue) % field.char
                    else:
                        r[i] = r[i] - c * residue
            pos = sum(1 for p in pivots if p < lead)
            r = np.insert(r, pos, residue, axis=0)
            pivots.insert(pos, lead)
            kept.append(idx)
    return kept, (r, pivots)


def int_det(mat) -> int:
    """Determinant of a small integer matrix, exact (fraction-free recursion)."""
    n = len(mat)
    if n == 0:
        return 1
    rows = [list(map(int, row)) for row in mat]
    sign = 1
    det = 1
    for c in range(n):
        piv = None
        for r_ in range(c, n):
            if rows[r_][c] != 0:
                piv = r_
                break
        if piv is None:
            return 0
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            sign = -sign
        for r_ in range(c + 1, n):
            f = Fraction(rows[r_][c], rows[c][c])
            rows[r_] = [Fraction(x) - f * Fraction(y) for x, y in zip(rows[r_], rows[c])]
    for c in range(n):
        det = det * rows[c][c]
    return int(sign * det)
