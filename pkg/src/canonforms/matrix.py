"""Dense exact matrices over Q, Z, GF(p), or a univariate polynomial ring.

Entries are raw domain values (Fraction, int, GFElement, Poly); the matrix
carries the domain object.  Everything is immutable; all operations are pure
functions, so concurrent use is safe.

The determinant is computed by fraction-free Bareiss elimination, whose exact
divisions are asserted; the same code path serves fields, Z and F[x].
"""

from __future__ import annotations

import itertools
from typing import Iterable, List, Sequence, Tuple

from .algebra import (
    DomainError,
    IntegerRing,
    Poly,
    scalar_is_zero,
)


class PolynomialRing:
    """The ring F[x] of univariate polynomials over a base field (or Z)."""

    _instances: dict = {}
    is_field = False

    def __new__(cls, base):
        inst = cls._instances.get(base)
        if inst is None:
            inst = super().__new__(cls)
            inst.base = base
            cls._instances[base] = inst
        return inst

    @property
    def characteristic(self):
        return self.base.characteristic

    def coerce(self, x):
        if isinstance(x, Poly):
            if x.domain != self.base:
                raise DomainError(f"{x.domain}[x] element in {self}")
            return x
        return Poly.constant(self.base, self.base.coerce(x))

    @property
    def zero(self):
        return Poly.zero(self.base)

    @property
    def one(self):
        return Poly.one(self.base)

    def contains(self, x) -> bool:
        return isinstance(x, Poly) and x.domain == self.base

    def __repr__(self):
        return f"{self.base}[x]"


class ShapeError(ValueError):
    """Dimension mismatch or non-square input where a square one is required."""


class SingularMatrixError(ArithmeticError):
    """Inversion of a matrix whose determinant is zero."""

    def __init__(self, message, determinant=None):
        super().__init__(message)
        self.determinant = determinant


class Mat:
    """An immutable dense matrix over one coefficient domain."""

    __slots__ = ("domain", "rows", "cols", "entries")

    def __init__(self, domain, rows: Iterable[Iterable]):
        data = tuple(tuple(domain.coerce(e) for e in row) for row in rows)
        if not data or not data[0]:
            raise ShapeError("matrix dimensions must be positive")
        w = len(data[0])
        if any(len(r) != w for r in data):
            raise ShapeError("ragged rows")
        self.domain = domain
        self.rows = len(data)
        self.cols = w
        self.entries = data

    @classmethod
    def _raw(cls, domain, data: tuple) -> "Mat":
        # internal fast path: entries already coerced, shape already valid
        obj = object.__new__(cls)
        obj.domain = domain
        obj.rows = len(data)
        obj.cols = len(data[0])
        obj.entries = data
        return obj

    # -- constructors

    @classmethod
    def identity(cls, domain, n: int) -> "Mat":
        z, o = domain.zero, domain.one
        return cls(domain, ((o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, domain, rows: int, cols: int) -> "Mat":
        z = domain.zero
        return cls(domain, ((z for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def column(cls, domain, values) -> "Mat":
        return cls(domain, ((v,) for v in values))

    @classmethod
    def block_diagonal(cls, domain, blocks: Sequence["Mat"]) -> "Mat":
        if not blocks:
            raise ShapeError("no blocks")
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        z = domain.zero
        out = [[z] * m for _ in range(n)]
        r = c = 0
        for b in blocks:
            if b.domain != domain:
                raise DomainError("block domain mismatch")
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r + i][c + j] = b.entries[i][j]
            r += b.rows
            c += b.cols
        return cls(domain, out)

    # -- structure

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int):
        return self.entries[i]

    def col(self, j: int):
        return tuple(self.entries[i][j] for i in range(self.rows))

    def is_square(self) -> bool:
        return self.rows == self.cols

    def transpose(self) -> "Mat":
        return Mat._raw(self.domain, tuple(zip(*self.entries)))

    def submatrix(self, row_idx, col_idx) -> "Mat":
        ent = self.entries
        return Mat._raw(self.domain,
                        tuple(tuple(ent[i][j] for j in col_idx)
                              for i in row_idx))

    def map(self, fn, domain=None) -> "Mat":
        return Mat(domain or self.domain,
                   ((fn(e) for e in row) for row in self.entries))

    def _check(self, other) -> "Mat":
        if not isinstance(other, Mat):
            raise TypeError("expected a matrix")
        if other.domain != self.domain:
            raise DomainError(f"{self.domain} vs {other.domain}")
        return other

    # -- arithmetic

    def __add__(self, other):
        o = self._check(other)
        if (self.rows, self.cols) != (o.rows, o.cols):
            raise ShapeError("shape mismatch in addition")
        return Mat._raw(self.domain,
                        tuple(tuple(a + b for a, b in zip(r1, r2))
                              for r1, r2 in zip(self.entries, o.entries)))

    def __sub__(self, other):
        o = self._check(other)
        if (self.rows, self.cols) != (o.rows, o.cols):
            raise ShapeError("shape mismatch in subtraction")
        return Mat._raw(self.domain,
                        tuple(tuple(a - b for a, b in zip(r1, r2))
                              for r1, r2 in zip(self.entries, o.entries)))

    def __neg__(self):
        return Mat._raw(self.domain,
                        tuple(tuple(-e for e in row) for row in self.entries))

    def __mul__(self, other):
        if isinstance(other, Mat):
            o = self._check(other)
            if self.cols != o.rows:
                raise ShapeError("shape mismatch in multiplication")
            oc = list(zip(*o.entries))
            z = self.domain.zero
            out = []
            for r in self.entries:
                new = []
                for c in oc:
                    acc = z
                    for a, b in zip(r, c):
                        if not scalar_is_zero(a) and not scalar_is_zero(b):
                            acc = acc + a * b
                    new.append(acc)
                out.append(tuple(new))
            return Mat._raw(self.domain, tuple(out))
        c = self.domain.coerce(other)
        return Mat._raw(self.domain,
                        tuple(tuple(c * e for e in row) for row in self.entries))

    __rmul__ = __mul__

    def scale(self, c) -> "Mat":
        return self * c

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.domain == other.domain and self.entries == other.entries)

    def __hash__(self):
        return hash((self.domain, self.entries))

    def __repr__(self):
        body = "; ".join(" ".join(str(e) for e in row) for row in self.entries)
        return f"Mat({self.domain}, [{body}])"


_SPARSE_DET_BUDGET = 4096


def det(m: Mat):
    """Exact determinant.

    Dispatches between fraction-free Bareiss elimination and, for very
    sparse matrices, a cofactor-expansion fast path (same value, far fewer
    ring operations on the minor-enumeration workloads).
    """
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    if m.rows > 2:
        budget = 1
        for row in m.entries:
            nnz = sum(1 for e in row if not scalar_is_zero(e))
            if nnz == 0:
                return m.domain.zero
            budget *= nnz
            if budget > _SPARSE_DET_BUDGET:
                break
        else:
            return _det_expand(m)
    return det_bareiss(m)


def det_bareiss(m: Mat):
    """Determinant by fraction-free Bareiss elimination.

    Works over any integral domain whose exact divisions we can perform
    (fields, Z, F[x]); every division is checked to be exact.
    """
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    n = m.rows
    dom = m.domain
    a = [list(row) for row in m.entries]
    sign = 1
    prev = dom.one
    for k in range(n - 1):
        if scalar_is_zero(a[k][k]):
            pivot_row = None
            for i in range(k + 1, n):
                if not scalar_is_zero(a[i][k]):
                    pivot_row = i
                    break
            if pivot_row is None:
                return dom.zero
            a[k], a[pivot_row] = a[pivot_row], a[k]
            sign = -sign
        pk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            row_i = a[i]
            row_k = a[k]
            for j in range(k + 1, n):
                num = pk * row_i[j] - aik * row_k[j]
                row_i[j] = _exact_div(num, prev, dom)
            row_i[k] = dom.zero
        prev = pk
    d = a[n - 1][n - 1]
    return -d if sign < 0 else d


def _det_expand(m: Mat):
    """Cofactor expansion along the sparsest row (sparse fast path)."""
    dom = m.domain
    entries = m.entries
    n = m.rows
    cols0 = tuple(range(n))

    def rec(rows, cols):
        if len(rows) == 1:
            return entries[rows[0]][cols[0]]
        best_i = -1
        best_nnz = None
        for pos, i in enumerate(rows):
            row = entries[i]
            nnz = sum(1 for j in cols if not scalar_is_zero(row[j]))
            if nnz == 0:
                return dom.zero
            if best_nnz is None or nnz < best_nnz:
                best_nnz, best_i = nnz, pos
                if nnz == 1:
                    break
        i = rows[best_i]
        sub_rows = rows[:best_i] + rows[best_i + 1:]
        acc = dom.zero
        row = entries[i]
        for jpos, j in enumerate(cols):
            c = row[j]
            if scalar_is_zero(c):
                continue
            sub_cols = cols[:jpos] + cols[jpos + 1:]
            term = c * rec(sub_rows, sub_cols)
            if (best_i + jpos) % 2:
                acc = acc - term
            else:
                acc = acc + term
        return acc

    return rec(tuple(range(n)), cols0)


def _exact_div(num, den, dom):
    if den == dom.one:
        return num
    if isinstance(dom, IntegerRing):
        q, r = divmod(num, den)
        if r:
            raise ArithmeticError("Bareiss division not exact over Z")
        return q
    if isinstance(dom, PolynomialRing):
        return num.exact_div(den)
    # field
    return num / den


def det_cofactor(m: Mat):
    """Determinant by recursive cofactor expansion (test oracle, small n)."""
    if not m.is_square():
        raise ShapeError("determinant of a non-square matrix")
    n = m.rows
    dom = m.domain
    if n == 1:
        return m.entries[0][0]
    acc = dom.zero
    cols = list(range(n))
    for j in range(n):
        c = m.entries[0][j]
        if scalar_is_zero(c):
            continue
        rest = m.submatrix(range(1, n), [x for x in cols if x != j])
        term = c * det_cofactor(rest)
        acc = acc - term if j % 2 else acc + term
    return acc


def adjugate(m: Mat) -> Mat:
    """Transpose of the cofactor matrix; satisfies M * adj(M) = det(M) * I."""
    if not m.is_square():
        raise ShapeError("adjugate of a non-square matrix")
    n = m.rows
    dom = m.domain
    if n == 1:
        return Mat(dom, ((dom.one,),))
    idx = list(range(n))
    out = [[dom.zero] * n for _ in range(n)]
    for i in range(n):
        rows = [x for x in idx if x != i]
        for j in range(n):
            cols = [x for x in idx if x != j]
            c = det(m.submatrix(rows, cols))
            if (i + j) % 2:
                c = -c
            out[j][i] = c  # transposed
    return Mat(dom, out)


def rref(m: Mat) -> Tuple[Mat, List[int]]:
    """Reduced row echelon form over a field, with the pivot column list."""
    if not m.domain.is_field:
        raise DomainError("rref requires a field domain")
    a = [list(row) for row in m.entries]
    rows, cols = m.rows, m.cols
    piv_cols: List[int] = []
    r = 0
    for c in range(cols):
        pr = None
        for i in range(r, rows):
            if not scalar_is_zero(a[i][c]):
                pr = i
                break
        if pr is None:
            continue
        a[r], a[pr] = a[pr], a[r]
        inv = m.domain.one / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(rows):
            if i != r and not scalar_is_zero(a[i][c]):
                t = a[i][c]
                a[i] = [x - t * y for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
        if r == rows:
            break
    return Mat(m.domain, a), piv_cols


def rank(m: Mat) -> int:
    if m.domain.is_field:
        return len(rref(m)[1])
    raise DomainError("rank over a non-field domain: use smith_form")


def nullspace(m: Mat) -> List[Tuple]:
    """Basis of the right nullspace of a matrix over a field.

    Each basis vector is a tuple of scalars; the list is empty iff the matrix
    is injective on columns.  Derived from the reduced echelon form, so the
    result is deterministic.
    """
    red, piv_cols = rref(m)
    dom = m.domain
    free = [c for c in range(m.cols) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [dom.zero] * m.cols
        v[fc] = dom.one
        for r, pc in enumerate(piv_cols):
            v[pc] = -red.entries[r][fc]
        basis.append(tuple(v))
    return basis


def k_minors(m: Mat, k: int):
    """Every k x k minor of m with its (row, column) index sets.

    Yields ((rows, cols), value) in lexicographic order of the index sets.
    Enumeration is combinatorial; intended for small matrices.
    """
    if not (1 <= k <= min(m.rows, m.cols)):
        raise ShapeError(f"minor order {k} out of range")
    for rows in itertools.combinations(range(m.rows), k):
        for cols in itertools.combinations(range(m.cols), k):
            yield (rows, cols), det(m.submatrix(rows, cols))


def mat_inverse(m: Mat) -> Mat:
    """Exact inverse over a field; raises SingularMatrixError when det = 0."""
    if not m.is_square():
        raise ShapeError("inverse of a non-square matrix")
    if not m.domain.is_field:
        raise DomainError("mat_inverse requires a field domain")
    n = m.rows
    dom = m.domain
    aug = Mat(dom, (tuple(m.entries[i]) +
                    tuple(dom.one if i == j else dom.zero for j in range(n))
                    for i in range(n)))
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise SingularMatrixError("matrix is singular", determinant=dom.zero)
    inv = red.submatrix(range(n), range(n, 2 * n))
    assert m * inv == Mat.identity(dom, n)
    return inv


def unimodular_inverse(m: Mat) -> Mat:
    """Inverse of a unimodular matrix over Z or F[x], via adjugate / det."""
    d = det(m)
    dom = m.domain
    if isinstance(dom, IntegerRing):
        if d not in (1, -1):
            raise SingularMatrixError("not unimodular over Z", determinant=d)
        adj = adjugate(m)
        return adj if d == 1 else -adj
    if isinstance(dom, PolynomialRing):
        if d.is_zero() or d.degree != 0:
            raise SingularMatrixError("not unimodular over F[x]", determinant=d)
        inv = dom.base.one / d.coeff(0)
        return adjugate(m) * Poly.constant(dom.base, inv)
    raise DomainError("unimodular_inverse expects Z or F[x] entries")
