"""Similarity theory of a single square matrix over an exact field.

Provides companion and hypercompanion blocks, the rational canonical form,
the primary form (one hypercompanion block per elementary divisor), the
Jordan form when the characteristic polynomial splits, and a similarity
decision with verified witness transforms.

Transforms are recovered uniformly from the Smith reductions of xI - A: if
U (xI - A) V and U' (xI - B) V' share one Smith form, the matrix polynomial
V V'^{-1} evaluated at B (powers of B on the right) conjugates A into B.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from .algebra import DomainError, Poly, scalar_is_zero, scalar_key
from .matrix import Mat, ShapeError, det, mat_inverse, unimodular_inverse
from .smith import char_matrix, divisor_data, smith_form


class SplitFieldRequired(ArithmeticError):
    """The characteristic polynomial has irreducible factors of degree >= 2
    over the base field; a Jordan form would need a splitting field."""

    def __init__(self, factors: Sequence[Poly]):
        self.factors = tuple(factors)
        names = ", ".join(f.render(compact=True) for f in self.factors)
        super().__init__(f"characteristic polynomial does not split; "
                         f"irreducible factor(s): {names}")


@dataclass(frozen=True)
class JordanStructure:
    """Eigenvalues with their Jordan block sizes (each sorted descending)."""

    blocks: Tuple[Tuple[object, Tuple[int, ...]], ...]

    @property
    def size(self) -> int:
        return sum(sum(sizes) for _, sizes in self.blocks)

    def sizes_for(self, eigenvalue) -> Tuple[int, ...]:
        for ev, sizes in self.blocks:
            if ev == eigenvalue:
                return sizes
        return ()


@dataclass(frozen=True)
class CanonicalResult:
    """A canonical form with the transform realizing it.

    ``kind`` is one of "rational", "primary", "jordan".  ``blocks`` lists the
    block descriptors in assembly order: invariant-factor polynomials for the
    rational form, (irreducible base, exponent) pairs for the primary form,
    (eigenvalue, size) pairs for the Jordan form.  ``verified`` is set only
    after the exact check inverse(T) * A * T == matrix.  ``certified`` is
    False when an unsplit factor block was carried through.
    """

    kind: str
    blocks: Tuple
    matrix: Mat
    transform: Mat
    verified: bool
    certified: bool = True
    structure: Optional[JordanStructure] = None


def companion(f: Poly) -> Mat:
    """Companion matrix C of a monic polynomial, with det(xI - C) = f(x).

    Ones sit on the superdiagonal and the negated coefficients fill the last
    row."""
    if f.is_zero() or f.degree < 1:
        raise ValueError("companion matrix needs degree >= 1")
    dom = f.domain
    if not dom.is_field:
        raise DomainError("companion matrix over a field domain only")
    if f.leading() != dom.one:
        raise ValueError("companion matrix needs a monic polynomial")
    n = f.degree
    z, o = dom.zero, dom.one
    rows = []
    for i in range(n - 1):
        rows.append([o if j == i + 1 else z for j in range(n)])
    rows.append([-f.coeff(j) for j in range(n)])
    return Mat(dom, rows)


def jordan_block(dom, eigenvalue, size: int) -> Mat:
    """The additive Jordan block: eigenvalue on the diagonal, ones above it."""
    c = dom.coerce(eigenvalue)
    z, o = dom.zero, dom.one
    return Mat(dom, ((c if i == j else o if j == i + 1 else z
                      for j in range(size)) for i in range(size)))


def multiplicative_jordan_block(dom, eigenvalue, size: int) -> Mat:
    """The multiplicative variant K*(I + N) of a Jordan block.

    Classical treatments of canonical substitutions write each block as the
    scalar K times the unipotent I + N (the substitution y -> K y,
    z -> K(z + y), ...).  The dictionary to the additive block cI + N is
    K*(I + N) = K I + K N; this helper is a documented conversion, not a
    second canonical form."""
    c = dom.coerce(eigenvalue)
    z = dom.zero
    return Mat(dom, ((c if i == j else c if j == i + 1 else z
                      for j in range(size)) for i in range(size)))


def hypercompanion(base: Poly, exponent: int) -> Mat:
    """The hypercompanion block of base^exponent.

    Companion blocks of ``base`` repeat along the diagonal; each block above
    the diagonal carries a single one in its lower-left corner, chaining the
    blocks so the whole matrix has base^exponent as its only elementary
    divisor.  For a linear base this is exactly the Jordan block."""
    if exponent < 1:
        raise ValueError("exponent must be positive")
    dom = base.domain
    d = base.degree
    c = companion(base)
    n = d * exponent
    z = dom.zero
    out = [[z] * n for _ in range(n)]
    for b in range(exponent):
        off = b * d
        for i in range(d):
            for j in range(d):
                out[off + i][off + j] = c.entries[i][j]
        if b + 1 < exponent:
            out[off + d - 1][off + d] = dom.one
    return Mat(dom, out)


# ---------------------------------------------------------------------------
# Transform recovery through the Smith reduction of xI - A


def _matrix_poly_coefficients(q: Mat) -> List[Mat]:
    """Split a matrix over F[x] into constant-matrix coefficients."""
    ring = q.domain
    base = ring.base
    deg = max((e.degree for row in q.entries for e in row), default=0)
    deg = max(deg, 0)
    out = []
    for k in range(deg + 1):
        out.append(Mat(base, ((e.coeff(k) for e in row) for row in q.entries)))
    return out

def _right_value(q: Mat, b: Mat) -> Mat:
    """Evaluate a matrix polynomial at B with the powers on the right."""
    coeffs = _matrix_poly_coefficients(q)
    acc = coeffs[-1]
    for k in range(len(coeffs) - 2, -1, -1):
        acc = acc * b + coeffs[k]
    return acc


def similarity_transform(a: Mat, b: Mat) -> Mat:
    """Invertible T with inverse(T) * A * T == B, assuming equal invariant
    factors; raises if the Smith forms of xI - A and xI - B differ."""
    xa = char_matrix(a)
    xb = char_matrix(b)
    _, sa, va = smith_form(xa)
    _, sb, vb = smith_form(xb)
    if sa != sb:
        raise ArithmeticError("matrices are not similar (Smith forms differ)")
    q = va * unimodular_inverse(vb)
    t = _right_value(q, b)
    d = det(t)
    assert not scalar_is_zero(d), "similarity transform degenerated"
    return t


def _verify_conjugation(a: Mat, t: Mat, target: Mat) -> bool:
    return mat_inverse(t) * a * t == target


def _block_sort_key(base: Poly, size: int):
    return (base.sort_key(), -size)


def rational_canonical_form(a: Mat) -> CanonicalResult:
    """Block diagonal of companion blocks of the nontrivial invariant factors.

    Exists over the base field for every square matrix; no root extraction
    is involved."""
    dd = divisor_data(a)
    factors = sorted(dd.nontrivial_invariant_factors(),
                     key=lambda f: _block_sort_key(f, f.degree))
    blocks = [companion(f) for f in factors]
    r = Mat.block_diagonal(a.domain, blocks)
    t = similarity_transform(a, r)
    verified = _verify_conjugation(a, t, r)
    assert verified
    return CanonicalResult(
        kind="rational",
        blocks=tuple(factors),
        matrix=r,
        transform=t,
        verified=verified,
        certified=dd.certified,
    )


def primary_form(a: Mat) -> CanonicalResult:
    """Block diagonal with one hypercompanion block per elementary divisor.

    For a linear irreducible base the block is the Jordan block, so this form
    refines the rational form without ever leaving the base field."""
    dd = divisor_data(a)
    divisors = sorted(dd.elementary_divisors,
                      key=lambda be: _block_sort_key(be[0], be[1]))
    blocks = [hypercompanion(base, e) for base, e in divisors]
    h = Mat.block_diagonal(a.domain, blocks)
    t = similarity_transform(a, h)
    verified = _verify_conjugation(a, t, h)
    assert verified
    return CanonicalResult(
        kind="primary",
        blocks=tuple(divisors),
        matrix=h,
        transform=t,
        verified=verified,
        certified=dd.certified,
    )


def jordan_form(a: Mat) -> CanonicalResult:
    """Jordan form (eigenvalues on the diagonal, ones on the superdiagonal)
    plus a verified transform; requires the characteristic polynomial to
    split into linear factors over the base field.

    Raises SplitFieldRequired carrying the offending irreducible factors
    otherwise; primary_form is the base-field fallback."""
    dd = divisor_data(a)
    nonlinear = sorted({base for base, _ in dd.elementary_divisors
                        if base.degree != 1},
                       key=lambda f: f.sort_key())
    if nonlinear or not dd.certified:
        raise SplitFieldRequired(nonlinear)
    divisors = sorted(dd.elementary_divisors,
                      key=lambda be: _block_sort_key(be[0], be[1]))
    blocks = []
    pairs = []
    for base, e in divisors:
        ev = -base.coeff(0)
        blocks.append(jordan_block(a.domain, ev, e))
        pairs.append((ev, e))
    j = Mat.block_diagonal(a.domain, blocks)
    t = similarity_transform(a, j)
    verified = _verify_conjugation(a, t, j)
    assert verified
    return CanonicalResult(
        kind="jordan",
        blocks=tuple(pairs),
        matrix=j,
        transform=t,
        verified=verified,
        structure=eldiv_to_jordan(divisors),
    )


def eldiv_to_jordan(divisors: Sequence[Tuple[Poly, int]]) -> JordanStructure:
    """Dictionary: elementary divisor (x - c)^e  <->  Jordan block (c, e)."""
    grouped: dict = {}
    for base, e in divisors:
        if base.degree != 1:
            raise ValueError(f"nonlinear factor {base.render()} has no Jordan block")
        lc = base.leading()
        ev = -base.coeff(0) / lc if base.domain.is_field else -base.coeff(0)
        grouped.setdefault(ev, []).append(e)
    blocks = tuple(sorted(((ev, tuple(sorted(sizes, reverse=True)))
                           for ev, sizes in grouped.items()),
                          key=lambda t: scalar_key(t[0])))
    return JordanStructure(blocks)


def jordan_to_eldiv(structure: JordanStructure, dom) -> List[Tuple[Poly, int]]:
    """Inverse dictionary: block (c, e) -> elementary divisor (x - c)^e."""
    out = [(Poly.linear(dom, ev), e)
           for ev, sizes in structure.blocks for e in sizes]
    out.sort(key=lambda be: _block_sort_key(be[0], be[1]))
    return out


def similar(a: Mat, b: Mat) -> Tuple[bool, Optional[Mat]]:
    """Decide similarity; on success also return a verified witness T with
    inverse(T) * A * T == B.

    The decision compares the full invariant ledgers (equal elementary
    divisors iff equal invariant factors); the witness composes the Smith
    transforms of both characteristic matrices."""
    if a.domain != b.domain:
        raise DomainError("similarity needs a common base field")
    if not a.is_square() or not b.is_square() or a.rows != b.rows:
        raise ShapeError("similarity needs square matrices of equal size")
    if divisor_data(a).invariant_factors != divisor_data(b).invariant_factors:
        return False, None
    t = similarity_transform(a, b)
    assert _verify_conjugation(a, t, b)
    return True, t
