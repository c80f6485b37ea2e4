"""Matrix pencils (P, Q) under strict equivalence.

The pencil's invariants are the homogeneous elementary divisors of
det(u P + v Q): finite divisors come from the Smith form of x P + Q over
F[x], divisors at the point (1 : 0) from the powers of y in the Smith form
of P + y Q over F[y].  Regular pencils (nonvanishing determinant form) are
decided and transformed; singular pencils are detected and reported, their
canonical minimal-index theory is deliberately not implemented.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .algebra import (
    BinaryForm,
    DomainError,
    HomogeneousPoint,
    Poly,
    RationalField,
    factor,
    scalar_is_zero,
    scalar_key,
)
from .canonical import hypercompanion, jordan_block, similar
from .matrix import Mat, PolynomialRing, ShapeError, det, mat_inverse
from .smith import smith_diagonal


class SingularPencilError(ArithmeticError):
    """Raised when an operation defined only for regular pencils meets a
    pencil whose determinant form vanishes identically."""


@dataclass(frozen=True)
class Pencil:
    """A pair of square matrices over one field, read as u P + v Q."""

    p: Mat
    q: Mat

    def __post_init__(self):
        if self.p.domain != self.q.domain:
            raise DomainError("pencil members over different fields")
        if not self.p.is_square() or self.p.rows != self.q.rows:
            raise ShapeError("pencil members must be square of equal size")
        if not self.p.domain.is_field:
            raise DomainError("pencil entries must lie in a field")

    @property
    def size(self) -> int:
        return self.p.rows

    @property
    def domain(self):
        return self.p.domain

    def transform(self, h: Mat, k: Mat) -> "Pencil":
        """The strictly equivalent pencil (H^T P K, H^T Q K)."""
        ht = h.transpose()
        return Pencil(ht * self.p * k, ht * self.q * k)


@dataclass(frozen=True)
class PencilInvariants:
    """Invariant ledger of a pencil.

    ``divisors`` is the multiset of homogeneous elementary divisors, each a
    (HomogeneousPoint or irreducible Poly of degree >= 2, exponent) pair;
    the point (1 : 0) marks divisors at infinity.  For regular pencils the
    divisor degrees sum to the size.  For singular pencils only the rank and
    the finite gcd data that stays well defined are recorded.
    """

    regular: bool
    size: int
    rank: int
    infinity_defect: int
    divisors: Tuple[Tuple[object, int], ...]
    certified: bool = True

    def multiset(self):
        return tuple(sorted(self.divisors, key=_divisor_key))

    def total_degree(self) -> int:
        return sum(_divisor_degree(b, e) for b, e in self.divisors)

    def render(self, var: str = "x") -> str:
        parts = []
        for base, e in self.multiset():
            if isinstance(base, HomogeneousPoint):
                if base.is_infinity:
                    body = "(infinity)"
                else:
                    lin = Poly.linear(_point_domain(base), base.a)
                    body = f"({lin.render(var, compact=True)})"
            else:
                body = f"({base.render(var, compact=True)})"
            parts.append(body if e == 1 else f"{body}^{e}")
        return ", ".join(parts)


def _point_domain(pt: HomogeneousPoint):
    a = pt.a
    if isinstance(a, Fraction):
        from .algebra import QQ
        return QQ
    from .algebra import GF
    return GF(a.p)


def _divisor_degree(base, e: int) -> int:
    if isinstance(base, HomogeneousPoint):
        return e
    return base.degree * e


def _divisor_key(item):
    base, e = item
    if isinstance(base, HomogeneousPoint):
        return (0 if not base.is_infinity else 2, (1,)
                if base.is_infinity else (0, scalar_key(base.a)), -e)
    return (1, (base.sort_key(),), -e)


def pencil_det(pc: Pencil) -> BinaryForm:
    """The homogeneous determinant form det(u P + v Q) of degree n.

    Computed from the dehomogenization det(x P + Q); the complementary
    dehomogenization det(P + y Q) and evaluations at n + 1 parameter points
    cross-check the stitching.  The zero form signals a singular pencil.
    """
    n = pc.size
    dom = pc.domain
    fx = det(_dehomogenize(pc.p, pc.q))     # det(x P + Q)
    gy = det(_dehomogenize(pc.q, pc.p))     # det(P + y Q)
    form = BinaryForm(dom, n, [fx.coeff(k) for k in range(n + 1)])
    mirror = BinaryForm(dom, n, [gy.coeff(n - k) for k in range(n + 1)])
    assert form == mirror, "dehomogenizations disagree"
    for t in _parameter_points(dom, n + 1):
        lhs = det(Mat(dom, ((a + t * b for a, b in zip(r1, r2))
                            for r1, r2 in zip(pc.p.entries, pc.q.entries))))
        assert form.evaluate(dom.one, t) == lhs, "determinant form evaluation mismatch"
    return form


def _dehomogenize(first: Mat, second: Mat) -> Mat:
    """x * first + second over the polynomial ring."""
    dom = first.domain
    ring = PolynomialRing(dom)
    ent = []
    for r1, r2 in zip(first.entries, second.entries):
        ent.append([Poly(dom, (b, a)) for a, b in zip(r1, r2)])
    return Mat(ring, ent)


def _parameter_points(dom, count: int):
    """Deterministic scalar sample points (may repeat cyclically over small
    prime fields, which only weakens the redundant cross-check)."""
    if isinstance(dom, RationalField):
        return [Fraction(k) for k in range(count)]
    p = dom.characteristic
    return [dom.coerce(k % p) for k in range(count)]


def pencil_regular(pc: Pencil) -> bool:
    """True iff det(u P + v Q) is not the identically zero form."""
    return not pencil_det(pc).is_zero()


def pencil_divisors(pc: Pencil) -> PencilInvariants:
    """Homogeneous elementary divisors of a pencil.

    Finite divisors (points (c : 1), or irreducible polynomials of degree
    >= 2 kept verbatim) are read off the Smith form of x P + Q; divisors at
    (1 : 0) off the y-power part of the Smith form of P + y Q.  For regular
    pencils the divisor degrees sum to n (checked).  Singular pencils get a
    report carrying the rank and the well-defined finite gcd data only.
    """
    n = pc.size
    dom = pc.domain
    x_side = smith_diagonal(_dehomogenize(pc.p, pc.q))
    y_side = smith_diagonal(_dehomogenize(pc.q, pc.p))
    rank = sum(1 for d in x_side if not d.is_zero())
    rank_y = sum(1 for d in y_side if not d.is_zero())
    rank = max(rank, rank_y)
    divisors: List[Tuple[object, int]] = []
    certified = True
    for d in x_side:
        if d.is_zero() or d.degree < 1:
            continue
        for term in factor(d):
            certified = certified and term.certified
            if term.base.degree == 1:
                c = -term.base.coeff(0)
                divisors.append((HomogeneousPoint.of(dom, c, dom.one), term.exponent))
            else:
                divisors.append((term.base, term.exponent))
    inf_total = 0
    for d in y_side:
        if d.is_zero():
            continue
        e = _zero_root_multiplicity(d)
        if e:
            divisors.append((HomogeneousPoint.infinity(dom), e))
            inf_total += e
    divisors.sort(key=_divisor_key)
    degree_det = n - inf_total  # degree of det(x P + Q) for regular pencils
    regular = rank == n and all(not d.is_zero() for d in x_side)
    inv = PencilInvariants(
        regular=regular,
        size=n,
        rank=rank,
        infinity_defect=inf_total,
        divisors=tuple(divisors),
        certified=certified,
    )
    if regular:
        assert inv.total_degree() == n, "divisor degrees must sum to n"
        fx = det(_dehomogenize(pc.p, pc.q))
        assert fx.degree == degree_det, "infinity bookkeeping mismatch"
    return inv


def _zero_root_multiplicity(d: Poly) -> int:
    k = 0
    while k <= d.degree and scalar_is_zero(d.coeff(k)):
        k += 1
    return k


def canonical_pencil(inv: PencilInvariants) -> Pencil:
    """Canonical block pair realizing a regular invariant set.

    Finite divisor (x - c)^e gives the block pair (I_e, -J_e(c)); a finite
    irreducible base of degree >= 2 gives (I, -H) with H the hypercompanion;
    a divisor at infinity of exponent e gives (N_e, I_e) with N_e the
    nilpotent Jordan block.  Blockwise, x P + Q is literally x I - J on the
    finite part.  The output is self-tested: its divisors equal the input.
    """
    if not inv.regular:
        raise SingularPencilError(
            "singular pencil: canonical minimal-index theory out of scope")
    if not inv.divisors:
        raise ValueError("empty invariant set")
    dom = _divisors_domain(inv.divisors)
    if inv.total_degree() != inv.size:
        raise ValueError("divisor degrees do not sum to the pencil size")
    p_blocks: List[Mat] = []
    q_blocks: List[Mat] = []
    for base, e in sorted(inv.divisors, key=_divisor_key):
        if isinstance(base, HomogeneousPoint) and base.is_infinity:
            p_blocks.append(jordan_block(dom, dom.zero, e))
            q_blocks.append(Mat.identity(dom, e))
        elif isinstance(base, HomogeneousPoint):
            p_blocks.append(Mat.identity(dom, e))
            q_blocks.append(-jordan_block(dom, base.a, e))
        else:
            h = hypercompanion(base, e)
            p_blocks.append(Mat.identity(dom, h.rows))
            q_blocks.append(-h)
    out = Pencil(Mat.block_diagonal(dom, p_blocks),
                 Mat.block_diagonal(dom, q_blocks))
    back = pencil_divisors(out)
    assert back.multiset() == inv.multiset(), "canonical pencil self-test failed"
    return out


def _divisors_domain(divisors):
    for base, _ in divisors:
        if isinstance(base, HomogeneousPoint):
            return _point_domain(base)
        return base.domain
    raise ValueError("empty divisor list")


def pencil_equivalent(pc1: Pencil, pc2: Pencil):
    """Decide strict equivalence of two regular pencils; on success return a
    verified witness (H, K) with H^T (u P + v Q) K = u P' + v Q'.

    Singular input is refused with an explicit diagnosis rather than a
    guess.  The witness routes both pencils through a joint parameter shift
    that makes the leading members invertible, reduces each to (I, A), and
    composes the similarity witness of the two A's.  Over a field with at
    most size-many elements the divisor points can exhaust every available
    shift; the decision (still sound) then comes back with witness None.
    """
    if pc1.domain != pc2.domain:
        raise DomainError("pencil equivalence needs a common field")
    if pc1.size != pc2.size:
        raise ShapeError("pencil equivalence needs equal sizes")
    inv1 = pencil_divisors(pc1)
    inv2 = pencil_divisors(pc2)
    if not inv1.regular or not inv2.regular:
        raise SingularPencilError(
            "singular pencil: canonical minimal-index theory out of scope")
    if inv1.multiset() != inv2.multiset():
        return False, None
    try:
        h, k = _strict_equivalence_witness(pc1, pc2)
    except WitnessUnavailable:
        return True, None
    ht = h.transpose()
    assert ht * pc1.p * k == pc2.p and ht * pc1.q * k == pc2.q, \
        "pencil witness failed verification"
    return True, (h, k)


class WitnessUnavailable(ArithmeticError):
    """No base-field parameter shift avoids the determinant roots (possible
    only over a field with fewer than size + 1 elements)."""


def _strict_equivalence_witness(pc1: Pencil, pc2: Pencil) -> Tuple[Mat, Mat]:
    shift = _joint_regular_shift(pc1, pc2)
    if shift is None:
        raise WitnessUnavailable(
            "cannot pick a regular parameter point over this base field")
    # Invertible parameter substitution applied to both pencils: the witness
    # of the substituted pair is exactly the witness of the original pair.
    (alpha, gamma), (beta, delta) = shift
    p1 = pc1.p * alpha + pc1.q * gamma
    q1 = pc1.p * beta + pc1.q * delta
    p2 = pc2.p * alpha + pc2.q * gamma
    q2 = pc2.p * beta + pc2.q * delta
    a1 = mat_inverse(p1) * q1
    a2 = mat_inverse(p2) * q2
    ok, t = similar(a1, a2)
    assert ok, "matching invariants must give similar shifted members"
    t_inv = mat_inverse(t)
    # H^T = P2 T^{-1} P1^{-1}:  H^T (u P1 + v Q1) T = u P2 + v Q2
    ht = p2 * t_inv * mat_inverse(p1)
    return ht.transpose(), t


def _joint_regular_shift(pc1: Pencil, pc2: Pencil):
    """An invertible parameter substitution (alpha, gamma; beta, delta) whose
    leading member alpha P + gamma Q is invertible for both pencils."""
    dom = pc1.domain
    leading = []
    if isinstance(dom, RationalField):
        leading.append((Fraction(1), Fraction(0)))
        for k in range(1, 2 * pc1.size + 3):
            leading.append((Fraction(1), Fraction(k)))
            leading.append((Fraction(1), Fraction(-k)))
        leading.append((Fraction(0), Fraction(1)))
    else:
        leading.append((dom.one, dom.zero))
        for c in dom.elements():
            leading.append((dom.one, c))
        leading.append((dom.zero, dom.one))
    for alpha, gamma in leading:
        m1 = pc1.p * alpha + pc1.q * gamma
        m2 = pc2.p * alpha + pc2.q * gamma
        if not scalar_is_zero(det(m1)) and not scalar_is_zero(det(m2)):
            if scalar_is_zero(gamma):
                complement = (dom.zero, dom.one)   # substitution is identity-like
            else:
                complement = (dom.one, dom.zero)   # always independent of (a, c)
            if scalar_is_zero(alpha * complement[1] - gamma * complement[0]):
                complement = (dom.zero, dom.one)
            return (alpha, gamma), complement
    return None


# ---------------------------------------------------------------------------
# Kronecker's elementary bilinear forms and their determinant identities


def kronecker_elementary_form(kind: str, size: int, a=None, b=None):
    """Build an elementary bilinear form M, its pencil (M, M^T), and the
    expected determinant of u M + v M^T.

    kind "I" (any size n+1 >= 2): ones chain with a corner term; expected
    determinant [u + (-1)^n v]^(n+1).  kind "II" (even size 2m >= 2): the
    cornerless variant; expected [u + (-1)^m v]^(2m).  kind "III" (size
    n+1 >= 2, parameters a, b with a^2 != b^2): constant weights a above and
    b below the diagonal; expected (a u + b v)^m (a v + b u)^m for even size
    2m and the zero form for odd size, matching the direct expansion up to a
    global sign that the caller records.

    The corner entry of kind I carries the sign (-1)^floor(n/2) so that the
    expected identity holds exactly at every size (for odd n the corner does
    not influence the determinant at all).
    """
    if size < 2:
        raise ValueError("elementary forms need size >= 2")
    if kind == "I":
        n = size - 1
        m = _chain_form(size, lambda h: _sign(n), lambda h: _sign(h))
        corner = _sign(n // 2) if n % 2 == 0 else 1
        m = _with_corner(m, corner)
        expected = BinaryForm.linear_power(m.domain, 1, _sign(n), size)
        return m, Pencil(m, m.transpose()), expected
    if kind == "II":
        if size % 2:
            raise ValueError("kind II needs an even size 2m")
        mm = size // 2
        m = _chain_form(size, lambda h: _sign(mm), lambda h: _sign(h))
        expected = BinaryForm.linear_power(m.domain, 1, _sign(mm), size)
        return m, Pencil(m, m.transpose()), expected
    if kind == "III":
        if a is None or b is None:
            raise ValueError("kind III needs parameters a and b")
        av, bv = Fraction(a), Fraction(b)
        if av * av == bv * bv:
            raise ValueError("kind III needs a^2 != b^2")
        m = _chain_form(size, lambda h: av, lambda h: bv)
        if size % 2:
            expected = BinaryForm.zero(m.domain, size)
        else:
            mm = size // 2
            expected = (BinaryForm.linear_power(m.domain, av, bv, mm)
                        * BinaryForm.linear_power(m.domain, bv, av, mm))
        return m, Pencil(m, m.transpose()), expected
    raise ValueError(f"unknown elementary form kind {kind!r}")


def _sign(k: int) -> int:
    return -1 if k % 2 else 1


def _chain_form(size: int, above, below) -> Mat:
    from .algebra import QQ
    z = Fraction(0)
    out = [[z] * size for _ in range(size)]
    for h in range(size - 1):
        out[h][h + 1] = Fraction(above(h))
        out[h + 1][h] = Fraction(below(h))
    return Mat(QQ, out)


def _with_corner(m: Mat, corner) -> Mat:
    rows = [list(r) for r in m.entries]
    rows[-1][-1] = m.domain.coerce(corner)
    return Mat(m.domain, rows)
