"""Small-oscillations analysis of M y'' + K y = 0 in exact arithmetic.

M and K are symmetric rational matrices with M positive definite (checked by
leading principal minors).  The spectral variable s solves det(K - s M) = 0
with s = rho^2, so an oscillatory mode has s > 0 with angular frequency
sqrt(s); negative s gives hyperbolic growth and s = 0 an affine drift mode.

Eigenvectors follow the adjugate-column recipe: a nonzero column of
adj(K - s M) evaluated at the root is an eigenvector, and when every column
vanishes there (which happens exactly when the root's geometric multiplicity
exceeds one) the exact nullspace is used instead and the mode is marked
degenerate.

Two stability verdicts are reported side by side: the 1766 trichotomy that
demotes every repeated root to conditional stability, and the 1858 criterion
for which only the signs of the (always real) roots matter.  Their
disagreement is confined to repeated positive roots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import (
    DomainError,
    Poly,
    QQ,
    RootInterval,
    isolate_real_roots,
    rational_roots,
    scalar_is_zero,
    squarefree_decompose,
    sturm_count,
)
from .matrix import Mat, PolynomialRing, ShapeError, adjugate, det, nullspace


@dataclass(frozen=True)
class OscSystem:
    """Mass and stiffness matrices of a small-oscillations system."""

    mass: Mat
    stiffness: Mat

    def __post_init__(self):
        m, k = self.mass, self.stiffness
        if not isinstance(m.domain, type(QQ)) or not isinstance(k.domain, type(QQ)):
            raise DomainError("oscillation systems are rational")
        if not m.is_square() or not k.is_square() or m.rows != k.rows:
            raise ShapeError("mass and stiffness must be square of equal size")
        if m != m.transpose():
            raise ValueError("mass matrix must be symmetric")
        if k != k.transpose():
            raise ValueError("stiffness matrix must be symmetric")
        for t in range(1, m.rows + 1):
            minor = det(m.submatrix(range(t), range(t)))
            if minor <= 0:
                raise ValueError(
                    "mass matrix must be positive definite "
                    f"(leading principal minor {t} is {minor})")

    @property
    def size(self) -> int:
        return self.mass.rows


def char_poly(sys: OscSystem) -> Poly:
    """det(K - s M) as an exact polynomial in s (degree n, leading
    coefficient (-1)^n det M)."""
    n = sys.size
    ring = PolynomialRing(QQ)
    ent = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(Poly(QQ, (sys.stiffness.entries[i][j],
                                 -sys.mass.entries[i][j])))
        ent.append(row)
    f = det(Mat(ring, ent))
    assert f.degree == n, "definite mass must keep the full degree"
    return f


@dataclass(frozen=True)
class AdjugateEigenvector:
    """Eigenvector data for one exact root.

    ``vector`` is the first nonzero adjugate column evaluated at the root
    (unnormalized; proportionality is the contract), or the first nullspace
    basis vector on the degenerate path.  ``degenerate`` marks the fallback
    ("generic formula degenerate"); ``basis`` always carries a full exact
    nullspace-ready basis of the eigenspace.
    """

    vector: Tuple[Fraction, ...]
    degenerate: bool
    basis: Tuple[Tuple[Fraction, ...], ...]


def eigvec_adjugate(sys: OscSystem, root) -> AdjugateEigenvector:
    """Adjugate-column eigenvector at an exact rational root of char_poly.

    Raises ValueError when the argument is not a root.  The returned vector
    satisfies (K - s M) v = 0 exactly.
    """
    s = Fraction(root)
    w = sys.stiffness - sys.mass * s
    if char_poly(sys)(s) != 0:
        raise ValueError(f"{s} is not a characteristic root")
    adj = adjugate(w)
    column = None
    for j in range(w.cols):
        col = tuple(adj.entries[i][j] for i in range(w.rows))
        if any(not scalar_is_zero(c) for c in col):
            column = col
            break
    basis = tuple(nullspace(w))
    if column is not None:
        assert _apply(w, column) == (Fraction(0),) * w.rows
        return AdjugateEigenvector(vector=column, degenerate=False, basis=basis)
    assert basis, "a characteristic root must have an eigenvector"
    return AdjugateEigenvector(vector=basis[0], degenerate=True, basis=basis)


def _apply(m: Mat, v: Sequence) -> Tuple:
    return tuple(sum((m.entries[i][j] * v[j] for j in range(m.cols)),
                     start=m.domain.zero) for i in range(m.rows))


def adjugate_column_polynomials(sys: OscSystem, column: int = 0) -> Tuple[Poly, ...]:
    """One column of adj(K - s M) as polynomials in s (the closed-form
    eigenvector recipe, to be evaluated at a root)."""
    n = sys.size
    ring = PolynomialRing(QQ)
    ent = []
    for i in range(n):
        row = []
        for j in range(n):
            row.append(Poly(QQ, (sys.stiffness.entries[i][j],
                                 -sys.mass.entries[i][j])))
        ent.append(row)
    adj = adjugate(Mat(ring, ent))
    return tuple(adj.entries[i][column] for i in range(n))


@dataclass(frozen=True)
class InertiaResult:
    """Signature of a symmetric rational form.

    ``quotient_diagonal`` carries the principal-minor quotients when every
    leading principal minor through order n - 1 is nonzero (the closed-form
    diagonalization); otherwise it is None and the counts come from exact
    symmetric congruence elimination.  Both paths agree wherever both apply.
    """

    positive: int
    negative: int
    zero: int
    quotient_diagonal: Optional[Tuple[Fraction, ...]]

    @property
    def signature(self) -> Tuple[int, int, int]:
        return (self.positive, self.negative, self.zero)


def inertia(k: Mat) -> InertiaResult:
    """Signature (positive, negative, zero squares) of a symmetric matrix."""
    if not k.is_square() or k != k.transpose():
        raise ValueError("inertia needs a symmetric matrix")
    if not isinstance(k.domain, type(QQ)):
        raise DomainError("inertia is computed over Q")
    n = k.rows
    minors = [det(k.submatrix(range(t), range(t))) for t in range(1, n + 1)]
    quotients = None
    if all(m != 0 for m in minors[: n - 1]):
        quotients = []
        prev = Fraction(1)
        for m in minors:
            quotients.append(m / prev)
            prev = m if m != 0 else prev
        quotients = tuple(quotients)
    pos, neg, zero = _congruence_signature(k)
    if quotients is not None:
        qp = sum(1 for q in quotients if q > 0)
        qn = sum(1 for q in quotients if q < 0)
        qz = sum(1 for q in quotients if q == 0)
        assert (qp, qn, qz) == (pos, neg, zero), \
            "quotient and elimination signatures disagree"
    return InertiaResult(pos, neg, zero, quotients)


def _congruence_signature(k: Mat) -> Tuple[int, int, int]:
    """Exact symmetric congruence elimination with diagonal pivoting.

    When a zero diagonal blocks progress, a recorded symmetric shuffle
    brings a nonzero diagonal entry forward; if the whole remaining diagonal
    vanishes, a symmetric row+column addition manufactures one (valid over Q
    where 2 is invertible).
    """
    a = [list(row) for row in k.entries]
    n = len(a)
    pos = neg = zero = 0

    def swap(i, j):
        a[i], a[j] = a[j], a[i]
        for row in a:
            row[i], row[j] = row[j], row[i]

    def add_into(i, j):
        # row_i += row_j, col_i += col_j
        a[i] = [x + y for x, y in zip(a[i], a[j])]
        for row in a:
            row[i] = row[i] + row[j]

    for t in range(n):
        if a[t][t] == 0:
            found = None
            for i in range(t + 1, n):
                if a[i][i] != 0:
                    found = i
                    break
            if found is not None:
                swap(t, found)
            else:
                off = None
                for i in range(t, n):
                    for j in range(i + 1, n):
                        if a[i][j] != 0:
                            off = (i, j)
                            break
                    if off:
                        break
                if off is None:
                    zero += n - t
                    break
                i, j = off
                add_into(i, j)   # diagonal entry becomes 2*a[i][j]
                if i != t:
                    swap(t, i)
        p = a[t][t]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(t + 1, n):
            f = a[i][t] / p
            if f != 0:
                # congruence by I - f e_t e_i^T: row then column
                a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                for r in range(n):
                    a[r][i] = a[r][i] - f * a[r][t]
    return pos, neg, zero


# ---------------------------------------------------------------------------
# Root analysis and the two stability verdicts


@dataclass(frozen=True)
class RootSummary:
    """Certified root data of det(K - s M)."""

    poly: Poly
    distinct: int
    positive: int
    negative: int
    zero: bool
    repeated: bool
    all_real: bool
    roots: Tuple[Tuple[object, int], ...]   # (Fraction or RootInterval, multiplicity)


def analyze_roots(sys: OscSystem) -> RootSummary:
    f = char_poly(sys)
    n = sys.size
    sf_degree = sum(g.degree for g, _ in squarefree_decompose(f))
    distinct = sturm_count(f)
    all_real = distinct == sf_degree
    positive = sturm_count(f, 0, None)
    zero = f(0) == 0
    negative = distinct - positive - (1 if zero else 0)
    repeated = sf_degree < n
    mult = _root_multiplicities(f)
    if all_real:
        assert sum(m for _, m in mult) == n, "multiplicities must sum to n"
    return RootSummary(
        poly=f,
        distinct=distinct,
        positive=positive,
        negative=negative,
        zero=zero,
        repeated=repeated,
        all_real=all_real,
        roots=mult,
    )


def _root_multiplicities(f: Poly) -> Tuple[Tuple[object, int], ...]:
    """Distinct roots with multiplicities: exact rationals come back as
    Fractions, irrational roots as sign-definite isolating RootIntervals."""
    out: List[Tuple[object, int]] = []
    for g, m in squarefree_decompose(f):
        rats = [r for r, _ in rational_roots(g)]
        rest = g
        for r in rats:
            rest = rest.exact_div(Poly.linear(QQ, r))
            out.append((r, m))
        if rest.degree >= 1:
            for iv in isolate_real_roots(rest):
                out.append((_sign_definite(rest, iv), m))
    out.sort(key=_root_position)
    return tuple(out)


def _sign_definite(g: Poly, iv: RootInterval) -> RootInterval:
    """Shrink an isolating interval until it does not straddle zero (the
    root itself is irrational here, so finitely many bisections suffice)."""
    lo, hi = iv.lo, iv.hi
    while lo < 0 < hi:
        mid = (lo + hi) / 2
        if sturm_count(g, lo, mid) == 1:
            hi = mid
        else:
            lo = mid
    return RootInterval(lo, hi)


def _root_position(item):
    root, _ = item
    if isinstance(root, RootInterval):
        return (root.lo + root.hi) / 2
    return root


@dataclass(frozen=True)
class StabilityVerdicts:
    """The two historical stability verdicts, side by side.

    ``lagrange_1766`` applies the literal trichotomy (in the s = rho^2 sign
    convention, "all roots real positive and unequal" is the stable case and
    repeated positive roots are demoted to conditional).  ``weierstrass_1858``
    applies the corrected criterion: stable iff every root is positive,
    multiplicities irrelevant; marginal iff a zero root occurs and none is
    negative; unstable otherwise.
    """

    lagrange_1766: str
    weierstrass_1858: str


def classify_stability(sys: OscSystem) -> StabilityVerdicts:
    summary = analyze_roots(sys)
    assert summary.all_real, "symmetric definite systems must have real roots"
    if summary.negative > 0 or not summary.all_real:
        # a growing mode: no stability at all
        lagrange = "unstable"
    elif summary.positive == summary.distinct and not summary.repeated:
        lagrange = "stable"
    else:
        # zero or repeated roots: demoted to restricted stability
        lagrange = "conditional"
    if summary.positive == summary.distinct and not summary.zero:
        weierstrass = "stable"
    elif summary.zero and summary.negative == 0:
        weierstrass = "marginal"
    else:
        weierstrass = "unstable"
    return StabilityVerdicts(lagrange_1766=lagrange, weierstrass_1858=weierstrass)


# ---------------------------------------------------------------------------
# Full mode report


@dataclass(frozen=True)
class Mode:
    """One spectral mode.

    ``root`` is a Fraction (exact) or a RootInterval (certified isolating
    interval).  For exact roots the eigenvector data is present and checked;
    for irrational roots the polynomial adjugate column plus the interval
    stand in for the evaluated vector.
    """

    root: object
    multiplicity: int
    eigenvector: Optional[AdjugateEigenvector]
    column_polynomials: Optional[Tuple[Poly, ...]]
    kind: str                  # "oscillatory" | "drift" | "hyperbolic"
    template: str


@dataclass(frozen=True)
class ModeReport:
    system: OscSystem
    char: Poly
    modes: Tuple[Mode, ...]
    verdicts: StabilityVerdicts
    real_root_certificate: bool
    solution_template: str
    notes: Tuple[str, ...]


def _sqrt_exact(q: Fraction) -> Optional[Fraction]:
    if q < 0:
        return None
    num, den = q.numerator, q.denominator
    rn = _isqrt_exact(num)
    rd = _isqrt_exact(den)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(v: int) -> Optional[int]:
    import math
    r = math.isqrt(v)
    return r if r * r == v else None


def _freq_str(s: Fraction) -> str:
    r = _sqrt_exact(s)
    if r is not None:
        return str(r) if r.denominator != 1 else str(r.numerator)
    return f"sqrt({s})"


def _mode_template(index: int, root, multiplicity: int) -> Tuple[str, str]:
    j = index + 1
    if isinstance(root, RootInterval):
        mid = f"s_{j}"
        kind = "oscillatory" if root.lo >= 0 else ("hyperbolic" if root.hi <= 0 else "?")
        if kind == "oscillatory":
            return kind, f"v_{j}*sin(sqrt({mid})*t + b_{j})"
        return kind, f"v_{j}*(c_{j}*exp(sqrt(-{mid})*t) + d_{j}*exp(-sqrt(-{mid})*t))"
    s = Fraction(root)
    if s > 0:
        return "oscillatory", f"v_{j}*sin({_freq_str(s)}*t + b_{j})"
    if s == 0:
        return "drift", f"v_{j}*(a_{j} + b_{j}*t)"
    return "hyperbolic", (f"v_{j}*(c_{j}*exp({_freq_str(-s)}*t) "
                          f"+ d_{j}*exp(-{_freq_str(-s)}*t))")


def mode_report(sys: OscSystem) -> ModeReport:
    """Every root with certificate, eigenvector data, both verdicts, and a
    rendered general-solution template."""
    summary = analyze_roots(sys)
    verdicts = classify_stability(sys)
    modes = []
    notes: List[str] = []
    for idx, (root, mult) in enumerate(summary.roots):
        kind, template = _mode_template(idx, root, mult)
        if isinstance(root, RootInterval):
            cols = adjugate_column_polynomials(sys)
            modes.append(Mode(root=root, multiplicity=mult, eigenvector=None,
                              column_polynomials=cols, kind=kind,
                              template=template))
        else:
            vec = eigvec_adjugate(sys, root)
            if vec.degenerate:
                notes.append(
                    f"mode {idx + 1}: generic formula degenerate "
                    f"(adjugate vanishes at s = {root}); exact nullspace basis used")
            modes.append(Mode(root=root, multiplicity=mult, eigenvector=vec,
                              column_polynomials=None, kind=kind,
                              template=template))
    if summary.repeated and verdicts.weierstrass_1858 == "stable":
        notes.append("repeated root, stable: t does NOT leave the sine")
    template = " + ".join(m.template for m in modes) if modes else "0"
    return ModeReport(
        system=sys,
        char=summary.poly,
        modes=tuple(modes),
        verdicts=verdicts,
        real_root_certificate=summary.all_real,
        solution_template=f"y(t) = {template}",
        notes=tuple(notes),
    )
