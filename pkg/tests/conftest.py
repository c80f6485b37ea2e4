"""Shared fixtures: golden matrices and randomized-input helpers."""

import random
from fractions import Fraction

import pytest

from canonforms.algebra import QQ, scalar_is_zero
from canonforms.matrix import Mat, det


def chain3():
    """Symmetric 3x3 with eigenvalues 0, 1, 3 (the worked tridiagonal demo)."""
    return Mat(QQ, [[1, -1, 0], [-1, 2, 1], [0, 1, 1]])


def jordan6(block_layout):
    """6x6 upper-bidiagonal matrix from (eigenvalue, size) blocks."""
    rows = []
    diag = []
    sup = []
    for ev, size in block_layout:
        for i in range(size):
            diag.append(ev)
            sup.append(1 if i < size - 1 else 0)
    n = len(diag)
    for i in range(n):
        row = [0] * n
        row[i] = diag[i]
        if i + 1 < n and sup[i]:
            row[i + 1] = 1
        rows.append(row)
    return Mat(QQ, rows)


# the three 6x6 matrices sharing char poly (x-1)^2 (x-2)^3 (x-3)
J6_SEMISIMPLE = [(1, 1), (1, 1), (2, 1), (2, 1), (2, 1), (3, 1)]
J6_CHAIN3 = [(1, 1), (1, 1), (2, 3), (3, 1)]
J6_CHAIN21 = [(1, 1), (1, 1), (2, 2), (2, 1), (3, 1)]


@pytest.fixture
def a_chain3():
    return chain3()


def rand_matrix(dom, n, rng, lo=-4, hi=4):
    if dom is QQ:
        return Mat(QQ, [[Fraction(rng.randint(lo, hi)) for _ in range(n)]
                        for _ in range(n)])
    p = dom.characteristic
    return Mat(dom, [[rng.randrange(p) for _ in range(n)] for _ in range(n)])


def rand_invertible(dom, n, rng, lo=-4, hi=4):
    while True:
        m = rand_matrix(dom, n, rng, lo, hi)
        if not scalar_is_zero(det(m)):
            return m


def rand_unimodular(dom, n, rng, ops=None):
    """Product of elementary row additions: determinant is one."""
    m = [[dom.one if i == j else dom.zero for j in range(n)] for i in range(n)]
    for _ in range(ops if ops is not None else 3 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = dom.coerce(rng.randint(-2, 2))
        for col in range(n):
            m[i][col] = m[i][col] + c * m[j][col]
    return Mat(dom, m)


def proportional(v, w) -> bool:
    """True iff the vectors are nonzero scalar multiples of one another."""
    if len(v) != len(w):
        return False
    ratio = None
    for a, b in zip(v, w):
        az, bz = scalar_is_zero(a), scalar_is_zero(b)
        if az != bz:
            return False
        if az:
            continue
        r = a / b
        if ratio is None:
            ratio = r
        elif r != ratio:
            return False
    return ratio is not None
