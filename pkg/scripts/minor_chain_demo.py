#!/usr/bin/env python3
"""Successive-minor gcd chain of a 10x10 canonical pencil, two ways.

Builds the block pencil realizing the divisor multiset
(x-1)^2, (x-1), (x-2), (x-2), (x-3)^2, (x-3)^2, (x-3) and reproduces its
gcd-of-minors chain both by raw minor enumeration (the definitional oracle)
and as cumulative products of the Smith diagonal (the production route)."""

import time

from canonforms import HomogeneousPoint, Mat, Poly, QQ
from canonforms.matrix import PolynomialRing
from canonforms.pencil import PencilInvariants, canonical_pencil
from canonforms.smith import gcd_minors_chain, smith_diagonal


def main():
    pt = lambda c: HomogeneousPoint.of(QQ, c, 1)
    divisors = ((pt(1), 2), (pt(1), 1), (pt(2), 1), (pt(2), 1),
                (pt(3), 2), (pt(3), 2), (pt(3), 1))
    inv = PencilInvariants(regular=True, size=10, rank=10,
                           infinity_defect=0, divisors=divisors)
    pc = canonical_pencil(inv)
    x_mat = Mat(PolynomialRing(QQ),
                [[Poly(QQ, (qe, pe)) for pe, qe in zip(r1, r2)]
                 for r1, r2 in zip(pc.p.entries, pc.q.entries)])

    t0 = time.time()
    oracle = gcd_minors_chain(x_mat, cap=10)
    t1 = time.time()
    acc = Poly.one(QQ)
    produced = []
    for d in smith_diagonal(x_mat):
        acc = acc * d
        produced.append(acc)
    t2 = time.time()

    print("divisors:", inv.render())
    print(f"\nminor-enumeration oracle ({t1 - t0:.2f}s):")
    for k, d in enumerate(oracle, start=1):
        print(f"  D_{k:<2} = {d.render(compact=True)}")
    print(f"\nSmith route ({t2 - t1:.2f}s): "
          f"{'identical chain' if produced == oracle else 'MISMATCH'}")


if __name__ == "__main__":
    main()
