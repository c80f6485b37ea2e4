#!/usr/bin/env python3
"""Side-by-side stability verdicts on a few small-oscillation systems.

The interesting row is the equal-frequency system: the 1766 trichotomy
demotes the repeated root to conditional stability while the 1858 criterion
certifies it stable."""

from canonforms import Mat, QQ
from canonforms.oscillations import OscSystem, char_poly, mode_report


def show(name, mass, stiffness):
    sys_ = OscSystem(mass, stiffness)
    rep = mode_report(sys_)
    print(f"== {name}")
    print(f"   det(K - s M) = {char_poly(sys_).render('s', compact=True)}")
    print(f"   Lagrange 1766:    {rep.verdicts.lagrange_1766}")
    print(f"   Weierstrass 1858: {rep.verdicts.weierstrass_1858}")
    print(f"   {rep.solution_template}")
    for note in rep.notes:
        print(f"   note: {note}")
    print()


def main():
    i2 = Mat.identity(QQ, 2)
    i3 = Mat.identity(QQ, 3)
    show("two equal frequencies (symmetric top analogue)", i2, i2)
    show("distinct frequencies", i2, Mat(QQ, [[1, 0], [0, 2]]))
    show("one inverted direction", i2, Mat(QQ, [[1, 0], [0, -1]]))
    show("three-mass chain with a zero mode", i3,
         Mat(QQ, [[1, -1, 0], [-1, 2, 1], [0, 1, 1]]))
    show("irrational frequencies", i2, Mat(QQ, [[2, 1], [1, 1]]))


if __name__ == "__main__":
    main()
