#!/usr/bin/env python3
"""Enumerate the similarity classes of all 2x2 matrices over GF(2).

Brute-forces conjugation by the six invertible matrices, then shows that the
invariant-factor classification lands on exactly the same six classes."""

from canonforms import GF, Mat, det, divisor_data, mat_inverse

F2 = GF(2)


def all_matrices():
    return [Mat(F2, [[a, b], [c, d]])
            for a in range(2) for b in range(2)
            for c in range(2) for d in range(2)]


def main():
    mats = all_matrices()
    invertible = [m for m in mats if det(m) != 0]
    print(f"{len(mats)} matrices, {len(invertible)} invertible conjugators")

    orbits = []
    seen = set()
    for m in mats:
        if m in seen:
            continue
        orbit = {mat_inverse(t) * m * t for t in invertible}
        seen |= orbit
        orbits.append((m, orbit))

    print(f"\nbrute-force similarity classes: {len(orbits)}\n")
    for rep, orbit in orbits:
        dd = divisor_data(rep)
        print(f"class of size {len(orbit)}  "
              f"divisors: {dd.render() or '(none)'}")
        for row in rep.entries:
            print("   ", " ".join(str(e) for e in row))

    keys = {divisor_data(m).invariant_factors for m in mats}
    print(f"\ninvariant-factor classes: {len(keys)} "
          f"({'agree' if len(keys) == len(orbits) else 'DISAGREE'})")


if __name__ == "__main__":
    main()
