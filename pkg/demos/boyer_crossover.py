#!/usr/bin/env python3
"""Attraction-to-repulsion crossover of the zero-temperature force.

Walks the rotation angle from 0 (parallel ideal plates, the familiar
-pi^2/720 attraction) to pi/2, where the force flips sign and lands on the
repulsive conductor/permeable-plate value at 7/8 of the parallel magnitude.
Prints the reduced energy and pressure along the way and locates the angle
where the pressure changes sign.
"""

import math

import numpy as np

from chiral_casimir import reduced_free_energy_T0, reduced_pressure_T0


def bisect_pressure_zero(lo: float, hi: float, iters: int = 80) -> float:
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        if reduced_pressure_T0(mid) < 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def main() -> None:
    print("theta [rad]   E l^3/(hbar c)     P l^4/(hbar c)   regime")
    print("-" * 62)
    for theta in np.linspace(0.0, math.pi / 2, 13):
        e = reduced_free_energy_T0(float(theta))
        p = reduced_pressure_T0(float(theta))
        regime = "attractive" if p < 0 else "repulsive"
        print(f"{theta:11.6f}  {e:+.10e}  {p:+.10e}  {regime}")

    theta_star = bisect_pressure_zero(0.5, 1.0)
    print(f"\npressure changes sign at theta* = {theta_star:.12f} rad "
          f"({math.degrees(theta_star):.6f} deg)")

    e0 = reduced_free_energy_T0(0.0)
    e90 = reduced_free_energy_T0(math.pi / 2)
    print(f"E(pi/2)/E(0) = {e90 / e0:+.12f}   (the repulsive 7/8 benchmark: "
          f"{-7 / 8:+.12f})")


if __name__ == "__main__":
    main()
