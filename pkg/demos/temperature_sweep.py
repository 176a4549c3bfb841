#!/usr/bin/env python3
"""Reduced free energy across the quantum-to-classical temperature range.

For a few rotation angles, sweeps the reduced temperature tau = 2 pi l kT /
(hbar c) across four decades and shows the two anchoring regimes: the
rescaled T=0 value at small tau and the flat classical plateau at large tau.
"""

import math

import numpy as np

from chiral_casimir import (
    ReducedPoint,
    classical_limit_reduced,
    reduced_free_energy,
    reduced_free_energy_T0,
)

THETAS = (0.0, math.pi / 8, math.pi / 4, math.pi / 2)


def main() -> None:
    taus = np.geomspace(0.01, 30.0, 12)
    header = "tau       " + "".join(f"  theta={t:4.2f}    " for t in THETAS)
    print(header)
    print("-" * len(header))
    for tau in taus:
        cells = []
        for theta in THETAS:
            res = reduced_free_energy(ReducedPoint(theta, float(tau)))
            flag = " " if res.converged else "!"
            cells.append(f"{res.value:+.6e}{flag}")
        print(f"{tau:8.4f}  " + "  ".join(cells))

    print("\nclassical plateau (tau -> inf):")
    print("          " + "  ".join(f"{classical_limit_reduced(t):+.6e} "
                                   for t in THETAS))
    print("T=0 anchor, rescaled to the same units (E0 * 8 pi^2 / tau at "
          "tau = 0.01):")
    print("          " + "  ".join(
        f"{reduced_free_energy_T0(t) * 8.0 * math.pi**2 / 0.01:+.6e} "
        for t in THETAS))


if __name__ == "__main__":
    main()
