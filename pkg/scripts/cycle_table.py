#!/usr/bin/env python3
"""Tabulate geodesic cycle integrals of the weight 12 cusp form at level 1.

Usage: python scripts/cycle_table.py [--max-disc 40]

For every positive discriminant D <= max-disc compatible with some coset,
prints one row per orbit class: the representative, whether the geodesic
is closed or infinite, and the cycle integral of Delta (weight 12, so the
integrand weight parameter is k=6).
"""

import argparse
import math
import sys

from thetalift.hyperbolic import cycle_integral, geodesic_of
from thetalift.lattice import orbit_representatives
from thetalift.weilrep import CuspFormInput, delta_qexp


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-disc", type=int, default=40)
    args = ap.parse_args(argv)

    form = CuspFormInput(level=1, weight=12, coefficients=delta_qexp(60))
    print(f"{'disc':>4} {'coset':>5} {'class':>5}  {'kind':<8} "
          f"{'representative':<24} value")
    for disc in range(1, args.max_disc + 1):
        coset = disc % 2
        if (disc - coset * coset) % 4 != 0:
            continue
        reps = orbit_representatives(1, disc, coset)
        for idx, vec in enumerate(reps):
            geo = geodesic_of(vec, 1)
            kind = "infinite" if math.isqrt(disc) ** 2 == disc else "closed"
            value = cycle_integral(form, vec, 1, 6)
            rep = f"({vec.a},{vec.b},{vec.c})"
            print(f"{disc:>4} {coset:>5} {idx:>5}  {kind:<8} {rep:<24} "
                  f"{value.real:+.12e}{value.imag:+.12e}j")
    return 0


if __name__ == "__main__":
    sys.exit(main())
