"""Cobar cohomology of the coalgebra dual to the divided power algebra, two ways.

The reduced cobar complex and the unnormalized cosimplicial object
[n] -> C^{(x)n} are built independently; the script prints both tables and
exits nonzero if they differ.

    python scripts/divided_power_table.py [--n-max 5] [--d-max 6]
"""

import argparse
import sys

from binring import barcobar as bc
from binring.cosimplicial import unnormalized_complex
from binring.exact_linalg import CohomologyGroup, cohomology


def by_reduced_cobar(n_max, d_max):
    H = bc.cobar_cohomology(bc.divided_power_dual(d_max), n_max, d_max)
    return {k: g for k, g in H.items() if not g.is_zero}


def by_cosimplicial_object(n_max, d_max):
    C = bc.divided_power_dual(d_max)
    out = {}
    for d in range(d_max + 1):
        # levels above d only contribute through the (spurious) top class
        H = cohomology(unnormalized_complex(bc.cobar_cosimplicial(C, d, d + 1)))
        for n in range(min(n_max, d) + 1):
            g = H.get(n, CohomologyGroup())
            if not g.is_zero:
                out[(n, d)] = g
    return out


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-max", type=int, default=5)
    parser.add_argument("--d-max", type=int, default=6)
    args = parser.parse_args()
    a = by_reduced_cobar(args.n_max, args.d_max)
    b = by_cosimplicial_object(args.n_max, args.d_max)
    print(f"{'(n,d)':>8} {'reduced cobar':>14} {'cosimplicial':>14}")
    for key in sorted(set(a) | set(b), key=lambda k: (k[1], k[0])):
        print(f"{str(key):>8} {str(a.get(key, 0)):>14} {str(b.get(key, 0)):>14}")
    same = a == b
    print("routes agree" if same else "ROUTES DISAGREE")
    return 0 if same else 1


if __name__ == "__main__":
    sys.exit(main())
